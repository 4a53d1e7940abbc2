"""Attaching maps for the RP^2 x R examples, in double precision.

The torus factor here is R^3 / 2 pi Z^3 (so arg needs no rescaling);
``to_unit_torus`` and ``from_unit_torus`` convert to and from the R^n / Z^n
convention used by the exact modules.  arg is the principal branch with its
cut on the negative x1 axis; identities are compared modulo 2 pi.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BranchCutProximity, DegenerateLocus
from .linalg import IntMatrix, inverse_unimodular

TWO_PI = 2.0 * math.pi


def to_unit_torus(t):
    return np.mod(np.asarray(t, dtype=float) / TWO_PI, 1.0)


def from_unit_torus(t):
    return np.mod(np.asarray(t, dtype=float) * TWO_PI, TWO_PI)


def wrap(t):
    """Reduce into [0, 2 pi)."""
    return np.mod(np.asarray(t, dtype=float), TWO_PI)


def torus_distance(s, t) -> float:
    """Max over coordinates of the circular distance on R / 2 pi Z."""
    d = np.mod(np.asarray(s, dtype=float) - np.asarray(t, dtype=float), TWO_PI)
    return float(np.max(np.minimum(d, TWO_PI - d)))


def _base_point(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (3,):
        raise ValueError("base points live in R^3")
    if x[0] == 0.0 and x[1] == 0.0:
        raise DegenerateLocus(f"x1 = x2 = 0 at {tuple(x)}")
    return x


def _log_term(x) -> float:
    r2 = x[0] ** 2 + x[1] ** 2
    return 0.5 * math.log(r2 / (1.0 + x[1] ** 2))


def phi_plus(x) -> np.ndarray:
    x = _base_point(x)
    return np.array([math.atan2(x[1], x[0]), _log_term(x), 0.0])


def phi_minus(x) -> np.ndarray:
    x = _base_point(x)
    return np.array([-math.atan2(x[1], x[0]) + math.pi, -_log_term(x), 0.0])


def _phi(sign: str):
    if sign == "+":
        return phi_plus
    if sign == "-":
        return phi_minus
    raise ValueError(f"sign must be '+' or '-', not {sign!r}")


def attach_h(sign: str, x, t):
    """h_sign(x, t) = (x, t + phi_sign(x)) on R^3 x T^3."""
    x = _base_point(x)
    return x, wrap(np.asarray(t, dtype=float) + _phi(sign)(x))


def _dual(G: IntMatrix) -> np.ndarray:
    return np.array(inverse_unimodular(G).T.to_lists(), dtype=float)


def chern_vector(G: IntMatrix) -> tuple:
    """(G^-1)^T (1, 0, 0), computed exactly."""
    return inverse_unimodular(G).T.col(0)


def attach_h_G(G: IntMatrix, sign: str, x, t):
    """h^G_sign(x, t) = (x, t + (G^-1)^T phi_sign(G x))."""
    x = np.asarray(x, dtype=float)
    gx = np.array(G.to_lists(), dtype=float) @ x
    shift = _dual(G) @ _phi(sign)(gx)
    return x, wrap(np.asarray(t, dtype=float) + shift)


def antipodal(x, t):
    """The Z/2 action a . (x, t) = (-x, -t)."""
    return -np.asarray(x, dtype=float), wrap(-np.asarray(t, dtype=float))


def check_equivariance(x, t, signs=("+", "-"), G: IntMatrix | None = None) -> float:
    """Toral distance between a . h_s(x, t) and h_s'(a . (x, t))."""
    first, second = signs
    if G is None:
        _, lhs_t = antipodal(*attach_h(first, x, t))
        _, rhs_t = attach_h(second, *antipodal(x, t))
    else:
        _, lhs_t = antipodal(*attach_h_G(G, first, x, t))
        _, rhs_t = attach_h_G(G, second, *antipodal(x, t))
    return torus_distance(lhs_t, rhs_t)


def check_closedness(x, h: float = 1e-4) -> float:
    """|d/dx2 arg(x1 + i x2) - d/dx1 (1/2) log((x1^2 + x2^2) / (1 + x2^2))| by central differences."""
    x = _base_point(x)
    e1, e2 = np.array([h, 0.0, 0.0]), np.array([0.0, h, 0.0])
    for p in (x + e1, x - e1, x + e2, x - e2):
        _base_point(p)
    a_hi = math.atan2((x + e2)[1], (x + e2)[0])
    a_lo = math.atan2((x - e2)[1], (x - e2)[0])
    if abs(a_hi - a_lo) > math.pi:
        raise BranchCutProximity(f"stencil at {tuple(x)} crosses the cut of arg")
    d2_arg = (a_hi - a_lo) / (2 * h)
    d1_log = (_log_term(x + e1) - _log_term(x - e1)) / (2 * h)
    return abs(d2_arg - d1_log)


def branch_safe_sample(rng, min_radius: float = 0.5, cut_margin: float = 0.01, box: float = 3.0):
    """Uniform point of [-box, box]^3 away from the cut and the degenerate axis.

    The central-difference error is about h^2 / r^3 with r the distance to the
    x3-axis, so points too close to it cannot meet a fixed tolerance.
    """
    while True:
        x = rng.uniform(-box, box, 3)
        if x[0] ** 2 + x[1] ** 2 >= min_radius ** 2 and not (x[0] < 0 and abs(x[1]) < cut_margin):
            return x


def random_primitive_unimodular(rng, n: int = 3, steps: int = 12) -> IntMatrix:
    """Product of random elementary matrices and sign flips."""
    m = IntMatrix.identity(n).to_lists()
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False)
        c = int(rng.integers(-2, 3))
        for k in range(n):
            m[i][k] += c * m[j][k]
        if rng.random() < 0.2:
            m[i] = [-v for v in m[i]]
    return IntMatrix.from_rows(m)
