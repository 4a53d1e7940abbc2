"""Combinatorial torus bundles: transition data on the nerve of a good cover.

Conventions
-----------
An edge ``(a, b)`` of the nerve carries the label psi_ba in Aff(T^n): it maps
torus coordinates of chart ``a`` to those of chart ``b``,
``t_b = L t_a + g``.  The reverse transition is the group inverse.  ``L`` is
the linear part acting on the fibre, i.e. (A^-1)^T for an affine base
transition with linear part A.

Cochains take values in Z^n at the *last* vertex of a simplex:

    (delta u)(a, b)    = u_b - L_ba u_a
    (delta w)(a, b, c) = w_cb + L_cb w_ba - w_ca
    (delta z)(a,b,c,d) = z(b,c,d) - z(a,c,d) + z(a,b,d) - L_dc z(a,b,c)

with ``w_ab = -L_ab w_ba`` for the reversed orientation of an edge.

Translations are locally constant at triple overlaps but the gluing maps
may wind: on triangle T the lift of the translation of stored edge e is
``canonical(g_e) + winding[T, e]``, where the canonical lift lies in
[0, 1)^n and the winding is an integer vector.  Flat data (no windings)
can only carry torsion Chern classes; windings realize the rest.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .affine import (AffReal, AffToral, GroupPresentation, Representation, evaluate_word, mod1,
                     validate_representation)
from .complexes import AbelianGroup, CochainComplex, cohomology
from .errors import (CocycleViolation, NerveMismatch, NoSolution, RelatorViolated,
                     TwistingMismatch, Unrealizable)
from .linalg import IntMatrix, inverse_unimodular, solve_diophantine


def _perm_sign(perm) -> int:
    sign, perm = 1, list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


@dataclass(frozen=True)
class CoverNerve:
    vertices: tuple
    edges: tuple
    triangles: tuple
    spanning_tree: tuple
    presentation: GroupPresentation
    loop_words: tuple  # ((edge, word), ...) for every edge outside the tree
    tetrahedra: tuple = ()

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "vertices", tuple(self.vertices))
        set_(self, "edges", tuple(tuple(e) for e in self.edges))
        set_(self, "triangles", tuple(tuple(t) for t in self.triangles))
        set_(self, "tetrahedra", tuple(tuple(t) for t in self.tetrahedra))
        set_(self, "spanning_tree", tuple(tuple(e) for e in self.spanning_tree))
        words = dict(self.loop_words)
        words = {tuple(e): (self.presentation.parse_word(w) if isinstance(w, str) else
                            tuple((int(g), int(s)) for g, s in w)) for e, w in words.items()}
        set_(self, "loop_words", tuple(sorted(words.items(), key=lambda kv: self.edges.index(kv[0])
                                              if kv[0] in self.edges else -1)))
        self._validate()

    def _validate(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise NerveMismatch("duplicate vertices")
        seen = set()
        for a, b in self.edges:
            if a not in vs or b not in vs or a == b:
                raise NerveMismatch(f"bad edge {(a, b)}")
            key = frozenset((a, b))
            if key in seen:
                raise NerveMismatch(f"edge {(a, b)} listed twice")
            seen.add(key)
        tri_sets = set()
        for t in self.triangles:
            if len(set(t)) != 3:
                raise NerveMismatch(f"degenerate triangle {t}")
            for x, y in itertools.combinations(t, 2):
                if frozenset((x, y)) not in seen:
                    raise NerveMismatch(f"triangle {t} uses missing edge {(x, y)}")
            if frozenset(t) in tri_sets:
                raise NerveMismatch(f"triangle {t} listed twice")
            tri_sets.add(frozenset(t))
        for t in self.tetrahedra:
            if len(set(t)) != 4:
                raise NerveMismatch(f"degenerate tetrahedron {t}")
            for face in itertools.combinations(t, 3):
                if frozenset(face) not in tri_sets:
                    raise NerveMismatch(f"tetrahedron {t} uses missing triangle {face}")
        # spanning tree
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for e in self.spanning_tree:
            if e not in self._edge_index:
                raise NerveMismatch(f"tree edge {e} is not a stored edge")
            ra, rb = find(e[0]), find(e[1])
            if ra == rb:
                raise NerveMismatch(f"spanning tree has a cycle through {e}")
            parent[ra] = rb
        if self.vertices and len(self.spanning_tree) != len(self.vertices) - 1:
            raise NerveMismatch("spanning tree does not span the nerve")
        words = dict(self.loop_words)
        tree = set(self.spanning_tree)
        for e in self.edges:
            if e not in tree and e not in words:
                raise NerveMismatch(f"non-tree edge {e} has no declared loop word")
        for e, w in words.items():
            if e in tree or e not in self._edge_index:
                raise NerveMismatch(f"loop word declared for {e}, which is not a non-tree edge")
            self.presentation.check_word(w)

    @cached_property
    def _edge_index(self) -> dict:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def _triangle_index(self) -> dict:
        return {frozenset(t): i for i, t in enumerate(self.triangles)}

    @property
    def words(self) -> dict:
        return dict(self.loop_words)

    def orient(self, a, b):
        """Stored edge for the pair and whether it is traversed forwards."""
        if (a, b) in self._edge_index:
            return (a, b), True
        if (b, a) in self._edge_index:
            return (b, a), False
        raise NerveMismatch(f"no edge between {a} and {b}")

    def find_triangle(self, verts):
        return self.triangles[self._triangle_index[frozenset(verts)]]

    def edge_triangles(self) -> dict:
        """Triangles containing each stored edge."""
        out = {e: [] for e in self.edges}
        for t in self.triangles:
            for x, y in itertools.combinations(t, 2):
                out[self.orient(x, y)[0]].append(t)
        return out

    def tree_paths(self):
        """BFS over the spanning tree from the first vertex: (vertex, parent) in visiting order."""
        adj = {v: [] for v in self.vertices}
        for a, b in self.spanning_tree:
            adj[a].append(b)
            adj[b].append(a)
        root = self.vertices[0]
        order, seen, queue = [(root, None)], {root}, deque([root])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    order.append((w, v))
                    queue.append(w)
        return order


# local systems: edge -> linear part


class _LocalSystem:
    """Transport matrices L_ba for every ordered adjacent pair."""

    def __init__(self, nerve: CoverNerve, linear: dict):
        self.nerve = nerve
        self.linear = linear
        self.n = next(iter(linear.values())).rows if linear else 0
        self._inv = {}

    def L(self, a, b) -> IntMatrix:
        """Transport from chart a to chart b."""
        e, fwd = self.nerve.orient(a, b)
        if fwd:
            return self.linear[e]
        if e not in self._inv:
            self._inv[e] = inverse_unimodular(self.linear[e])
        return self._inv[e]

    def pair_coeff(self, a, b):
        """(edge, C) with w_ba = C w_e for a 1-cochain stored on edges."""
        e, fwd = self.nerve.orient(a, b)
        if fwd:
            return e, IntMatrix.identity(self.n)
        return e, -self.L(a, b)

    def triangle_coeff(self, verts):
        """(triangle, C) with z(verts) = C z_T for the stored triangle T."""
        t = self.nerve.find_triangle(verts)
        perm = [t.index(v) for v in verts]
        c = self.L(t[2], verts[2]) if t[2] != verts[2] else IntMatrix.identity(self.n)
        return t, c * _perm_sign(perm)


def cech_complex(nerve: CoverNerve, linear: dict, n: int | None = None) -> CochainComplex:
    """Twisted Cech cochain complex of the nerve with values in Z^n."""
    ls = _LocalSystem(nerve, linear)
    n = ls.n if n is None else n
    I = IntMatrix.identity(n)
    V, E, T = nerve.vertices, nerve.edges, nerve.triangles
    vidx = {v: i for i, v in enumerate(V)}
    eidx = nerve._edge_index
    tidx = {t: i for i, t in enumerate(T)}

    def assemble(nrows, ncols, rows):
        data = [[0] * (n * ncols) for _ in range(n * nrows)]
        for r, terms in enumerate(rows):
            for c, m in terms:
                for i in range(n):
                    out = data[r * n + i]
                    for j in range(n):
                        out[c * n + j] += m[i, j]
        return IntMatrix.from_rows(data, n * ncols)

    d0 = assemble(len(E), len(V), [[(vidx[b], I), (vidx[a], -ls.L(a, b))] for a, b in E])
    rows1 = []
    for a, b, c in T:
        e1, c1 = ls.pair_coeff(b, c)
        e2, c2 = ls.pair_coeff(a, b)
        e3, c3 = ls.pair_coeff(a, c)
        rows1.append([(eidx[e1], c1), (eidx[e2], ls.L(b, c) @ c2), (eidx[e3], -c3)])
    d1 = assemble(len(T), len(E), rows1)
    dims = [n * len(V), n * len(E), n * len(T)]
    deltas = [d0, d1]
    if nerve.tetrahedra:
        rows2 = []
        for a, b, c, d in nerve.tetrahedra:
            terms = []
            for verts, sign, pre in (((b, c, d), 1, None), ((a, c, d), -1, None),
                                     ((a, b, d), 1, None), ((a, b, c), -1, ls.L(c, d))):
                t, cm = ls.triangle_coeff(verts)
                if pre is not None:
                    cm = pre @ cm
                terms.append((tidx[t], cm * sign))
            rows2.append(terms)
        deltas.append(assemble(len(nerve.tetrahedra), len(T), rows2))
        dims.append(n * len(nerve.tetrahedra))
    cc = CochainComplex(tuple(dims), tuple(deltas))
    cc.check()
    return cc


def cech_cohomology(nerve: CoverNerve, linear: dict, k: int, n: int | None = None) -> AbelianGroup:
    return cohomology(cech_complex(nerve, linear, n), k)


# transition data


@dataclass(frozen=True)
class TransitionData:
    nerve: CoverNerve
    labels: dict  # stored edge -> AffToral
    windings: dict = field(default_factory=dict)  # (triangle, stored edge) -> integer vector

    def __post_init__(self):
        labels = {tuple(e): lab if isinstance(lab, AffToral) else AffToral(lab.linear, lab.translation)
                  for e, lab in self.labels.items()}
        if set(labels) != set(self.nerve.edges):
            raise NerveMismatch("labels must cover exactly the stored edges")
        sizes = {lab.n for lab in labels.values()}
        if len(sizes) > 1:
            raise NerveMismatch("labels of different dimensions")
        object.__setattr__(self, "labels", labels)
        n = sizes.pop() if sizes else 0
        wind = {}
        for (t, e), w in self.windings.items():
            t, e, w = tuple(t), tuple(e), tuple(int(x) for x in w)
            if t not in self.nerve.triangles or e not in self.nerve.edges or not set(e) <= set(t):
                raise NerveMismatch(f"winding on {(t, e)} does not name an edge of a triangle")
            if len(w) != n:
                raise NerveMismatch("winding of the wrong length")
            if any(w):
                wind[(t, e)] = w
        object.__setattr__(self, "windings", wind)

    @property
    def n(self) -> int:
        return next(iter(self.labels.values())).n if self.labels else 0

    @cached_property
    def local_system(self) -> _LocalSystem:
        return _LocalSystem(self.nerve, {e: lab.linear for e, lab in self.labels.items()})

    def linear_parts(self) -> dict:
        return {e: lab.linear for e, lab in self.labels.items()}

    def transition(self, a, b) -> AffToral:
        """psi_ba as an element of Aff(T^n)."""
        e, fwd = self.nerve.orient(a, b)
        return self.labels[e] if fwd else self.labels[e].inverse()

    def lift(self, triangle, a, b) -> tuple:
        """Lift to Q^n of the translation of psi_ba on the given triangle."""
        e, fwd = self.nerve.orient(a, b)
        lab = self.labels[e]
        w = self.windings.get((triangle, e), (0,) * self.n)
        g = tuple(x + y for x, y in zip(lab.translation, w))
        if fwd:
            return g
        return tuple(-x for x in self.local_system.L(a, b).apply(g))


@dataclass(frozen=True)
class Violation:
    kind: str  # "linear", "translation" or "winding"
    location: tuple
    discrepancy: object


@dataclass(frozen=True)
class CocycleReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def verify_cocycle(td: TransitionData) -> CocycleReport:
    out = []
    for t in td.nerve.triangles:
        a, b, c = t
        lhs = td.transition(b, c) * td.transition(a, b)
        rhs = td.transition(a, c)
        if lhs.linear != rhs.linear:
            out.append(Violation("linear", t, lhs.linear - rhs.linear))
        else:
            diff = mod1(x - y for x, y in zip(lhs.translation, rhs.translation))
            if any(diff):
                out.append(Violation("translation", t, diff))
    edge_tris = td.nerve.edge_triangles()
    for tet in td.nerve.tetrahedra:
        faces = [td.nerve.find_triangle(f) for f in itertools.combinations(tet, 3)]
        for x, y in itertools.combinations(tet, 2):
            e = td.nerve.orient(x, y)[0]
            values = {td.windings.get((f, e), (0,) * td.n) for f in faces if f in edge_tris[e]}
            if len(values) > 1:
                out.append(Violation("winding", (tet, e), tuple(sorted(values))))
    return CocycleReport(tuple(out))


def _require_cocycle(td: TransitionData):
    report = verify_cocycle(td)
    if not report.ok:
        raise CocycleViolation(f"{len(report.violations)} cocycle violations", report.violations)


def monodromy_of(td: TransitionData) -> Representation:
    """Holonomy of the fibre lattice around each loop generator.

    A non-tree edge (a, b) gives the loop root -> a (tree), a -> b (edge),
    b -> root (tree); its holonomy is expressed in root-chart coordinates.
    """
    nerve, ls, n = td.nerve, td.local_system, td.n
    transport = {}
    for v, parent in nerve.tree_paths():
        transport[v] = IntMatrix.identity(n) if parent is None else ls.L(parent, v) @ transport[parent]
    inv = {v: inverse_unimodular(m) for v, m in transport.items()}
    hol = {(a, b): inv[b] @ ls.L(a, b) @ transport[a] for (a, b), _ in nerve.loop_words}
    pres = nerve.presentation
    images = []
    for g, name in enumerate(pres.generators):
        found = None
        for e, w in nerve.loop_words:
            if w == ((g, 1),):
                found = hol[e]
                break
            if w == ((g, -1),) and found is None:
                found = inverse_unimodular(hol[e])
        if found is None:
            raise RelatorViolated(f"no loop edge is declared as generator {name!r}")
        images.append(found)
    rep = validate_representation(pres, images, n)
    for e, w in nerve.loop_words:
        if evaluate_word(rep, w, n) != hol[e]:
            raise RelatorViolated(f"holonomy around {e} does not match its word "
                                  f"{pres.format_word(w)!r}", relator=e)
    return rep


# Chern cocycles


@dataclass(frozen=True)
class ChernCocycle:
    nerve: CoverNerve
    local_system: dict  # stored edge -> fibre linear part
    values: dict  # stored triangle -> integer vector

    def __post_init__(self):
        n = next(iter(self.local_system.values())).rows if self.local_system else 0
        vals = {}
        for t in self.nerve.triangles:
            v = tuple(int(x) for x in self.values.get(t, (0,) * n))
            if len(v) != n:
                raise NerveMismatch("cocycle value of the wrong length")
            vals[t] = v
        extra = set(map(tuple, self.values)) - set(self.nerve.triangles)
        if extra:
            raise NerveMismatch(f"values on unknown triangles {sorted(extra)}")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return next(iter(self.local_system.values())).rows if self.local_system else 0

    def vector(self) -> tuple:
        return tuple(x for t in self.nerve.triangles for x in self.values[t])

    @cached_property
    def twisting(self) -> Representation:
        flat = {e: AffToral(m, (0,) * self.n) for e, m in self.local_system.items()}
        return monodromy_of(TransitionData(self.nerve, flat))

    def __add__(self, other: "ChernCocycle") -> "ChernCocycle":
        _check_same(self, other)
        return ChernCocycle(self.nerve, self.local_system,
                            {t: tuple(x + y for x, y in zip(v, other.values[t]))
                             for t, v in self.values.items()})

    def __neg__(self):
        return ChernCocycle(self.nerve, self.local_system,
                            {t: tuple(-x for x in v) for t, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)


def chern_cocycle(td: TransitionData) -> ChernCocycle:
    """z(a,b,c) = lift(g_cb) + L_cb lift(g_ba) - lift(g_ca), an integer vector."""
    _require_cocycle(td)
    ls = td.local_system
    values = {}
    for t in td.nerve.triangles:
        a, b, c = t
        g_cb, g_ba, g_ca = td.lift(t, b, c), td.lift(t, a, b), td.lift(t, a, c)
        z = tuple(x + y - w for x, y, w in zip(g_cb, ls.L(b, c).apply(g_ba), g_ca))
        if any(Fraction(x).denominator != 1 for x in z):
            raise CocycleViolation(f"non-integral obstruction on {t}: {z}")
        values[t] = tuple(int(x) for x in z)
    return ChernCocycle(td.nerve, td.linear_parts(), values)


def _check_same(c1: ChernCocycle, c2: ChernCocycle):
    if c1.nerve != c2.nerve:
        raise NerveMismatch("cocycles live on different nerves")
    if c1.local_system != c2.local_system:
        raise TwistingMismatch("cocycles have different coefficient systems")


@dataclass(frozen=True)
class Equal:
    witness: dict  # stored edge -> integer vector w with c1 - c2 = delta w


@dataclass(frozen=True)
class NotEqual:
    reason: str = "difference is not a coboundary"


def coboundary(nerve: CoverNerve, linear: dict, w: dict) -> ChernCocycle:
    """delta w for a 1-cochain given on stored edges."""
    cc = cech_complex(nerve, linear)
    n = cc.dims[0] // len(nerve.vertices) if nerve.vertices else 0
    flat = tuple(x for e in nerve.edges for x in w.get(e, (0,) * n))
    out = cc.deltas[1].apply(flat)
    return ChernCocycle(nerve, linear, {t: out[i * n:(i + 1) * n]
                                         for i, t in enumerate(nerve.triangles)})


def cohomologous(c1: ChernCocycle, c2: ChernCocycle):
    _check_same(c1, c2)
    n = c1.n
    d1 = cech_complex(c1.nerve, c1.local_system, n).deltas[1]
    diff = tuple(x - y for x, y in zip(c1.vector(), c2.vector()))
    try:
        sol = solve_diophantine(d1, diff)
    except NoSolution:
        return NotEqual()
    x = sol.particular
    return Equal({e: tuple(x[i * n:(i + 1) * n]) for i, e in enumerate(c1.nerve.edges)})


def class_representative(nerve: CoverNerve, linear: dict, v, triangle=None) -> ChernCocycle:
    """The cocycle equal to v on one triangle (default: the first) and 0 elsewhere."""
    t = nerve.triangles[0] if triangle is None else tuple(triangle)
    return ChernCocycle(nerve, linear, {t: tuple(int(x) for x in v)})


def class_coordinates(c: ChernCocycle, triangle=None):
    """Some v with c cohomologous to ``class_representative(..., v)``, or None."""
    n = c.n
    nerve = c.nerve
    t = nerve.triangles[0] if triangle is None else tuple(triangle)
    d1 = cech_complex(nerve, c.local_system, n).deltas[1]
    ti = nerve.triangles.index(t)
    rows = []
    for r in range(d1.rows):
        extra = [1 if r == ti * n + j else 0 for j in range(n)]
        rows.append(list(d1.row(r)) + extra)
    try:
        sol = solve_diophantine(IntMatrix.from_rows(rows, d1.cols + n), c.vector())
    except NoSolution:
        return None
    return tuple(sol.particular[d1.cols:])


def is_cocycle(c: ChernCocycle) -> bool:
    if not c.nerve.tetrahedra:
        return True
    d2 = cech_complex(c.nerve, c.local_system, c.n).deltas[2]
    return not any(d2.apply(c.vector()))


# surgery and realization


def _winding_solution(td: TransitionData, shift: ChernCocycle) -> dict:
    """Integer windings whose effect on the Chern cocycle is exactly ``shift``."""
    nerve, ls, n = td.nerve, td.local_system, td.n
    coeffs = {}
    for t in nerve.triangles:
        a, b, c = t
        e1, c1 = ls.pair_coeff(b, c)
        e2, c2 = ls.pair_coeff(a, b)
        e3, c3 = ls.pair_coeff(a, c)
        coeffs[t] = [(e1, c1), (e2, ls.L(b, c) @ c2), (e3, -c3)]
    if not nerve.tetrahedra:
        # first term enters with an invertible coefficient
        out = {}
        for t, v in shift.values.items():
            if any(v):
                e, cm = coeffs[t][0]
                out[(t, e)] = inverse_unimodular(cm).apply(v)
        return out
    # windings of an edge agree on faces of a common tetrahedron
    slots = [(t, e) for t in nerve.triangles for e, _ in coeffs[t]]
    parent = {s: s for s in slots}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    for tet in nerve.tetrahedra:
        faces = [nerve.find_triangle(f) for f in itertools.combinations(tet, 3)]
        for x, y in itertools.combinations(tet, 2):
            e = nerve.orient(x, y)[0]
            on = [f for f in faces if set(e) <= set(f)]
            for f in on[1:]:
                parent[find((f, e))] = find((on[0], e))
    classes = sorted({find(s) for s in slots}, key=slots.index)
    cidx = {c: i for i, c in enumerate(classes)}
    data = [[0] * (n * len(classes)) for _ in range(n * len(nerve.triangles))]
    for ti, t in enumerate(nerve.triangles):
        for e, cm in coeffs[t]:
            ci = cidx[find((t, e))]
            for i in range(n):
                for j in range(n):
                    data[ti * n + i][ci * n + j] += cm[i, j]
    try:
        sol = solve_diophantine(IntMatrix.from_rows(data, n * len(classes)), shift.vector())
    except NoSolution:
        raise Unrealizable("no winding assignment produces this shift on this nerve") from None
    x = sol.particular
    return {s: tuple(x[cidx[find(s)] * n:(cidx[find(s)] + 1) * n]) for s in slots}


def twist_by_class(td: TransitionData, shift) -> TransitionData:
    """Re-glue so the Chern cocycle moves by exactly ``shift``; monodromy is untouched.

    ``shift`` is a ChernCocycle or a mapping triangle -> integer vector.
    """
    _require_cocycle(td)
    if not isinstance(shift, ChernCocycle):
        shift = ChernCocycle(td.nerve, td.linear_parts(), {tuple(t): v for t, v in dict(shift).items()})
    else:
        _check_same(shift, ChernCocycle(td.nerve, td.linear_parts(), {}))
    if not is_cocycle(shift):
        raise Unrealizable("requested shift is not a cocycle on this nerve")
    extra = _winding_solution(td, shift)
    wind = dict(td.windings)
    for key, w in extra.items():
        old = wind.get(key, (0,) * td.n)
        wind[key] = tuple(x + y for x, y in zip(old, w))
    return TransitionData(td.nerve, td.labels, wind)


def shift_lifts(td: TransitionData, shifts: dict) -> TransitionData:
    """Move the lift of each listed edge by an integer vector on every triangle.

    This is a change of lift, not of the bundle; the Chern cocycle changes by
    the coboundary of ``shifts``.
    """
    wind = dict(td.windings)
    for t in td.nerve.triangles:
        for x, y in itertools.combinations(t, 2):
            e = td.nerve.orient(x, y)[0]
            if e in shifts:
                old = wind.get((t, e), (0,) * td.n)
                wind[(t, e)] = tuple(p + q for p, q in zip(old, shifts[e]))
    return TransitionData(td.nerve, td.labels, wind)


def trivial_fstar_fibration(nerve: CoverNerve, atlas: dict) -> TransitionData:
    """Fibre transitions (A^-1)^T with zero translation from an affine atlas."""
    atlas = {tuple(e): a for e, a in atlas.items()}
    if set(atlas) != set(nerve.edges):
        raise NerveMismatch("atlas must give a transition for every stored edge")

    def tr(a, b) -> AffReal:
        e, fwd = nerve.orient(a, b)
        return atlas[e] if fwd else atlas[e].inverse()

    bad = []
    for t in nerve.triangles:
        a, b, c = t
        lhs, rhs = tr(b, c) * tr(a, b), tr(a, c)
        if lhs != rhs:
            bad.append(Violation("affine", t, (lhs, rhs)))
    if bad:
        raise CocycleViolation("affine atlas violates the cocycle condition", bad)
    labels = {e: AffToral(inverse_unimodular(A.linear).T, (0,) * A.n) for e, A in atlas.items()}
    return TransitionData(nerve, labels)


def canonical_linear_parts(nerve: CoverNerve, rep: Representation) -> dict:
    """Identity on tree edges, rho(word) on loop edges."""
    n = rep.n
    words = nerve.words
    return {e: (rep(words[e]) if e in words else IntMatrix.identity(n)) for e in nerve.edges}


def realize_class(nerve: CoverNerve, rep: Representation, target) -> TransitionData:
    """Transition data with monodromy ``rep`` and Chern cocycle equal to ``target``."""
    if rep.presentation != nerve.presentation:
        raise RelatorViolated("representation is over a different presentation")
    linear = canonical_linear_parts(nerve, rep)
    base = TransitionData(nerve, {e: AffToral(m, (0,) * rep.n) for e, m in linear.items()})
    report = verify_cocycle(base)
    if not report.ok:
        raise RelatorViolated(f"representation is inconsistent with the nerve on "
                              f"{[v.location for v in report.violations]}")
    if isinstance(target, ChernCocycle):
        if target.nerve != nerve:
            raise NerveMismatch("target lives on a different nerve")
        if target.local_system != linear:
            raise TwistingMismatch("target is not expressed in the canonical gauge of rep")
    else:
        target = ChernCocycle(nerve, linear, {tuple(t): v for t, v in dict(target).items()})
    return twist_by_class(base, target)
