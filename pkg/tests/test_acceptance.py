"""Acceptance criteria 1-8, each at its stated tolerance and time budget.

Run under pytest (a summary line per criterion is printed at the end) or
directly with ``python tests/test_acceptance.py``.
"""

import random
import sys
import time

import numpy as np

from lagfib.affine import Conjugate, conjugacy_check, trivial_representation, validate_representation
from lagfib.cocycles import (Equal, chern_cocycle, class_representative, cohomologous,
                             monodromy_of, realize_class, shift_lifts)
from lagfib.complexes import AbelianGroup, cohomology, to_cochain_complex
from lagfib.constructions import (TWO_PI, branch_safe_sample, check_closedness,
                                  check_equivariance, chern_vector, random_primitive_unimodular)
from lagfib.datasets import BUILTINS, rp2_nerve_and_atlas
from lagfib.linalg import (IntMatrix, complete_primitive, inverse_unimodular, is_unimodular,
                           smith_normal_form, vector_gcd)

from oracles import minor_gcd

RESULTS = []


def report(number, ok, elapsed, budget, detail=""):
    passed = bool(ok) and elapsed < budget
    line = (f"criterion {number}: {'PASS' if passed else 'FAIL'} "
            f"({elapsed:.3f} s, budget {budget:g} s){' ' + detail if detail else ''}")
    RESULTS.append(line)
    print(line)
    return passed


def test_criterion_1_twisted_rp2():
    start = time.perf_counter()
    cx, rep = BUILTINS["rp2-twisted"]()
    cc = to_cochain_complex(cx, rep)
    groups = [cohomology(cc, k) for k in range(3)]
    ok = groups == [AbelianGroup(0), AbelianGroup(0, (2, 2, 2)), AbelianGroup(3)]
    assert report(1, ok, time.perf_counter() - start, 1.0, str([str(g) for g in groups]))


def test_criterion_2_untwisted_rp2():
    start = time.perf_counter()
    cx, _ = BUILTINS["rp2-twisted"]()
    cc = to_cochain_complex(cx, trivial_representation(cx.presentation, 3))
    groups = [cohomology(cc, k) for k in range(3)]
    ok = groups == [AbelianGroup(3), AbelianGroup(0), AbelianGroup(0, (2, 2, 2))]
    assert report(2, ok, time.perf_counter() - start, 1.0, str([str(g) for g in groups]))


def test_criterion_3_rp2_monodromy():
    start = time.perf_counter()
    mono = monodromy_of(BUILTINS["rp2-bundle"]())
    target = validate_representation(mono.presentation, [IntMatrix.scalar(3, -1)])
    res = conjugacy_check(mono, target)
    ok = (isinstance(res, Conjugate) and is_unimodular(res.witness)
          and res.witness @ mono.images[0] == target.images[0] @ res.witness)
    assert report(3, ok, time.perf_counter() - start, 1.0, f"a -> {mono.images[0].to_lists()}")


def test_criterion_4_surgery():
    start = time.perf_counter()
    rng = random.Random(4)
    nerve, _ = rp2_nerve_and_atlas()
    rep = monodromy_of(BUILTINS["rp2-bundle"]())
    failures = 0
    for _ in range(50):
        v = tuple(rng.randint(-9, 9) for _ in range(3))
        tri = rng.choice(nerve.triangles)
        td = realize_class(nerve, rep, {tri: v})
        target = class_representative(nerve, td.linear_parts(), v, tri)
        same_class = isinstance(cohomologous(chern_cocycle(td), target), Equal)
        if not (same_class and monodromy_of(td).images == rep.images):
            failures += 1
    assert report(4, failures == 0, time.perf_counter() - start, 30.0, f"{failures}/50 failures")


def test_criterion_5_snf_properties():
    start = time.perf_counter()
    rng = random.Random(5)
    failures = 0
    for _ in range(1000):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
        s = smith_normal_form(m)
        d = s.diagonal
        ok = s.U @ m @ s.V == s.D and is_unimodular(s.U) and is_unimodular(s.V)
        ok = ok and all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1) if d[i])
        ok = ok and all(s.D[i, j] == 0 for i in range(r) for j in range(c) if i != j)
        if ok and max(r, c) <= 4:
            prod = 1
            for k in range(1, min(r, c) + 1):
                prod *= d[k - 1]
                ok = ok and minor_gcd(m, k) == prod
        failures += not ok
    assert report(5, failures == 0, time.perf_counter() - start, 30.0, f"{failures}/1000 failures")


def test_criterion_6_lift_invariance():
    start = time.perf_counter()
    rng = random.Random(6)
    td = BUILTINS["s2-tetra"]()
    base = chern_cocycle(td)
    failures = 0
    for _ in range(200):
        shifts = {e: (rng.randint(-5, 5),) for e in td.nerve.edges}
        if not isinstance(cohomologous(base, chern_cocycle(shift_lifts(td, shifts))), Equal):
            failures += 1
    assert report(6, failures == 0, time.perf_counter() - start, 10.0, f"{failures}/200 failures")


def test_criterion_7_attaching_maps():
    start = time.perf_counter()
    rng = np.random.default_rng(7)
    eq = 0.0
    for _ in range(1000):
        x = rng.uniform(-3, 3, 3)
        t = rng.uniform(0, TWO_PI, 3)
        eq = max(eq, check_equivariance(x, t))
    cl = 0.0
    for _ in range(200):
        cl = max(cl, check_closedness(branch_safe_sample(rng), 1e-4))
    ok = eq < 1e-9 and cl < 1e-6
    assert report(7, ok, time.perf_counter() - start, 5.0,
                  f"max equivariance {eq:.2e}, max closedness {cl:.2e}")


def test_criterion_8_primitivity():
    start = time.perf_counter()
    rng = np.random.default_rng(8)
    failures = 0
    for _ in range(200):
        g = random_primitive_unimodular(rng)
        failures += vector_gcd(chern_vector(g)) != 1
    done = 0
    while done < 200:
        v = tuple(int(x) for x in rng.integers(-30, 31, 3))
        if vector_gcd(v) != 1:
            continue
        g = complete_primitive(v)
        failures += not (abs(g.det()) == 1 and inverse_unimodular(g).T.col(0) == v)
        done += 1
    assert report(8, failures == 0, time.perf_counter() - start, 10.0, f"{failures}/400 failures")


if __name__ == "__main__":
    tests = [f for name, f in sorted(globals().items()) if name.startswith("test_criterion_")]
    failed = 0
    for f in tests:
        try:
            f()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
