"""Built-in datasets.

``rp2-bundle`` is built from the standard integral affine structure on
R^3 - {0} and the free Z/2 action x -> -x.  The octahedral cover of S^2
(open stars of the vertices +-e_i) does not descend to a good cover of RP^2:
antipodal pairs of edges collapse to double edges.  Its barycentric
subdivision does, giving a simplicial nerve with 13 charts, 36 overlaps and
24 triple overlaps.  Each chart is a cone over the open star of a chosen
lift; two charts meet either directly (transition x -> x) or through the
antipode (x -> -x).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .affine import AffReal, AffToral, GroupPresentation, validate_representation
from .cocycles import CoverNerve, TransitionData, trivial_fstar_fibration, twist_by_class
from .complexes import GroupRingElement, TwistedComplex
from .linalg import IntMatrix

AXES = "xyz"


def _name(face) -> str:
    return "".join(("+" if s > 0 else "-") + AXES[i] for i, s in sorted(face))


def _negate(face) -> frozenset:
    return frozenset((i, -s) for i, s in face)


def _octahedron_faces():
    verts = [(i, s) for i in range(3) for s in (1, -1)]
    faces = []
    for k in (1, 2, 3):
        for combo in itertools.combinations(verts, k):
            if len({i for i, _ in combo}) == k:  # no antipodal pair in one face
                faces.append(frozenset(combo))
    return faces


def _representative(face) -> frozenset:
    # the lift whose lowest axis carries a + sign
    return face if min(face)[1] > 0 else _negate(face)


def _tree_and_words(vertices, edges, sign):
    """BFS spanning tree plus, for each other edge, the word a^k with k the lift parity."""
    adj = {v: [] for v in vertices}
    for e in edges:
        adj[e[0]].append(e)
        adj[e[1]].append(e)
    root = vertices[0]
    parity, tree, queue = {root: 1}, [], [root]
    while queue:
        v = queue.pop(0)
        for e in adj[v]:
            w = e[1] if e[0] == v else e[0]
            if w not in parity:
                parity[w] = parity[v] * sign[e]
                tree.append(e)
                queue.append(w)
    tree_set = set(tree)
    words = {e: ("a" if parity[e[0]] * sign[e] * parity[e[1]] < 0 else "")
             for e in edges if e not in tree_set}
    return tree, words


def rp2_nerve_and_atlas():
    """Nerve of the RP^2 cover and the affine transitions (+-I, 0) on it."""
    faces = _octahedron_faces()
    flags = [(a, b, c) for a in faces if len(a) == 1 for b in faces if len(b) == 2 and a < b
             for c in faces if len(c) == 3 and b < c]
    reps = sorted({_representative(f) for f in faces}, key=lambda f: (len(f), _name(f)))
    vertices = [_name(f) for f in reps]
    rep_of = {f: _representative(f) for f in faces}

    edge_sign, triangles = {}, []
    for chain in flags:
        for x, y in itertools.combinations(chain, 2):
            key = (_name(rep_of[x]), _name(rep_of[y]))
            s = 1 if (x == rep_of[x]) == (y == rep_of[y]) else -1
            if key in edge_sign and edge_sign[key] != s:
                raise AssertionError("quotient nerve is not simplicial")
            edge_sign[key] = s
        tri = tuple(_name(rep_of[f]) for f in chain)
        if tri not in triangles:
            triangles.append(tri)
    edges = sorted(edge_sign, key=lambda e: (vertices.index(e[0]), vertices.index(e[1])))
    triangles.sort(key=lambda t: tuple(vertices.index(v) for v in t))
    tree, words = _tree_and_words(vertices, edges, edge_sign)
    pres = GroupPresentation.parse(["a"], ["a a"])
    nerve = CoverNerve(tuple(vertices), tuple(edges), tuple(triangles), tuple(tree), pres,
                       tuple(words.items()))
    atlas = {e: AffReal(IntMatrix.scalar(3, edge_sign[e]), (0, 0, 0)) for e in edges}
    return nerve, atlas


def rp2_bundle() -> TransitionData:
    """The quotient fibration M_0 over RP^2 x R: monodromy a -> -I, Chern class 0."""
    nerve, atlas = rp2_nerve_and_atlas()
    return trivial_fstar_fibration(nerve, atlas)


def rp2_twisted():
    """Cellular Z[pi]-complex of RP^2 with t -> -I_3 on Z^3."""
    pres = GroupPresentation.parse(["t"], ["t t"])
    one_plus_t = GroupRingElement.parse(pres, [(1, ""), (1, "t")])
    one_minus_t = GroupRingElement.parse(pres, [(1, ""), (-1, "t")])
    cx = TwistedComplex(pres, (1, 1, 1), (((one_minus_t,),), ((one_plus_t,),)))
    rep = validate_representation(pres, [IntMatrix.scalar(3, -1)])
    return cx, rep


def s2_tetra_nerve() -> CoverNerve:
    """Boundary of a tetrahedron; triangles coherently oriented."""
    vertices = ("0", "1", "2", "3")
    edges = (("0", "1"), ("0", "2"), ("0", "3"), ("1", "2"), ("1", "3"), ("2", "3"))
    triangles = (("1", "2", "3"), ("0", "3", "2"), ("0", "1", "3"), ("0", "2", "1"))
    tree = edges[:3]
    words = tuple((e, "") for e in edges[3:])
    return CoverNerve(vertices, edges, triangles, tree, GroupPresentation(()), words)


def s2_tetra() -> TransitionData:
    """T^1-bundle over S^2 with Chern class 1 (n = 1).

    Translations 1/2 on the three edges at vertex 0 (the rest forced to 0 by
    the cocycle condition), plus one unit winding on triangle (0, 2, 1).
    """
    nerve = s2_tetra_nerve()
    half = Fraction(1, 2)
    labels = {e: AffToral(IntMatrix.identity(1), (half if "0" in e else 0,)) for e in nerve.edges}
    td = TransitionData(nerve, labels)
    return twist_by_class(td, {("0", "2", "1"): (1,)})


def circle_loop() -> TransitionData:
    """Three arcs covering S^1; the closing edge carries [[1, 1], [0, 1]]."""
    vertices = ("0", "1", "2")
    edges = (("0", "1"), ("1", "2"), ("2", "0"))
    pres = GroupPresentation(("a",))
    nerve = CoverNerve(vertices, edges, (), edges[:2], pres, ((edges[2], "a"),))
    I = IntMatrix.identity(2)
    M = IntMatrix.from_rows([[1, 1], [0, 1]])
    labels = {edges[0]: AffToral(I, (0, 0)), edges[1]: AffToral(I, (0, 0)),
              edges[2]: AffToral(M, (0, 0))}
    return TransitionData(nerve, labels)


def circle_atlas():
    """T^1 = R/Z covered by three arcs; translations only."""
    vertices = ("0", "1", "2")
    edges = (("0", "1"), ("1", "2"), ("2", "0"))
    nerve = CoverNerve(vertices, edges, (), edges[:2], GroupPresentation(("a",)),
                       ((edges[2], "a"),))
    I = IntMatrix.identity(1)
    atlas = {edges[0]: AffReal(I, (0,)), edges[1]: AffReal(I, (0,)), edges[2]: AffReal(I, (1,))}
    return nerve, atlas


def solid_tetra_nerve() -> CoverNerve:
    """A single 3-simplex (contractible); exercises the tetrahedral code paths."""
    base = s2_tetra_nerve()
    triangles = (("0", "1", "2"), ("0", "1", "3"), ("0", "2", "3"), ("1", "2", "3"))
    return CoverNerve(base.vertices, base.edges, triangles, base.spanning_tree,
                      base.presentation, base.loop_words, (("0", "1", "2", "3"),))


BUILTINS = {
    "rp2-twisted": rp2_twisted,
    "rp2-bundle": rp2_bundle,
    "s2-tetra": s2_tetra,
    "circle-loop": circle_loop,
}

