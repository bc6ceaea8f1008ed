"""Independent reference implementations used to cross-check the package.

Nothing here shares code with the structural recognizer or the mask-based
enumeration engine: classification goes through exhaustive Gram-matrix
isomorphism search against the realize() catalog, transformations are
replayed directly from their definitions on labeled graphs, highest-root
coefficients are recomputed by reflection closure, and short vectors by a
plain box search.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from dynkintrans.graphs import (
    A,
    BC1,
    ComponentType,
    D,
    DynkinGraph,
    E,
    G1,
    G2,
    LabeledGraph,
    NORM_LONG,
    ORDINARY_EDGE,
    Vertex,
    component_subgraphs,
    extend,
    gram,
    realize,
)


def gram_isomorphic(left: LabeledGraph, right: LabeledGraph) -> bool:
    """Exact isomorphism of Gram matrices by complete backtracking search."""
    if left.n != right.n:
        return False
    gl, gr = gram(left), gram(right)
    n = left.n
    used = [False] * n
    image: list[int] = []

    def place(i: int) -> bool:
        if i == n:
            return True
        for cand in range(n):
            if used[cand] or gl[i][i] != gr[cand][cand]:
                continue
            if any(gl[i][j] != gr[cand][image[j]] for j in range(i)):
                continue
            used[cand] = True
            image.append(cand)
            if place(i + 1):
                return True
            used[cand] = False
            image.pop()
        return False

    return place(0)


def permutation_gram_isomorphic(left: LabeledGraph, right: LabeledGraph) -> bool:
    """Plain all-permutations isomorphism check, for small graphs only."""
    if left.n != right.n:
        return False
    gl, gr = gram(left), gram(right)
    n = left.n
    for perm in itertools.permutations(range(n)):
        if all(
            gl[i][j] == gr[perm[i]][perm[j]] for i in range(n) for j in range(n)
        ):
            return True
    return False


def _candidate_types(size: int) -> list[ComponentType]:
    out: list[ComponentType] = []
    if size >= 1:
        out.append(A(size))
    if size >= 4:
        out.append(D(size))
    if size in (6, 7, 8):
        out.append(E(size))
    if size == 2:
        out.append(G2)
    if size == 1:
        out.extend([G1, BC1])
    return out


def oracle_classify(lg: LabeledGraph) -> DynkinGraph | None:
    """Match every component against the realize() catalog by isomorphism."""
    found = []
    for comp in component_subgraphs(lg):
        hit = None
        for ct in _candidate_types(comp.n):
            if gram_isomorphic(comp, realize(DynkinGraph((ct,)))):
                hit = ct
                break
        if hit is None:
            return None
        found.append(hit)
    return DynkinGraph(tuple(found))


def _removed_graph(ext, removed: set[int]) -> LabeledGraph:
    keep = [i for i in range(ext.n) if i not in removed]
    return ext.base.induced(keep)


def _tie_graph(ext, a: set[int], b: tuple[int, ...]) -> LabeledGraph:
    keep = [i for i in range(ext.n) if i not in a]
    pos = {v: k for k, v in enumerate(keep)}
    verts = tuple(ext.base.vertices[v] for v in keep) + (Vertex("new", NORM_LONG),)
    edges = [
        (pos[i], pos[j], val) for i, j, val in ext.base.edges if i in pos and j in pos
    ]
    edges.extend((pos[v], len(keep), ORDINARY_EDGE) for v in b)
    return LabeledGraph(verts, tuple(edges))


def naive_elementary_all(g: DynkinGraph) -> set[str]:
    """Outcome names of every elementary removal, replayed literally."""
    ext = extend(g)
    per_comp = [
        [set(sub) for r in range(1, len(comp) + 1) for sub in itertools.combinations(comp, r)]
        for comp in ext.components
    ]
    names: set[str] = set()
    for pick in itertools.product(*per_comp) if per_comp else [()]:
        removed = set().union(*pick) if pick else set()
        out = oracle_classify(_removed_graph(ext, removed))
        assert out is not None, "elementary outcome failed oracle classification"
        names.add(out.name)
    return names


def naive_tie_all(g: DynkinGraph, max_b: int = 3) -> set[str]:
    """Outcome names of every admissible tie choice, replayed literally."""
    from math import gcd

    ext = extend(g)
    per_comp = [
        [set(sub) for r in range(1, len(comp) + 1) for sub in itertools.combinations(comp, r)]
        for comp in ext.components
    ]
    names: set[str] = set()
    for pick in itertools.product(*per_comp) if per_comp else [()]:
        a = set().union(*pick) if pick else set()
        rest = [v for v in range(ext.n) if v not in a]
        for k in range(0, max_b + 1):
            for b in itertools.combinations(rest, k):
                ok = True
                for comp in ext.components:
                    n_sum = sum(ext.coefficients[v] for v in comp if v in b)
                    acc = n_sum
                    for v in comp:
                        if v in a:
                            acc = gcd(acc, ext.coefficients[v])
                    if acc != 1:
                        ok = False
                        break
                if not ok:
                    continue
                out = oracle_classify(_tie_graph(ext, a, b))
                if out is not None:
                    names.add(out.name)
    return names


def reflection_root_closure(ct: ComponentType) -> set[tuple[int, ...]]:
    """All roots of one reduced component, generated by simple reflections."""
    g = gram(realize(DynkinGraph((ct,))))
    n = len(g)
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]

    def pair(x, y) -> Fraction:
        return sum(g[i][j] * x[i] * y[j] for i in range(n) for j in range(n))

    roots = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                c = 2 * pair(r, simples[i]) / g[i][i]
                assert c.denominator == 1
                image = tuple(r[j] - (int(c) if j == i else 0) for j in range(n))
                for cand in (image, tuple(-x for x in image)):
                    if cand not in roots:
                        roots.add(cand)
                        nxt.append(cand)
        frontier = nxt
    return roots


def highest_root_coefficients(ct: ComponentType) -> tuple[int, ...]:
    """Coefficients of the maximal root in the layout's simple-root order.

    For the reduced types the maximal root is found by reflection closure;
    BC1 is non-reduced with maximal root twice the basis root, and G1 has
    root system {-g, g}, so their coefficients are (2,) and (1,).
    """
    if ct == BC1:
        return (2,)
    if ct == G1:
        return (1,)
    roots = reflection_root_closure(ct)
    return max(roots, key=lambda r: (sum(r), r))


def naive_short_vectors(matrix, bound, radius: int) -> set[tuple[int, ...]]:
    """Box search over coordinates in [-radius, radius]; complete only when
    the true vectors fit in the box."""
    limit = Fraction(bound)
    n = len(matrix)
    out = set()
    for vec in itertools.product(range(-radius, radius + 1), repeat=n):
        q = sum(matrix[i][j] * vec[i] * vec[j] for i in range(n) for j in range(n))
        if q <= limit:
            out.add(vec)
    return out
