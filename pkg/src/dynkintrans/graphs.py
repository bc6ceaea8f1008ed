"""Dynkin graphs built from the component types A, D, E, G2, G1 and BC1.

Connected components are restricted to the eight shapes that occur in
rational double point configurations on deformations of the nine E/Z/Q
triangle singularities: ``A_k`` (k >= 1), ``D_l`` (l >= 4), ``E6``, ``E7``,
``E8``, the two-vertex ``G2`` graph (one long root of norm 2, one short
root of norm 2/3, joined by a single edge), the one-vertex ``G1`` graph
(short root of norm 2/3) and the one-vertex ``BC1`` graph (non-reduced
root of norm 1/2).

Vertices carry exact rational norms and edges carry exact rational inner
products: -1 for every ordinary edge, -2 for the doubled edge of the
extended A1 graph, -2/3 for the doubled edge of the extended G1 graph.
Types B_k, C_k, F4 and BC_l with l >= 2 are unrepresentable: a root of
norm 1 never occurs here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

NORM_LONG = Fraction(2)
NORM_HALF = Fraction(1, 2)
NORM_SHORT = Fraction(2, 3)

ORDINARY_EDGE = Fraction(-1)

# Canonical component order: E > D > A > G2 > G1 > BC1, subscripts descending.
_FAMILY_RANK = {"E": 0, "D": 1, "A": 2, "G": 3, "BC": 4}


class ParseError(ValueError):
    """A graph name could not be parsed."""


class NotADynkinGraph(ValueError):
    """A labeled graph is not a disjoint union of the eight allowed shapes."""


@dataclass(frozen=True)
class ComponentType:
    """One connected component type, e.g. A(7), D(4), E(8), G2, G1, BC1."""

    family: str
    subscript: int

    def __post_init__(self) -> None:
        fam, sub = self.family, self.subscript
        ok = (
            (fam == "A" and sub >= 1)
            or (fam == "D" and sub >= 4)
            or (fam == "E" and sub in (6, 7, 8))
            or (fam == "G" and sub in (1, 2))
            or (fam == "BC" and sub == 1)
        )
        if not ok:
            raise ValueError(f"no Dynkin component of type {fam}{sub}")

    @property
    def vertex_count(self) -> int:
        if self.family in ("A", "D", "E"):
            return self.subscript
        if self.family == "G" and self.subscript == 2:
            return 2
        return 1  # G1 and BC1

    @property
    def name(self) -> str:
        return f"{self.family}{self.subscript}"

    @property
    def sort_key(self) -> tuple[int, int]:
        return (_FAMILY_RANK[self.family], -self.subscript)

    def __repr__(self) -> str:
        return f"ComponentType({self.name})"


def A(k: int) -> ComponentType:
    return ComponentType("A", k)


def D(l: int) -> ComponentType:
    return ComponentType("D", l)


def E(n: int) -> ComponentType:
    return ComponentType("E", n)


G2 = ComponentType("G", 2)
G1 = ComponentType("G", 1)
BC1 = ComponentType("BC", 1)


@dataclass(frozen=True)
class DynkinGraph:
    """A finite multiset of components; order never matters."""

    components: tuple[ComponentType, ...] = ()

    def __post_init__(self) -> None:
        comps = tuple(sorted(self.components, key=lambda c: c.sort_key))
        object.__setattr__(self, "components", comps)

    @property
    def total_vertices(self) -> int:
        return sum(c.vertex_count for c in self.components)

    @property
    def is_empty(self) -> bool:
        return not self.components

    @property
    def is_ade(self) -> bool:
        return all(c.family in ("A", "D", "E") for c in self.components)

    @property
    def name(self) -> str:
        return canonical_name(self)

    def __str__(self) -> str:
        return self.name or "(empty)"

    def __repr__(self) -> str:
        return f"DynkinGraph({self.name!r})"


EMPTY = DynkinGraph()

_TOKEN = re.compile(r"(\d+)?(BC|[ADEG])(\d+)")


def parse_name(text: str) -> DynkinGraph:
    """Parse names like ``"A7+A4"``, ``"E8+G2"`` or ``"2A3+BC1"``.

    A component token is an optional multiplicity prefix followed by one of
    A<k>, D<l>, E6, E7, E8, G2, G1, BC1.  Whitespace is ignored; the empty
    string denotes the empty graph.
    """
    s = "".join(text.split())
    if not s:
        return EMPTY
    comps: list[ComponentType] = []
    for token in s.split("+"):
        m = _TOKEN.fullmatch(token)
        if m is None:
            raise ParseError(f"malformed component token {token!r} in {text!r}")
        mult = int(m.group(1)) if m.group(1) else 1
        if mult < 1:
            raise ParseError(f"zero multiplicity in token {token!r}")
        try:
            ct = ComponentType(m.group(2), int(m.group(3)))
        except ValueError:
            raise ParseError(f"out-of-range component token {token!r}") from None
        comps.extend([ct] * mult)
    return DynkinGraph(tuple(comps))


def canonical_name(g: DynkinGraph) -> str:
    """Deterministic name: components sorted E>D>A>G2>G1>BC1, subscripts descending."""
    return "+".join(c.name for c in g.components)


@dataclass(frozen=True)
class Vertex:
    """A vertex with an opaque id and an exact norm (2, 1/2 or 2/3)."""

    id: str
    norm: Fraction


@dataclass(frozen=True)
class LabeledGraph:
    """Vertices with norms plus edges labeled by nonzero inner products.

    Edges are stored as ``(i, j, value)`` with ``i < j``; an absent pair
    means inner product 0.  The Gram matrix (diagonal = norms,
    off-diagonal = edge labels) is symmetric by construction.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self) -> None:
        n = len(self.vertices)
        seen = set()
        norm: list[tuple[int, int, Fraction]] = []
        for i, j, val in self.edges:
            if i == j:
                raise ValueError(f"self-edge at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i},{j}) out of range")
            if val == 0:
                raise ValueError(f"zero inner product stored for edge ({i},{j})")
            if i > j:
                i, j = j, i
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i},{j})")
            seen.add((i, j))
            norm.append((i, j, Fraction(val)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def norm(self, i: int) -> Fraction:
        return self.vertices[i].norm

    def adjacency(self) -> list[dict[int, Fraction]]:
        adj: list[dict[int, Fraction]] = [{} for _ in range(self.n)]
        for i, j, val in self.edges:
            adj[i][j] = val
            adj[j][i] = val
        return adj

    def induced(self, indices: Iterable[int]) -> "LabeledGraph":
        """The induced subgraph on the given vertex indices."""
        idx = sorted(set(indices))
        pos = {v: k for k, v in enumerate(idx)}
        verts = tuple(self.vertices[v] for v in idx)
        edges = tuple(
            (pos[i], pos[j], val)
            for i, j, val in self.edges
            if i in pos and j in pos
        )
        return LabeledGraph(verts, edges)


@dataclass(frozen=True)
class ExtendedGraph:
    """A labeled graph with one added vertex per component and root coefficients.

    ``coefficients[i]`` is the coefficient of vertex ``i`` in the maximal
    root of its component; every added vertex, which stands for the
    negative of the maximal root, carries coefficient 1.  ``components``
    lists the vertex indices of each connected component (added vertex
    last) in the documented deterministic ordering used by all
    transformation witnesses.
    """

    graph: DynkinGraph
    base: LabeledGraph
    coefficients: tuple[int, ...]
    added: frozenset[int]
    components: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.base.n


@dataclass(frozen=True)
class _Layout:
    """Per-type recipe: base vertices/edges plus the extension data."""

    norms: tuple[Fraction, ...]
    edges: tuple[tuple[int, int, Fraction], ...]
    roles: tuple[str, ...]
    coeffs: tuple[int, ...]
    added_norm: Fraction
    added_edges: tuple[tuple[int, Fraction], ...]


# Maximal-root coefficient tables, validated against the -eta Gram identity
# by check_extension_identity (a transcription error cannot survive).
_E_PATH_COEFFS = {6: (1, 2, 3, 2, 1), 7: (2, 3, 4, 3, 2, 1), 8: (2, 4, 6, 5, 4, 3, 2)}
_E_BRANCH_COEFF = {6: 2, 7: 2, 8: 3}
# Added vertex attaches to: E6 the branch vertex, E7 the first path vertex,
# E8 the last path vertex.
_E_ADDED_AT = {6: "branch", 7: "first", 8: "last"}


def _layout(ct: ComponentType) -> _Layout:
    fam, sub = ct.family, ct.subscript
    m1 = ORDINARY_EDGE
    if fam == "A":
        k = sub
        norms = (NORM_LONG,) * k
        edges = tuple((i, i + 1, m1) for i in range(k - 1))
        roles = tuple(f"v{i + 1}" for i in range(k))
        coeffs = (1,) * k
        if k == 1:
            added_edges = ((0, Fraction(-2)),)
        else:
            added_edges = ((0, m1), (k - 1, m1))
        return _Layout(norms, edges, roles, coeffs, NORM_LONG, added_edges)
    if fam == "D":
        l = sub
        # Path v1..v_{l-2}, the fork vertices f1, f2 on v_{l-2}; the added
        # vertex attaches to v2, so the extended graph is forked at both ends.
        norms = (NORM_LONG,) * l
        edges = tuple((i, i + 1, m1) for i in range(l - 3))
        edges += ((l - 3, l - 2, m1), (l - 3, l - 1, m1))
        roles = tuple(f"v{i + 1}" for i in range(l - 2)) + ("f1", "f2")
        coeffs = (1,) + (2,) * (l - 3) + (1, 1)
        return _Layout(norms, edges, roles, coeffs, NORM_LONG, ((1, m1),))
    if fam == "E":
        n = sub
        path = n - 1
        norms = (NORM_LONG,) * n
        edges = tuple((i, i + 1, m1) for i in range(path - 1))
        edges += ((2, path, m1),)  # branch vertex hangs on the third path vertex
        roles = tuple(f"v{i + 1}" for i in range(path)) + ("b",)
        coeffs = _E_PATH_COEFFS[n] + (_E_BRANCH_COEFF[n],)
        at = {"branch": path, "first": 0, "last": path - 1}[_E_ADDED_AT[n]]
        return _Layout(norms, edges, roles, coeffs, NORM_LONG, ((at, m1),))
    if fam == "G" and sub == 2:
        # One long and one short root at 150 degrees: inner product -1.
        return _Layout(
            (NORM_LONG, NORM_SHORT),
            ((0, 1, m1),),
            ("long", "short"),
            (2, 3),
            NORM_LONG,
            ((0, m1),),
        )
    if fam == "G" and sub == 1:
        return _Layout(
            (NORM_SHORT,), (), ("v",), (1,), NORM_SHORT, ((0, Fraction(-2, 3)),)
        )
    # BC1: the maximal root is twice the basis root, so the added vertex is
    # an ordinary norm-2 circle and the basis root carries coefficient 2.
    return _Layout((NORM_HALF,), (), ("v",), (2,), NORM_LONG, ((0, m1),))


def _occurrence_labels(g: DynkinGraph) -> list[str]:
    counts: dict[str, int] = {}
    labels = []
    for ct in g.components:
        counts[ct.name] = counts.get(ct.name, 0) + 1
        labels.append(f"{ct.name}[{counts[ct.name]}]")
    return labels


def realize(g: DynkinGraph) -> LabeledGraph:
    """The standard labeled graph of ``g`` in the documented vertex order.

    Components appear in canonical order; within a component the vertices
    follow the layout order (path vertices, then fork/branch vertices).
    """
    verts: list[Vertex] = []
    edges: list[tuple[int, int, Fraction]] = []
    prefixes = _occurrence_labels(g)
    offset = 0
    for ct, prefix in zip(g.components, prefixes):
        lay = _layout(ct)
        verts.extend(
            Vertex(f"{prefix}.{role}", norm) for role, norm in zip(lay.roles, lay.norms)
        )
        edges.extend((offset + i, offset + j, val) for i, j, val in lay.edges)
        offset += ct.vertex_count
    return LabeledGraph(tuple(verts), tuple(edges))


def extend(g: DynkinGraph) -> ExtendedGraph:
    """Replace each component by its extended graph and attach coefficients.

    Per component one vertex standing for the negative of the maximal root
    is appended after the base vertices (role ``x``, coefficient 1); the
    base vertices carry the coefficients of the maximal root.  The identity
    row(x) = -sum(coeff_i * row(i)) over each component's Gram rows is
    asserted, which validates every coefficient table.
    """
    verts: list[Vertex] = []
    edges: list[tuple[int, int, Fraction]] = []
    coeffs: list[int] = []
    added: set[int] = set()
    comps: list[tuple[int, ...]] = []
    prefixes = _occurrence_labels(g)
    offset = 0
    for ct, prefix in zip(g.components, prefixes):
        lay = _layout(ct)
        k = ct.vertex_count
        verts.extend(
            Vertex(f"{prefix}.{role}", norm) for role, norm in zip(lay.roles, lay.norms)
        )
        verts.append(Vertex(f"{prefix}.x", lay.added_norm))
        edges.extend((offset + i, offset + j, val) for i, j, val in lay.edges)
        edges.extend((offset + i, offset + k, val) for i, val in lay.added_edges)
        coeffs.extend(lay.coeffs)
        coeffs.append(1)
        added.add(offset + k)
        comps.append(tuple(range(offset, offset + k + 1)))
        offset += k + 1
    ext = ExtendedGraph(
        graph=g,
        base=LabeledGraph(tuple(verts), tuple(edges)),
        coefficients=tuple(coeffs),
        added=frozenset(added),
        components=tuple(comps),
    )
    for ct, comp in zip(g.components, ext.components):
        if not _extension_identity_holds(ext, comp):
            raise AssertionError(f"maximal-root coefficient table broken for {ct.name}")
    return ext


def _extension_identity_holds(ext: ExtendedGraph, comp: tuple[int, ...]) -> bool:
    """Check row(x) == -sum(n_i * row(i)) on one component of the Gram matrix."""
    gm = gram(ext.base)
    x = comp[-1]
    for j in comp:
        acc = sum((ext.coefficients[i] * gm[i][j] for i in comp[:-1]), Fraction(0))
        if gm[x][j] != -acc:
            return False
    return True


def check_extension_identity(ct: ComponentType) -> None:
    """Raise if the extension of a single component violates the -eta identity."""
    g = DynkinGraph((ct,))
    ext = extend(g)  # extend itself asserts the identity
    assert _extension_identity_holds(ext, ext.components[0])


def gram(lg: LabeledGraph) -> tuple[tuple[Fraction, ...], ...]:
    """The symmetric Gram matrix of a labeled graph in its vertex order."""
    n = lg.n
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = lg.norm(i)
    for i, j, val in lg.edges:
        m[i][j] = val
        m[j][i] = val
    return tuple(tuple(row) for row in m)


def _connected_components(lg: LabeledGraph) -> list[list[int]]:
    adj = lg.adjacency()
    seen = [False] * lg.n
    comps = []
    for start in range(lg.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _classify_component(lg: LabeledGraph, idxs: list[int]) -> ComponentType:
    norms = [lg.norm(i) for i in idxs]
    size = len(idxs)
    if size == 1:
        norm = norms[0]
        if norm == NORM_LONG:
            return A(1)
        if norm == NORM_HALF:
            return BC1
        if norm == NORM_SHORT:
            return G1
        raise NotADynkinGraph(f"isolated vertex of norm {norm}")
    inside = set(idxs)
    edges = [(i, j, val) for i, j, val in lg.edges if i in inside and j in inside]
    if any(val != ORDINARY_EDGE for _, _, val in edges):
        bad = [val for _, _, val in edges if val != ORDINARY_EDGE]
        raise NotADynkinGraph(f"component with edge label {bad[0]} (only -1 allowed)")
    if any(n == NORM_HALF for n in norms):
        raise NotADynkinGraph("norm-1/2 vertex in a component of size > 1")
    shorts = sum(1 for n in norms if n == NORM_SHORT)
    if shorts:
        if size == 2 and shorts == 1 and NORM_LONG in norms:
            return G2
        raise NotADynkinGraph(
            f"norm-2/3 vertex in a component of size {size} that is not the G2 shape"
        )
    if any(n != NORM_LONG for n in norms):
        raise NotADynkinGraph(f"unexpected vertex norm {set(norms)}")
    # All vertices have norm 2 and all edges are -1: an A/D/E candidate.
    if len(edges) != size - 1:
        raise NotADynkinGraph(f"component with {len(edges)} edges on {size} vertices")
    nbrs: dict[int, list[int]] = {i: [] for i in idxs}
    for i, j, _ in edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    degrees = {i: len(v) for i, v in nbrs.items()}
    if max(degrees.values()) > 3:
        raise NotADynkinGraph("vertex of degree > 3")
    forks = [i for i, d in degrees.items() if d == 3]
    if not forks:
        return A(size)
    if len(forks) > 1:
        raise NotADynkinGraph("more than one trivalent vertex")
    legs = []
    fork = forks[0]
    for first in nbrs[fork]:
        length = 1
        prev, cur = fork, first
        while degrees[cur] == 2:
            nxt = [w for w in nbrs[cur] if w != prev][0]
            prev, cur = cur, nxt
            length += 1
        legs.append(length)
    legs.sort()
    if legs[0] == 1 and legs[1] == 1:
        return D(size)
    if legs == [1, 2, 2]:
        return E(6)
    if legs == [1, 2, 3]:
        return E(7)
    if legs == [1, 2, 4]:
        return E(8)
    raise NotADynkinGraph(f"trivalent tree with leg lengths {legs}")


def classify(lg: LabeledGraph) -> DynkinGraph:
    """Recognize a labeled graph as a Dynkin graph, or raise NotADynkinGraph.

    Each connected component is matched structurally (norm census, degree
    sequence, fork and leg analysis) against the eight allowed shapes.
    """
    comps = _connected_components(lg)
    return DynkinGraph(tuple(_classify_component(lg, c) for c in comps))


def component_subgraphs(lg: LabeledGraph) -> Iterator[LabeledGraph]:
    """The connected components of ``lg`` as labeled graphs."""
    for comp in _connected_components(lg):
        yield lg.induced(comp)
