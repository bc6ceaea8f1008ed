"""Elementary and tie transformations of Dynkin graphs.

Both transformations start by replacing every connected component with its
extended graph carrying maximal-root coefficients (``graphs.extend``).

* An elementary transformation removes at least one vertex from each
  component of the extended graph.  Every such removal yields a Dynkin
  graph again.
* A tie transformation chooses disjoint vertex sets A and B of the
  extended graph, subject to #B <= 3, at least one A-vertex per component,
  and a per-component gcd-1 condition on the attached coefficients; it
  removes A and joins one new norm-2 vertex to every vertex of B.  Only
  choices whose outcome is again a Dynkin graph are kept.

``elementary_all`` and ``tie_all`` enumerate every admissible choice,
deduplicate outcomes by canonical name and keep one replayable witness per
distinct outcome.  ``apply`` replays a single recorded choice through the
generic labeled-graph path, independently of the enumeration engine.

Choice indices always refer to the documented vertex ordering of
``graphs.extend`` on the input graph, so witnesses are stable across runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Union

from .graphs import (
    ComponentType,
    DynkinGraph,
    ExtendedGraph,
    LabeledGraph,
    NORM_HALF,
    NORM_LONG,
    NORM_SHORT,
    ORDINARY_EDGE,
    Vertex,
    canonical_name,
    classify,
    extend,
)


class InvalidChoice(ValueError):
    """A transformation choice violates one of its defining conditions."""


@dataclass(frozen=True)
class ElementaryChoice:
    """Vertex indices of the extended graph removed by an elementary step."""

    removed: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "removed", tuple(sorted(self.removed)))


@dataclass(frozen=True)
class TieChoice:
    """The sets A (removed) and B (joined to the new vertex) of a tie step."""

    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(sorted(self.a)))
        object.__setattr__(self, "b", tuple(sorted(self.b)))


Choice = Union[ElementaryChoice, TieChoice]


@dataclass(frozen=True)
class TransformStep:
    """One recorded transformation: replaying ``choice`` on ``input`` gives ``output``."""

    choice: Choice
    input: DynkinGraph
    output: DynkinGraph

    @property
    def kind(self) -> str:
        return "elementary" if isinstance(self.choice, ElementaryChoice) else "tie"

    def replay(self) -> DynkinGraph:
        return apply(self.input, self.choice)


def _validate_indices(ext: ExtendedGraph, ids: Iterable[int], what: str) -> None:
    for i in ids:
        if not (0 <= i < ext.n):
            raise InvalidChoice(f"{what} contains vertex index {i}, graph has {ext.n} vertices")


def _check_elementary(ext: ExtendedGraph, choice: ElementaryChoice) -> None:
    _validate_indices(ext, choice.removed, "removed set")
    if len(set(choice.removed)) != len(choice.removed):
        raise InvalidChoice("removed set contains a repeated vertex")
    removed = set(choice.removed)
    for comp in ext.components:
        if not removed.intersection(comp):
            raise InvalidChoice(
                "elementary transformation must remove at least one vertex per component"
            )


def _check_tie(ext: ExtendedGraph, choice: TieChoice) -> None:
    _validate_indices(ext, choice.a, "A")
    _validate_indices(ext, choice.b, "B")
    aset, bset = set(choice.a), set(choice.b)
    if len(aset) != len(choice.a) or len(bset) != len(choice.b):
        raise InvalidChoice("A or B contains a repeated vertex")
    if aset & bset:
        raise InvalidChoice("condition <a> violated: A and B intersect")
    if len(bset) > 3:
        raise InvalidChoice(f"#B = {len(bset)} exceeds the bound 0 <= #B <= 3")
    for comp in ext.components:
        in_a = [v for v in comp if v in aset]
        if not in_a:
            raise InvalidChoice("tie transformation needs at least one A-vertex per component")
        n_sum = sum(ext.coefficients[v] for v in comp if v in bset)
        g = n_sum
        for v in in_a:
            g = gcd(g, ext.coefficients[v])
        if g != 1:
            raise InvalidChoice(
                "condition <b> violated: coefficient gcd on a component is "
                f"{g}, not 1"
            )


def apply_labeled(g: DynkinGraph, choice: Choice) -> LabeledGraph:
    """The labeled graph produced by one choice, before recognition.

    For an elementary choice this is the extended graph minus the removed
    vertices; for a tie choice the extended graph minus A plus one new
    norm-2 vertex joined to every vertex of B with inner product -1.
    """
    ext = extend(g)
    if isinstance(choice, ElementaryChoice):
        _check_elementary(ext, choice)
        keep = [i for i in range(ext.n) if i not in set(choice.removed)]
        return ext.base.induced(keep)
    _check_tie(ext, choice)
    keep = [i for i in range(ext.n) if i not in set(choice.a)]
    pos = {v: k for k, v in enumerate(keep)}
    verts = tuple(ext.base.vertices[v] for v in keep) + (Vertex("new", NORM_LONG),)
    new_idx = len(keep)
    edges = [
        (pos[i], pos[j], val)
        for i, j, val in ext.base.edges
        if i in pos and j in pos
    ]
    edges.extend((pos[b], new_idx, ORDINARY_EDGE) for b in choice.b)
    return LabeledGraph(verts, tuple(edges))


def apply(g: DynkinGraph, choice: Choice) -> DynkinGraph:
    """Replay one recorded choice; agrees with the *_all entry it came from.

    Raises InvalidChoice when the choice violates its defining conditions
    and NotADynkinGraph when a tie outcome fails recognition.
    """
    return classify(apply_labeled(g, choice))


# ---------------------------------------------------------------------------
# Fast enumeration core.
#
# The engine mirrors extend(g) as bitmask data and encodes component types
# as single integers whose natural order is the canonical component order
# (family rank ascending, subscript descending), so result multisets are
# plain sorted int tuples.  Residual structure is cached per component
# because elementary and tie enumeration range over the same submasks, and
# every vertex of a residual carries a precomputed attachment descriptor
# from which the shape of any tie fusion follows arithmetically.
# ---------------------------------------------------------------------------

_NORM_CODE = {NORM_LONG: 0, NORM_HALF: 1, NORM_SHORT: 2}

_RANK_E, _RANK_D, _RANK_A, _RANK_G, _RANK_BC = 0, 1, 2, 3, 4
_FAMILY_BY_RANK = {_RANK_E: "E", _RANK_D: "D", _RANK_A: "A", _RANK_G: "G", _RANK_BC: "BC"}


def _code(rank: int, subscript: int) -> int:
    return (rank << 10) | (1024 - subscript)


_CODE_A1 = _code(_RANK_A, 1)
_CODE_G2 = _code(_RANK_G, 2)
_CODE_G1 = _code(_RANK_G, 1)
_CODE_BC1 = _code(_RANK_BC, 1)
_LEG_CODES = {
    (1, 2, 2): _code(_RANK_E, 6),
    (1, 2, 3): _code(_RANK_E, 7),
    (1, 2, 4): _code(_RANK_E, 8),
}

_DECODE_MEMO: dict[int, ComponentType] = {}


def _decode(code: int) -> ComponentType:
    ct = _DECODE_MEMO.get(code)
    if ct is None:
        ct = ComponentType(_FAMILY_BY_RANK[code >> 10], 1024 - (code & 1023))
        _DECODE_MEMO[code] = ct
    return ct


def _decode_graph(codes: tuple[int, ...]) -> DynkinGraph:
    return DynkinGraph(tuple(_decode(c) for c in codes))


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        mask ^= b
        out.append(b.bit_length() - 1)
    return out


class _CompCore:
    """Mask-level view of one extended component plus residual caches."""

    __slots__ = ("lo", "size", "full", "adj", "coeff", "norm", "gcd_table", "abits", "_residuals")

    def __init__(self, ext: ExtendedGraph, comp: tuple[int, ...]):
        self.lo = comp[0]
        self.size = len(comp)
        self.full = (1 << self.size) - 1
        adj = [0] * self.size
        inside = set(comp)
        for i, j, _val in ext.base.edges:
            if i in inside and j in inside:
                adj[i - self.lo] |= 1 << (j - self.lo)
                adj[j - self.lo] |= 1 << (i - self.lo)
        self.adj = adj
        self.coeff = [ext.coefficients[v] for v in comp]
        self.norm = [_NORM_CODE[ext.base.norm(v)] for v in comp]
        # gcd of the coefficients picked by each submask, and the submask's
        # member list in ascending global indices
        table = [0] * (1 << self.size)
        abits: list[tuple[int, ...]] = [()] * (1 << self.size)
        for m in range(1, 1 << self.size):
            low = m & -m
            v = low.bit_length() - 1
            rest = m ^ low
            table[m] = gcd(table[rest], self.coeff[v])
            abits[m] = (v + self.lo,) + abits[rest]
        self.gcd_table = table
        self.abits = abits
        self._residuals: dict[int, "_Residual"] = {}

    def residual(self, mask: int) -> "_Residual":
        res = self._residuals.get(mask)
        if res is None:
            res = _Residual(self, mask)
            self._residuals[mask] = res
        return res


# Attachment descriptors: how the new tie vertex may fasten to a residual
# piece at one of its vertices.  None marks attachments that can never give
# a Dynkin shape (norm-1/2 vertices, G2 pieces, fork vertices, interior
# vertices of forked pieces).
_D_PATH = 0  # (0, size, dnear, dfar): path piece, distances to its two ends
_D_FORK = 1  # (1, size, leg_a, leg_b, leg_own): leaf of a one-fork piece
_D_SHORT = 2  # (2,): isolated norm-2/3 vertex; new--short is the G2 shape


class _Residual:
    """Decomposition of one residual submask into classified pieces."""

    __slots__ = ("pieces", "types", "piece_id", "desc", "positions")

    def __init__(self, comp: _CompCore, mask: int):
        adj = comp.adj
        lo = comp.lo
        pieces: list[int] = []
        piece_id = [-1] * comp.size
        todo = mask
        while todo:
            low = todo & -todo
            piece = low
            frontier = low
            while True:
                grow = 0
                f = frontier
                while f:
                    b = f & -f
                    f ^= b
                    grow |= adj[b.bit_length() - 1] & mask
                grow &= ~piece
                if not grow:
                    break
                piece |= grow
                frontier = grow
            idx = len(pieces)
            pieces.append(piece)
            p = piece
            while p:
                b = p & -p
                p ^= b
                piece_id[b.bit_length() - 1] = idx
            todo &= ~piece
        self.pieces = pieces
        self.piece_id = piece_id
        self.types = tuple(_classify_piece(comp, piece) for piece in pieces)
        self.positions = tuple(v + lo for v in _bits(mask))
        desc: list[tuple | None] = [None] * comp.size
        norm = comp.norm
        for piece in pieces:
            verts = _bits(piece)
            size = len(verts)
            if size == 1:
                v = verts[0]
                code = norm[v]
                if code == 0:
                    desc[v] = (_D_PATH, 1, 0, 0)
                elif code == 2:
                    desc[v] = (_D_SHORT,)
                continue
            if any(norm[v] for v in verts):
                continue  # G2 piece: no attachment can stay a Dynkin shape
            degs = {v: (adj[v] & piece).bit_count() for v in verts}
            forks = [v for v in verts if degs[v] == 3]
            if not forks:
                ends = [v for v in verts if degs[v] == 1]
                dist = {ends[0]: 0}
                prev, cur = -1, ends[0]
                for step in range(1, size):
                    nxt_mask = adj[cur] & piece
                    if prev >= 0:
                        nxt_mask &= ~(1 << prev)
                    prev, cur = cur, nxt_mask.bit_length() - 1
                    dist[cur] = step
                for v in verts:
                    d1 = dist[v]
                    d2 = size - 1 - d1
                    desc[v] = (_D_PATH, size, d1, d2) if d1 <= d2 else (_D_PATH, size, d2, d1)
            else:
                fork = forks[0]
                legs: list[tuple[int, int]] = []  # (length, leaf vertex)
                for first in _bits(adj[fork] & piece):
                    length = 1
                    prev, cur = fork, first
                    while degs[cur] == 2:
                        nxt_mask = adj[cur] & piece & ~(1 << prev)
                        prev, cur = cur, nxt_mask.bit_length() - 1
                        length += 1
                    legs.append((length, cur))
                for k, (length, leaf) in enumerate(legs):
                    others = [legs[j][0] for j in range(3) if j != k]
                    desc[leaf] = (_D_FORK, size, others[0], others[1], length)
        self.desc = desc


def _classify_piece(comp: _CompCore, piece: int) -> int:
    """Type code of one connected residual piece of an extended component.

    Residual pieces of the eight extended shapes are always one of the
    eight shapes again, so any failure here is an engine bug.
    """
    verts = _bits(piece)
    size = len(verts)
    norm = comp.norm
    if size == 1:
        code = norm[verts[0]]
        return _CODE_A1 if code == 0 else (_CODE_BC1 if code == 1 else _CODE_G1)
    shorts = [v for v in verts if norm[v] == 2]
    assert not any(norm[v] == 1 for v in verts), "norm-1/2 vertex in a large piece"
    if shorts:
        assert size == 2 and len(shorts) == 1, "unexpected short-root piece"
        return _CODE_G2
    adj = comp.adj
    degs = {v: (adj[v] & piece).bit_count() for v in verts}
    nedges = sum(degs.values()) // 2
    assert nedges == size - 1, "cyclic residual piece"
    forks = [v for v in verts if degs[v] == 3]
    assert all(degs[v] <= 3 for v in verts), "degree > 3 in residual piece"
    if not forks:
        return _code(_RANK_A, size)
    assert len(forks) == 1, "two trivalent vertices in residual piece"
    legs = []
    fork = forks[0]
    for first in _bits(adj[fork] & piece):
        length = 1
        prev, cur = fork, first
        while degs[cur] == 2:
            nxt_mask = adj[cur] & piece & ~(1 << prev)
            prev, cur = cur, nxt_mask.bit_length() - 1
            length += 1
        legs.append(length)
    legs.sort()
    if legs[0] == 1 and legs[1] == 1:
        return _code(_RANK_D, size)
    shape = _LEG_CODES.get(tuple(legs))
    assert shape is not None, f"residual piece with legs {legs}"
    return shape


def _legs_code(l1: int, l2: int, l3: int) -> int | None:
    """Shape code for a single-fork tree with sorted leg lengths l1<=l2<=l3."""
    if l1 == 1 and l2 == 1:
        return _code(_RANK_D, l3 + 3)
    return _LEG_CODES.get((l1, l2, l3))


def _fuse1(d: tuple) -> int | None:
    """Shape of: new vertex attached to one piece."""
    tag = d[0]
    if tag == _D_PATH:
        _, size, dnear, dfar = d
        if dnear == 0:
            return _code(_RANK_A, size + 1)
        if dnear == 1:
            return _code(_RANK_D, size + 1)
        return _LEG_CODES.get((1, dnear, dfar))
    if tag == _D_SHORT:
        return _CODE_G2
    _, _size, la, lb, own = d
    legs = sorted((la, lb, own + 1))
    return _legs_code(*legs)


def _fuse2(d1: tuple, d2: tuple) -> int | None:
    """Shape of: new vertex joining two distinct pieces."""
    t1, t2 = d1[0], d2[0]
    if t1 == _D_SHORT or t2 == _D_SHORT:
        return None
    end1 = t1 == _D_PATH and d1[2] == 0
    end2 = t2 == _D_PATH and d2[2] == 0
    if end1 and end2:
        return _code(_RANK_A, d1[1] + d2[1] + 1)
    if not (end1 or end2):
        return None  # two branch points
    if not end1:
        d1, d2 = d2, d1  # d1 is the plain path end, d2 carries the branching
    tail = d1[1] + 1  # leg through the new vertex and the whole path piece
    if d2[0] == _D_PATH:
        legs = sorted((d2[2], d2[3], tail))
    else:
        _, _size, la, lb, own = d2
        legs = sorted((la, lb, own + tail))
    return _legs_code(*legs)


def _fuse3(d1: tuple, d2: tuple, d3: tuple) -> int | None:
    """Shape of: new vertex joining three distinct pieces (it is the fork)."""
    for d in (d1, d2, d3):
        if d[0] != _D_PATH or d[2] != 0:
            return None
    legs = sorted((d1[1], d2[1], d3[1]))
    return _legs_code(*legs)


class _Core:
    """Mask-level view of a full extended graph."""

    __slots__ = ("ext", "n", "comps", "comp_of", "coeff", "norm", "adj")

    def __init__(self, g: DynkinGraph):
        ext = extend(g)
        self.ext = ext
        self.n = ext.n
        self.comps = [_CompCore(ext, comp) for comp in ext.components]
        comp_of = [0] * ext.n
        for ci, comp in enumerate(ext.components):
            for v in comp:
                comp_of[v] = ci
        self.comp_of = comp_of
        self.coeff = list(ext.coefficients)
        self.norm = [_NORM_CODE[ext.base.norm(v)] for v in range(ext.n)]
        adj = [0] * ext.n
        for i, j, _val in ext.base.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        self.adj = adj


_CORE_MEMO: dict[str, _Core] = {}


def _core(g: DynkinGraph) -> _Core:
    key = canonical_name(g)
    core = _CORE_MEMO.get(key)
    if core is None:
        core = _Core(g)
        _CORE_MEMO[key] = core
    return core


_MEMO_ELEMENTARY: dict[str, list[tuple[DynkinGraph, ElementaryChoice]]] = {}
_MEMO_TIE: dict[str, list[tuple[DynkinGraph, TieChoice]]] = {}


def clear_transform_cache() -> None:
    """Drop the in-process enumeration memos (mostly for benchmarks/tests)."""
    _CORE_MEMO.clear()
    _MEMO_ELEMENTARY.clear()
    _MEMO_TIE.clear()


def elementary_all(g: DynkinGraph) -> list[tuple[DynkinGraph, ElementaryChoice]]:
    """All outcomes of elementary transformations of ``g``.

    Returns pairs (outcome, witness choice), deduplicated by canonical name
    and sorted by it; per outcome the witness with the smallest removed
    index tuple is kept.  Removing exactly the added vertices reproduces
    ``g``, and removing everything yields the empty graph.
    """
    key = canonical_name(g)
    cached = _MEMO_ELEMENTARY.get(key)
    if cached is not None:
        return list(cached)
    core = _core(g)
    per_comp: list[dict[tuple[int, ...], tuple[int, ...]]] = []
    for comp in core.comps:
        opts: dict[tuple[int, ...], tuple[int, ...]] = {}
        for removed in range(1, comp.full + 1):
            residual = comp.full ^ removed
            ts = tuple(sorted(comp.residual(residual).types))
            enc = comp.abits[removed]
            old = opts.get(ts)
            if old is None or enc < old:
                opts[ts] = enc
        per_comp.append(opts)
    results: dict[tuple[int, ...], tuple[int, ...]] = {}
    for combo in itertools.product(*(list(o.items()) for o in per_comp)):
        types = tuple(sorted(t for ts, _ in combo for t in ts))
        enc = tuple(v for _, part in combo for v in part)
        old = results.get(types)
        if old is None or enc < old:
            results[types] = enc
    out = [
        (_decode_graph(types), ElementaryChoice(enc)) for types, enc in results.items()
    ]
    out.sort(key=lambda pair: canonical_name(pair[0]))
    _MEMO_ELEMENTARY[key] = out
    return list(out)


def tie_all(g: DynkinGraph) -> list[tuple[DynkinGraph, TieChoice]]:
    """All outcomes of tie transformations of ``g``.

    Enumerates every admissible (A, B) over the extended graph: at least
    one A-vertex per component, A and B disjoint, #B <= 3, per-component
    gcd of the A-coefficients and the B-coefficient sum equal to 1.  Only
    choices whose outcome is a Dynkin graph are kept; outcomes are
    deduplicated by canonical name with the smallest (A, B) witness.
    """
    key = canonical_name(g)
    cached = _MEMO_TIE.get(key)
    if cached is not None:
        return list(cached)
    core = _core(g)
    comps = core.comps
    results: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, ...]]] = {}

    if not comps:
        # The empty graph has no components; A = B = {} and the new vertex
        # lands isolated.
        results[(_CODE_A1,)] = ((), ())
    else:
        coeff = core.coeff
        comp_of = core.comp_of
        combinations = itertools.combinations
        resget = results.get
        ncomps = len(comps)
        los = [c.lo for c in comps]
        ranges = [range(1, c.full + 1) for c in comps]
        mixed_idx = [i for i, c in enumerate(comps) if any(x != 1 for x in c.coeff)]
        for a_combo in itertools.product(*ranges):
            bad = [i for i in mixed_idx if comps[i].gcd_table[a_combo[i]] != 1]
            if len(bad) > 3:
                continue
            residuals = []
            a_parts = []
            all_types: list[int] = []
            positions: list[int] = []
            descs: list[tuple | None] = [None] * core.n
            for i in range(ncomps):
                c = comps[i]
                a = a_combo[i]
                res = c.residual(c.full ^ a)
                residuals.append(res)
                a_parts.append(c.abits[a])
                all_types.extend(res.types)
                positions.extend(res.positions)
                lo = c.lo
                rdesc = res.desc
                for p in res.positions:
                    descs[p] = rdesc[p - lo]
            a_tuple = tuple(v for part in a_parts for v in part)
            if not bad:
                types = tuple(sorted(all_types + [_CODE_A1]))
                old = resget(types)
                if old is None or (a_tuple, ()) < old:
                    results[types] = (a_tuple, ())
            for k in (1, 2, 3):
                for b in combinations(positions, k):
                    if bad:
                        ok = True
                        for ci in bad:
                            nsum = 0
                            for v in b:
                                if comp_of[v] == ci:
                                    nsum += coeff[v]
                            if gcd(comps[ci].gcd_table[a_combo[ci]], nsum) != 1:
                                ok = False
                                break
                        if not ok:
                            continue
                    if k == 1:
                        v0 = b[0]
                        d0 = descs[v0]
                        if d0 is None:
                            continue
                        fused = _fuse1(d0)
                        if fused is None:
                            continue
                        ci0 = comp_of[v0]
                        touched = ((ci0, residuals[ci0].piece_id[v0 - los[ci0]]),)
                    else:
                        touched_list = []
                        ds = []
                        valid = True
                        for v in b:
                            d = descs[v]
                            if d is None:
                                valid = False
                                break
                            ci = comp_of[v]
                            pid = residuals[ci].piece_id[v - los[ci]]
                            tk = (ci, pid)
                            if tk in touched_list:
                                # two B-vertices in one piece close a cycle
                                valid = False
                                break
                            touched_list.append(tk)
                            ds.append(d)
                        if not valid:
                            continue
                        fused = _fuse2(*ds) if k == 2 else _fuse3(*ds)
                        if fused is None:
                            continue
                        touched = tuple(touched_list)
                    types_list = list(all_types)
                    for ci, pid in touched:
                        types_list.remove(residuals[ci].types[pid])
                    types_list.append(fused)
                    types = tuple(sorted(types_list))
                    old = resget(types)
                    if old is None or (a_tuple, b) < old:
                        results[types] = (a_tuple, b)
    out = [
        (_decode_graph(types), TieChoice(a, b)) for types, (a, b) in results.items()
    ]
    out.sort(key=lambda pair: canonical_name(pair[0]))
    _MEMO_TIE[key] = out
    return list(out)
