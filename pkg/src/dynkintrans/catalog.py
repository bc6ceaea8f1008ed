"""Two-transformation catalogs for the nine E/Z/Q triangle singularity classes.

Each class has a basic graph and a Milnor number (the suffix of its
symbol).  The catalog of a class collects every Dynkin graph with only
A/D/E components that can be made from the basic graph by exactly two
transformations, in any of the four ordered combinations of elementary
and tie steps.  Intermediate graphs may contain G2, G1 or BC1 components;
only the final outcomes are filtered to A/D/E.

Every member carries one replayable two-step witness.  Catalogs serialize
to a byte-stable JSON format and can be cached on disk keyed by class
symbol and engine version.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .graphs import DynkinGraph, parse_name
from .transforms import (
    Choice,
    ElementaryChoice,
    TieChoice,
    TransformStep,
    elementary_all,
    tie_all,
)

ENGINE_VERSION = "1"

CACHE_ENV_VAR = "DYNKINTRANS_CACHE_DIR"


class QueryNotADE(ValueError):
    """Membership queries are only defined for graphs with A/D/E components."""


class BoundViolation(AssertionError):
    """A catalog member exceeds the vertex bound (an implementation bug)."""


@dataclass(frozen=True)
class SingularityClass:
    """One of the nine classes: symbol, Milnor number and basic graph."""

    symbol: str
    milnor: int
    basic: DynkinGraph


def _cls(symbol: str, basic: str) -> SingularityClass:
    return SingularityClass(symbol, int(symbol[1:]), parse_name(basic))


SINGULARITY_CLASSES: dict[str, SingularityClass] = {
    c.symbol: c
    for c in (
        _cls("E12", "E8"),
        _cls("Z11", "E7"),
        _cls("Q10", "E6"),
        _cls("E13", "E8+BC1"),
        _cls("Z12", "E7+BC1"),
        _cls("Q11", "E6+BC1"),
        _cls("E14", "E8+G2"),
        _cls("Z13", "E7+G2"),
        _cls("Q12", "E6+G2"),
    )
}


def singularity_class(symbol: str) -> SingularityClass:
    try:
        return SINGULARITY_CLASSES[symbol]
    except KeyError:
        valid = ", ".join(SINGULARITY_CLASSES)
        raise KeyError(f"unknown singularity class {symbol!r}; valid symbols: {valid}") from None


Witness = tuple[TransformStep, TransformStep]


@dataclass(frozen=True)
class CatalogMember:
    graph: DynkinGraph
    witness: Witness

    @property
    def name(self) -> str:
        return self.graph.name


@dataclass(frozen=True)
class Catalog:
    """The computed member set of one class, sorted by canonical name."""

    singularity: SingularityClass
    members: tuple[CatalogMember, ...]

    def names(self) -> list[str]:
        return [m.name for m in self.members]

    def get(self, name: str) -> CatalogMember | None:
        lo, hi = 0, len(self.members)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.members[mid].name < name:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(self.members) and self.members[lo].name == name:
            return self.members[lo]
        return None

    def __contains__(self, g: DynkinGraph) -> bool:
        return self.get(g.name) is not None

    def __len__(self) -> int:
        return len(self.members)


def _step_dict(step: TransformStep) -> dict:
    choice = step.choice
    if isinstance(choice, ElementaryChoice):
        return {
            "kind": "elementary",
            "input": step.input.name,
            "removed": list(choice.removed),
        }
    return {
        "kind": "tie",
        "input": step.input.name,
        "a": list(choice.a),
        "b": list(choice.b),
    }


def _encode_witness(witness: Witness) -> str:
    return json.dumps(
        [_step_dict(s) for s in witness], sort_keys=True, separators=(",", ":")
    )


def _witness_key(witness: Witness) -> tuple[int, str]:
    enc = _encode_witness(witness)
    return (len(enc), enc)


def _compute_catalog(cls: SingularityClass) -> Catalog:
    basic = cls.basic
    first_steps: list[TransformStep] = []
    for kind_all in (elementary_all, tie_all):
        for out, choice in kind_all(basic):
            first_steps.append(TransformStep(choice, basic, out))
    best: dict[str, tuple[tuple[int, str], CatalogMember]] = {}
    for s1 in first_steps:
        mid = s1.output
        for kind_all in (elementary_all, tie_all):
            for out, choice in kind_all(mid):
                if not out.is_ade:
                    continue
                s2 = TransformStep(choice, mid, out)
                witness = (s1, s2)
                key = _witness_key(witness)
                name = out.name
                old = best.get(name)
                if old is None or key < old[0]:
                    best[name] = (key, CatalogMember(out, witness))
    members = tuple(member for _, (_, member) in sorted(best.items()))
    return Catalog(cls, members)


@dataclass(frozen=True)
class BoundReport:
    """Result of the vertex-bound check over one catalog."""

    symbol: str
    milnor: int
    max_vertices: int
    histogram: tuple[tuple[int, int], ...]  # (vertex count, members) pairs

    @property
    def bound(self) -> int:
        return self.milnor - 2


def milnor_bound_check(catalog: Catalog) -> BoundReport:
    """Verify every member has at most milnor - 2 vertices.

    Returns the maximum attained vertex count and a histogram; raises
    BoundViolation when any member exceeds the bound, which would indicate
    an engine bug rather than a data condition.
    """
    cls = catalog.singularity
    bound = cls.milnor - 2
    offenders = [m.name for m in catalog.members if m.graph.total_vertices > bound]
    if offenders:
        raise BoundViolation(
            f"{cls.symbol}: members exceed {bound} vertices: {', '.join(offenders)}"
        )
    hist: dict[int, int] = {}
    for m in catalog.members:
        r = m.graph.total_vertices
        hist[r] = hist.get(r, 0) + 1
    return BoundReport(
        symbol=cls.symbol,
        milnor=cls.milnor,
        max_vertices=max(hist) if hist else 0,
        histogram=tuple(sorted(hist.items())),
    )


# --------------------------------------------------------------------------
# Serialization and caching.
# --------------------------------------------------------------------------


def catalog_to_dict(catalog: Catalog) -> dict:
    cls = catalog.singularity
    return {
        "class": cls.symbol,
        "milnor": cls.milnor,
        "basic": cls.basic.name,
        "engine_version": ENGINE_VERSION,
        "members": [
            {"name": m.name, "witness": [_step_dict(s) for s in m.witness]}
            for m in catalog.members
        ],
    }


def catalog_to_json(catalog: Catalog) -> str:
    """Byte-stable JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(catalog_to_dict(catalog), sort_keys=True, indent=2) + "\n"


def _choice_from_dict(d: dict) -> Choice:
    if d["kind"] == "elementary":
        return ElementaryChoice(tuple(d["removed"]))
    return TieChoice(tuple(d["a"]), tuple(d["b"]))


def catalog_from_dict(data: dict) -> Catalog:
    cls = singularity_class(data["class"])
    if data.get("engine_version") != ENGINE_VERSION:
        raise ValueError(
            f"catalog engine version {data.get('engine_version')!r} does not match {ENGINE_VERSION!r}"
        )
    if data["milnor"] != cls.milnor or parse_name(data["basic"]) != cls.basic:
        raise ValueError(f"catalog data inconsistent with class {cls.symbol}")
    members = []
    for entry in data["members"]:
        d1, d2 = entry["witness"]
        mid = parse_name(d2["input"])
        graph = parse_name(entry["name"])
        s1 = TransformStep(_choice_from_dict(d1), cls.basic, mid)
        s2 = TransformStep(_choice_from_dict(d2), mid, graph)
        members.append(CatalogMember(graph, (s1, s2)))
    members.sort(key=lambda m: m.name)
    return Catalog(cls, tuple(members))


def catalog_from_json(text: str) -> Catalog:
    return catalog_from_dict(json.loads(text))


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "dynkintrans"


def _cache_path(symbol: str, cache_dir: Path) -> Path:
    return cache_dir / f"{symbol}-v{ENGINE_VERSION}.json"


_CATALOG_MEMO: dict[str, Catalog] = {}


def build_catalog(
    cls: SingularityClass | str,
    *,
    cache: bool = True,
    cache_dir: Path | None = None,
) -> Catalog:
    """Compute (or load) the catalog of one class.

    With ``cache=True`` the catalog is read from and written to
    ``cache_dir`` (default: $DYNKINTRANS_CACHE_DIR, else the user cache
    directory).  Writes are atomic; two independent computations serialize
    to byte-identical JSON.
    """
    if isinstance(cls, str):
        cls = singularity_class(cls)
    memo = _CATALOG_MEMO.get(cls.symbol)
    if memo is not None:
        return memo
    path = None
    if cache:
        path = _cache_path(cls.symbol, cache_dir or default_cache_dir())
        if path.is_file():
            try:
                catalog = catalog_from_json(path.read_text(encoding="utf-8"))
                _CATALOG_MEMO[cls.symbol] = catalog
                return catalog
            except (ValueError, KeyError):
                pass  # stale or corrupt cache entry; recompute
    catalog = _compute_catalog(cls)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(catalog_to_json(catalog))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    _CATALOG_MEMO[cls.symbol] = catalog
    return catalog


def clear_memory_cache() -> None:
    """Drop in-process catalog memoization (used by tests and --no-cache runs)."""
    _CATALOG_MEMO.clear()


def membership(
    cls: SingularityClass | str,
    g: DynkinGraph,
    *,
    cache: bool = True,
    cache_dir: Path | None = None,
) -> Witness | None:
    """The two-step witness for ``g`` in the class catalog, or None.

    Raises QueryNotADE when ``g`` contains a G2, G1 or BC1 component:
    membership is only defined for graphs with A/D/E components.
    """
    if not g.is_ade:
        raise QueryNotADE(f"membership is undefined for non-ADE graph {g.name!r}")
    catalog = build_catalog(cls, cache=cache, cache_dir=cache_dir)
    member = catalog.get(g.name)
    return None if member is None else member.witness
