"""Exact root-lattice bookkeeping behind the graph engine.

Determinants, root counts and co-root systems are recomputed from the
Gram matrices by complete enumeration in rational arithmetic; the values
double as an independent check on the graph layouts.
"""

from __future__ import annotations

from dynkintrans import (
    coroot_system,
    gram,
    parse_name,
    realize,
    root_count,
    root_lattice,
    short_vectors,
)
from dynkintrans.lattice import determinant


def main() -> None:
    print("determinants of the simply-laced root lattices:")
    for name in ("A1", "A4", "D4", "D7", "E6", "E7", "E8"):
        value = determinant(gram(realize(parse_name(name))))
        print(f"  det Q({name}) = {value}")
    print()

    print("root counts |{x : x^2 = 2}| by complete short-vector enumeration:")
    for name in ("A2", "A8", "D4", "D8", "E6", "E7", "E8"):
        print(f"  {name}: {root_count(parse_name(name))} roots")
    print()

    g2 = root_lattice(parse_name("G2"))
    print(f"the G2 graph Gram matrix is {g2.gram}")
    vecs = short_vectors(g2, 2)
    print(f"  {vecs.count_of_norm(2)} long and {vecs.count_of_norm('2/3')} short roots")
    print()

    d4 = root_lattice(parse_name("D4"))
    rs = coroot_system(d4)
    print("co-root system of Q(D4) (vectors of norm 2, 4 or 6 with integral")
    print("doubled scaled pairings against the whole lattice):")
    for norm in (2, 4, 6):
        print(f"  norm {norm}: {rs.count_of_norm(norm)} vectors")
    print(f"  total {len(rs)}")


if __name__ == "__main__":
    main()
