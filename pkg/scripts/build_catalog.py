"""Generate the bundled small-group catalog data file.

Builds every group of order 1..24 from explicit recipes, checks the
classical per-order counts and pairwise non-isomorphism, and writes one
record per group: order:index, a cosmetic name, and generator permutations
of the regular representation in cycle notation.

Run from the repository root:  python3 scripts/build_catalog.py
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from xmodkit.catalog import KNOWN_COUNTS, cycles_text
from xmodkit.groups import (
    FiniteGroup,
    abelian_group,
    all_homs,
    alternating_group,
    center,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    direct_product,
    first_iso,
    generating_sequence,
    group_fingerprint,
    group_from_closure,
    quotient_group,
    subgroup_generated,
    symmetric_group,
)

OUT = Path(__file__).resolve().parent.parent / "src" / "xmodkit" / "data" / "smallgroups_1_24.txt"


def semidirect(K: FiniteGroup, H: FiniteGroup, act) -> FiniteGroup:
    """K ⋊ H where act[h] is the permutation of K applied by h."""
    k_gens = generating_sequence(K)
    h_gens = generating_sequence(H)
    gens = [(k, H.identity) for k in k_gens] + [(K.identity, h) for h in h_gens]

    def op(x, y):
        k1, h1 = x
        k2, h2 = y
        return (K.mul[k1][act[h1][k2]], H.mul[h1][h2])

    group, _ = group_from_closure(gens, op, (K.identity, H.identity))
    if group.order != K.order * H.order:
        raise AssertionError("semidirect product has wrong order")
    return group


def c2_semidirect(K: FiniteGroup, involution) -> FiniteGroup:
    return semidirect(K, cyclic_group(2), [tuple(K.elements), tuple(involution)])


def power_action(n: int, k: int):
    return tuple((i * k) % n for i in range(n))


def modular16() -> FiniteGroup:
    return c2_semidirect(cyclic_group(8), power_action(8, 5))


def semidihedral16() -> FiniteGroup:
    return c2_semidirect(cyclic_group(8), power_action(8, 3))


def group_16_3() -> FiniteGroup:
    # (C4 x C2) : C2 with the involution a -> ab, b -> b
    K = abelian_group([4, 2])  # element a*2 + b
    img = [(a * 2 + (a + b) % 2) for a in range(4) for b in range(2)]
    return c2_semidirect(K, img)


def c4_semi_c4() -> FiniteGroup:
    c4 = cyclic_group(4)
    act = [power_action(4, 1), power_action(4, 3),
           power_action(4, 1), power_action(4, 3)]
    return semidirect(c4, c4, act)


def pauli16() -> FiniteGroup:
    # central product C4 ∘ D8: quotient of D8 x C4 by the diagonal involution
    d8 = dihedral_group(4)
    prod = direct_product(d8, cyclic_group(4))
    z = center(d8).members[1]
    diag = subgroup_generated(prod, [z * 4 + 2])
    return quotient_group(prod, diag)[0]


def frobenius20() -> FiniteGroup:
    acts = [power_action(5, pow(2, j, 5)) for j in range(4)]
    return semidirect(cyclic_group(5), cyclic_group(4), acts)


def c7_semi_c3() -> FiniteGroup:
    acts = [power_action(7, pow(2, j, 7)) for j in range(3)]
    return semidirect(cyclic_group(7), cyclic_group(3), acts)


def c3_semi_c8() -> FiniteGroup:
    c8 = cyclic_group(8)
    acts = [power_action(3, 1) if j % 2 == 0 else power_action(3, 2)
            for j in range(8)]
    return semidirect(cyclic_group(3), c8, acts)


def c3_semi_d8() -> FiniteGroup:
    # rotations of order 4 invert the C3; some reflection acts trivially
    d8 = dihedral_group(4)
    c2 = cyclic_group(2)
    rot4 = next(g for g in d8.elements if d8.elem_order[g] == 4)
    candidates = [
        h for h in all_homs(d8, c2)
        if h(rot4) == 1 and any(
            h(t) == 0 and d8.elem_order[t] == 2 and t not in
            subgroup_generated(d8, [rot4]).member_set
            for t in d8.elements)
    ]
    psi = candidates[0]
    acts = [power_action(3, 2) if psi(h) else power_action(3, 1)
            for h in d8.elements]
    return semidirect(cyclic_group(3), d8, acts)


def generalized_dihedral(K: FiniteGroup) -> FiniteGroup:
    return c2_semidirect(K, K.inv)


def sl23() -> FiniteGroup:
    def mul(x, y):
        (a, b), (c, d) = x[0], x[1]
        (e, f), (g, h) = y[0], y[1]
        return (
            ((a * e + b * g) % 3, (a * f + b * h) % 3),
            ((c * e + d * g) % 3, (c * f + d * h) % 3),
        )

    gens = [((1, 1), (0, 1)), ((0, 2), (1, 0))]
    group, _ = group_from_closure(gens, mul, ((1, 0), (0, 1)))
    if group.order != 24:
        raise AssertionError("SL(2,3) construction has wrong order")
    return group


def recipes() -> dict[int, list[tuple[str, FiniteGroup]]]:
    c2, c3, c4 = cyclic_group(2), cyclic_group(3), cyclic_group(4)
    s3 = symmetric_group(3)
    d8, q8 = dihedral_group(4), dicyclic_group(2)
    dic3 = dicyclic_group(3)
    a4 = alternating_group(4)
    table: dict[int, list[tuple[str, FiniteGroup]]] = {
        1: [("1", cyclic_group(1))],
        2: [("C2", c2)],
        3: [("C3", c3)],
        4: [("C4", c4), ("C2^2", abelian_group([2, 2]))],
        5: [("C5", cyclic_group(5))],
        6: [("S3", s3), ("C6", cyclic_group(6))],
        7: [("C7", cyclic_group(7))],
        8: [
            ("C8", cyclic_group(8)),
            ("C4xC2", abelian_group([4, 2])),
            ("D8", d8),
            ("Q8", q8),
            ("C2^3", abelian_group([2, 2, 2])),
        ],
        9: [("C9", cyclic_group(9)), ("C3^2", abelian_group([3, 3]))],
        10: [("D10", dihedral_group(5)), ("C10", cyclic_group(10))],
        11: [("C11", cyclic_group(11))],
        12: [
            ("C3:C4", dic3),
            ("C12", cyclic_group(12)),
            ("A4", a4),
            ("D12", dihedral_group(6)),
            ("C6xC2", abelian_group([6, 2])),
        ],
        13: [("C13", cyclic_group(13))],
        14: [("D14", dihedral_group(7)), ("C14", cyclic_group(14))],
        15: [("C15", cyclic_group(15))],
        16: [
            ("C16", cyclic_group(16)),
            ("C4xC4", abelian_group([4, 4])),
            ("(C4xC2):C2", group_16_3()),
            ("C4:C4", c4_semi_c4()),
            ("C8xC2", abelian_group([8, 2])),
            ("C8:C2", modular16()),
            ("D16", dihedral_group(8)),
            ("SD16", semidihedral16()),
            ("Q16", dicyclic_group(4)),
            ("C4xC2^2", abelian_group([4, 2, 2])),
            ("D8xC2", direct_product(d8, c2)),
            ("Q8xC2", direct_product(q8, c2)),
            ("C4oD8", pauli16()),
            ("C2^4", abelian_group([2, 2, 2, 2])),
        ],
        17: [("C17", cyclic_group(17))],
        18: [
            ("D18", dihedral_group(9)),
            ("C18", cyclic_group(18)),
            ("C3xS3", direct_product(c3, s3)),
            ("Dih(C3^2)", generalized_dihedral(abelian_group([3, 3]))),
            ("C6xC3", abelian_group([6, 3])),
        ],
        19: [("C19", cyclic_group(19))],
        20: [
            ("C5:C4", dicyclic_group(5)),
            ("C20", cyclic_group(20)),
            ("F20", frobenius20()),
            ("D20", dihedral_group(10)),
            ("C10xC2", abelian_group([10, 2])),
        ],
        21: [("C7:C3", c7_semi_c3()), ("C21", cyclic_group(21))],
        22: [("D22", dihedral_group(11)), ("C22", cyclic_group(22))],
        23: [("C23", cyclic_group(23))],
        24: [
            ("C3:C8", c3_semi_c8()),
            ("C24", cyclic_group(24)),
            ("SL(2,3)", sl23()),
            ("C3:Q8", dicyclic_group(6)),
            ("C4xS3", direct_product(c4, s3)),
            ("D24", dihedral_group(12)),
            ("C2x(C3:C4)", direct_product(dic3, c2)),
            ("C3:D8", c3_semi_d8()),
            ("C12xC2", abelian_group([12, 2])),
            ("C3xD8", direct_product(c3, d8)),
            ("C3xQ8", direct_product(c3, q8)),
            ("S4", symmetric_group(4)),
            ("C2xA4", direct_product(c2, a4)),
            ("C2^2xS3", direct_product(abelian_group([2, 2]), s3)),
            ("C6xC2^2", abelian_group([6, 2, 2])),
        ],
    }
    return table


def regular_generators(G: FiniteGroup) -> list[tuple[int, ...]]:
    gens = generating_sequence(G)
    if not gens:
        return [tuple(range(1))]
    return [G.mul[g] for g in gens]


def main() -> None:
    table = recipes()
    lines = ["smallgroups v1"]
    total = 0
    for order in range(1, 25):
        entries = table[order]
        if len(entries) != KNOWN_COUNTS[order]:
            raise AssertionError(
                f"order {order}: built {len(entries)}, expected {KNOWN_COUNTS[order]}"
            )
        for name, group in entries:
            if group.order != order:
                raise AssertionError(f"{name}: order {group.order} != {order}")
        # pairwise non-isomorphism within the order
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                gi, gj = entries[i][1], entries[j][1]
                if group_fingerprint(gi) == group_fingerprint(gj):
                    if first_iso(gi, gj) is not None:
                        raise AssertionError(
                            f"duplicate groups at order {order}: "
                            f"{entries[i][0]} vs {entries[j][0]}"
                        )
        for index, (name, group) in enumerate(entries, start=1):
            perms = ";".join(cycles_text(p) for p in regular_generators(group))
            lines.append(f"{order}:{index} {name} {perms}")
            total += 1
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {total} groups to {OUT}")


if __name__ == "__main__":
    main()
