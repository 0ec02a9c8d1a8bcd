"""Structural invariants of crossed modules.

Center, displacement and derived subobjects, lower/upper central and
derived series, nilpotency and solvability, rank and middle length.
Rank-style values keep exact integer orders (see values.PairValue);
tables render their log2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .groups import Subgroup, center, relative_commutator_group, subgroup_generated
from .values import NOT_NILPOTENT, NOT_SOLVABLE, PairValue
from .xmods import (
    CrossedModule,
    SubXMod,
    full_subxmod,
    quotient_xmod,
    sub_xmod,
    trivial_subxmod,
)


def fixed_points(X: CrossedModule) -> Subgroup:
    """Elements of G1 fixed by every element of G0."""
    if "fix" not in X._cache:
        members = [
            a for a in X.g1.elements if all(row[a] == a for row in X.action)
        ]
        X._cache["fix"] = Subgroup(X.g1, members, check=False)
    return X._cache["fix"]


def stabilizer(X: CrossedModule) -> Subgroup:
    """Elements of G0 acting trivially on G1."""
    if "stab" not in X._cache:
        ident = tuple(X.g1.elements)
        members = [x for x in X.g0.elements if X.action[x] == ident]
        X._cache["stab"] = Subgroup(X.g0, members, check=False)
    return X._cache["stab"]


def center_xmod(X: CrossedModule) -> SubXMod:
    """(fixed points -> stabilizer ∩ Z(G0)), the categorical center."""
    if "center" not in X._cache:
        s0 = stabilizer(X).member_set & center(X.g0).member_set
        X._cache["center"] = sub_xmod(X, fixed_points(X).members, s0)
    return X._cache["center"]


def displacement_subgroup(X: CrossedModule) -> Subgroup:
    """Subgroup of G1 generated by all ^x a * a^-1."""
    if "disp" not in X._cache:
        mul1, inv1 = X.g1.mul, X.g1.inv
        seeds = {
            mul1[row[a]][inv1[a]] for row in X.action for a in X.g1.elements
        }
        X._cache["disp"] = subgroup_generated(X.g1, seeds)
    return X._cache["disp"]


def derived_subxmod(X: CrossedModule) -> SubXMod:
    """(displacement subgroup -> [G0, G0])."""
    if "derived" not in X._cache:
        d0 = relative_commutator_group(X.g0, X.g0.elements, X.g0.elements)
        X._cache["derived"] = sub_xmod(
            X, displacement_subgroup(X).members, d0.members
        )
    return X._cache["derived"]


def relative_commutator(X: CrossedModule, N: SubXMod) -> SubXMod:
    """The commutator sub-crossed-module [N, X].

    Level 1 is generated by displacements of N1 under all of G0 together
    with displacements of G1 under N0; level 0 is [N0, G0].
    """
    mul1, inv1 = X.g1.mul, X.g1.inv
    seeds = set()
    for x in X.g0.elements:
        row = X.action[x]
        for a in N.s1.members:
            seeds.add(mul1[row[a]][inv1[a]])
    for x in N.s0.members:
        row = X.action[x]
        for a in X.g1.elements:
            seeds.add(mul1[row[a]][inv1[a]])
    level1 = subgroup_generated(X.g1, seeds)
    level0 = relative_commutator_group(X.g0, N.s0.members, X.g0.elements)
    return sub_xmod(X, level1.members, level0.members)


@dataclass(frozen=True)
class SeriesRecord:
    """A subobject series; terms are distinct, ending at the stable term."""

    kind: str
    terms: tuple
    stabilized: bool = True

    def sizes(self) -> list[tuple[int, int]]:
        return [t.order for t in self.terms]


def lower_central_series(X: CrossedModule) -> SeriesRecord:
    terms = [full_subxmod(X)]
    while True:
        nxt = relative_commutator(X, terms[-1])
        if nxt.members() == terms[-1].members():
            return SeriesRecord("lower-central", tuple(terms))
        terms.append(nxt)


def nilpotency_class(X: CrossedModule):
    """Nilpotency class, or the NOT_NILPOTENT marker."""
    terms = lower_central_series(X).terms
    if terms[-1].is_trivial():
        return len(terms) - 1
    return NOT_NILPOTENT


def upper_central_series(X: CrossedModule) -> SeriesRecord:
    """Ascending series of preimages of centers of successive quotients."""
    terms = [trivial_subxmod(X)]
    while True:
        quotient, proj = quotient_xmod(X, terms[-1])
        zq = center_xmod(quotient)
        z1 = zq.s1.member_set
        z0 = zq.s0.member_set
        a, b = proj.alpha.image_of, proj.beta.image_of
        nxt = sub_xmod(
            X,
            (g for g in X.g1.elements if a[g] in z1),
            (g for g in X.g0.elements if b[g] in z0),
        )
        if nxt.members() == terms[-1].members():
            return SeriesRecord("upper-central", tuple(terms))
        terms.append(nxt)


def _derived_of(X: CrossedModule, S: SubXMod) -> SubXMod:
    """Derived subxmod of a subobject, computed in parent coordinates."""
    mul1, inv1 = X.g1.mul, X.g1.inv
    seeds = set()
    for x in S.s0.members:
        row = X.action[x]
        for a in S.s1.members:
            seeds.add(mul1[row[a]][inv1[a]])
    level1 = subgroup_generated(X.g1, seeds)
    level0 = relative_commutator_group(X.g0, S.s0.members, S.s0.members)
    return sub_xmod(X, level1.members, level0.members)


def derived_series(X: CrossedModule) -> SeriesRecord:
    terms = [full_subxmod(X)]
    while True:
        nxt = _derived_of(X, terms[-1])
        if nxt.members() == terms[-1].members():
            return SeriesRecord("derived", tuple(terms))
        terms.append(nxt)


def derived_length(X: CrossedModule):
    """Derived length, or the NOT_SOLVABLE marker."""
    terms = derived_series(X).terms
    if terms[-1].is_trivial():
        return len(terms) - 1
    return NOT_SOLVABLE


def is_solvable(X: CrossedModule) -> bool:
    return derived_series(X).terms[-1].is_trivial()


def is_nilpotent(X: CrossedModule) -> bool:
    return lower_central_series(X).terms[-1].is_trivial()


def is_abelian_xmod(X: CrossedModule) -> bool:
    return center_xmod(X).is_full()


def is_stem_xmod(X: CrossedModule) -> bool:
    """The center is contained levelwise in the derived sub-crossed-module."""
    z = center_xmod(X)
    d = derived_subxmod(X)
    return (
        z.s1.member_set <= d.s1.member_set and z.s0.member_set <= d.s0.member_set
    )


def is_aspherical(X: CrossedModule) -> bool:
    return X.boundary.kernel_subgroup().order == 1


def is_simply_connected(X: CrossedModule) -> bool:
    return X.boundary.image_subgroup().order == X.g0.order


def rank_of_xmod(X: CrossedModule) -> PairValue:
    """Levelwise |Fix ∩ D| * |G1/Fix| and |(St∩Z) ∩ [G0,G0]| * |G0/(St∩Z)|."""
    fix = fixed_points(X)
    disp = displacement_subgroup(X)
    z = center_xmod(X)
    d = derived_subxmod(X)
    level1 = len(fix.member_set & disp.member_set) * (X.g1.order // fix.order)
    level0 = len(z.s0.member_set & d.s0.member_set) * (X.g0.order // z.s0.order)
    return PairValue(level1, level0)


def middle_length_of_xmod(X: CrossedModule) -> PairValue:
    """Levelwise |D / (Fix ∩ D)| and |[G0,G0] / ((St∩Z) ∩ [G0,G0])|."""
    fix = fixed_points(X)
    disp = displacement_subgroup(X)
    z = center_xmod(X)
    d = derived_subxmod(X)
    level1 = disp.order // len(fix.member_set & disp.member_set)
    level0 = d.s0.order // len(z.s0.member_set & d.s0.member_set)
    return PairValue(level1, level0)


@dataclass(frozen=True)
class Prop10Report:
    """Consequences of simple connectivity and asphericity.

    Fields are None when the hypothesis does not apply.
    """

    simply_connected: bool
    aspherical: bool
    fix_equals_center_g1: Optional[bool]
    displacement_equals_derived_g1: Optional[bool]
    stabilizer_center_equals_center_g0: Optional[bool]

    def all_hold(self) -> bool:
        return all(
            v is not False
            for v in (
                self.fix_equals_center_g1,
                self.displacement_equals_derived_g1,
                self.stabilizer_center_equals_center_g0,
            )
        )


def prop10_checks(X: CrossedModule) -> Prop10Report:
    simply = is_simply_connected(X)
    aspher = is_aspherical(X)
    fix_center = disp_derived = stab_center = None
    if simply:
        fix_center = fixed_points(X).member_set == center(X.g1).member_set
        derived1 = relative_commutator_group(
            X.g1, X.g1.elements, X.g1.elements
        )
        disp_derived = (
            displacement_subgroup(X).member_set == derived1.member_set
        )
    if aspher:
        z0 = stabilizer(X).member_set & center(X.g0).member_set
        stab_center = z0 == center(X.g0).member_set
    return Prop10Report(simply, aspher, fix_center, disp_derived, stab_center)
