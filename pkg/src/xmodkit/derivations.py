"""Derivations, the Whitehead group, and actor crossed modules.

A derivation is a map from the base group into the source group obeying
the twisted product law d(xy) = d(x) * ^x d(y). Derivations form a monoid
under the circle product; its unit group is the Whitehead group, whose
members pair with the automorphisms of the crossed module to form the
actor. The inner actor and the class preserving actor are sub-structures
of the actor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import (
    CapExceededError,
    FiniteGroup,
    GroupHom,
    Subgroup,
    _closure_map,
    generating_sequence,
)
from .xmods import (
    CrossedModule,
    SubXMod,
    WellDefinednessError,
    XModMorphism,
    make_xmod,
    sub_xmod,
    xmod_automorphism_group,
)

DERIVATION_CAP = 24


class Derivation:
    """A map from g0 to g1 with image_of[xy] = image_of[x] * ^x image_of[y]."""

    __slots__ = ("xmod", "image_of")

    def __init__(self, xmod: CrossedModule, image_of, *, check: bool = True):
        self.xmod = xmod
        self.image_of = tuple(image_of)
        if len(self.image_of) != xmod.g0.order:
            raise ValueError("derivation table must cover g0")
        if check:
            mul0, mul1, act = xmod.g0.mul, xmod.g1.mul, xmod.action
            img = self.image_of
            for x in xmod.g0.elements:
                for y in xmod.g0.elements:
                    if img[mul0[x][y]] != mul1[img[x]][act[x][img[y]]]:
                        raise ValueError(
                            f"derivation law fails at ({x}, {y})"
                        )

    def __call__(self, x: int) -> int:
        return self.image_of[x]

    def is_zero(self) -> bool:
        return all(v == self.xmod.g1.identity for v in self.image_of)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Derivation)
            and self.image_of == other.image_of
            and self.xmod == other.xmod
        )

    def __hash__(self) -> int:
        return hash(self.image_of)

    def __repr__(self) -> str:
        return f"Derivation({list(self.image_of)})"


def zero_derivation(X: CrossedModule) -> Derivation:
    return Derivation(X, (X.g1.identity,) * X.g0.order, check=False)


def circle_product(d1: Derivation, d2: Derivation) -> Derivation:
    """(d1 o d2)(x) = d1(boundary(d2(x)) * x) * d2(x)."""
    X = d1.xmod
    mul0, mul1, bnd = X.g0.mul, X.g1.mul, X.boundary.image_of
    i1, i2 = d1.image_of, d2.image_of
    img = tuple(
        mul1[i1[mul0[bnd[i2[x]]][x]]][i2[x]] for x in X.g0.elements
    )
    return Derivation(X, img, check=False)


def _semidirect_table(X: CrossedModule) -> FiniteGroup:
    """g1 x| g0 with (a, x)(b, y) = (a * ^x b, xy); index a*|g0| + x."""
    n0 = X.g0.order
    mul0, mul1, act = X.g0.mul, X.g1.mul, X.action
    rows = []
    for a in X.g1.elements:
        ra = mul1[a]
        for x in X.g0.elements:
            rx = act[x]
            mx = mul0[x]
            rows.append(
                tuple(
                    ra[rx[b]] * n0 + mx[y]
                    for b in X.g1.elements
                    for y in X.g0.elements
                )
            )
    return FiniteGroup(rows, check=False)


@dataclass(eq=False)
class DerivationMonoid:
    """All derivations with the circle-product table; element 0 is the unit."""

    xmod: CrossedModule
    elements: tuple
    op: tuple

    @property
    def unit(self) -> Derivation:
        return self.elements[0]

    def index_of(self, der: Derivation) -> int:
        return self._index()[der.image_of]

    def _index(self) -> dict:
        if not hasattr(self, "_idx"):
            self._idx = {d.image_of: i for i, d in enumerate(self.elements)}
        return self._idx

    def unit_indices(self) -> tuple:
        """Indices with a two-sided circle inverse."""
        t = self.op
        n = len(self.elements)
        return tuple(
            i
            for i in range(n)
            if any(t[i][j] == 0 and t[j][i] == 0 for j in range(n))
        )

    def __len__(self) -> int:
        return len(self.elements)


def all_derivations(X: CrossedModule, *, cap: int = DERIVATION_CAP):
    """Every derivation, as a DerivationMonoid.

    A table is a derivation exactly when x -> (table[x], x) is a
    homomorphic section into the semidirect product, so candidates are
    enumerated per generator of g0 and extended by product closure.
    """
    if "dermonoid" in X._cache:
        return X._cache["dermonoid"]
    if X.g0.order > cap or X.g1.order > cap:
        raise CapExceededError(
            f"derivation search capped at order {cap}, got "
            f"{list(X.order())}"
        )
    semi = _semidirect_table(X)
    g0 = X.g0
    n0 = g0.order
    gens = generating_sequence(g0)
    maps = []

    def extend(level: int, pairs: list) -> None:
        if level == len(gens):
            found = _closure_map(g0, semi, pairs)
            if found is not None and len(found) == n0:
                maps.append(found)
            return
        g = gens[level]
        target_order = g0.elem_order[g]
        for a in X.g1.elements:
            s = a * n0 + g
            if semi.elem_order[s] != target_order:
                continue
            more = pairs + [(g, s)]
            if _closure_map(g0, semi, more) is None:
                continue
            extend(level + 1, more)

    extend(0, [])
    tables = []
    for found in maps:
        img = [0] * n0
        for x in g0.elements:
            s = found[x]
            assert s % n0 == x
            img[x] = s // n0
        tables.append(tuple(img))
    zero = (X.g1.identity,) * n0
    tables.sort(key=lambda t: (t != zero, t))
    elements = tuple(Derivation(X, t, check=False) for t in tables)
    index = {d.image_of: i for i, d in enumerate(elements)}
    op = []
    for d1 in elements:
        row = []
        for d2 in elements:
            composed = circle_product(d1, d2)
            k = index.get(composed.image_of)
            if k is None:
                raise RuntimeError("circle product left the derivation set")
            row.append(k)
        op.append(tuple(row))
    monoid = DerivationMonoid(X, elements, tuple(op))
    X._cache["dermonoid"] = monoid
    return monoid


@dataclass(eq=False)
class WhiteheadGroup:
    """Group of regular derivations (units of the circle monoid)."""

    carrier: FiniteGroup
    member_derivations: tuple
    monoid: DerivationMonoid

    @property
    def order(self) -> int:
        return self.carrier.order


def whitehead_group(X: CrossedModule, *, cap: int = DERIVATION_CAP):
    if "whitehead" in X._cache:
        return X._cache["whitehead"]
    monoid = all_derivations(X, cap=cap)
    units = monoid.unit_indices()
    pos = {u: k for k, u in enumerate(units)}
    table = []
    for u in units:
        row = []
        for v in units:
            w = pos.get(monoid.op[u][v])
            if w is None:
                raise RuntimeError("unit product fell outside the units")
            row.append(w)
        table.append(tuple(row))
    carrier = FiniteGroup(table)
    members = tuple(monoid.elements[u] for u in units)
    result = WhiteheadGroup(carrier, members, monoid)
    X._cache["whitehead"] = result
    return result


@dataclass(eq=False)
class ActorXMod:
    """A crossed module of regular derivations over automorphism pairs.

    xmod's source element k is derivations[k]; its range element j is
    automorphisms[j]; whitehead is the ambient Whitehead group.
    """

    xmod: CrossedModule
    whitehead: WhiteheadGroup
    derivations: tuple
    automorphisms: tuple


def _aut_index(morphisms) -> dict:
    return {
        (m.alpha.image_of, m.beta.image_of): j
        for j, m in enumerate(morphisms)
    }


def actor(X: CrossedModule, *, cap: int = DERIVATION_CAP) -> ActorXMod:
    """The crossed module (Whitehead group -> Aut(X)).

    The boundary sends a derivation to the automorphism pair
    (a -> der(boundary(a)) * a, x -> boundary(der(x)) * x); an
    automorphism pair (alpha, beta) acts by alpha o der o beta^-1.
    """
    if "actor" in X._cache:
        return X._cache["actor"]
    w = whitehead_group(X, cap=cap)
    auts, morphisms = xmod_automorphism_group(X)
    aut_of = _aut_index(morphisms)
    mul0, mul1, bnd = X.g0.mul, X.g1.mul, X.boundary.image_of
    boundary = []
    for der in w.member_derivations:
        img = der.image_of
        sigma = tuple(mul1[img[bnd[a]]][a] for a in X.g1.elements)
        theta = tuple(mul0[bnd[img[x]]][x] for x in X.g0.elements)
        j = aut_of.get((sigma, theta))
        if j is None:
            raise RuntimeError(
                "regular derivation induced an unknown automorphism pair"
            )
        boundary.append(j)
    der_of = {d.image_of: k for k, d in enumerate(w.member_derivations)}
    rows = []
    for j, m in enumerate(morphisms):
        alpha = m.alpha.image_of
        beta_inv = morphisms[auts.inv[j]].beta.image_of
        row = []
        for der in w.member_derivations:
            img = der.image_of
            moved = tuple(alpha[img[beta_inv[x]]] for x in X.g0.elements)
            k = der_of.get(moved)
            if k is None:
                raise RuntimeError(
                    "automorphism action left the Whitehead group"
                )
            row.append(k)
        rows.append(tuple(row))
    xm = make_xmod(w.carrier, auts, tuple(boundary), rows)
    result = ActorXMod(xm, w, w.member_derivations, tuple(morphisms))
    X._cache["actor"] = result
    return result


def _inner_derivation_table(X: CrossedModule, g1: int) -> tuple:
    """x -> g1 * ^x(g1^-1)."""
    mul1, inv1, act = X.g1.mul, X.g1.inv, X.action
    return tuple(mul1[g1][act[x][inv1[g1]]] for x in X.g0.elements)


def _conjugation_pair(X: CrossedModule, g0: int) -> tuple[tuple, tuple]:
    """(action row of g0, conjugation row of g0)."""
    mul0, inv0 = X.g0.mul, X.g0.inv
    sigma = tuple(X.action[g0])
    theta = tuple(mul0[mul0[g0][y]][inv0[g0]] for y in X.g0.elements)
    return sigma, theta


def canonical_morphism(
    X: CrossedModule, *, cap: int = DERIVATION_CAP
) -> XModMorphism:
    """The morphism X -> actor: inner derivations over conjugation pairs."""
    act_x = actor(X, cap=cap)
    der_of = {d.image_of: k for k, d in enumerate(act_x.derivations)}
    aut_of = _aut_index(act_x.automorphisms)
    alpha = []
    for g1 in X.g1.elements:
        k = der_of.get(_inner_derivation_table(X, g1))
        if k is None:
            raise RuntimeError("inner derivation is not regular")
        alpha.append(k)
    beta = []
    for g0 in X.g0.elements:
        j = aut_of.get(_conjugation_pair(X, g0))
        if j is None:
            raise RuntimeError("conjugation pair is not an automorphism")
        beta.append(j)
    return XModMorphism(
        X,
        act_x.xmod,
        GroupHom(X.g1, act_x.xmod.g1, tuple(alpha)),
        GroupHom(X.g0, act_x.xmod.g0, tuple(beta)),
    )


def inner_actor(X: CrossedModule, *, cap: int = DERIVATION_CAP) -> SubXMod:
    """Image of the canonical morphism, as a subobject of the actor."""
    morphism = canonical_morphism(X, cap=cap)
    return sub_xmod(
        actor(X, cap=cap).xmod,
        set(morphism.alpha.image_of),
        set(morphism.beta.image_of),
    )


def class_preserving_derivations(
    X: CrossedModule, *, cap: int = DERIVATION_CAP
) -> Subgroup:
    """Derivations of the form x -> g1 * ^x(g1^-1), inside the Whitehead
    carrier; subgroup axioms are re-verified on construction."""
    w = whitehead_group(X, cap=cap)
    der_of = {d.image_of: k for k, d in enumerate(w.member_derivations)}
    members = set()
    for g1 in X.g1.elements:
        k = der_of.get(_inner_derivation_table(X, g1))
        if k is None:
            raise RuntimeError("inner derivation is not regular")
        members.add(k)
    return Subgroup(w.carrier, members)


def class_preserving_auts(
    X: CrossedModule, *, cap: int = DERIVATION_CAP
) -> Subgroup:
    """Action/conjugation pairs inside Aut(X); axioms re-verified."""
    auts, morphisms = xmod_automorphism_group(X)
    aut_of = _aut_index(morphisms)
    members = set()
    for g0 in X.g0.elements:
        j = aut_of.get(_conjugation_pair(X, g0))
        if j is None:
            raise RuntimeError("conjugation pair is not an automorphism")
        members.add(j)
    return Subgroup(auts, members)


def class_preserving_actor(
    X: CrossedModule, *, cap: int = DERIVATION_CAP
) -> ActorXMod:
    """The restriction of the actor to class preserving members.

    The induced action (alpha, beta) . der = (x -> alpha(g1) * ^x
    alpha(g1)^-1), for any g1 witnessing der, must not depend on the
    witness; that independence is asserted here and a violation raises
    WellDefinednessError rather than silently picking a witness.
    """
    act_x = actor(X, cap=cap)
    dc = class_preserving_derivations(X, cap=cap)
    ac = class_preserving_auts(X, cap=cap)
    der_of = {d.image_of: k for k, d in enumerate(act_x.derivations)}
    witnesses = {k: [] for k in dc.members}
    for g1 in X.g1.elements:
        witnesses[der_of[_inner_derivation_table(X, g1)]].append(g1)
    for j in ac.members:
        alpha = act_x.automorphisms[j].alpha.image_of
        for k in dc.members:
            moved = {
                _inner_derivation_table(X, alpha[g1])
                for g1 in witnesses[k]
            }
            if len(moved) != 1:
                raise WellDefinednessError(
                    "induced action depends on the witness of a class "
                    "preserving derivation"
                )
            if der_of[moved.pop()] != act_x.xmod.action[j][k]:
                raise WellDefinednessError(
                    "induced action disagrees with the actor action"
                )
    restricted = sub_xmod(act_x.xmod, dc.members, ac.members).as_xmod()
    return ActorXMod(
        restricted,
        act_x.whitehead,
        tuple(act_x.derivations[k] for k in dc.members),
        tuple(act_x.automorphisms[j] for j in ac.members),
    )
