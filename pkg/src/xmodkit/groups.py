"""Finite groups as dense multiplication tables.

Elements of a group of order n are the integers 0..n-1; every constructor
in this package places the identity at index 0. Homomorphisms are full
image tables, enumerated deterministically by generator-image backtracking.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Callable, Hashable, Iterable, Optional, Sequence

from .values import NOT_NILPOTENT, LogValue

DEFAULT_CLOSURE_CAP = 512
DEFAULT_AUT_CAP = 64


class CapExceededError(ValueError):
    """A closure or search grew past its configured cap."""


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    __slots__ = (
        "order",
        "mul",
        "identity",
        "inv",
        "elem_order",
        "catalog_id",
        "_cache",
    )

    def __init__(
        self,
        mul: Sequence[Sequence[int]],
        *,
        catalog_id: Optional[tuple[int, int]] = None,
        check: bool = True,
    ):
        table = tuple(tuple(int(v) for v in row) for row in mul)
        n = len(table)
        if n == 0:
            raise ValueError("empty multiplication table")
        for row in table:
            if len(row) != n:
                raise ValueError("multiplication table must be square")
            if any(v < 0 or v >= n for v in row):
                raise ValueError("table entry out of range")
        full = frozenset(range(n))
        for i, row in enumerate(table):
            if frozenset(row) != full:
                raise ValueError(f"row {i} is not a permutation")
        for j in range(n):
            if frozenset(table[i][j] for i in range(n)) != full:
                raise ValueError(f"column {j} is not a permutation")
        identity = None
        for e in range(n):
            if all(table[e][x] == x and table[x][e] == x for x in range(n)):
                identity = e
                break
        if identity is None:
            raise ValueError("no two-sided identity")
        # associativity is exhaustively checkable only at small orders;
        # larger tables come from closures, which are associative by build
        if check and n <= 64:
            for a in range(n):
                ra = table[a]
                for b in range(n):
                    ab = ra[b]
                    rb = table[b]
                    tab = table[ab]
                    for c in range(n):
                        if tab[c] != ra[rb[c]]:
                            raise ValueError(
                                f"associativity fails at ({a},{b},{c})"
                            )
        inv = [0] * n
        for x in range(n):
            inv[x] = table[x].index(identity)
        orders = [1] * n
        for x in range(n):
            y = x
            k = 1
            while y != identity:
                y = table[y][x]
                k += 1
            orders[x] = k
        self.order = n
        self.mul = table
        self.identity = identity
        self.inv = tuple(inv)
        self.elem_order = tuple(orders)
        self.catalog_id = catalog_id
        self._cache = {}

    @property
    def elements(self) -> range:
        return range(self.order)

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def commutator(self, a: int, b: int) -> int:
        """a b a^-1 b^-1."""
        m = self.mul
        return m[m[m[a][b]][self.inv[a]]][self.inv[b]]

    def is_abelian(self) -> bool:
        if "abelian" not in self._cache:
            m = self.mul
            self._cache["abelian"] = all(
                m[a][b] == m[b][a]
                for a in range(self.order)
                for b in range(a + 1, self.order)
            )
        return self._cache["abelian"]

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.mul == other.mul

    def __hash__(self) -> int:
        if "hash" not in self._cache:
            self._cache["hash"] = hash(self.mul)
        return self._cache["hash"]

    def __repr__(self) -> str:
        tag = f", catalog_id={self.catalog_id}" if self.catalog_id else ""
        return f"FiniteGroup(order={self.order}{tag})"


class Subgroup:
    """A subgroup of a FiniteGroup, stored as a sorted member tuple."""

    __slots__ = ("parent", "members", "member_set", "_cache")

    def __init__(self, parent: FiniteGroup, members: Iterable[int], *, check: bool = True):
        self.parent = parent
        self.members = tuple(sorted(set(int(x) for x in members)))
        self.member_set = frozenset(self.members)
        self._cache = {}
        if check:
            if parent.identity not in self.member_set:
                raise ValueError("subgroup must contain the identity")
            mul = parent.mul
            for a in self.members:
                if parent.inv[a] not in self.member_set:
                    raise ValueError(f"subgroup not closed under inverse: {a}")
                row = mul[a]
                for b in self.members:
                    if row[b] not in self.member_set:
                        raise ValueError(f"subgroup not closed: ({a},{b})")

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.member_set

    def is_full(self) -> bool:
        return len(self.members) == self.parent.order

    def is_trivial(self) -> bool:
        return self.members == (self.parent.identity,)

    def is_normal(self) -> bool:
        if "normal" not in self._cache:
            par = self.parent
            self._cache["normal"] = all(
                par.conj(g, h) in self.member_set
                for g in par.elements
                for h in self.members
            )
        return self._cache["normal"]

    def as_group(self) -> FiniteGroup:
        """The subgroup as its own FiniteGroup; index i maps to members[i]."""
        if "group" not in self._cache:
            idx = {m: i for i, m in enumerate(self.members)}
            mul = self.parent.mul
            table = tuple(
                tuple(idx[mul[a][b]] for b in self.members) for a in self.members
            )
            self._cache["group"] = FiniteGroup(table)
        return self._cache["group"]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.members == other.members
            and (self.parent is other.parent or self.parent.mul == other.parent.mul)
        )

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.order})"


class GroupHom:
    """A homomorphism between finite groups as a full image table."""

    __slots__ = ("source", "target", "image_of")

    def __init__(
        self,
        source: FiniteGroup,
        target: FiniteGroup,
        image_of: Sequence[int],
        *,
        check: bool = True,
    ):
        self.source = source
        self.target = target
        self.image_of = tuple(int(v) for v in image_of)
        if len(self.image_of) != source.order:
            raise ValueError("image table length mismatch")
        if any(v < 0 or v >= target.order for v in self.image_of):
            raise ValueError("image out of range")
        if check:
            if self.image_of[source.identity] != target.identity:
                raise ValueError("identity not preserved")
            ms, mt, img = source.mul, target.mul, self.image_of
            for a in source.elements:
                ia = img[a]
                ra = ms[a]
                for b in source.elements:
                    if img[ra[b]] != mt[ia][img[b]]:
                        raise ValueError(f"not a homomorphism at ({a},{b})")

    def __call__(self, x: int) -> int:
        return self.image_of[x]

    def after(self, other: "GroupHom") -> "GroupHom":
        """self ∘ other (apply other first)."""
        if other.target is not self.source and other.target.mul != self.source.mul:
            raise ValueError("composition domain mismatch")
        img = tuple(self.image_of[y] for y in other.image_of)
        return GroupHom(other.source, self.target, img, check=False)

    def is_injective(self) -> bool:
        return len(set(self.image_of)) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.image_of)) == self.target.order

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and self.is_injective()

    def kernel_subgroup(self) -> Subgroup:
        e = self.target.identity
        return Subgroup(
            self.source,
            (x for x in self.source.elements if self.image_of[x] == e),
            check=False,
        )

    def image_subgroup(self) -> Subgroup:
        return Subgroup(self.target, set(self.image_of), check=False)

    def inverse(self) -> "GroupHom":
        if not self.is_bijective():
            raise ValueError("not invertible")
        img = [0] * self.target.order
        for x, y in enumerate(self.image_of):
            img[y] = x
        return GroupHom(self.target, self.source, img, check=False)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupHom)
            and self.image_of == other.image_of
            and self.source.mul == other.source.mul
            and self.target.mul == other.target.mul
        )

    def __hash__(self) -> int:
        return hash(self.image_of)

    def __repr__(self) -> str:
        return f"GroupHom({self.source.order} -> {self.target.order})"


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, tuple(G.elements), check=False)


def group_from_closure(
    generators: Sequence[Hashable],
    op: Callable[[Hashable, Hashable], Hashable],
    identity: Hashable,
    *,
    max_order: Optional[int] = None,
) -> tuple[FiniteGroup, list]:
    """Close a generating set under an associative product.

    Returns the group and its element list; element i of the group is
    elements[i], with the identity first. Discovery order is a breadth
    first walk multiplying known elements by generators on the right.
    """
    if max_order is None:
        max_order = DEFAULT_CLOSURE_CAP
    elements = [identity]
    index = {identity: 0}
    i = 0
    gens = list(generators)
    while i < len(elements):
        a = elements[i]
        i += 1
        for g in gens:
            p = op(a, g)
            if p not in index:
                if len(elements) >= max_order:
                    raise CapExceededError(
                        f"closure exceeded cap of {max_order} elements"
                    )
                index[p] = len(elements)
                elements.append(p)
    table = tuple(
        tuple(index[op(a, b)] for b in elements) for a in elements
    )
    return FiniteGroup(table), elements


def compose_perms(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """(p ∘ q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def group_from_generators(
    perms: Sequence[Sequence[int]],
    *,
    max_order: Optional[int] = None,
) -> FiniteGroup:
    """The permutation group generated by image-table permutations.

    An empty list yields the trivial group. All permutations are padded
    to a common degree; the closure is capped at max_order.
    """
    degree = max((len(p) for p in perms), default=1)
    gens = []
    for p in perms:
        t = tuple(int(v) for v in p) + tuple(range(len(p), degree))
        if sorted(t) != list(range(degree)):
            raise ValueError(f"not a permutation: {p}")
        gens.append(t)
    ident = tuple(range(degree))
    group, _ = group_from_closure(gens, compose_perms, ident, max_order=max_order)
    return group


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("order must be positive")
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteGroup(table, check=False)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n (n=1 gives C2, n=2 Kl4)."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((n - i) % n for i in range(n))
    return group_from_generators([rot, ref])


def dicyclic_group(n: int) -> FiniteGroup:
    """Order 4n with presentation a^2n = 1, b^2 = a^n, b a b^-1 = a^-1."""
    if n < 1:
        raise ValueError("n must be positive")

    def op(x, y):
        i, j = x
        k, l = y
        if j == 0:
            return ((i + k) % (2 * n), l)
        i2, j2 = (i - k) % (2 * n), j + l
        if j2 == 2:
            return ((i2 + n) % (2 * n), 0)
        return (i2, j2)

    group, _ = group_from_closure([(1, 0), (0, 1)], op, (0, 0))
    return group


def symmetric_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return cyclic_group(1)
    cycle = tuple(range(1, n)) + (0,)
    swap = (1, 0) + tuple(range(2, n))
    return group_from_generators([cycle, swap])


def alternating_group(n: int) -> FiniteGroup:
    if n < 3:
        return cyclic_group(1)
    three = (1, 2, 0) + tuple(range(3, n))
    if n == 3:
        return group_from_generators([three])
    rest = (0,) + tuple(range(2, n)) + (1,)
    return group_from_generators([three, rest])


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Pairs ordered with identity (0,0) first, H index varying fastest."""
    n, m = G.order, H.order
    table = [
        [0] * (n * m) for _ in range(n * m)
    ]
    for a, b, c, d in iproduct(range(n), range(m), range(n), range(m)):
        table[a * m + b][c * m + d] = G.mul[a][c] * m + H.mul[b][d]
    return FiniteGroup(table, check=False)


def abelian_group(invariants: Sequence[int]) -> FiniteGroup:
    group = cyclic_group(1)
    for n in invariants:
        group = direct_product(group, cyclic_group(n))
    return group


def subgroup_generated(G: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    members = [G.identity]
    seen = {G.identity}
    gens = [s for s in seeds if s != G.identity]
    mul = G.mul
    i = 0
    while i < len(members):
        a = members[i]
        i += 1
        for g in gens:
            p = mul[a][g]
            if p not in seen:
                seen.add(p)
                members.append(p)
    return Subgroup(G, seen, check=False)


def full_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, G.elements, check=False)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,), check=False)


def center(G: FiniteGroup) -> Subgroup:
    mul = G.mul
    members = [
        z
        for z in G.elements
        if all(mul[z][x] == mul[x][z] for x in G.elements)
    ]
    return Subgroup(G, members, check=False)


def relative_commutator_group(
    G: FiniteGroup, left: Iterable[int], right: Iterable[int]
) -> Subgroup:
    """Subgroup generated by commutators [a, b], a in left, b in right."""
    seeds = {G.commutator(a, b) for a in left for b in right}
    return subgroup_generated(G, seeds)


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    return relative_commutator_group(G, G.elements, G.elements)


def quotient_group(G: FiniteGroup, N) -> tuple[FiniteGroup, GroupHom]:
    """Quotient by a normal subgroup, with the projection homomorphism.

    Cosets are indexed in ascending order of their minimal member, so the
    identity coset is element 0.
    """
    if not isinstance(N, Subgroup):
        N = Subgroup(G, N)
    if N.parent.mul != G.mul:
        raise ValueError("subgroup of a different group")
    if not N.is_normal():
        raise ValueError("subgroup is not normal")
    mul = G.mul
    coset_of = [-1] * G.order
    reps = []
    for x in G.elements:
        if coset_of[x] >= 0:
            continue
        idx = len(reps)
        reps.append(x)
        for n in N.members:
            coset_of[mul[x][n]] = idx
    k = len(reps)
    table = tuple(
        tuple(coset_of[mul[reps[a]][reps[b]]] for b in range(k)) for a in range(k)
    )
    quotient = FiniteGroup(table, check=False)
    proj = GroupHom(G, quotient, coset_of, check=False)
    return quotient, proj


def generating_sequence(G: FiniteGroup) -> list[int]:
    """A short generating sequence found greedily by ascending index."""
    if "gens" in G._cache:
        return list(G._cache["gens"])
    gens: list[int] = []
    reached = {G.identity}
    for x in G.elements:
        if x in reached:
            continue
        gens.append(x)
        reached = subgroup_generated(G, gens).member_set
        if len(reached) == G.order:
            break
    G._cache["gens"] = tuple(gens)
    return gens


def _closure_map(
    G: FiniteGroup, H: FiniteGroup, pairs: Sequence[tuple[int, int]]
) -> Optional[dict]:
    """Extend generator assignments to the generated subgroup, or None.

    Checks every product (known element) * (generator), which is enough to
    certify the extension is a homomorphism on the generated subgroup.
    """
    image = {G.identity: H.identity}
    order_list = [G.identity]
    for g, h in pairs:
        if g in image:
            if image[g] != h:
                return None
        else:
            image[g] = h
            order_list.append(g)
    mg, mh = G.mul, H.mul
    i = 0
    while i < len(order_list):
        a = order_list[i]
        i += 1
        ia = image[a]
        for g, h in pairs:
            p = mg[a][g]
            q = mh[ia][h]
            known = image.get(p)
            if known is None:
                image[p] = q
                order_list.append(p)
            elif known != q:
                return None
    return image


def all_homs(G: FiniteGroup, H: FiniteGroup) -> list[GroupHom]:
    """Every homomorphism G -> H, by generator-image backtracking."""
    gens = generating_sequence(G)
    out: list[GroupHom] = []

    def rec(k: int, pairs: list[tuple[int, int]]):
        if k == len(gens):
            image = _closure_map(G, H, pairs)
            if image is not None and len(image) == G.order:
                out.append(
                    GroupHom(G, H, tuple(image[x] for x in G.elements), check=False)
                )
            return
        g = gens[k]
        g_ord = G.elem_order[g]
        for h in H.elements:
            if g_ord % H.elem_order[h] != 0:
                continue
            pairs.append((g, h))
            if _closure_map(G, H, pairs) is not None:
                rec(k + 1, pairs)
            pairs.pop()

    rec(0, [])
    return out


def all_isos(G: FiniteGroup, H: FiniteGroup) -> list[GroupHom]:
    """Every isomorphism G -> H; for G against itself, identity first."""
    if G.order != H.order:
        return []
    if sorted(G.elem_order) != sorted(H.elem_order):
        return []
    same = G is H or G.mul == H.mul
    gens = generating_sequence(G)
    ident = tuple(G.elements)
    out: list[GroupHom] = []
    if same:
        out.append(identity_hom(G))

    def rec(k: int, pairs: list[tuple[int, int]]):
        if k == len(gens):
            image = _closure_map(G, H, pairs)
            if image is not None and len(image) == G.order:
                table = tuple(image[x] for x in G.elements)
                if len(set(table)) == G.order and not (same and table == ident):
                    out.append(GroupHom(G, H, table, check=False))
            return
        g = gens[k]
        g_ord = G.elem_order[g]
        for h in H.elements:
            if H.elem_order[h] != g_ord:
                continue
            pairs.append((g, h))
            if _closure_map(G, H, pairs) is not None:
                rec(k + 1, pairs)
            pairs.pop()

    rec(0, [])
    return out


def first_iso(G: FiniteGroup, H: FiniteGroup) -> Optional[GroupHom]:
    """The first isomorphism G -> H in backtracking order, or None."""
    if G.order != H.order:
        return None
    if sorted(G.elem_order) != sorted(H.elem_order):
        return None
    if G is H or G.mul == H.mul:
        return identity_hom(G)
    gens = generating_sequence(G)

    def rec(k: int, pairs: list[tuple[int, int]]) -> Optional[GroupHom]:
        if k == len(gens):
            image = _closure_map(G, H, pairs)
            if image is not None and len(image) == G.order:
                table = tuple(image[x] for x in G.elements)
                if len(set(table)) == G.order:
                    return GroupHom(G, H, table, check=False)
            return None
        g = gens[k]
        g_ord = G.elem_order[g]
        for h in H.elements:
            if H.elem_order[h] != g_ord:
                continue
            pairs.append((g, h))
            if _closure_map(G, H, pairs) is not None:
                found = rec(k + 1, pairs)
                if found is not None:
                    pairs.pop()
                    return found
            pairs.pop()
        return None

    return rec(0, [])


def automorphism_group(
    G: FiniteGroup, *, cap: Optional[int] = None
) -> tuple[FiniteGroup, list[GroupHom]]:
    """Aut(G) as a FiniteGroup whose element i is the returned list's i-th
    automorphism; the product is composition, (f*g)(x) = f(g(x))."""
    if cap is None:
        cap = DEFAULT_AUT_CAP
    if G.order > cap:
        raise CapExceededError(
            f"automorphism search capped at order {cap}, got {G.order}"
        )
    if "aut" in G._cache:
        return G._cache["aut"]
    auts = all_isos(G, G)
    index = {f.image_of: i for i, f in enumerate(auts)}
    table = tuple(
        tuple(index[compose_perms(f.image_of, g.image_of)] for g in auts)
        for f in auts
    )
    result = (FiniteGroup(table, check=False), auts)
    G._cache["aut"] = result
    return result


def group_fingerprint(G: FiniteGroup) -> tuple:
    """A cheap isomorphism invariant used to prefilter searches."""
    if "fp" in G._cache:
        return G._cache["fp"]
    derived = derived_subgroup(G)
    quotient, _ = quotient_group(G, derived)
    fp = (
        G.order,
        tuple(sorted(G.elem_order)),
        center(G).order,
        derived.order,
        tuple(sorted(quotient.elem_order)),
    )
    G._cache["fp"] = fp
    return fp


@dataclass(frozen=True)
class GroupIsoclinism:
    """Witness that two groups are isoclinic.

    quotient_iso maps M/Z(M) to N/Z(N); derived_iso maps [M,M] to [N,N]
    (each derived subgroup repackaged as its own FiniteGroup, index i being
    derived_members[i] in the parent). The commutator square is checked
    over every pair of central cosets before a witness is returned.
    """

    quotient_iso: GroupHom
    derived_iso: GroupHom
    source_projection: GroupHom
    target_projection: GroupHom
    source_derived_members: tuple[int, ...]
    target_derived_members: tuple[int, ...]


def _commutator_on_quotient(
    G: FiniteGroup, Q: FiniteGroup, proj: GroupHom, dsub: Subgroup
) -> list[list[int]]:
    """c(aZ, bZ) = [a, b] as an index into dsub's own group."""
    reps = [0] * Q.order
    seen = [False] * Q.order
    for x in G.elements:
        c = proj(x)
        if not seen[c]:
            seen[c] = True
            reps[c] = x
    didx = {m: i for i, m in enumerate(dsub.members)}
    return [
        [didx[G.commutator(reps[a], reps[b])] for b in Q.elements]
        for a in Q.elements
    ]


def is_isoclinic_group(M: FiniteGroup, N: FiniteGroup) -> Optional[GroupIsoclinism]:
    """Search for an isoclinism witness; None when the groups are not
    isoclinic. Deterministic: first witness in backtracking order."""
    zm, zn = center(M), center(N)
    qm, pm = quotient_group(M, zm)
    qn, pn = quotient_group(N, zn)
    dm, dn = derived_subgroup(M), derived_subgroup(N)
    if qm.order != qn.order or dm.order != dn.order:
        return None
    dmg, dng = dm.as_group(), dn.as_group()
    cm = _commutator_on_quotient(M, qm, pm, dm)
    cn = _commutator_on_quotient(N, qn, pn, dn)
    xis = all_isos(dmg, dng)
    if not xis:
        return None
    for eta in all_isos(qm, qn):
        em = eta.image_of
        for xi in xis:
            xm = xi.image_of
            if all(
                xm[cm[a][b]] == cn[em[a]][em[b]]
                for a in qm.elements
                for b in qm.elements
            ):
                return GroupIsoclinism(
                    quotient_iso=eta,
                    derived_iso=xi,
                    source_projection=pm,
                    target_projection=pn,
                    source_derived_members=dm.members,
                    target_derived_members=dn.members,
                )
    return None


def _isoclinism_fingerprint(G: FiniteGroup) -> tuple:
    zg = center(G)
    q, _ = quotient_group(G, zg)
    d = derived_subgroup(G)
    return (
        q.order,
        tuple(sorted(q.elem_order)),
        d.order,
        tuple(sorted(G.elem_order[x] for x in d.members)),
    )


def group_family_partition(groups: Sequence[FiniteGroup]) -> list[list[int]]:
    """Partition indices into isoclinism families, ordered by first member."""
    families: list[list[int]] = []
    fingerprints = [_isoclinism_fingerprint(G) for G in groups]
    assigned = [False] * len(groups)
    for i in range(len(groups)):
        if assigned[i]:
            continue
        family = [i]
        assigned[i] = True
        for j in range(i + 1, len(groups)):
            if assigned[j] or fingerprints[i] != fingerprints[j]:
                continue
            if is_isoclinic_group(groups[i], groups[j]) is not None:
                family.append(j)
                assigned[j] = True
        families.append(family)
    return families


def group_rank(G: FiniteGroup) -> LogValue:
    """Exact order |Z∩G'| * |G/Z|, rendered as its log2."""
    zg = center(G)
    dg = derived_subgroup(G)
    overlap = len(zg.member_set & dg.member_set)
    return LogValue(overlap * (G.order // zg.order))


def group_middle_length(G: FiniteGroup) -> LogValue:
    zg = center(G)
    dg = derived_subgroup(G)
    overlap = len(zg.member_set & dg.member_set)
    return LogValue(dg.order // overlap)


def group_lower_central_series(G: FiniteGroup) -> list[Subgroup]:
    """gamma_1 = G, gamma_{i+1} = [gamma_i, G]; distinct terms only."""
    terms = [full_subgroup(G)]
    while True:
        nxt = relative_commutator_group(G, terms[-1].members, G.elements)
        if nxt.members == terms[-1].members:
            return terms
        terms.append(nxt)


def group_nilpotency_class(G: FiniteGroup):
    """Nilpotency class, or the NOT_NILPOTENT marker."""
    terms = group_lower_central_series(G)
    if terms[-1].is_trivial():
        return len(terms) - 1
    return NOT_NILPOTENT
