"""Crossed modules of finite groups.

A crossed module is a boundary homomorphism d: G1 -> G0 together with a
left action of G0 on G1 by automorphisms, subject to

  CM1:  d(^x a) = x d(a) x^-1          for all x in G0, a in G1,
  CM2:  ^{d(a)} b = a b a^-1           for all a, b in G1.

The action is stored as a dense table: action[x][a] is ^x a. Validation
failures carry a distinct code and a witness pair.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

from .catalog import catalog_group
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    _closure_map,
    all_isos,
    compose_perms,
    generating_sequence,
    group_fingerprint,
    identity_hom,
    quotient_group,
)

SERIAL_VERSION = "v1"


class XModAxiomError(ValueError):
    """A crossed-module axiom failed; carries a code and a witness pair."""

    def __init__(self, code: str, witness, detail: str):
        self.code = code
        self.witness = witness
        super().__init__(f"{code} at {witness}: {detail}")


class WellDefinednessError(RuntimeError):
    """A quotient-level value depended on the choice of representative."""


class CrossedModule:
    """A finite crossed module (G1 -> G0) with a dense action table."""

    __slots__ = ("g1", "g0", "boundary", "action", "_cache")

    def __init__(
        self,
        g1: FiniteGroup,
        g0: FiniteGroup,
        boundary: GroupHom,
        action: Sequence[Sequence[int]],
        *,
        check_action: bool = True,
        check_cm: bool = True,
    ):
        if boundary.source is not g1 or boundary.target is not g0:
            if boundary.source.mul != g1.mul or boundary.target.mul != g0.mul:
                raise ValueError("boundary endpoints do not match the groups")
        self.g1 = g1
        self.g0 = g0
        self.boundary = boundary
        self.action = tuple(tuple(int(v) for v in row) for row in action)
        self._cache = {}
        n, m = g1.order, g0.order
        if len(self.action) != m or any(len(row) != n for row in self.action):
            raise ValueError("action table must be |G0| rows of length |G1|")
        if check_action:
            self._check_action_rows()
            self._check_action_hom()
        if check_cm:
            self._check_cm1()
            self._check_cm2()

    def _check_action_rows(self):
        n = self.g1.order
        mul1 = self.g1.mul
        full = frozenset(range(n))
        for x, row in enumerate(self.action):
            if frozenset(row) != full:
                raise XModAxiomError(
                    "action-not-automorphic", (x, None),
                    f"row {x} is not a bijection")
            for a in range(n):
                ra = mul1[a]
                for b in range(n):
                    if row[ra[b]] != mul1[row[a]][row[b]]:
                        raise XModAxiomError(
                            "action-not-automorphic", (x, (a, b)),
                            "row does not respect the product")

    def _check_action_hom(self):
        ident = tuple(self.g1.elements)
        if self.action[self.g0.identity] != ident:
            raise XModAxiomError(
                "action-not-homomorphic", (self.g0.identity, None),
                "identity must act trivially")
        mul0 = self.g0.mul
        act = self.action
        for x in self.g0.elements:
            for y in self.g0.elements:
                if act[mul0[x][y]] != compose_perms(act[x], act[y]):
                    raise XModAxiomError(
                        "action-not-homomorphic", (x, y),
                        "action of a product is not the composite")

    def _check_cm1(self):
        d = self.boundary.image_of
        conj0 = self.g0.conj
        for x in self.g0.elements:
            row = self.action[x]
            for a in self.g1.elements:
                if d[row[a]] != conj0(x, d[a]):
                    raise XModAxiomError(
                        "cm1", (x, a),
                        "boundary is not equivariant for the action")

    def _check_cm2(self):
        d = self.boundary.image_of
        act = self.action
        conj1 = self.g1.conj
        for a in self.g1.elements:
            row = act[d[a]]
            for b in self.g1.elements:
                if row[b] != conj1(a, b):
                    raise XModAxiomError(
                        "cm2", (a, b),
                        "boundary image must act by conjugation")

    def act(self, x: int, a: int) -> int:
        return self.action[x][a]

    def order(self) -> tuple[int, int]:
        return (self.g1.order, self.g0.order)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CrossedModule)
            and self.g1.mul == other.g1.mul
            and self.g0.mul == other.g0.mul
            and self.boundary.image_of == other.boundary.image_of
            and self.action == other.action
        )

    def __hash__(self) -> int:
        if "hash" not in self._cache:
            self._cache["hash"] = hash(
                (self.g1.mul, self.g0.mul, self.boundary.image_of, self.action)
            )
        return self._cache["hash"]

    def __repr__(self) -> str:
        return f"CrossedModule(order={list(self.order())})"


def make_xmod(
    g1: FiniteGroup,
    g0: FiniteGroup,
    boundary,
    action: Sequence[Sequence[int]],
) -> CrossedModule:
    """Build and fully validate a crossed module.

    boundary may be a GroupHom or a plain image table.
    """
    if not isinstance(boundary, GroupHom):
        boundary = GroupHom(g1, g0, boundary)
    return CrossedModule(g1, g0, boundary, action)


def identity_xmod(M: FiniteGroup) -> CrossedModule:
    """(M -> M) with the identity boundary and conjugation action."""
    action = tuple(
        tuple(M.conj(x, a) for a in M.elements) for x in M.elements
    )
    return CrossedModule(M, M, identity_hom(M), action)


def inclusion_xmod(M: FiniteGroup, N) -> CrossedModule:
    """(N -> M) for a normal subgroup N, with the conjugation action."""
    if not isinstance(N, Subgroup):
        N = Subgroup(M, N)
    if not N.is_normal():
        raise ValueError("inclusion_xmod requires a normal subgroup")
    sub = N.as_group()
    sub_index = {g: i for i, g in enumerate(N.members)}
    boundary = GroupHom(sub, M, N.members, check=False)
    action = tuple(
        tuple(sub_index[M.conj(x, g)] for g in N.members) for x in M.elements
    )
    return CrossedModule(sub, M, boundary, action)


def module_xmod(
    K: FiniteGroup, L: FiniteGroup, action: Optional[Sequence[Sequence[int]]] = None
) -> CrossedModule:
    """(K -> L) with zero boundary; K must be abelian (CM2 fails otherwise)."""
    if action is None:
        row = tuple(K.elements)
        action = tuple(row for _ in L.elements)
    boundary = GroupHom(K, L, (L.identity,) * K.order, check=False)
    return CrossedModule(K, L, boundary, action)


def xmod_order(X: CrossedModule) -> tuple[int, int]:
    return X.order()


class SubXMod:
    """A sub-crossed-module: levelwise subgroups closed under the data."""

    __slots__ = ("parent", "s1", "s0", "_cache")

    def __init__(self, parent: CrossedModule, s1: Subgroup, s0: Subgroup):
        self.parent = parent
        self.s1 = s1
        self.s0 = s0
        self._cache = {}

    @property
    def order(self) -> tuple[int, int]:
        return (self.s1.order, self.s0.order)

    def is_full(self) -> bool:
        return self.s1.is_full() and self.s0.is_full()

    def is_trivial(self) -> bool:
        return self.s1.is_trivial() and self.s0.is_trivial()

    def members(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.s1.members, self.s0.members)

    def as_xmod(self) -> CrossedModule:
        """The sub-crossed-module as a standalone crossed module."""
        if "xmod" not in self._cache:
            X = self.parent
            g1 = self.s1.as_group()
            g0 = self.s0.as_group()
            i1 = {g: i for i, g in enumerate(self.s1.members)}
            i0 = {g: i for i, g in enumerate(self.s0.members)}
            boundary = GroupHom(
                g1, g0,
                tuple(i0[X.boundary(g)] for g in self.s1.members),
                check=False,
            )
            action = tuple(
                tuple(i1[X.act(x, a)] for a in self.s1.members)
                for x in self.s0.members
            )
            self._cache["xmod"] = CrossedModule(g1, g0, boundary, action)
        return self._cache["xmod"]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubXMod)
            and self.parent == other.parent
            and self.s1.members == other.s1.members
            and self.s0.members == other.s0.members
        )

    def __hash__(self) -> int:
        return hash((self.s1.members, self.s0.members))

    def __repr__(self) -> str:
        return f"SubXMod(order={list(self.order)})"


def sub_xmod(X: CrossedModule, s1, s0) -> SubXMod:
    """Validated sub-crossed-module from levelwise member sets."""
    if not isinstance(s1, Subgroup) or s1.parent is not X.g1:
        s1 = Subgroup(X.g1, s1)
    if not isinstance(s0, Subgroup) or s0.parent is not X.g0:
        s0 = Subgroup(X.g0, s0)
    for a in s1.members:
        if X.boundary(a) not in s0.member_set:
            raise ValueError(f"boundary image of {a} leaves the level-0 part")
    for x in s0.members:
        row = X.action[x]
        for a in s1.members:
            if row[a] not in s1.member_set:
                raise ValueError(
                    f"level-1 part not closed under the action: ({x},{a})")
    return SubXMod(X, s1, s0)


def full_subxmod(X: CrossedModule) -> SubXMod:
    return SubXMod(
        X,
        Subgroup(X.g1, X.g1.elements, check=False),
        Subgroup(X.g0, X.g0.elements, check=False),
    )


def trivial_subxmod(X: CrossedModule) -> SubXMod:
    return SubXMod(
        X,
        Subgroup(X.g1, (X.g1.identity,), check=False),
        Subgroup(X.g0, (X.g0.identity,), check=False),
    )


def is_normal_subxmod(X: CrossedModule, S: SubXMod) -> bool:
    """S0 normal in G0, S1 stable under all of G0, and displacements of
    S0 against G1 land in S1."""
    if S.parent is not X and S.parent != X:
        raise ValueError("subxmod of a different crossed module")
    if not S.s0.is_normal():
        return False
    s1set = S.s1.member_set
    for x in X.g0.elements:
        row = X.action[x]
        if any(row[a] not in s1set for a in S.s1.members):
            return False
    mul1, inv1 = X.g1.mul, X.g1.inv
    for x in S.s0.members:
        row = X.action[x]
        for a in X.g1.elements:
            if mul1[row[a]][inv1[a]] not in s1set:
                return False
    return True


class XModMorphism:
    """A morphism of crossed modules: compatible level maps (alpha, beta)."""

    __slots__ = ("source", "target", "alpha", "beta")

    def __init__(
        self,
        source: CrossedModule,
        target: CrossedModule,
        alpha: GroupHom,
        beta: GroupHom,
        *,
        check: bool = True,
    ):
        self.source = source
        self.target = target
        self.alpha = alpha
        self.beta = beta
        if check:
            dS, dT = source.boundary.image_of, target.boundary.image_of
            a, b = alpha.image_of, beta.image_of
            for x in source.g1.elements:
                if b[dS[x]] != dT[a[x]]:
                    raise ValueError(f"boundary square fails at {x}")
            for x in source.g0.elements:
                row_s = source.action[x]
                row_t = target.action[b[x]]
                for y in source.g1.elements:
                    if a[row_s[y]] != row_t[a[y]]:
                        raise ValueError(f"equivariance fails at ({x},{y})")

    def is_iso(self) -> bool:
        return self.alpha.is_bijective() and self.beta.is_bijective()

    def inverse(self) -> "XModMorphism":
        if not self.is_iso():
            raise ValueError("not invertible")
        return XModMorphism(
            self.target, self.source,
            self.alpha.inverse(), self.beta.inverse(), check=False,
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, XModMorphism)
            and self.alpha.image_of == other.alpha.image_of
            and self.beta.image_of == other.beta.image_of
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self) -> int:
        return hash((self.alpha.image_of, self.beta.image_of))

    def __repr__(self) -> str:
        return (
            f"XModMorphism({list(self.source.order())} -> "
            f"{list(self.target.order())})"
        )


def identity_morphism(X: CrossedModule) -> XModMorphism:
    return XModMorphism(
        X, X, identity_hom(X.g1), identity_hom(X.g0), check=False
    )


def quotient_xmod(X: CrossedModule, N: SubXMod) -> tuple[CrossedModule, XModMorphism]:
    """Quotient by a normal sub-crossed-module, with the projection.

    Both the induced boundary and the induced action are checked to be
    independent of coset representatives (WellDefinednessError otherwise).
    """
    if not is_normal_subxmod(X, N):
        raise ValueError("quotient requires a normal sub-crossed-module")
    q1, p1 = quotient_group(X.g1, N.s1)
    q0, p0 = quotient_group(X.g0, N.s0)
    pi1, pi0 = p1.image_of, p0.image_of
    d = X.boundary.image_of
    bnd = [None] * q1.order
    for a in X.g1.elements:
        c = pi1[a]
        v = pi0[d[a]]
        if bnd[c] is None:
            bnd[c] = v
        elif bnd[c] != v:
            raise WellDefinednessError(
                f"boundary on coset {c} depends on the representative")
    act = [[None] * q1.order for _ in range(q0.order)]
    for x in X.g0.elements:
        row = X.action[x]
        arow = act[pi0[x]]
        for a in X.g1.elements:
            c = pi1[a]
            v = pi1[row[a]]
            if arow[c] is None:
                arow[c] = v
            elif arow[c] != v:
                raise WellDefinednessError(
                    f"action on coset pair ({pi0[x]},{c}) depends on the "
                    "representative")
    quotient = CrossedModule(
        q1, q0, GroupHom(q1, q0, bnd, check=False), act
    )
    proj = XModMorphism(X, quotient, p1, p0, check=False)
    return quotient, proj


def intersection(H: SubXMod, K: SubXMod) -> SubXMod:
    if H.parent != K.parent:
        raise ValueError("subxmods of different crossed modules")
    X = H.parent
    return sub_xmod(
        X, H.s1.member_set & K.s1.member_set, H.s0.member_set & K.s0.member_set
    )


def product(H: SubXMod, K: SubXMod) -> SubXMod:
    """Levelwise product H*K; K must be normal so the products are groups."""
    if H.parent != K.parent:
        raise ValueError("subxmods of different crossed modules")
    X = H.parent
    if not is_normal_subxmod(X, K):
        raise ValueError("second factor must be a normal sub-crossed-module")
    mul1, mul0 = X.g1.mul, X.g0.mul
    s1 = {mul1[h][k] for h in H.s1.members for k in K.s1.members}
    s0 = {mul0[h][k] for h in H.s0.members for k in K.s0.members}
    return sub_xmod(X, s1, s0)


def kernel(f: XModMorphism) -> SubXMod:
    return sub_xmod(
        f.source,
        f.alpha.kernel_subgroup().members,
        f.beta.kernel_subgroup().members,
    )


def image(f: XModMorphism) -> SubXMod:
    return sub_xmod(
        f.target, set(f.alpha.image_of), set(f.beta.image_of)
    )


# --- isomorphism search ---


def xmod_fingerprint(X: CrossedModule) -> tuple:
    """Cheap isomorphism invariants used to prefilter searches."""
    if "fp" not in X._cache:
        d = X.boundary.image_of
        ord1, ord0 = X.g1.elem_order, X.g0.elem_order
        fix = [
            a for a in X.g1.elements
            if all(row[a] == a for row in X.action)
        ]
        ident = tuple(X.g1.elements)
        stab = [x for x in X.g0.elements if X.action[x] == ident]
        orbit_sizes = []
        seen = set()
        for a in X.g1.elements:
            if a in seen:
                continue
            orbit = {a}
            frontier = [a]
            while frontier:
                b = frontier.pop()
                for row in X.action:
                    c = row[b]
                    if c not in orbit:
                        orbit.add(c)
                        frontier.append(c)
            seen |= orbit
            orbit_sizes.append(len(orbit))
        X._cache["fp"] = (
            group_fingerprint(X.g1),
            group_fingerprint(X.g0),
            tuple(sorted((ord1[a], ord0[d[a]]) for a in X.g1.elements)),
            len(fix),
            len(stab),
            tuple(sorted(orbit_sizes)),
        )
    return X._cache["fp"]


def all_xmod_isos(X: CrossedModule, Y: CrossedModule) -> Iterator[XModMorphism]:
    """Every isomorphism X -> Y, searching beta first; on X against itself
    the identity comes first."""
    if X.order() != Y.order():
        return
    same = X == Y
    if same:
        yield identity_morphism(X)
    dX, dY = X.boundary.image_of, Y.boundary.image_of
    g1x, g1y = X.g1, Y.g1
    gens = generating_sequence(g1x)
    id_pair = (tuple(g1x.elements), tuple(X.g0.elements))

    for beta in all_isos(X.g0, Y.g0):
        bt = beta.image_of

        def alpha_rec(k: int, pairs: list) -> Iterator[tuple[int, ...]]:
            if k == len(gens):
                image = _closure_map(g1x, g1y, pairs)
                if image is not None and len(image) == g1x.order:
                    img = tuple(image[x] for x in g1x.elements)
                    if len(set(img)) == g1x.order:
                        yield img
                return
            g = gens[k]
            g_ord = g1x.elem_order[g]
            target_d = bt[dX[g]]
            for h in g1y.elements:
                if g1y.elem_order[h] != g_ord or dY[h] != target_d:
                    continue
                pairs.append((g, h))
                if _closure_map(g1x, g1y, pairs) is not None:
                    yield from alpha_rec(k + 1, pairs)
                pairs.pop()

        for img in alpha_rec(0, []):
            ok = all(dY[img[a]] == bt[dX[a]] for a in g1x.elements)
            if ok:
                for x in X.g0.elements:
                    row_s, row_t = X.action[x], Y.action[bt[x]]
                    if any(img[row_s[a]] != row_t[img[a]] for a in g1x.elements):
                        ok = False
                        break
            if ok:
                if same and (img, bt) == id_pair:
                    continue
                alpha = GroupHom(g1x, g1y, img, check=False)
                yield XModMorphism(X, Y, alpha, beta, check=False)


def is_isomorphic_xmod(
    X: CrossedModule, Y: CrossedModule, *, slow: bool = False
) -> Optional[XModMorphism]:
    """First isomorphism found, or None. The fast path prefilters by
    fingerprint; slow=True disables the prefilter."""
    if not slow and xmod_fingerprint(X) != xmod_fingerprint(Y):
        return None
    for f in all_xmod_isos(X, Y):
        return f
    return None


def xmod_automorphism_group(
    X: CrossedModule,
) -> tuple[FiniteGroup, list[XModMorphism]]:
    """Aut(X) with composition (f*g) = f after g; identity is element 0."""
    if "aut" in X._cache:
        return X._cache["aut"]
    auts = list(all_xmod_isos(X, X))
    index = {
        (f.alpha.image_of, f.beta.image_of): i for i, f in enumerate(auts)
    }
    table = []
    for f in auts:
        fa, fb = f.alpha.image_of, f.beta.image_of
        row = []
        for g in auts:
            key = (
                compose_perms(fa, g.alpha.image_of),
                compose_perms(fb, g.beta.image_of),
            )
            row.append(index[key])
        table.append(row)
    group = FiniteGroup(table, check=False)
    result = (group, auts)
    X._cache["aut"] = result
    return result


# --- serialization ---


def _serialize_group(tag: str, G: FiniteGroup) -> list[str]:
    if G.catalog_id is not None:
        order, index = G.catalog_id
        return [f"{tag} catalog {order} {index}"]
    lines = [f"{tag} table {G.order}"]
    for row in G.mul:
        lines.append("  " + " ".join(str(v) for v in row))
    return lines


def serialize_xmod(X: CrossedModule) -> str:
    """Canonical plain-text form; round-trips bit-exactly through parse."""
    lines = [f"xmod {SERIAL_VERSION}"]
    lines += _serialize_group("g1", X.g1)
    lines += _serialize_group("g0", X.g0)
    lines.append("boundary " + " ".join(str(v) for v in X.boundary.image_of))
    lines.append("action")
    for row in X.action:
        lines.append("  " + " ".join(str(v) for v in row))
    lines.append("end")
    return "\n".join(lines) + "\n"


class _LineReader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise ValueError("unexpected end of serialized crossed module")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def peek(self) -> Optional[str]:
        return self.lines[self.pos] if self.pos < len(self.lines) else None


def _parse_group(reader: _LineReader, tag: str) -> FiniteGroup:
    parts = reader.next().split()
    if len(parts) < 2 or parts[0] != tag:
        raise ValueError(f"expected a {tag} record")
    if parts[1] == "catalog":
        return catalog_group(int(parts[2]), int(parts[3]))
    if parts[1] == "table":
        order = int(parts[2])
        rows = [
            tuple(int(v) for v in reader.next().split()) for _ in range(order)
        ]
        return FiniteGroup(rows)
    raise ValueError(f"unknown group form {parts[1]!r}")


def parse_xmod(text: str) -> CrossedModule:
    reader = _LineReader(text)
    header = reader.next().split()
    if header[:1] != ["xmod"]:
        raise ValueError("not a serialized crossed module")
    if header[1:] != [SERIAL_VERSION]:
        raise ValueError(f"unsupported version {header[1:]}")
    g1 = _parse_group(reader, "g1")
    g0 = _parse_group(reader, "g0")
    bnd_parts = reader.next().split()
    if bnd_parts[:1] != ["boundary"]:
        raise ValueError("expected a boundary record")
    boundary = GroupHom(g1, g0, tuple(int(v) for v in bnd_parts[1:]))
    if reader.next().strip() != "action":
        raise ValueError("expected the action block")
    action = [
        tuple(int(v) for v in reader.next().split()) for _ in range(g0.order)
    ]
    if reader.next().strip() != "end":
        raise ValueError("expected the end marker")
    return CrossedModule(g1, g0, boundary, action)
