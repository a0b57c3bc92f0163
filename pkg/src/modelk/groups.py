"""Finite groups as explicit element enumerations.

Elements are opaque hashable values (permutations, matrices, pairs, cosets);
each group carries its own operation.  Enumerations are deterministic: BFS
from the identity with generators applied in the given order and new elements
of each level sorted by a structural key, so every downstream tie-break is
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceededError, InvalidActionError, WorkbenchError

DEFAULT_CAP = 20000


def element_key(x):
    """Total, deterministic sort key over the element kinds we enumerate."""
    sk = getattr(x, "sort_key", None)
    if sk is not None:
        return ("o", element_key(sk))
    if isinstance(x, tuple):
        return ("t", tuple(element_key(y) for y in x))
    if isinstance(x, frozenset):
        return ("f", tuple(sorted(element_key(y) for y in x)))
    if isinstance(x, bool):
        return ("b", x)
    if isinstance(x, int):
        return ("i", x)
    if isinstance(x, str):
        return ("s", x)
    raise TypeError(f"no sort key for {type(x)!r}")


class FiniteGroup:
    """A finite group on an explicit, ordered element tuple."""

    def __init__(self, elements, op, identity, inv=None, generators=(),
                 name="", cap=DEFAULT_CAP):
        elements = tuple(elements)
        if cap is not None and len(elements) > cap:
            raise CapExceededError(
                f"group {name or '<anonymous>'} has {len(elements)} elements, cap is {cap}")
        self.elements = elements
        self.op = op
        self.identity = identity
        self._inv = inv
        # a group always carries a generating set; the whole element list is
        # the (correct, if lazy) fallback
        self.generators = tuple(generators) if generators else elements
        self.name = name
        self.cap = cap
        self._index = {e: i for i, e in enumerate(elements)}
        if len(self._index) != len(elements):
            raise WorkbenchError("duplicate elements in enumeration")
        if identity not in self._index:
            raise WorkbenchError("identity missing from enumeration")
        self._inv_cache = {}
        self._abelian = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def index_of(self, x) -> int:
        return self._index[x]

    def inv(self, a):
        cached = self._inv_cache.get(a)
        if cached is None:
            if self._inv is not None:
                cached = self._inv(a)
            else:
                # cycle a until the identity reappears; its predecessor
                # is the inverse
                prev, x = a, self.op(a, a)
                while x != self.identity:
                    prev, x = x, self.op(x, a)
                cached = prev
            self._inv_cache[a] = cached
        return cached

    def element_order(self, a) -> int:
        n, x = 1, a
        while x != self.identity:
            x = self.op(x, a)
            n += 1
        return n

    def is_abelian(self) -> bool:
        if self._abelian is None:
            els = self.elements
            self._abelian = all(self.op(a, b) == self.op(b, a)
                                for i, a in enumerate(els) for b in els[i + 1:])
        return self._abelian

    def conjugate(self, g, x):
        return self.op(self.op(g, x), self.inv(g))

    def commutator(self, a, b):
        return self.op(self.op(self.inv(a), self.inv(b)), self.op(a, b))

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"<{label} of order {self.order}>"


def _bfs_closure(generators, op, identity, *, cap, key, on_new=None):
    """Deterministic closure of {identity} under right multiplication."""
    seen = {identity}
    ordered = [identity]
    level = [identity]
    while level:
        fresh = []
        for x in level:
            for g in generators:
                y = op(x, g)
                if y not in seen:
                    seen.add(y)
                    fresh.append(y)
                    if cap is not None and len(seen) > cap:
                        raise CapExceededError(
                            f"closure exceeded the element cap of {cap}")
        fresh.sort(key=key)
        ordered.extend(fresh)
        level = fresh
    return ordered


def enumerate_group(generators, *, cap=DEFAULT_CAP, name="") -> FiniteGroup:
    """Close a generator list under its own multiplication.

    Generators must share a representation and expose __mul__, inverse()
    and identity_like(); permutations and matrices both qualify.
    """
    gens = list(generators)
    if not gens:
        raise WorkbenchError("need at least one generator")
    for g in gens:
        g.inverse()  # raises for a non-invertible generator
    identity = gens[0].identity_like()
    op = lambda a, b: a * b
    ordered = _bfs_closure(gens, op, identity, cap=cap, key=element_key)
    return FiniteGroup(ordered, op, identity, inv=lambda a: a.inverse(),
                       generators=gens, name=name, cap=cap)


def generated_subgroup(G: FiniteGroup, gens, *, name="") -> FiniteGroup:
    """Subgroup of G generated by `gens`, ordered by BFS with parent-index ties."""
    gens = [g for g in gens if g != G.identity]
    ordered = _bfs_closure(gens, G.op, G.identity, cap=G.cap, key=G.index_of)
    return FiniteGroup(ordered, G.op, G.identity, inv=G.inv,
                       generators=gens or [G.identity], name=name, cap=G.cap)


# all-pairs commutator collection stays affordable up to this order;
# beyond it the normal-closure route is both correct and far cheaper
_PAIRWISE_LIMIT = 200


def commutator_subgroup(G: FiniteGroup) -> FiniteGroup:
    """The subgroup generated by all commutators [a, b] = a^-1 b^-1 a b.

    Small groups collect every pair directly.  Larger ones use the standard
    fact that the commutator subgroup is the normal closure of the
    commutators of a generating set, which needs only |G'| * #gens work.
    """
    name = f"[{G.name or 'G'},{G.name or 'G'}]"
    if G.order <= _PAIRWISE_LIMIT or not G.generators:
        comms = {G.commutator(a, b) for a in G.elements for b in G.elements}
        comms.discard(G.identity)
        return generated_subgroup(G, sorted(comms, key=G.index_of), name=name)

    gens = list(G.generators)
    seeds = {G.commutator(a, b) for a in gens for b in gens}
    seeds.discard(G.identity)
    while True:
        H = generated_subgroup(G, sorted(seeds, key=G.index_of), name=name)
        new = set()
        for x in H.elements:
            for g in gens:
                y = G.conjugate(g, x)
                if y not in H:
                    new.add(y)
        if not new:
            return H
        seeds.update(new)


def is_normal(G: FiniteGroup, H: FiniteGroup) -> bool:
    """Whether the subgroup H (sharing G's operation) is normal in G."""
    witnesses = G.generators or G.elements
    return all(G.conjugate(g, h) in H for g in witnesses for h in H.elements)


def quotient_group(G: FiniteGroup, N: FiniteGroup, *, check=True) -> FiniteGroup:
    """G/N with cosets as frozensets, ordered by first representative in G."""
    if check and not is_normal(G, N):
        raise WorkbenchError("subgroup is not normal; quotient undefined")
    coset_of = {}
    cosets = []
    reps = {}
    for g in G.elements:
        if g in coset_of:
            continue
        coset = frozenset(G.op(g, n) for n in N.elements)
        cosets.append(coset)
        reps[coset] = g
        for x in coset:
            coset_of[x] = coset

    def op(c1, c2):
        return coset_of[G.op(reps[c1], reps[c2])]

    def inv(c):
        return coset_of[G.inv(reps[c])]

    identity = coset_of[G.identity]
    gens = []
    for g in G.generators:
        c = coset_of[g]
        if c != identity and c not in gens:
            gens.append(c)
    return FiniteGroup(cosets, op, identity, inv=inv, generators=gens,
                       name=f"{G.name or 'G'}/{N.name or 'N'}", cap=G.cap)


@dataclass(frozen=True)
class AbInvariants:
    """Invariant factors d_1 | d_2 | ... | d_r of a finite abelian group."""

    factors: tuple[int, ...]

    def __post_init__(self):
        for d in self.factors:
            if d < 2:
                raise ValueError("factors must be at least 2")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise ValueError(f"not a divisibility chain: {self.factors}")

    @property
    def order(self) -> int:
        n = 1
        for d in self.factors:
            n *= d
        return n

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def direct_sum(self, other: "AbInvariants") -> "AbInvariants":
        return invariants_from_factors(self.factors + other.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        return " + ".join(f"Z_{d}" for d in self.factors)


def invariants_from_factors(factors) -> AbInvariants:
    """Renormalize an arbitrary list of cyclic orders to a divisibility chain."""
    primary: dict[int, list[int]] = {}
    for d in factors:
        if d < 1:
            raise ValueError("cyclic orders must be positive")
        rest = d
        p = 2
        while rest > 1:
            if rest % p == 0:
                pk = 1
                while rest % p == 0:
                    rest //= p
                    pk *= p
                primary.setdefault(p, []).append(pk)
            p += 1 if p == 2 else 2
    for p in primary:
        primary[p].sort(reverse=True)
    depth = max((len(v) for v in primary.values()), default=0)
    chain = []
    for i in range(depth):
        d = 1
        for p, powers in primary.items():
            if i < len(powers):
                d *= powers[i]
        chain.append(d)
    chain.reverse()
    return AbInvariants(tuple(chain))


def _invariant_factors_of_abelian(A: FiniteGroup) -> tuple[int, ...]:
    """Extract the chain by repeatedly splitting off a maximal-order element."""
    factors = []
    while A.order > 1:
        best, best_ord = None, 0
        for x in A.elements:
            o = A.element_order(x)
            if o > best_ord:
                best, best_ord = x, o
        factors.append(best_ord)
        span = generated_subgroup(A, [best], name="span")
        A = quotient_group(A, span, check=False)
    factors.reverse()
    return tuple(factors)


def abelianization(G: FiniteGroup) -> AbInvariants:
    """Invariant factors of G / [G, G]."""
    derived = commutator_subgroup(G)
    Q = quotient_group(G, derived, check=False)
    return AbInvariants(_invariant_factors_of_abelian(Q))


def abelian_iso(a: AbInvariants, b: AbInvariants) -> bool:
    return a.factors == b.factors


class GroupAction:
    """A group G acting on a group H by automorphisms.

    `mapping(g, h)` evaluates the action.  `check()` validates the action on
    generators, which suffices: automorphy of the generator maps propagates
    to products, as does the homomorphism law for the map into Aut(H).
    """

    def __init__(self, acting: FiniteGroup, target: FiniteGroup, mapping, name=""):
        self.acting = acting
        self.target = target
        self.mapping = mapping
        self.name = name
        self._checked = False

    def act(self, g, h):
        return self.mapping(g, h)

    def check(self) -> None:
        if self._checked:
            return
        G, H, act = self.acting, self.target, self.mapping
        for g in G.generators:
            image = set()
            for h in H.elements:
                y = act(g, h)
                if y not in H:
                    raise InvalidActionError(f"action leaves the target group: {y!r}")
                image.add(y)
            if len(image) != H.order:
                raise InvalidActionError("generator does not act bijectively")
            for h1 in H.generators:
                for h2 in H.elements:
                    if act(g, H.op(h1, h2)) != H.op(act(g, h1), act(g, h2)):
                        raise InvalidActionError(
                            "generator does not act by a homomorphism")
        for g1 in G.generators:
            for g2 in G.elements:
                g12 = G.op(g1, g2)
                for h in H.elements:
                    if act(g12, h) != act(g1, act(g2, h)):
                        raise InvalidActionError(
                            "action map is not a homomorphism into Aut(H)")
        self._checked = True

    def __repr__(self) -> str:
        label = self.name or "action"
        return f"<{label}: {self.acting!r} on {self.target!r}>"


def coinvariants(H: FiniteGroup, action: GroupAction) -> AbInvariants:
    """Invariant factors of H / <act(g, h) * h^-1>, for abelian H.

    Generators of the acting group suffice for the relator set: the relator
    for a product of acting elements is a product of conjugated relators.
    """
    if action.target is not H and action.target != H:
        raise WorkbenchError("action does not target the given group")
    if not H.is_abelian():
        raise WorkbenchError("coinvariants need an abelian target")
    action.check()
    relators = set()
    for g in action.acting.generators:
        for h in H.elements:
            relators.add(H.op(action.act(g, h), H.inv(h)))
    relators.discard(H.identity)
    N = generated_subgroup(H, sorted(relators, key=H.index_of), name="relators")
    Q = quotient_group(H, N, check=False)
    return AbInvariants(_invariant_factors_of_abelian(Q))
