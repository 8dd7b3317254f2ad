"""Finite posets, finite categories, nerves and twisted arrow categories."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

from .errors import InvalidStructure, NotLoopFree


class FinPoset:
    """A finite poset given by its elements and (the full) order relation."""

    def __init__(self, elements: Iterable[Hashable], leq: Iterable[tuple]):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise InvalidStructure("duplicate poset elements")
        self.index = {x: i for i, x in enumerate(self.elements)}
        rel = set()
        for a, b in leq:
            if a not in self.index or b not in self.index:
                raise InvalidStructure(f"relation ({a!r}, {b!r}) mentions an unknown element")
            rel.add((a, b))
        for x in self.elements:
            if (x, x) not in rel:
                raise InvalidStructure(f"relation is not reflexive at {x!r}")
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise InvalidStructure(f"relation is not antisymmetric at {a!r}, {b!r}")
        above = {x: set() for x in self.elements}
        for a, b in rel:
            above[a].add(b)
        for a, b in rel:
            if not above[b] <= above[a]:
                raise InvalidStructure("relation is not transitive")
        self._rel = frozenset(rel)
        self._above = {x: frozenset(s) for x, s in above.items()}

    @classmethod
    def from_covers(cls, elements: Iterable[Hashable], covers: Iterable[tuple]) -> "FinPoset":
        """Reflexive-transitive closure of ``covers``; rejects cycles."""
        elements = tuple(elements)
        succ = {x: set() for x in elements}
        for a, b in covers:
            if a not in succ or b not in succ:
                raise InvalidStructure(f"cover ({a!r}, {b!r}) mentions an unknown element")
            if a == b:
                raise InvalidStructure(f"cover ({a!r}, {a!r}) is a loop")
            succ[a].add(b)
        rel = set()
        for x in elements:
            seen = {x}
            stack = [x]
            while stack:
                y = stack.pop()
                for z in succ[y]:
                    if z == x:
                        raise InvalidStructure("covers contain a cycle")
                    if z not in seen:
                        seen.add(z)
                        stack.append(z)
            rel.update((x, y) for y in seen)
        return cls(elements, rel)

    @classmethod
    def chain(cls, n: int) -> "FinPoset":
        """The chain ``[n] = {0 < 1 < ... < n}``."""
        return cls(range(n + 1), [(i, j) for i in range(n + 1) for j in range(i, n + 1)])

    @classmethod
    def antichain(cls, elements: Iterable[Hashable]) -> "FinPoset":
        elements = tuple(elements)
        return cls(elements, [(x, x) for x in elements])

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def leq(self, a, b) -> bool:
        return (a, b) in self._rel

    def lt(self, a, b) -> bool:
        return a != b and (a, b) in self._rel

    def up(self, x) -> frozenset:
        return self._above[x]

    def relations(self) -> list[tuple]:
        """All pairs ``a <= b``, in element order."""
        ix = self.index
        return sorted(self._rel, key=lambda r: (ix[r[0]], ix[r[1]]))

    def covers(self) -> list[tuple]:
        out = []
        for a, b in self.relations():
            if a != b and not any(self.lt(a, c) and self.lt(c, b) for c in self.elements):
                out.append((a, b))
        return out

    def is_lower_ideal(self, subset: Iterable) -> bool:
        s = set(subset)
        return s <= set(self.elements) and all(a in s for a, b in self._rel if b in s)

    def subposet(self, subset: Iterable) -> "FinPoset":
        s = set(subset)
        return FinPoset([x for x in self.elements if x in s],
                        [(a, b) for a, b in self._rel if a in s and b in s])

    def strict_chains(self, p: int) -> list[tuple]:
        out = []

        def ext(ch):
            if len(ch) == p + 1:
                out.append(tuple(ch))
                return
            for y in self.elements:
                if self.lt(ch[-1], y):
                    ext(ch + [y])

        for x in self.elements:
            ext([x])
        return out

    def with_top(self, top: Hashable) -> "FinPoset":
        return FinPoset(self.elements + (top,), list(self._rel) + [(x, top) for x in self.elements + (top,)])

    def __eq__(self, other):
        return isinstance(other, FinPoset) and set(self.elements) == set(other.elements) and self._rel == other._rel

    def __hash__(self):
        return hash((frozenset(self.elements), self._rel))

    def __repr__(self):
        return f"FinPoset({len(self.elements)} elements, {len(self._rel)} relations)"


class FinCategory:
    """A finite category with an explicit composition table.

    ``morphisms`` maps an id to ``(source, target)``; ``compose[(g, f)]`` is
    ``g ∘ f`` and must be defined exactly when ``target(f) == source(g)``.
    """

    def __init__(self, objects: Sequence[Hashable], morphisms: dict, identities: dict, compose: dict,
                 check: bool = True):
        self.objects = tuple(objects)
        self.morphisms = dict(morphisms)
        self.identities = dict(identities)
        self.table = dict(compose)
        self.mor_list = tuple(self.morphisms)
        self._id_set = frozenset(self.identities.values())
        self._out: dict = {c: [] for c in self.objects}
        self._in: dict = {c: [] for c in self.objects}
        self._hom: dict = {}
        for f, (s, t) in self.morphisms.items():
            self._out[s].append(f)
            self._in[t].append(f)
            self._hom.setdefault((s, t), []).append(f)
        if check:
            self._validate()

    def _validate(self):
        objs = set(self.objects)
        for f, (s, t) in self.morphisms.items():
            if s not in objs or t not in objs:
                raise InvalidStructure(f"morphism {f!r} has unknown endpoints")
        for c in self.objects:
            i = self.identities.get(c)
            if i is None or self.morphisms.get(i) != (c, c):
                raise InvalidStructure(f"missing identity for {c!r}")
        for g in self.mor_list:
            for f in self.mor_list:
                composable = self.morphisms[f][1] == self.morphisms[g][0]
                if composable != ((g, f) in self.table):
                    raise InvalidStructure(f"composition of {g!r} after {f!r} wrongly (un)defined")
                if composable:
                    h = self.table[(g, f)]
                    if self.morphisms.get(h) != (self.morphisms[f][0], self.morphisms[g][1]):
                        raise InvalidStructure(f"composite of {g!r} after {f!r} has wrong endpoints")
        for f, (s, t) in self.morphisms.items():
            if self.table[(f, self.identities[s])] != f or self.table[(self.identities[t], f)] != f:
                raise InvalidStructure(f"identity law fails at {f!r}")
        for f in self.mor_list:
            for g in self._out[self.morphisms[f][1]]:
                gf = self.table[(g, f)]
                for h in self._out[self.morphisms[g][1]]:
                    if self.table[(h, gf)] != self.table[(self.table[(h, g)], f)]:
                        raise InvalidStructure(f"associativity fails at {h!r}, {g!r}, {f!r}")

    def source(self, f):
        return self.morphisms[f][0]

    def target(self, f):
        return self.morphisms[f][1]

    def is_identity(self, f) -> bool:
        return f in self._id_set

    def compose(self, g, f):
        """``g ∘ f``."""
        try:
            return self.table[(g, f)]
        except KeyError:
            raise InvalidStructure(f"{g!r} and {f!r} are not composable") from None

    def hom(self, a, b) -> list:
        return list(self._hom.get((a, b), ()))

    def out_of(self, c) -> list:
        return list(self._out[c])

    def into(self, c) -> list:
        return list(self._in[c])

    def non_identities(self) -> list:
        return [f for f in self.mor_list if f not in self._id_set]

    def is_loop_free(self) -> bool:
        """No non-identity endomorphisms and no cycles of non-identity arrows."""
        succ = {c: set() for c in self.objects}
        for f in self.non_identities():
            s, t = self.morphisms[f]
            if s == t:
                return False
            succ[s].add(t)
        state = {c: 0 for c in self.objects}

        def visit(c):
            state[c] = 1
            for d in succ[c]:
                if state[d] == 1 or (state[d] == 0 and not visit(d)):
                    return False
            state[c] = 2
            return True

        return all(state[c] or visit(c) for c in self.objects)

    def require_loop_free(self):
        if not self.is_loop_free():
            raise NotLoopFree("category has a non-identity endomorphism or a cycle")

    def terminal_object(self):
        for c in self.objects:
            if all(len(self.hom(d, c)) == 1 for d in self.objects):
                return c
        return None

    def initial_object(self):
        for c in self.objects:
            if all(len(self.hom(c, d)) == 1 for d in self.objects):
                return c
        return None

    def __repr__(self):
        return f"FinCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def poset_to_category(p: FinPoset) -> FinCategory:
    """Thin category with one arrow ``(x, y)`` for each ``x <= y``."""
    rels = p.relations()
    morphisms = {(a, b): (a, b) for a, b in rels}
    identities = {x: (x, x) for x in p.elements}
    compose = {}
    for a, b in rels:
        for c in p.up(b):
            compose[((b, c), (a, b))] = (a, c)
    cat = FinCategory(p.elements, morphisms, identities, compose, check=False)
    cat.poset = p
    return cat


def one_object_category() -> FinCategory:
    return FinCategory(["*"], {"id": ("*", "*")}, {"*": "id"}, {("id", "id"): "id"})


@dataclass(frozen=True)
class Chain:
    """A composable sequence ``c_0 -> c_1 -> ... -> c_p``."""

    objects: tuple
    arrows: tuple

    @property
    def degree(self) -> int:
        return len(self.arrows)

    @property
    def min(self):
        return self.objects[0]

    @property
    def max(self):
        return self.objects[-1]

    def face(self, r: int, cat: FinCategory) -> "Chain":
        """``∂_r``: drop ``c_r`` (composing the two arrows at an inner vertex)."""
        p = self.degree
        if p == 0:
            raise ValueError("a 0-chain has no faces")
        objs = self.objects[:r] + self.objects[r + 1:]
        if r == 0:
            arr = self.arrows[1:]
        elif r == p:
            arr = self.arrows[:-1]
        else:
            arr = self.arrows[:r - 1] + (cat.compose(self.arrows[r], self.arrows[r - 1]),) + self.arrows[r + 1:]
        return Chain(objs, arr)

    def composite(self, cat: FinCategory):
        """The composite ``c_0 -> c_p``."""
        h = cat.identities[self.objects[0]]
        for f in self.arrows:
            h = cat.compose(f, h)
        return h

    def has_identity(self, cat: FinCategory) -> bool:
        return any(cat.is_identity(f) for f in self.arrows)


def nerve(c: FinCategory, p_max: int, normalized: bool = True) -> list[list[Chain]]:
    """Chains of degree ``0..p_max``; normalized chains avoid identities."""
    levels = [[Chain((x,), ()) for x in c.objects]]
    for _ in range(p_max):
        nxt = []
        for ch in levels[-1]:
            for f in c.out_of(ch.max):
                if normalized and c.is_identity(f):
                    continue
                nxt.append(Chain(ch.objects + (c.target(f),), ch.arrows + (f,)))
        levels.append(nxt)
    return levels


def longest_chain(c: FinCategory) -> int:
    """Length of the longest identity-free chain of a loop-free category."""
    c.require_loop_free()

    @lru_cache(maxsize=None)
    def depth(x):
        return max((1 + depth(c.target(f)) for f in c.out_of(x) if not c.is_identity(f)), default=0)

    return max((depth(x) for x in c.objects), default=0)


class TwistedArrowCategory(FinCategory):
    """Objects are the arrows of ``base``; a morphism ``f -> g`` is ``(α, β)`` with ``g = α∘f∘β``.

    Morphism ids are ``(f, g, α, β)``; composition ``(α', β')∘(α, β) = (α'α, ββ')``.
    """

    def __init__(self, base: FinCategory):
        self.base = base
        morphisms = {}
        for f in base.mor_list:
            s, t = base.morphisms[f]
            for a in base.out_of(t):
                for b in base.into(s):
                    g = base.compose(a, base.compose(f, b))
                    morphisms[(f, g, a, b)] = (f, g)
        identities = {f: (f, f, base.identities[base.target(f)], base.identities[base.source(f)])
                      for f in base.mor_list}
        by_src: dict = {}
        for m in morphisms:
            by_src.setdefault(m[0], []).append(m)
        compose = {}
        for m1 in morphisms:
            f, g, a, b = m1
            for m2 in by_src[g]:
                _, h, a2, b2 = m2
                comp = (f, h, base.compose(a2, a), base.compose(b, b2))
                if comp not in morphisms:
                    raise InvalidStructure("twisted arrow composite is not a valid square")
                compose[(m2, m1)] = comp
        super().__init__(base.mor_list, morphisms, identities, compose)
        # the projection to the opposite of the base is a functor
        for (m2, m1), m in compose.items():
            if base.compose(m1[3], m2[3]) != m[3]:
                raise InvalidStructure("projection of Tw C to C^op is not functorial")


def twisted_arrow(c: FinCategory) -> TwistedArrowCategory:
    return TwistedArrowCategory(c)


def is_free(c: FinCategory) -> bool:
    """Whether every non-identity arrow factors uniquely into indecomposables."""
    c.require_loop_free()
    nonid = c.non_identities()
    decomposable = set()
    for f in nonid:
        for g in c.out_of(c.target(f)):
            if not c.is_identity(g):
                decomposable.add(c.compose(g, f))
    indec = [f for f in nonid if f not in decomposable]

    @lru_cache(maxsize=None)
    def count(h) -> int:
        # factorizations h = rest ∘ f with f indecomposable
        n = 1 if h not in decomposable else 0
        for f in indec:
            if c.source(f) != c.source(h):
                continue
            for g in c.hom(c.target(f), c.target(h)):
                if not c.is_identity(g) and c.compose(g, f) == h:
                    n += count(g)
        return n

    return all(count(h) == 1 for h in nonid)


def poset_from_json(obj) -> FinPoset:
    if not isinstance(obj, dict) or "elements" not in obj:
        raise InvalidStructure("poset JSON needs an 'elements' list")
    elements = [_hashable(x) for x in obj["elements"]]
    covers = [tuple(_hashable(x) for x in c) for c in obj.get("covers", [])]
    for c in covers:
        if len(c) != 2:
            raise InvalidStructure(f"cover {c!r} is not a pair")
    return FinPoset.from_covers(elements, covers)


def poset_to_json(p: FinPoset) -> dict:
    return {"elements": list(p.elements), "covers": [list(c) for c in p.covers()]}


def _hashable(x):
    return tuple(_hashable(y) for y in x) if isinstance(x, list) else x
