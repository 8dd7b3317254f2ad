"""Finite simplicial complexes, face posets, diagrams of complexes and their colimits."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Mapping

from .errors import IncompatibleCone, InvalidStructure, NonInjectiveMap
from .exactla import CochainComplexRep, Field, SparseMatrix, cohomology_dims
from .fincat import FinPoset, poset_from_json


def vkey(v):
    """Sort key that orders ints before strings and never compares across types."""
    if isinstance(v, tuple):
        return (2, tuple(vkey(x) for x in v))
    return (0, v, "") if isinstance(v, (int,)) else (1, 0, str(v))


def sort_vertices(vs: Iterable) -> tuple:
    return tuple(sorted(vs, key=vkey))


class SimplicialComplex:
    """A finite abstract simplicial complex; faces are stored as sorted vertex tuples."""

    def __init__(self, faces: Iterable[Iterable[Hashable]], vertices: Iterable[Hashable] | None = None):
        fs = set()
        for f in faces:
            f = frozenset(f)
            if not f:
                continue
            for k in range(1, len(f) + 1):
                for sub in combinations(sort_vertices(f), k):
                    fs.add(sub)
        verts = {v for f in fs for v in f}
        if vertices is not None:
            extra = set(vertices)
            fs.update((v,) for v in extra)
            verts |= extra
        self.vertices = sort_vertices(verts)
        self._vpos = {v: i for i, v in enumerate(self.vertices)}
        self.faces = tuple(sorted(fs, key=lambda f: (len(f), [self._vpos[v] for v in f])))
        self._face_set = frozenset(self.faces)

    @classmethod
    def from_maximal_faces(cls, maximal: Iterable[Iterable[Hashable]]) -> "SimplicialComplex":
        return cls(maximal)

    @classmethod
    def simplex(cls, n: int) -> "SimplicialComplex":
        return cls([range(n + 1)])

    @classmethod
    def boundary_of_simplex(cls, n: int) -> "SimplicialComplex":
        return cls([c for c in combinations(range(n + 1), n)])

    def normalize(self, face: Iterable) -> tuple:
        return tuple(sorted(face, key=self._vpos.__getitem__))

    def __contains__(self, face) -> bool:
        try:
            return self.normalize(face) in self._face_set
        except KeyError:
            return False

    @property
    def dimension(self) -> int:
        return max((len(f) - 1 for f in self.faces), default=-1)

    def faces_of_dim(self, d: int) -> list[tuple]:
        return [f for f in self.faces if len(f) == d + 1]

    def maximal_faces(self) -> list[tuple]:
        return [f for f in self.faces if not any(len(g) == len(f) + 1 and set(f) < set(g) for g in self.faces)]

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(f in other for f in self.faces)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and set(map(frozenset, self.faces)) == set(map(frozenset, other.faces))

    def __hash__(self):
        return hash(frozenset(map(frozenset, self.faces)))

    def __repr__(self):
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self.faces)} faces)"

    def to_json(self) -> dict:
        return {"maximal_faces": [list(f) for f in self.maximal_faces()]}


def cochain_complex(s: SimplicialComplex, field: Field, q_max: int) -> CochainComplexRep:
    """Simplicial cochains ``C^0..C^{q_max}`` and the coboundaries between them."""
    levels = [s.faces_of_dim(q) for q in range(q_max + 2)]
    index = [{f: i for i, f in enumerate(lv)} for lv in levels]
    diffs = []
    for q in range(q_max + 1):
        cols = [dict() for _ in levels[q]]
        for sigma in levels[q + 1]:
            r = index[q + 1][sigma]
            for i in range(len(sigma)):
                tau = sigma[:i] + sigma[i + 1:]
                cols[index[q][tau]][r] = field(-1 if i % 2 else 1)
        diffs.append(SparseMatrix(len(levels[q + 1]), len(levels[q]), field, tuple(cols)))
    dims = [len(lv) for lv in levels[:q_max + 1]]
    return CochainComplexRep(dims, diffs)


def simplicial_cohomology(s: SimplicialComplex, field: Field, q_max: int) -> list[int]:
    """Dimensions of ``H^q(s; field)`` for ``q = 0..q_max``."""
    return cohomology_dims(cochain_complex(s, field, q_max))


def face_poset(s: SimplicialComplex, include_empty: bool = False) -> FinPoset:
    """Faces ordered by containment, so that subcomplexes are lower ideals."""
    faces = list(s.faces)
    if include_empty:
        faces = [()] + faces
    sets = [frozenset(f) for f in faces]
    rel = [(faces[i], faces[j]) for i in range(len(faces)) for j in range(len(faces)) if sets[i] <= sets[j]]
    return FinPoset(faces, rel)


# ---------------------------------------------------------------------------
# diagrams


def _compose(g: Mapping, f: Mapping) -> dict:
    return {v: g[w] for v, w in f.items()}


class ComplexDiagram:
    """A poset-indexed diagram of simplicial complexes and vertex maps.

    ``maps`` may be given on covering relations only; the remaining maps are
    composites, and different paths must agree.
    """

    def __init__(self, index: FinPoset, complexes: Mapping, maps: Mapping):
        self.index = index
        self.complexes = {p: complexes[p] for p in index.elements}
        given = {tuple(k): dict(v) for k, v in maps.items()}
        full: dict = {}
        for p in index.elements:
            full[(p, p)] = {v: v for v in self.complexes[p].vertices}
        for (p, q), m in given.items():
            if not index.leq(p, q):
                raise InvalidStructure(f"map given for unrelated pair {p!r}, {q!r}")
            self._check_simplicial(p, q, m)
        # close under composition along covers, checking path independence
        covers = index.covers()
        for p, q in covers:
            if (p, q) not in given:
                raise InvalidStructure(f"missing map for cover {p!r} <= {q!r}")
        changed = True
        for (p, q), m in given.items():
            full[(p, q)] = m
        while changed:
            changed = False
            for (p, q), m in list(full.items()):
                for (a, b) in covers:
                    if a != q:
                        continue
                    comp = _compose(full[(q, b)], m)
                    old = full.get((p, b))
                    if old is None:
                        full[(p, b)] = comp
                        changed = True
                    elif old != comp:
                        raise InvalidStructure(f"diagram is not functorial at {p!r} <= {b!r}")
        for p, q in index.relations():
            if (p, q) not in full:
                raise InvalidStructure(f"no map for {p!r} <= {q!r}")
        self.maps = full

    def _check_simplicial(self, p, q, m):
        src, tgt = self.complexes[p], self.complexes[q]
        if set(m) != set(src.vertices):
            raise InvalidStructure(f"map {p!r} -> {q!r} is not defined on every vertex")
        for f in src.faces:
            if not _image_face_in(tgt, [m[v] for v in f]):
                raise InvalidStructure(f"map {p!r} -> {q!r} is not simplicial")

    def map(self, p, q) -> dict:
        return self.maps[(p, q)]

    def is_injective(self) -> bool:
        return all(len(set(m.values())) == len(m) for m in self.maps.values())


def _image_face_in(s: SimplicialComplex, verts) -> bool:
    vs = set(verts)
    return bool(vs) and tuple(vs) in s


class Filtration(ComplexDiagram):
    """``Σ_0 ⊆ Σ_1 ⊆ ... ⊆ Σ_n`` as a diagram over the chain ``[n]``."""

    def __init__(self, steps: Iterable[SimplicialComplex]):
        steps = list(steps)
        if not steps:
            raise InvalidStructure("a filtration needs at least one step")
        for a, b in zip(steps, steps[1:]):
            if not a.is_subcomplex_of(b):
                raise InvalidStructure("filtration steps are not nested subcomplexes")
        n = len(steps) - 1
        super().__init__(FinPoset.chain(n), dict(enumerate(steps)),
                         {(i, i + 1): {v: v for v in steps[i].vertices} for i in range(n)})
        self.steps = steps


@dataclass
class Colimit:
    complex: SimplicialComplex
    inclusions: dict  # index element -> vertex map into complex


class _UnionFind:
    def __init__(self, items, key):
        self.parent = {x: x for x in items}
        self.key = key

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.key(rb) < self.key(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra


def colimit(d: ComplexDiagram) -> Colimit:
    """Glue the disjoint union along the diagram maps (union-find on vertices)."""
    if not d.is_injective():
        raise NonInjectiveMap("diagram maps must be injective")
    pos = d.index.index
    items = [(p, v) for p in d.index.elements for v in d.complexes[p].vertices]
    uf = _UnionFind(items, key=lambda t: (pos[t[0]], vkey(t[1])))
    for (p, q), m in d.maps.items():
        for v, w in m.items():
            uf.union((p, v), (q, w))
    roots = sorted({uf.find(x) for x in items}, key=uf.key)
    names = [r[1] for r in roots]
    if len(set(names)) != len(names):
        names = [f"{r[0]}:{r[1]}" for r in roots]
    label = dict(zip(roots, names))
    inclusions = {p: {v: label[uf.find((p, v))] for v in d.complexes[p].vertices} for p in d.index.elements}
    faces = [[inclusions[p][v] for v in f] for p in d.index.elements for f in d.complexes[p].faces]
    K = SimplicialComplex(faces, vertices=names)
    return Colimit(K, inclusions)


def cone_factor(d: ComplexDiagram, K: Colimit, target: SimplicialComplex, cone: Mapping) -> dict:
    """The unique vertex map ``Φ: K -> target`` with ``Φ ∘ ι_p = φ_p``."""
    for (p, q), m in d.maps.items():
        for v, w in m.items():
            if cone[q][w] != cone[p][v]:
                raise IncompatibleCone(f"cone is not compatible along {p!r} <= {q!r}")
    phi: dict = {}
    for p, inc in K.inclusions.items():
        for v, k in inc.items():
            w = cone[p][v]
            if phi.setdefault(k, w) != w:
                raise IncompatibleCone("cone does not factor through the colimit")
    for f in K.complex.faces:
        if not _image_face_in(target, [phi[v] for v in f]):
            raise IncompatibleCone("cone maps are not simplicial into the target")
    return phi


# ---------------------------------------------------------------------------
# JSON


def complex_from_json(obj) -> SimplicialComplex:
    if not isinstance(obj, dict) or "maximal_faces" not in obj:
        raise InvalidStructure("complex JSON needs a 'maximal_faces' list")
    faces = obj["maximal_faces"]
    if not isinstance(faces, list) or not all(isinstance(f, list) and f for f in faces):
        raise InvalidStructure("'maximal_faces' must be a list of nonempty vertex lists")
    return SimplicialComplex(faces, vertices=obj.get("vertices"))


def filtration_from_json(obj) -> Filtration:
    if not isinstance(obj, dict) or "steps" not in obj:
        raise InvalidStructure("filtration JSON needs a 'steps' list")
    return Filtration(complex_from_json(s) for s in obj["steps"])


def diagram_from_json(obj) -> ComplexDiagram:
    """``{"poset": {...}, "complexes": {elem: complex}, "maps": [[p, q, {v: w}], ...]}``."""
    if not isinstance(obj, dict) or "poset" not in obj or "complexes" not in obj:
        raise InvalidStructure("diagram JSON needs 'poset' and 'complexes'")
    P = poset_from_json(obj["poset"])
    cx = {}
    for p in P.elements:
        if str(p) not in obj["complexes"]:
            raise InvalidStructure(f"no complex for element {p!r}")
        cx[p] = complex_from_json(obj["complexes"][str(p)])
    maps = {}
    for entry in obj.get("maps", []):
        if len(entry) != 3:
            raise InvalidStructure("each map entry is [source, target, vertex_map]")
        p, q, m = entry
        maps[(p, q)] = {_coerce(cx[p], k): _coerce(cx[q], v) for k, v in m.items()}
    return ComplexDiagram(P, cx, maps)


def _coerce(s: SimplicialComplex, v):
    """JSON object keys are strings; map them back to the complex's vertex objects."""
    if v in s.vertices:
        return v
    for w in s.vertices:
        if str(w) == str(v):
            return w
    raise InvalidStructure(f"unknown vertex {v!r}")
