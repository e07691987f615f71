"""Finite abstract simplicial complexes with exact rational homology.

A complex is immutable and determined by its facets.  The empty complex
(no vertices) is valid and distinct from the one-point complex; every
complex contains the empty simplex, which makes the reduced-homology and
``S^{-1}`` join conventions uniform: the empty complex has a single reduced
Betti number 1 in degree -1 and is the unit for joins.

Vertex labels are ints, strings, tuples or frozensets.  Binary constructors
(join, disjoint union) keep labels when the inputs are label-disjoint and
otherwise relabel both sides with namespace tuples ``(0, v)`` / ``(1, v)``,
deterministically.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .labels import format_label, label_key, sort_labels
from . import linalg


class NotSimplicial(ValueError):
    """A vertex map sends some simplex outside the target complex."""


class SimplicialComplex:
    def __init__(self, facets=()):
        self._facets = _maximal_faces(facets)
        self._simplices = None
        self._simplex_set = None

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls(())

    @classmethod
    def point(cls, label=0) -> "SimplicialComplex":
        return cls([[label]])

    @property
    def facets(self) -> frozenset:
        return self._facets

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for f in self._facets for v in f)

    @property
    def dim(self) -> int:
        return max((len(f) for f in self._facets), default=0) - 1

    @property
    def is_empty(self) -> bool:
        return not self._facets

    def simplices_by_dim(self) -> dict:
        """Sorted simplices per dimension; dimension -1 holds the empty simplex."""
        if self._simplices is None:
            seen = set()
            for f in self._facets:
                verts = sort_labels(f)
                for k in range(len(f) + 1):
                    seen.update(itertools.combinations(verts, k))
            by_dim: dict[int, list] = {-1: [()]}
            for s in seen:
                if s:
                    by_dim.setdefault(len(s) - 1, []).append(s)
            for k in by_dim:
                by_dim[k].sort(key=lambda s: tuple(label_key(v) for v in s))
            self._simplices = by_dim
        return self._simplices

    def nonempty_simplices(self):
        """All nonempty simplices as frozensets."""
        if self._simplex_set is None:
            by_dim = self.simplices_by_dim()
            self._simplex_set = frozenset(
                frozenset(s) for k, ss in by_dim.items() if k >= 0 for s in ss
            )
        return self._simplex_set

    def has_simplex(self, s) -> bool:
        return frozenset(s) in self.nonempty_simplices()

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(other.has_simplex(f) for f in self._facets)

    def full_subcomplex(self, keep_vertices) -> "SimplicialComplex":
        """Subcomplex on the simplices entirely inside ``keep_vertices``."""
        keep = frozenset(keep_vertices)
        return SimplicialComplex(f & keep for f in self._facets)

    def relabel(self, fn) -> "SimplicialComplex":
        return SimplicialComplex(frozenset(fn(v) for v in f) for f in self._facets)

    def face_counts(self) -> dict:
        by_dim = self.simplices_by_dim()
        return {k: len(ss) for k, ss in by_dim.items() if k >= 0}

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in self.face_counts().items())

    def to_doc(self) -> dict:
        verts = [format_label(v) for v in sort_labels(self.vertices)]
        facets = sorted(sorted(format_label(v) for v in f) for f in self._facets)
        return {"vertices": verts, "facets": facets}

    @classmethod
    def from_doc(cls, doc: dict) -> "SimplicialComplex":
        komplex = cls(frozenset(f) for f in doc["facets"])
        extra = set(doc.get("vertices", ())) - set(komplex.vertices)
        if extra:
            raise ValueError(f"vertices missing from facets: {sorted(extra)}")
        return komplex

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self._facets == other._facets

    def __hash__(self):
        return hash(self._facets)

    def __repr__(self):
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self._facets)} facets)"


def _maximal_faces(faces) -> frozenset:
    cleaned = {frozenset(f) for f in faces} - {frozenset()}
    ordered = sorted(cleaned, key=len, reverse=True)
    accepted: list[frozenset] = []
    containing: dict[object, list[int]] = {}
    for f in ordered:
        best = None
        for v in f:
            lst = containing.get(v, [])
            if best is None or len(lst) < len(best):
                best = lst
        if best and any(f <= accepted[i] for i in best):
            continue
        idx = len(accepted)
        accepted.append(f)
        for v in f:
            containing.setdefault(v, []).append(idx)
    return frozenset(accepted)


def sphere(d: int) -> SimplicialComplex:
    """S^d as the boundary of the (d+1)-simplex; d = -1 is the empty complex."""
    if d < -1:
        raise ValueError("sphere dimension must be >= -1")
    if d == -1:
        return SimplicialComplex.empty()
    verts = range(d + 2)
    return SimplicialComplex(itertools.combinations(verts, d + 1))


def _relabel_disjoint(a, b):
    if a.vertices & b.vertices:
        return a.relabel(lambda v: (0, v)), b.relabel(lambda v: (1, v))
    return a, b


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join; the empty complex is the unit and is returned unchanged."""
    if a.is_empty:
        return b
    if b.is_empty:
        return a
    a2, b2 = _relabel_disjoint(a, b)
    return SimplicialComplex(fa | fb for fa in a2.facets for fb in b2.facets)


def iterated_join(x: SimplicialComplex, d: int) -> SimplicialComplex:
    """d-fold join of copies of x, vertices labeled (copy_index, vertex).

    d = 0 yields the empty complex, the join unit.
    """
    if d < 0:
        raise ValueError("join power must be >= 0")
    if d == 0 or x.is_empty:
        return SimplicialComplex.empty()
    facets = []
    for choice in itertools.product(sorted(x.facets, key=label_key), repeat=d):
        facets.append(frozenset((i, v) for i, f in enumerate(choice) for v in f))
    return SimplicialComplex(facets)


def suspension_iter(a: SimplicialComplex, k: int) -> SimplicialComplex:
    """k-fold suspension: join with k two-point spheres."""
    if k < 0:
        raise ValueError("suspension power must be >= 0")
    if k == 0:
        return a
    return join(a, iterated_join(sphere(0), k))


def disjoint_union(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    if a.is_empty:
        return b
    if b.is_empty:
        return a
    a2, b2 = _relabel_disjoint(a, b)
    return SimplicialComplex(set(a2.facets) | set(b2.facets))


class BettiVector:
    """Reduced Betti numbers as a sparse degree -> rank mapping.

    Equality ignores zero entries, so vectors of different lengths compare
    mathematically.  Degree -1 appears exactly for the empty complex.
    """

    def __init__(self, counts=None):
        self._counts = {int(k): int(v) for k, v in dict(counts or {}).items() if v}

    def __getitem__(self, k: int) -> int:
        return self._counts.get(k, 0)

    def degrees(self):
        return sorted(self._counts)

    def items(self):
        return sorted(self._counts.items())

    def __add__(self, other: "BettiVector") -> "BettiVector":
        counts = dict(self._counts)
        for k, v in other._counts.items():
            counts[k] = counts.get(k, 0) + v
        return BettiVector(counts)

    def scale(self, n: int) -> "BettiVector":
        return BettiVector({k: n * v for k, v in self._counts.items()})

    def join_with(self, other: "BettiVector") -> "BettiVector":
        """Betti vector of a join: b_k = sum over i+j = k-1 of b_i * b_j."""
        counts: dict[int, int] = {}
        for i, vi in self._counts.items():
            for j, vj in other._counts.items():
                k = i + j + 1
                counts[k] = counts.get(k, 0) + vi * vj
        return BettiVector(counts)

    def as_row(self, start: int = 0, stop: int | None = None):
        if stop is None:
            stop = max(self._counts, default=start - 1)
        return [self[k] for k in range(start, stop + 1)]

    def dominates(self, other: "BettiVector") -> bool:
        degs = set(self._counts) | set(other._counts)
        return all(self[k] >= other[k] for k in degs)

    def to_doc(self) -> dict:
        return {str(k): v for k, v in self.items()}

    def __eq__(self, other):
        return isinstance(other, BettiVector) and self._counts == other._counts

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in self.items())
        return "BettiVector({" + inner + "})"


def boundary_rows(komplex: SimplicialComplex, k: int):
    """Degree-k boundary matrix as sparse rows indexed by (k-1)-simplices.

    Degree 0 is the augmentation onto the empty simplex, so reduced homology
    comes out of the same machinery as every other degree.
    """
    by_dim = komplex.simplices_by_dim()
    cols = by_dim.get(k, [])
    faces = by_dim.get(k - 1, [])
    row_index = {s: i for i, s in enumerate(faces)}
    rows = [dict() for _ in faces]
    for j, s in enumerate(cols):
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            rows[row_index[face]][j] = 1 if i % 2 == 0 else -1
    return rows, len(cols)


def reduced_betti(komplex: SimplicialComplex) -> BettiVector:
    """Exact reduced Betti numbers over the rationals."""
    by_dim = komplex.simplices_by_dim()
    top = komplex.dim
    ranks = {}
    for k in range(0, top + 1):
        rows, _ = boundary_rows(komplex, k)
        ranks[k] = linalg.sparse_rank(rows)
    counts = {}
    for k in range(-1, top + 1):
        n_k = len(by_dim.get(k, ()))
        b = n_k - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if b:
            counts[k] = b
    return BettiVector(counts)


class SimplicialMap:
    """A vertex map whose images of simplices are simplices of the target."""

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex, vertex_map):
        vm = dict(vertex_map)
        missing = source.vertices - set(vm)
        if missing:
            raise ValueError(f"vertex map not total, missing {sort_labels(missing)[:3]}")
        stray = {vm[v] for v in source.vertices} - target.vertices
        if stray:
            raise NotSimplicial(f"images outside target: {sort_labels(stray)[:3]}")
        for f in source.facets:
            image = frozenset(vm[v] for v in f)
            if not target.has_simplex(image):
                raise NotSimplicial(f"facet {sort_labels(f)} maps to a non-simplex")
        self.source = source
        self.target = target
        self.vertex_map = {v: vm[v] for v in source.vertices}

    @classmethod
    def identity(cls, komplex: SimplicialComplex) -> "SimplicialMap":
        return cls(komplex, komplex, {v: v for v in komplex.vertices})

    def __call__(self, v):
        return self.vertex_map[v]

    def image_simplex(self, s) -> frozenset:
        return frozenset(self.vertex_map[v] for v in s)

    def then(self, other: "SimplicialMap") -> "SimplicialMap":
        """Composition: first self, then other."""
        if not self.target.is_subcomplex_of(other.source):
            raise ValueError("maps not composable")
        return SimplicialMap(
            self.source, other.target, {v: other.vertex_map[self.vertex_map[v]] for v in self.vertex_map}
        )

    def is_inclusion(self) -> bool:
        return all(self.vertex_map[v] == v for v in self.vertex_map)


def _permutation_sign(order) -> int:
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j = i
        cycle = 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            cycle += 1
        if cycle % 2 == 0:
            sign = -sign
    return sign


def _homology_data(komplex: SimplicialComplex):
    """Per degree: boundary-image basis and homology representative cycles.

    Representatives are canonical: elimination follows the sorted simplex
    order, so two computations on equal complexes give identical bases.
    """
    by_dim = komplex.simplices_by_dim()
    data = {}
    for k in range(-1, komplex.dim + 1):
        n_k = len(by_dim.get(k, ()))
        rows_k, _ = boundary_rows(komplex, k)
        dense_k = [[Fraction(r.get(j, 0)) for j in range(n_k)] for r in rows_k]
        cycles = linalg.nullspace(dense_k, n_k)
        rows_k1, n_k1 = boundary_rows(komplex, k + 1)
        bcols = [[Fraction(0)] * n_k for _ in range(n_k1)]
        for i, row in enumerate(rows_k1):
            for j, v in row.items():
                bcols[j][i] = Fraction(v)
        chosen = linalg.independent_columns(bcols + cycles)
        b_basis = [bcols[i] for i in chosen if i < len(bcols)]
        h_reps = [cycles[i - len(bcols)] for i in chosen if i >= len(bcols)]
        data[k] = (b_basis, h_reps)
    return data


class HomologyMap:
    """Induced maps on reduced rational homology, one matrix per degree.

    Bases are canonical per complex, so matrices of different maps between
    the same complexes can be compared and multiplied entrywise.
    """

    def __init__(self, f: SimplicialMap):
        self.map = f
        src_data = _homology_data(f.source)
        tgt_data = _homology_data(f.target)
        src_by_dim = f.source.simplices_by_dim()
        tgt_by_dim = f.target.simplices_by_dim()
        top = max(f.source.dim, f.target.dim)
        self.matrices = {}
        self.source_betti = BettiVector(
            {k: len(src_data[k][1]) for k in src_data if src_data[k][1]}
        )
        self.target_betti = BettiVector(
            {k: len(tgt_data[k][1]) for k in tgt_data if tgt_data[k][1]}
        )
        for k in range(-1, top + 1):
            _, src_reps = src_data.get(k, ([], []))
            tgt_b, tgt_reps = tgt_data.get(k, ([], []))
            n_rows = len(tgt_reps)
            n_cols = len(src_reps)
            tgt_simps = tgt_by_dim.get(k, [()] if k == -1 else [])
            tgt_index = {s: i for i, s in enumerate(tgt_simps)}
            cols = []
            for z in src_reps:
                w = [Fraction(0)] * len(tgt_simps)
                for j, s in enumerate(src_by_dim.get(k, [()] if k == -1 else [])):
                    if not z[j]:
                        continue
                    imgs = [f.vertex_map[v] for v in s] if k >= 0 else []
                    if len(set(imgs)) < len(imgs):
                        continue
                    order = sorted(range(len(imgs)), key=lambda i: label_key(imgs[i]))
                    t = tuple(imgs[i] for i in order)
                    w[tgt_index[t]] += z[j] * _permutation_sign(order)
                coeffs = linalg.solve_columns(tgt_b + tgt_reps, w)
                assert coeffs is not None, "image of a cycle is not a cycle"
                cols.append(coeffs[len(tgt_b) :])
            matrix = [[cols[c][r] for c in range(n_cols)] for r in range(n_rows)]
            self.matrices[k] = matrix

    def degrees(self):
        return sorted(k for k in self.matrices)

    def matrix(self, k: int):
        return self.matrices.get(k, [])

    def is_surjective(self) -> bool:
        for k, m in self.matrices.items():
            if len(m) and linalg.dense_rank(m) < len(m):
                return False
        return True

    def is_injective(self) -> bool:
        for k, m in self.matrices.items():
            ncols = len(m[0]) if m else 0
            if ncols and linalg.dense_rank(m) < ncols:
                return False
        return True

    def is_isomorphism(self) -> bool:
        for k, m in self.matrices.items():
            ncols = len(m[0]) if m else 0
            if len(m) != ncols:
                return False
        return self.is_surjective() and self.is_injective()


def homology_map(f: SimplicialMap) -> HomologyMap:
    return HomologyMap(f)


def compose_matrices(outer: HomologyMap, inner: HomologyMap) -> dict:
    """Degreewise product H(outer) * H(inner) of composable homology maps."""
    out = {}
    for k in set(outer.matrices) | set(inner.matrices):
        rows = outer.target_betti[k]
        cols = inner.source_betti[k]
        a = outer.matrices.get(k, [])
        b = inner.matrices.get(k, [])
        if rows == 0:
            out[k] = []
        elif a and b and a[0]:
            out[k] = linalg.matmul(a, b)
        else:
            # the middle homology group vanishes: the composite is zero
            out[k] = [[Fraction(0)] * cols for _ in range(rows)]
    return out
