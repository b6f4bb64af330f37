"""
LieVerify Backend - Lie Algebra Module
Lie algebras as exact structure constants, subspaces, linear maps and
structural queries (derived algebra, center, nilpotency, closures,
isomorphism certificates, structure-constant dumps)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ConstructionError, DomainError
from .exactmath import (
    EchelonBasis,
    ExactMatrix,
    Scalar,
    Vector,
    as_vector,
    _require_rational,
    kernel,
    lin_comb,
    rank,
    solve,
    span_basis,
    unit_vector,
    vec_is_zero,
    vec_sub,
    zero_vector,
)


logger = logging.getLogger(__name__)

Table = Dict[Tuple[int, int], Dict[int, Fraction]]


# ---------------------------------------------------------------------------
# Sparse matrix helpers for realizations
# ---------------------------------------------------------------------------

def _sparse(matrix):
    return matrix.nonzero_entries()


def _sparse_product(x, y_rows):
    out = {}
    for (i, k), a in x.items():
        for j, b in y_rows.get(k, ()):
            key = (i, j)
            value = out[key] + a * b if key in out else a * b
            if value:
                out[key] = value
            else:
                out.pop(key, None)
    return out


def _by_row(x):
    rows = {}
    for (i, j), v in x.items():
        rows.setdefault(i, []).append((j, v))
    return rows


def _sparse_axpy(acc, c, x):
    for key, v in x.items():
        value = acc[key] + c * v if key in acc else c * v
        if value:
            acc[key] = value
        else:
            acc.pop(key, None)
    return acc


def _components(value):
    if isinstance(value, Scalar):
        return value.coeffs
    return (value,)


def _slots(x):
    """Real components of a sparse matrix keyed by (row, col, component)"""
    out = {}
    for (i, j), v in x.items():
        for c, a in enumerate(_components(v)):
            if a:
                out[(i, j, c)] = a
    return out


# ---------------------------------------------------------------------------
# Lie algebras
# ---------------------------------------------------------------------------

class LieAlgebra:
    """
    Finite-dimensional Lie algebra over Q given by structure constants

    The table maps an ordered basis pair (i, j) to the sparse coordinates of
    [e_i, e_j]. Both orders are stored. An optional realization gives one
    exact matrix per basis element.
    """

    def __init__(self, name, labels, table, realization=None, meta=None):
        self.name = name
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        if len(set(self.labels)) != self.dim:
            raise ConstructionError(f"{name}: duplicate basis labels")
        self._index = {label: i for i, label in enumerate(self.labels)}
        self._table: Table = {}
        for (i, j), coords in table.items():
            coords = {k: Fraction(c) for k, c in coords.items() if c}
            if not coords:
                continue
            if i == j:
                raise ConstructionError(f"{name}: nonzero self-bracket of basis element {i}")
            mirrored = self._table.get((i, j))
            if mirrored is not None and mirrored != coords:
                raise ConstructionError(f"{name}: structure constants are not antisymmetric at ({i}, {j})")
            self._table[(i, j)] = coords
            negated = {k: -c for k, c in coords.items()}
            existing = self._table.get((j, i))
            if existing is not None and existing != negated:
                raise ConstructionError(f"{name}: structure constants are not antisymmetric at ({i}, {j})")
            self._table[(j, i)] = negated
        self.realization = tuple(realization) if realization is not None else None
        self.kind = self.realization[0].kind if self.realization else None
        self.meta = dict(meta or {})
        self._sparse_realization = None
        self._slot_map = None

    @classmethod
    def from_realization(cls, name, labels, matrices, meta=None):
        """
        Build an algebra from matrices closed under the commutator

        Structure constants are the coordinates of every commutator of basis
        matrices in the basis itself.

        Raises:
            ConstructionError: When a commutator leaves the span
        """
        matrices = list(matrices)
        algebra = cls(name, labels, {}, realization=matrices, meta=meta)
        sparse = algebra._sparse_matrices()
        rows = [_by_row(x) for x in sparse]
        table = {}
        for i, j in combinations(range(len(matrices)), 2):
            comm = _sparse_product(sparse[i], rows[j])
            _sparse_axpy(comm, -1, _sparse_product(sparse[j], rows[i]))
            if not comm:
                continue
            coords = algebra._sparse_coordinates(comm)
            if coords is None:
                raise ConstructionError(f"{name}: [{labels[i]}, {labels[j]}] is not in the span")
            table[(i, j)] = coords
        built = cls(name, labels, table, realization=matrices, meta=meta)
        logger.debug(f"Built {name} from realization: dim {built.dim}, {len(table)} nonzero brackets")
        return built

    # -- basis access -----------------------------------------------------

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise DomainError(f"{self.name} has no basis element {label!r}") from None

    def basis_vector(self, i) -> Vector:
        if isinstance(i, str):
            i = self.index(i)
        return unit_vector(self.dim, i)

    def vector(self, coeffs) -> Vector:
        """Coordinate vector from a {label: coefficient} mapping"""
        v = [Fraction(0)] * self.dim
        for label, c in coeffs.items():
            v[self.index(label)] += Fraction(c)
        return tuple(v)

    def zero(self) -> Vector:
        return zero_vector(self.dim)

    # -- brackets ---------------------------------------------------------

    def basis_bracket(self, i, j) -> Dict[int, Fraction]:
        return self._table.get((i, j), {})

    def structure_constant(self, i, j, k) -> Fraction:
        return self._table.get((i, j), {}).get(k, Fraction(0))

    def nonzero_brackets(self):
        """Iterate over (i, j, coords) with i < j and [e_i, e_j] != 0"""
        for (i, j), coords in sorted(self._table.items()):
            if i < j:
                yield i, j, coords

    def bracket(self, x, y) -> Vector:
        acc = [Fraction(0)] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in xs:
            for j, b in ys:
                coords = self._table.get((i, j))
                if coords:
                    ab = a * b
                    for k, c in coords.items():
                        acc[k] += ab * c
        return tuple(acc)

    def ad(self, x) -> ExactMatrix:
        """Matrix of ad(x) on the basis: column j holds [x, e_j]"""
        columns = [self.bracket(x, unit_vector(self.dim, j)) for j in range(self.dim)]
        return ExactMatrix.from_columns(columns, nrows=self.dim)

    def ad_basis(self, i) -> ExactMatrix:
        entries = {}
        for j in range(self.dim):
            for k, c in self._table.get((i, j), {}).items():
                entries[(k, j)] = c
        return ExactMatrix.from_entries(self.dim, self.dim, entries)

    # -- realization ------------------------------------------------------

    def _sparse_matrices(self):
        if self._sparse_realization is None:
            if self.realization is None:
                raise DomainError(f"{self.name} has no matrix realization")
            self._sparse_realization = [_sparse(m) for m in self.realization]
        return self._sparse_realization

    def _build_slots(self):
        # a private slot of e_i is a real component where no other basis matrix is nonzero
        slots = [_slots(x) for x in self._sparse_matrices()]
        owners = {}
        for i, s in enumerate(slots):
            for key in s:
                owners.setdefault(key, []).append(i)
        private = []
        for i, s in enumerate(slots):
            key = next((key for key in sorted(s) if owners[key] == [i]), None)
            private.append((key, s[key]) if key is not None else None)
        self._slot_map = (slots, private)

    def _sparse_coordinates(self, target):
        if self._slot_map is None:
            self._build_slots()
        slots, private = self._slot_map
        wanted = _slots(target)
        if all(p is not None for p in private):
            coords = {}
            for i, (key, value) in enumerate(private):
                a = wanted.get(key)
                if a:
                    coords[i] = a / value
        else:
            coords = self._solve_coordinates(slots, wanted)
            if coords is None:
                return None
        # reconstruction must be exact
        residual = dict(wanted)
        for i, c in coords.items():
            _sparse_axpy(residual, -c, slots[i])
        return coords if not residual else None

    def _solve_coordinates(self, slots, wanted):
        keys = sorted(set().union(wanted, *slots))
        matrix = ExactMatrix([[s.get(key, Fraction(0)) for s in slots] for key in keys], ncols=self.dim)
        x = solve(matrix, [wanted.get(key, Fraction(0)) for key in keys])
        if x is None:
            return None
        return {i: c for i, c in enumerate(x) if c}

    def coordinates(self, matrix) -> Optional[Vector]:
        """Coordinates of a matrix in the realization basis, or None if outside the span"""
        coords = self._sparse_coordinates(_sparse(matrix))
        if coords is None:
            return None
        v = [Fraction(0)] * self.dim
        for i, c in coords.items():
            v[i] = c
        return tuple(v)

    def to_matrix(self, x) -> ExactMatrix:
        if self.realization is None:
            raise DomainError(f"{self.name} has no matrix realization")
        n = self.realization[0].nrows
        acc = {}
        for i, a in enumerate(x):
            if a:
                _sparse_axpy(acc, a, self._sparse_matrices()[i])
        return ExactMatrix.from_entries(n, n, acc, self.kind)

    # -- consistency ------------------------------------------------------

    def jacobi_defect(self) -> Fraction:
        """
        Largest absolute coefficient of [[x,y],z] + [[y,z],x] + [[z,x],y] over basis triples

        Only triples touching a nonzero bracket can contribute, so the sum is
        accumulated from the nonzero part of the table.
        """
        defects: Dict[Tuple[int, int, int], Dict[int, Fraction]] = {}
        for (x, y), coords in self._table.items():
            if x > y:
                continue
            for l, c in coords.items():
                for z in range(self.dim):
                    if z == x or z == y:
                        continue
                    inner = self._table.get((l, z))
                    if not inner:
                        continue
                    triple = tuple(sorted((x, y, z)))
                    i, j, k = triple
                    sign = 1 if (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)) else -1
                    acc = defects.setdefault(triple, {})
                    for m, d in inner.items():
                        acc[m] = acc.get(m, Fraction(0)) + sign * c * d
        worst = Fraction(0)
        for acc in defects.values():
            for value in acc.values():
                if abs(value) > worst:
                    worst = abs(value)
        return worst

    def realization_defect(self) -> Fraction:
        """
        Largest absolute entry of [R_i, R_j] - sum_k c_ijk R_k over basis pairs

        Computed directly from the matrices, independently of the coordinate
        solver used at construction. Zero for abstract algebras.
        """
        if self.realization is None:
            return Fraction(0)
        sparse = self._sparse_matrices()
        rows = [_by_row(x) for x in sparse]
        worst = Fraction(0)
        for i, j in combinations(range(self.dim), 2):
            comm = _sparse_product(sparse[i], rows[j])
            _sparse_axpy(comm, -1, _sparse_product(sparse[j], rows[i]))
            for k, c in self._table.get((i, j), {}).items():
                _sparse_axpy(comm, -c, sparse[k])
            for value in _slots(comm).values():
                if abs(value) > worst:
                    worst = abs(value)
        return worst

    # -- subspaces --------------------------------------------------------

    def span(self, vectors) -> "Subspace":
        return Subspace.from_vectors(self, vectors)

    def coordinate_subspace(self, labels) -> "Subspace":
        return Subspace.from_vectors(self, [self.basis_vector(label) for label in labels])

    def whole(self) -> "Subspace":
        return Subspace.from_vectors(self, [unit_vector(self.dim, i) for i in range(self.dim)])

    def zero_subspace(self) -> "Subspace":
        return Subspace(self, ())

    def __repr__(self):
        return f"LieAlgebra({self.name}, dim={self.dim})"


# ---------------------------------------------------------------------------
# Subspaces and maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of a Lie algebra, stored as independent coordinate vectors"""

    parent: LieAlgebra
    basis: Tuple[Vector, ...]
    _echelon: EchelonBasis = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        echelon = EchelonBasis(self.parent.dim)
        for v in self.basis:
            if not echelon.add(v):
                raise DomainError("Subspace basis vectors are dependent")
        object.__setattr__(self, "_echelon", echelon)

    @classmethod
    def from_vectors(cls, parent, vectors):
        return cls(parent, tuple(span_basis([as_vector(v) for v in vectors], parent.dim)))

    @property
    def dim(self):
        return len(self.basis)

    @property
    def span(self) -> ExactMatrix:
        return ExactMatrix.from_columns(self.basis, nrows=self.parent.dim)

    def contains(self, vector):
        return self._echelon.contains(vector)

    def contains_subspace(self, other):
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, vector) -> Optional[Vector]:
        return self._echelon.express(vector)

    def element(self, coeffs) -> Vector:
        return lin_comb(coeffs, self.basis, self.parent.dim)

    def __add__(self, other):
        return Subspace.from_vectors(self.parent, list(self.basis) + list(other.basis))

    def intersection(self, other) -> "Subspace":
        if not self.basis or not other.basis:
            return self.parent.zero_subspace()
        columns = list(self.basis) + [tuple(-a for a in w) for w in other.basis]
        system = ExactMatrix.from_columns(columns, nrows=self.parent.dim)
        vectors = [self.element(sol[:self.dim]) for sol in kernel(system)]
        return Subspace.from_vectors(self.parent, vectors)

    def same_as(self, other):
        return self.dim == other.dim and self.contains_subspace(other)

    def is_subalgebra(self):
        return bracket_space(self, self, within=self) is not None

    def is_ideal(self):
        return self.contains_subspace(bracket_space(self.parent.whole(), self))

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.parent.name})"


def bracket_space(left: Subspace, right: Subspace, within: Subspace = None) -> Optional[Subspace]:
    """
    Span of [a, b] over basis vectors a of `left` and b of `right`

    With `within`, returns None as soon as a bracket falls outside it.
    """
    g = left.parent
    echelon = EchelonBasis(g.dim)
    for a in left.basis:
        for b in right.basis:
            v = g.bracket(a, b)
            if vec_is_zero(v):
                continue
            if within is not None and not within.contains(v):
                return None
            echelon.add(v)
    return Subspace(g, tuple(echelon.basis))


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Linear map between Lie algebras given by its rational matrix"""

    source: LieAlgebra
    target: LieAlgebra
    matrix: ExactMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise DomainError(
                f"Map matrix has shape {self.matrix.shape}, expected {(self.target.dim, self.source.dim)}"
            )
        _require_rational(self.matrix)
        columns = [[(i, c) for i, c in enumerate(col) if c] for col in self.matrix.columns()]
        object.__setattr__(self, "_columns", columns)

    @classmethod
    def from_images(cls, source, target, images):
        images = list(images)
        if len(images) != source.dim:
            raise DomainError(f"Need {source.dim} images, got {len(images)}")
        return cls(source, target, ExactMatrix.from_columns(images, nrows=target.dim))

    @classmethod
    def identity(cls, g):
        return cls(g, g, ExactMatrix.identity(g.dim))

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, ExactMatrix.zeros(target.dim, source.dim))

    def __call__(self, vector) -> Vector:
        acc = [Fraction(0)] * self.target.dim
        for j, a in enumerate(vector):
            if a:
                for i, c in self._columns[j]:
                    acc[i] += a * c
        return tuple(acc)

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self after inner"""
        if inner.target is not self.source and inner.target.dim != self.source.dim:
            raise DomainError("Maps are not composable")
        return LinearMap(inner.source, self.target, self.matrix @ inner.matrix)

    def rank(self):
        return rank(self.matrix)

    def is_surjective(self):
        return self.rank() == self.target.dim

    def is_injective(self):
        return self.rank() == self.source.dim

    def is_bijective(self):
        return self.source.dim == self.target.dim and self.is_injective()


def bracket_defects(f: LinearMap, limit=None):
    """
    Basis pairs where f[e_i, e_j] differs from [f e_i, f e_j]

    Returns:
        list: (i, j, difference vector) entries, at most `limit` of them
    """
    src, tgt = f.source, f.target
    images = f.matrix.columns()
    found = []
    for i, j in combinations(range(src.dim), 2):
        lhs = f(src.bracket(unit_vector(src.dim, i), unit_vector(src.dim, j)))
        rhs = tgt.bracket(images[i], images[j])
        diff = vec_sub(lhs, rhs)
        if not vec_is_zero(diff):
            found.append((i, j, diff))
            if limit is not None and len(found) >= limit:
                break
    return found


# ---------------------------------------------------------------------------
# Structural queries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureReport:
    derived: Subspace
    center: Subspace
    lower_central: Tuple[Subspace, ...]
    nilpotency_degree: Optional[int]

    def to_dict(self):
        return {
            "derived_dim": self.derived.dim,
            "center_dim": self.center.dim,
            "lower_central_dims": [s.dim for s in self.lower_central],
            "nilpotency_degree": self.nilpotency_degree,
        }


def center(g: LieAlgebra) -> Subspace:
    # x is central iff sum_i x_i c_ij^k = 0 for every j, k
    rows = []
    for j in range(g.dim):
        for k in range(g.dim):
            row = [g.structure_constant(i, j, k) for i in range(g.dim)]
            if any(row):
                rows.append(row)
    if not rows:
        return g.whole()
    return Subspace.from_vectors(g, kernel(ExactMatrix(rows, ncols=g.dim)))


def derived_algebra(g: LieAlgebra) -> Subspace:
    vectors = []
    for _, _, coords in g.nonzero_brackets():
        v = [Fraction(0)] * g.dim
        for k, c in coords.items():
            v[k] = c
        vectors.append(tuple(v))
    return Subspace.from_vectors(g, vectors)


def lower_central_series(g: LieAlgebra) -> List[Subspace]:
    """g = g^1, g^(k+1) = [g, g^k], until the terms stabilise"""
    whole = g.whole()
    series = [whole]
    while True:
        nxt = bracket_space(whole, series[-1])
        if nxt.dim == series[-1].dim:
            break
        series.append(nxt)
        if nxt.dim == 0:
            break
    return series


def structure_report(g: LieAlgebra) -> StructureReport:
    """
    Derived algebra, center and lower central series of g

    The nilpotency degree is the number of nonzero terms of the lower central
    series (2 for Heisenberg algebras), or None when the series stabilises
    above zero.
    """
    series = lower_central_series(g)
    if series[-1].dim == 0:
        degree = len(series) - 1
    else:
        degree = None
    report = StructureReport(derived_algebra(g), center(g), tuple(series), degree)
    logger.debug(f"Structure of {g.name}: {report.to_dict()}")
    return report


def subalgebra_closure(g: LieAlgebra, seed: Subspace) -> Subspace:
    """
    Smallest bracket-closed subspace containing `seed`

    New vectors are bracketed against everything found so far; each accepted
    vector raises the dimension, so the loop ends after at most dim(g) rounds.
    """
    echelon = EchelonBasis(g.dim, seed.basis)
    queue = list(echelon.basis)
    done = []
    while queue:
        v = queue.pop(0)
        for w in done + [v]:
            u = g.bracket(v, w)
            if not vec_is_zero(u) and echelon.add(u):
                queue.append(echelon.basis[-1])
        done.append(v)
    return Subspace(g, tuple(echelon.basis))


def subalgebra(g: LieAlgebra, space: Subspace, labels=None, name=None):
    """
    Realize a bracket-closed subspace as a Lie algebra of its own

    Returns:
        tuple: (LieAlgebra, inclusion LinearMap into g)

    Raises:
        DomainError: When the subspace is not closed under the bracket
    """
    n = space.dim
    if labels is None:
        labels = [f"s{i}" for i in range(n)]
    table = {}
    for a, b in combinations(range(n), 2):
        v = g.bracket(space.basis[a], space.basis[b])
        if vec_is_zero(v):
            continue
        coords = space.coordinates(v)
        if coords is None:
            raise DomainError(f"Subspace of {g.name} is not closed under the bracket")
        table[(a, b)] = {k: c for k, c in enumerate(coords) if c}
    realization = [g.to_matrix(v) for v in space.basis] if g.realization is not None else None
    h = LieAlgebra(name or f"sub({g.name})", labels, table, realization=realization)
    inclusion = LinearMap.from_images(h, g, space.basis)
    return h, inclusion


# ---------------------------------------------------------------------------
# Heisenberg recognition and isomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HeisenbergProfile:
    center_dim: int
    derived_equals_center: bool
    two_step: bool
    form_nondegenerate: bool

    def matches(self, center_dim):
        return (self.center_dim == center_dim and self.derived_equals_center
                and self.two_step and self.form_nondegenerate)

    @property
    def is_classical(self):
        return self.matches(1)

    @property
    def is_quaternionic(self):
        return self.matches(3)


def recognize_heisenberg(g: LieAlgebra) -> HeisenbergProfile:
    """
    Heisenberg invariants of g

    The alternating form induced on g/z takes values in z. Each of its
    components along a basis of z must be nondegenerate on a complement of z.
    """
    report = structure_report(g)
    z = report.center
    derived_equals_center = report.derived.same_as(z) and z.dim > 0
    two_step = report.nilpotency_degree == 2

    # complement of the center among basis vectors
    echelon = EchelonBasis(g.dim, z.basis)
    complement = [unit_vector(g.dim, i) for i in range(g.dim) if echelon.add(unit_vector(g.dim, i))]
    m = len(complement)
    nondegenerate = m > 0 and derived_equals_center
    if nondegenerate:
        forms = [[[Fraction(0)] * m for _ in range(m)] for _ in range(z.dim)]
        for a, b in combinations(range(m), 2):
            coords = z.coordinates(g.bracket(complement[a], complement[b]))
            for t, c in enumerate(coords):
                forms[t][a][b] = c
                forms[t][b][a] = -c
        nondegenerate = all(rank(ExactMatrix(form, ncols=m)) == m for form in forms)
    return HeisenbergProfile(z.dim, derived_equals_center, two_step, nondegenerate)


def verify_isomorphism(f: LinearMap, certify="abstract") -> bool:
    """
    Check that f is a bijective Lie algebra morphism

    Args:
        f: Candidate isomorphism
        certify (str): "abstract", or "heisC" / "heisH" to also require the
            target to be a classical / quaternionic Heisenberg algebra

    Returns:
        bool: True iff every check passes

    Raises:
        DomainError: When source and target dimensions differ
    """
    if f.source.dim != f.target.dim:
        raise DomainError(f"Cannot be an isomorphism: dim {f.source.dim} -> dim {f.target.dim}")
    if certify not in ("abstract", "heisC", "heisH"):
        raise DomainError(f"Unknown certificate type: {certify}")
    if not f.is_bijective():
        logger.debug(f"{f.source.name} -> {f.target.name}: map is not bijective")
        return False
    defects = bracket_defects(f, limit=1)
    if defects:
        i, j, _ = defects[0]
        logger.debug(f"{f.source.name} -> {f.target.name}: bracket not preserved on "
                     f"({f.source.labels[i]}, {f.source.labels[j]})")
        return False
    if certify == "heisC":
        return recognize_heisenberg(f.target).is_classical
    if certify == "heisH":
        return recognize_heisenberg(f.target).is_quaternionic
    return True


def extend_to_center(source: LieAlgebra, target: LieAlgebra, known: Dict[int, Sequence]) -> LinearMap:
    """
    Complete a partial assignment of images so brackets are preserved

    Images of the basis elements missing from `known` are solved from
    f[e_i, e_j] = [f e_i, f e_j] over pairs of known indices. Unknowns the
    system leaves free are set to zero; the caller certifies the result.

    Raises:
        ConstructionError: When the system has no solution
    """
    unknown = [i for i in range(source.dim) if i not in known]
    known_images = {i: as_vector(v) for i, v in known.items()}
    rows, rhs = [], []
    for i, j in combinations(sorted(known_images), 2):
        coords = source.basis_bracket(i, j)
        target_value = target.bracket(known_images[i], known_images[j])
        for k, c in coords.items():
            if k in known_images:
                target_value = vec_sub(target_value, tuple(c * a for a in known_images[k]))
        row = [coords.get(k, Fraction(0)) for k in unknown]
        if any(row) or any(target_value):
            rows.append(row)
            rhs.append(target_value)

    solved = {k: [Fraction(0)] * target.dim for k in unknown}
    if unknown and rows:
        system = ExactMatrix(rows, ncols=len(unknown))
        for t in range(target.dim):
            x = solve(system, [r[t] for r in rhs])
            if x is None:
                raise ConstructionError(
                    f"No bracket-compatible images for {source.name} -> {target.name}"
                )
            for pos, k in enumerate(unknown):
                solved[k][t] = x[pos]
    elif rows and any(any(r) for r in rhs):
        raise ConstructionError(f"Known images of {source.name} do not preserve brackets")

    images = [known_images[i] if i in known_images else tuple(solved[i]) for i in range(source.dim)]
    return LinearMap.from_images(source, target, images)


# ---------------------------------------------------------------------------
# Structure-constant dumps
# ---------------------------------------------------------------------------

def dump_structure(g: LieAlgebra) -> str:
    """
    Plain-text dump: `dim N`, a `labels ...` line, then `i j k p/q` per nonzero constant
    """
    from .utils import format_fraction
    lines = [f"dim {g.dim}", "labels " + " ".join(label.replace(" ", "_") for label in g.labels)]
    for (i, j), coords in sorted(g._table.items()):
        for k in sorted(coords):
            lines.append(f"{i} {j} {k} {format_fraction(coords[k])}")
    return "\n".join(lines) + "\n"


def parse_structure_dump(text, name="parsed") -> LieAlgebra:
    """
    Rebuild an algebra from dump_structure output

    Raises:
        DomainError: On malformed input
        ConstructionError: When the constants are not antisymmetric
    """
    lines = [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    if not lines or not lines[0].startswith("dim "):
        raise DomainError("Structure dump must start with 'dim N'")
    try:
        dim = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise DomainError(f"Bad header line: {lines[0]!r}") from None
    body = lines[1:]
    labels = [f"e{i}" for i in range(dim)]
    if body and body[0].startswith("labels"):
        labels = body[0].split()[1:]
        body = body[1:]
    if len(labels) != dim:
        raise DomainError(f"Expected {dim} labels, got {len(labels)}")
    table: Table = {}
    for line in body:
        parts = line.split()
        if len(parts) != 4:
            raise DomainError(f"Bad structure constant line: {line!r}")
        try:
            i, j, k = (int(p) for p in parts[:3])
            value = Fraction(parts[3])
        except ValueError:
            raise DomainError(f"Bad structure constant line: {line!r}") from None
        if not all(0 <= idx < dim for idx in (i, j, k)):
            raise DomainError(f"Index out of range in line: {line!r}")
        table.setdefault((i, j), {})[k] = value
    return LieAlgebra(name, labels, table)
