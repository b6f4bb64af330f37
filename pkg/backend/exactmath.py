"""
LieVerify Backend - Exact Math Module
Rational composition algebras and exact dense linear algebra over Q
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import ContractViolation, DecompositionError, DomainError, KindMismatchError


logger = logging.getLogger(__name__)

KIND_SIZES = {"rational": 1, "gaussian": 2, "quaternion": 4, "octonion": 8}

UNIT_LABELS = {
    "rational": ("1",),
    "gaussian": ("1", "i"),
    "quaternion": ("1", "i", "j", "k"),
    "octonion": ("1", "i", "j", "k", "l", "il", "jl", "kl"),
}

Vector = Tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# Cayley-Dickson scalars
# ---------------------------------------------------------------------------

def _cd_conj(x):
    return (x[0],) + tuple(-c for c in x[1:])


def _cd_add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _cd_sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _cd_mul(x, y):
    # (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))
    if len(x) == 1:
        return (x[0] * y[0],)
    h = len(x) // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    return (_cd_sub(_cd_mul(a, c), _cd_mul(_cd_conj(d), b))
            + _cd_add(_cd_mul(d, a), _cd_mul(b, _cd_conj(c))))


class Scalar:
    """
    Element of Q, Q(i), the rational quaternions or the rational octonions

    Coefficients are taken on the Cayley-Dickson basis: quaternions as
    (1, i, j, k) with ij = k, octonions as (1, i, j, k, l, il, jl, kl) where
    an octonion is a pair of quaternions (a, b) = a + b l.
    """

    __slots__ = ("kind", "coeffs")

    def __init__(self, kind, coeffs):
        if kind not in KIND_SIZES:
            raise DomainError(f"Unknown scalar kind: {kind}")
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != KIND_SIZES[kind]:
            raise DomainError(f"{kind} scalars take {KIND_SIZES[kind]} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def zero(cls, kind):
        return cls(kind, (0,) * KIND_SIZES[kind])

    @classmethod
    def one(cls, kind):
        return cls.real(kind, 1)

    @classmethod
    def real(cls, kind, value):
        return cls(kind, (value,) + (0,) * (KIND_SIZES[kind] - 1))

    @classmethod
    def unit(cls, kind, index):
        """Basis unit number `index` of the given kind (0 is the identity)"""
        size = KIND_SIZES[kind]
        if not 0 <= index < size:
            raise DomainError(f"{kind} has no unit {index}")
        return cls(kind, tuple(1 if i == index else 0 for i in range(size)))

    @classmethod
    def coerce(cls, kind, value):
        if isinstance(value, Scalar):
            if value.kind != kind:
                raise KindMismatchError(f"Cannot use a {value.kind} scalar as {kind}")
            return value
        return cls.real(kind, value)

    @property
    def re(self):
        return self.coeffs[0]

    def is_real(self):
        return not any(self.coeffs[1:])

    def conj(self):
        return Scalar(self.kind, _cd_conj(self.coeffs))

    def norm(self):
        """x * conj(x), always a nonnegative rational"""
        return sum((c * c for c in self.coeffs), Fraction(0))

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Zero scalar has no inverse")
        return Scalar(self.kind, tuple(c / n for c in _cd_conj(self.coeffs)))

    def _check(self, other):
        if isinstance(other, Scalar):
            if other.kind != self.kind:
                raise KindMismatchError(f"Cannot combine {self.kind} with {other.kind}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.real(self.kind, other)
        return None

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return Scalar(self.kind, _cd_add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return Scalar(self.kind, _cd_sub(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Scalar(self.kind, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(self.kind, tuple(c * other for c in self.coeffs))
        if isinstance(other, Scalar):
            return algebra_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(self.kind, tuple(other * c for c in self.coeffs))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(self.kind, tuple(c / other for c in self.coeffs))
        if isinstance(other, Scalar):
            return algebra_mul(self, other.inverse())
        return NotImplemented

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.kind == other.kind and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_real() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_real():
            return hash(self.coeffs[0])
        return hash((self.kind, self.coeffs))

    def __repr__(self):
        terms = []
        for label, c in zip(UNIT_LABELS[self.kind], self.coeffs):
            if c:
                terms.append(str(c) if label == "1" else f"{c}{label}")
        return f"Scalar({' + '.join(terms) or '0'})"


def algebra_mul(x: Scalar, y: Scalar) -> Scalar:
    """
    Multiply two scalars of the same kind

    Args:
        x: Left factor
        y: Right factor

    Returns:
        Scalar: The product x*y in the composition algebra of their kind

    Raises:
        KindMismatchError: When the kinds differ
    """
    if not isinstance(x, Scalar) or not isinstance(y, Scalar):
        raise KindMismatchError("algebra_mul expects two Scalar values")
    if x.kind != y.kind:
        raise KindMismatchError(f"Cannot multiply {x.kind} by {y.kind}")
    if x.kind == "rational":
        return Scalar("rational", (x.coeffs[0] * y.coeffs[0],))
    return Scalar(x.kind, _cd_mul(x.coeffs, y.coeffs))


# ---------------------------------------------------------------------------
# Rational vectors
# ---------------------------------------------------------------------------

def zero_vector(n) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n, i) -> Vector:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))


def as_vector(values) -> Vector:
    return tuple(Fraction(v) for v in values)


def vec_add(x, y) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x, y) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(c, x) -> Vector:
    return tuple(c * a for a in x)


def vec_dot(x, y) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def vec_is_zero(x) -> bool:
    return not any(x)


def lin_comb(coeffs, vectors, dim=None) -> Vector:
    """Sum of c_i * v_i; `dim` is needed when the list is empty"""
    if dim is None:
        dim = len(vectors[0])
    acc = [Fraction(0)] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    acc[i] += c * a
    return tuple(acc)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

def _zero(kind):
    return Fraction(0) if kind == "rational" else Scalar.zero(kind)


def _coerce(kind, value):
    if kind == "rational":
        if isinstance(value, Scalar):
            if value.kind != "rational":
                raise KindMismatchError(f"Cannot store a {value.kind} entry in a rational matrix")
            return value.coeffs[0]
        return Fraction(value)
    return Scalar.coerce(kind, value)


class ExactMatrix:
    """
    Dense exact matrix with entries of one scalar kind

    Entries are Fractions for the rational kind and Scalars otherwise.
    Instances are immutable; all operations return new matrices.
    """

    __slots__ = ("kind", "nrows", "ncols", "_rows")

    def __init__(self, rows, kind="rational", ncols=None):
        if kind not in KIND_SIZES:
            raise DomainError(f"Unknown scalar kind: {kind}")
        data = tuple(tuple(_coerce(kind, v) for v in row) for row in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise DomainError("Ragged matrix rows")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "_rows", data)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def _trusted(cls, rows, kind, ncols):
        obj = object.__new__(cls)
        object.__setattr__(obj, "kind", kind)
        object.__setattr__(obj, "nrows", len(rows))
        object.__setattr__(obj, "ncols", ncols)
        object.__setattr__(obj, "_rows", tuple(tuple(row) for row in rows))
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, nrows, ncols, kind="rational"):
        z = _zero(kind)
        return cls._trusted([[z] * ncols for _ in range(nrows)], kind, ncols)

    @classmethod
    def identity(cls, n, kind="rational"):
        z, one = _zero(kind), _coerce(kind, 1)
        return cls._trusted([[one if i == j else z for j in range(n)] for i in range(n)], kind, n)

    @classmethod
    def unit(cls, nrows, ncols, i, j, value=1, kind="rational"):
        rows = [[_zero(kind)] * ncols for _ in range(nrows)]
        rows[i][j] = _coerce(kind, value)
        return cls._trusted(rows, kind, ncols)

    @classmethod
    def from_entries(cls, nrows, ncols, entries, kind="rational"):
        """Build from a mapping {(i, j): value}; missing entries are zero"""
        rows = [[_zero(kind)] * ncols for _ in range(nrows)]
        for (i, j), value in entries.items():
            rows[i][j] = rows[i][j] + _coerce(kind, value)
        return cls._trusted(rows, kind, ncols)

    @classmethod
    def from_columns(cls, columns, nrows=None, kind="rational"):
        columns = list(columns)
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        rows = [[_coerce(kind, col[i]) for col in columns] for i in range(nrows)]
        return cls._trusted(rows, kind, len(columns))

    @classmethod
    def diagonal(cls, values, kind="rational"):
        values = list(values)
        n = len(values)
        z = _zero(kind)
        return cls._trusted([[_coerce(kind, values[i]) if i == j else z for j in range(n)]
                             for i in range(n)], kind, n)

    @classmethod
    def block_diagonal(cls, *blocks):
        kind = blocks[0].kind
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        rows = [[_zero(kind)] * m for _ in range(n)]
        r = c = 0
        for b in blocks:
            for i, row in enumerate(b._rows):
                rows[r + i][c:c + b.ncols] = row
            r += b.nrows
            c += b.ncols
        return cls._trusted(rows, kind, m)

    # -- access -----------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def rows(self):
        return self._rows

    def __getitem__(self, key):
        i, j = key
        return self._rows[i][j]

    def row(self, i):
        return self._rows[i]

    def column(self, j):
        return tuple(row[j] for row in self._rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def is_square(self):
        return self.nrows == self.ncols

    def is_zero(self):
        return not any(v for row in self._rows for v in row)

    def nonzero_entries(self):
        return {(i, j): v for i, row in enumerate(self._rows) for j, v in enumerate(row) if v}

    def to_lists(self):
        return [list(row) for row in self._rows]

    # -- arithmetic -------------------------------------------------------

    def _same_shape(self, other):
        if not isinstance(other, ExactMatrix):
            return False
        if other.kind != self.kind:
            raise KindMismatchError(f"Cannot combine {self.kind} and {other.kind} matrices")
        if other.shape != self.shape:
            raise DomainError(f"Shape mismatch: {self.shape} vs {other.shape}")
        return True

    def __add__(self, other):
        if not self._same_shape(other):
            return NotImplemented
        return ExactMatrix._trusted([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
                                    self.kind, self.ncols)

    def __sub__(self, other):
        if not self._same_shape(other):
            return NotImplemented
        return ExactMatrix._trusted([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
                                    self.kind, self.ncols)

    def __neg__(self):
        return ExactMatrix._trusted([[-a for a in r] for r in self._rows], self.kind, self.ncols)

    def scale(self, c):
        """Left multiplication of every entry by the scalar c"""
        c = _coerce(self.kind, c)
        return ExactMatrix._trusted([[c * a for a in r] for r in self._rows], self.kind, self.ncols)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if other.kind != self.kind:
            raise KindMismatchError(f"Cannot multiply {self.kind} by {other.kind} matrix")
        if self.ncols != other.nrows:
            raise DomainError(f"Cannot multiply {self.shape} by {other.shape}")
        zero = _zero(self.kind)
        # most realizations are sparse, so iterate over nonzero entries only
        other_nz = [[(j, b) for j, b in enumerate(row) if b] for row in other._rows]
        out = []
        for row in self._rows:
            acc = [zero] * other.ncols
            for k, a in enumerate(row):
                if a:
                    for j, b in other_nz[k]:
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return ExactMatrix._trusted(out, self.kind, other.ncols)

    def commutator(self, other):
        return self @ other - other @ self

    def apply(self, vector):
        """Matrix-vector product for rational matrices"""
        _require_rational(self)
        return tuple(sum((a * v for a, v in zip(row, vector) if a), Fraction(0)) for row in self._rows)

    def power(self, k):
        result = ExactMatrix.identity(self.nrows, self.kind)
        for _ in range(k):
            result = result @ self
        return result

    def nilpotency_index(self):
        """Smallest k with M^k = 0, or None when M is not nilpotent"""
        if self.is_zero():
            return 1 if self.nrows else 0
        current = self
        for k in range(2, self.nrows + 1):
            current = current @ self
            if current.is_zero():
                return k
        return None

    def transpose(self):
        if self.nrows == 0:
            return ExactMatrix.zeros(self.ncols, 0, self.kind)
        return ExactMatrix._trusted([list(col) for col in zip(*self._rows)], self.kind, self.nrows)

    def conjugate_transpose(self):
        if self.kind == "rational":
            return self.transpose()
        t = self.transpose()
        return ExactMatrix._trusted([[a.conj() for a in r] for r in t._rows], self.kind, t.ncols)

    def trace(self):
        if not self.is_square():
            raise DomainError("Trace of a non-square matrix")
        return sum((self._rows[i][i] for i in range(self.nrows)), _zero(self.kind))

    def real_trace(self):
        """Real part of the trace, as a rational"""
        t = self.trace()
        return t if self.kind == "rational" else t.re

    def realify(self):
        """
        Real form of a complex or quaternionic matrix

        a + bi maps to the block [[a, -b], [b, a]]; a quaternion q maps to the
        4x4 matrix of left multiplication by q on the basis (1, i, j, k).
        """
        if self.kind == "rational":
            return self
        if self.kind == "octonion":
            raise DomainError("Octonion matrices have no associative realification")
        size = KIND_SIZES[self.kind]
        units = [Scalar.unit(self.kind, m) for m in range(size)]
        rows = [[Fraction(0)] * (self.ncols * size) for _ in range(self.nrows * size)]
        for i, row in enumerate(self._rows):
            for j, q in enumerate(row):
                if not q:
                    continue
                for m, u in enumerate(units):
                    image = algebra_mul(q, u).coeffs
                    for r in range(size):
                        rows[i * size + r][j * size + m] = image[r]
        return ExactMatrix._trusted(rows, "rational", self.ncols * size)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.kind == other.kind and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.kind, self.shape, self._rows))

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols}, kind={self.kind})"


def _require_rational(matrix):
    if matrix.kind != "rational":
        raise KindMismatchError(f"Operation needs a rational matrix, got {matrix.kind}")


# ---------------------------------------------------------------------------
# Elimination over Q (sympy DomainMatrix backbone)
# ---------------------------------------------------------------------------

def _to_domain(matrix):
    rows = [[QQ(int(v.numerator), int(v.denominator)) for v in row] for row in matrix.rows]
    return DomainMatrix(rows, matrix.shape, QQ)


def _from_domain(value):
    return Fraction(int(value.numerator), int(value.denominator))


def _as_rational_matrix(matrix_or_rows):
    if isinstance(matrix_or_rows, ExactMatrix):
        _require_rational(matrix_or_rows)
        return matrix_or_rows
    return ExactMatrix(matrix_or_rows)


def rref(matrix) -> Tuple[ExactMatrix, Tuple[int, ...]]:
    """
    Reduced row echelon form over Q

    Returns:
        tuple: (reduced matrix, pivot columns)
    """
    matrix = _as_rational_matrix(matrix)
    if matrix.nrows == 0 or matrix.ncols == 0:
        return matrix, ()
    reduced, pivots = _to_domain(matrix).rref()
    rows = [[_from_domain(v) for v in row] for row in reduced.to_list()]
    return ExactMatrix._trusted(rows, "rational", matrix.ncols), tuple(pivots)


def rank(matrix) -> int:
    """
    Exact rank over Q

    Args:
        matrix: Rational ExactMatrix or list of rows

    Returns:
        int: The rank
    """
    matrix = _as_rational_matrix(matrix)
    if matrix.nrows == 0 or matrix.ncols == 0:
        return 0
    return _to_domain(matrix).rank()


def kernel(matrix) -> List[Vector]:
    """
    Basis of the right null space {x : Mx = 0}

    The basis is read off the reduced echelon form, one vector per free column,
    so the result is deterministic.
    """
    matrix = _as_rational_matrix(matrix)
    n = matrix.ncols
    reduced, pivots = rref(matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r, free]
        basis.append(tuple(v))
    return basis


def solve(matrix, rhs) -> Optional[Vector]:
    """
    One solution of Mx = rhs (free variables set to zero), or None

    Args:
        matrix: Rational ExactMatrix
        rhs: Right-hand side vector

    Returns:
        tuple or None: A solution vector, None when the system is inconsistent
    """
    matrix = _as_rational_matrix(matrix)
    n = matrix.ncols
    augmented = ExactMatrix._trusted([list(row) + [Fraction(b)] for row, b in zip(matrix.rows, rhs)],
                                     "rational", n + 1)
    if matrix.nrows == 0:
        return zero_vector(n) if not any(rhs) else None
    reduced, pivots = rref(augmented)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        x[p] = reduced[r, n]
    return tuple(x)


def characteristic_polynomial(matrix) -> Tuple[Fraction, ...]:
    """Coefficients of det(xI - M), leading coefficient first"""
    matrix = _as_rational_matrix(matrix)
    if not matrix.is_square():
        raise DomainError("Characteristic polynomial of a non-square matrix")
    if matrix.nrows == 0:
        return (Fraction(1),)
    return tuple(_from_domain(c) for c in _to_domain(matrix).charpoly())


def polynomial_at(coeffs, matrix) -> ExactMatrix:
    """Evaluate a polynomial (leading coefficient first) at a square matrix by Horner's rule"""
    n = matrix.nrows
    result = ExactMatrix.zeros(n, n, matrix.kind)
    identity = ExactMatrix.identity(n, matrix.kind)
    for c in coeffs:
        result = result @ matrix + identity.scale(c)
    return result


def determinant(matrix) -> Fraction:
    matrix = _as_rational_matrix(matrix)
    if not matrix.is_square():
        raise DomainError("Determinant of a non-square matrix")
    if matrix.nrows == 0:
        return Fraction(1)
    return _from_domain(_to_domain(matrix).det())


def inverse(matrix) -> ExactMatrix:
    """
    Exact inverse of a square rational matrix

    Raises:
        DomainError: When the matrix is singular
    """
    matrix = _as_rational_matrix(matrix)
    if determinant(matrix) == 0:
        raise DomainError("Matrix is singular")
    inv = _to_domain(matrix).inv()
    return ExactMatrix._trusted([[_from_domain(v) for v in row] for row in inv.to_list()],
                                "rational", matrix.ncols)


class EchelonBasis:
    """
    Incrementally reduced basis of a subspace of Q^n

    Every stored row has a 1 at its pivot and zeros at the pivots of the rows
    stored before it, so reduction is one pass in insertion order. Each row
    remembers which combination of the accepted vectors produced it, which is
    what express() returns.
    """

    def __init__(self, dim, vectors=()):
        self.dim = dim
        self.basis: List[Vector] = []
        self._rows = []
        for v in vectors:
            self.add(v)

    def _reduce(self, vector):
        v = list(vector)
        combo = [Fraction(0)] * len(self.basis)
        for pivot, row, row_combo in self._rows:
            c = v[pivot]
            if c:
                for j in range(self.dim):
                    if row[j]:
                        v[j] -= c * row[j]
                for j, rc in enumerate(row_combo):
                    if rc:
                        combo[j] += c * rc
        return v, combo

    def add(self, vector):
        """Add a vector; returns False when it is already in the span"""
        v, combo = self._reduce(vector)
        pivot = next((j for j, a in enumerate(v) if a), None)
        if pivot is None:
            return False
        lead = v[pivot]
        row = [a / lead for a in v]
        self.basis.append(tuple(Fraction(a) for a in vector))
        # row = (vector - sum combo_j basis_j) / lead
        row_combo = [-c / lead for c in combo] + [1 / lead]
        for entry in self._rows:
            entry[2].append(Fraction(0))
        self._rows.append((pivot, row, row_combo))
        return True

    def contains(self, vector):
        v, _ = self._reduce(vector)
        return not any(v)

    def express(self, vector) -> Optional[Vector]:
        """Coefficients c with vector = sum c_i basis_i, or None"""
        v, combo = self._reduce(vector)
        if any(v):
            return None
        return tuple(combo)

    def __len__(self):
        return len(self.basis)


def span_basis(vectors, dim=None) -> List[Vector]:
    """Independent subset of `vectors` spanning the same space, in input order"""
    vectors = list(vectors)
    if dim is None:
        if not vectors:
            return []
        dim = len(vectors[0])
    return EchelonBasis(dim, vectors).basis


# ---------------------------------------------------------------------------
# Symmetric forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymmetricForm:
    """Symmetric bilinear form on Q^n given by its Gram matrix"""

    gram: ExactMatrix

    def __post_init__(self):
        gram = self.gram
        if not isinstance(gram, ExactMatrix):
            gram = ExactMatrix(gram)
            object.__setattr__(self, "gram", gram)
        _require_rational(gram)
        if not gram.is_square():
            raise ContractViolation(f"Gram matrix must be square, got {gram.shape}")
        if gram != gram.transpose():
            raise ContractViolation("Gram matrix is not symmetric")

    @property
    def dim(self):
        return self.gram.nrows

    def value(self, x, y) -> Fraction:
        return vec_dot(x, self.gram.apply(y))

    def restrict(self, vectors) -> "SymmetricForm":
        vectors = list(vectors)
        g = [[self.value(u, v) for v in vectors] for u in vectors]
        return SymmetricForm(ExactMatrix(g, ncols=len(vectors)))

    def scaled(self, c) -> "SymmetricForm":
        return SymmetricForm(self.gram.scale(c))

    def radical(self) -> List[Vector]:
        return kernel(self.gram)

    def signature(self):
        return signature(self)


def signature(form) -> Tuple[int, int, int]:
    """
    Sylvester signature (pos, neg, null) by symmetric congruence

    Pivots are taken from the diagonal; when every remaining diagonal entry
    vanishes but some b_ij does not, row/column j is added to row/column i,
    which puts 2*b_ij on the diagonal.

    Args:
        form: SymmetricForm or a symmetric rational matrix

    Returns:
        tuple: (positive, negative, null) counts

    Raises:
        ContractViolation: When the matrix is not symmetric
    """
    if not isinstance(form, SymmetricForm):
        form = SymmetricForm(_as_rational_matrix(form))
    a = [list(row) for row in form.gram.rows]
    n = len(a)
    pos = neg = 0
    remaining = list(range(n))

    while remaining:
        p = next((i for i in remaining if a[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in remaining for j in remaining if i < j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for c in remaining:
                a[i][c] += a[j][c]
            for r in remaining:
                a[r][i] += a[r][j]
            p = i

        pivot = a[p][p]
        if pivot > 0:
            pos += 1
        else:
            neg += 1
        remaining.remove(p)

        # Schur complement on the remaining block
        for i in remaining:
            if a[i][p]:
                f = a[i][p] / pivot
                for j in remaining:
                    if a[p][j]:
                        a[i][j] -= f * a[p][j]

    return pos, neg, n - pos - neg


# ---------------------------------------------------------------------------
# Eigenspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenSplit:
    """Kernels of (op - lambda I) for the requested eigenvalues"""

    eigenvalues: Tuple[Fraction, ...]
    spaces: Tuple[Tuple[Vector, ...], ...]
    residual_dim: int
    ambient_dim: int = 0
    independent: bool = True

    @property
    def semisimple(self):
        return self.residual_dim == 0 and self.independent

    @property
    def dims(self):
        return tuple(len(s) for s in self.spaces)

    def space(self, eigenvalue):
        return self.spaces[self.eigenvalues.index(Fraction(eigenvalue))]


def eigenspace_split(op: ExactMatrix, eigenvalues: Sequence, strict=False) -> EigenSplit:
    """
    Split Q^n into eigenspaces of `op` for the candidate eigenvalues

    The returned split carries the dimension of whatever the eigenspaces fail to
    cover, so a non-semisimple operator or a missing eigenvalue shows up as a
    nonzero residual.

    Args:
        op: Square rational matrix
        eigenvalues: Candidate eigenvalues supplied by the caller
        strict (bool): Raise instead of returning a nonzero residual

    Returns:
        EigenSplit: Spaces in the order of `eigenvalues`

    Raises:
        DecompositionError: In strict mode, when the split does not fill the space
    """
    _require_rational(op)
    if not op.is_square():
        raise DomainError("Eigenspace split of a non-square matrix")
    n = op.nrows
    values = tuple(Fraction(v) for v in eigenvalues)
    if len(set(values)) != len(values):
        raise DomainError("Candidate eigenvalues must be distinct")

    spaces = []
    for lam in values:
        shifted = op - ExactMatrix.identity(n).scale(lam)
        spaces.append(tuple(kernel(shifted)))

    everything = [v for space in spaces for v in space]
    covered = len(span_basis(everything, n))
    independent = covered == len(everything)
    split = EigenSplit(values, tuple(spaces), n - covered, n, independent)

    if not split.semisimple:
        logger.debug(f"Eigenspace split leaves residual of dimension {split.residual_dim}")
        if strict:
            raise DecompositionError(
                f"Operator is not semisimple with eigenvalues {[str(v) for v in values]}: "
                f"residual dimension {split.residual_dim}"
            )
    return split
