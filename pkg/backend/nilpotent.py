"""
LieVerify Backend - Nilpotent Module
Constructive Engel reductions: common annihilated vectors, isotropic fixed
vectors of unipotent subalgebras of o(1,n-1) and conjugation of unipotent
subalgebras of the parabolic into u_max
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .config import get_config
from .errors import ConstructionError, ContractViolation, DomainError
from .exactmath import (
    EchelonBasis,
    ExactMatrix,
    SymmetricForm,
    Vector,
    inverse,
    kernel,
    lin_comb,
    unit_vector,
    vec_is_zero,
)
from .families import lorentz_gram, make_algebra, parabolic_labels, umax_labels
from .utils import format_fraction, progress, random_fraction


logger = logging.getLogger(__name__)


def _flatten(matrix: ExactMatrix) -> Vector:
    return tuple(v for row in matrix.rows for v in row)


def _unflatten(vector, size) -> ExactMatrix:
    return ExactMatrix([vector[r * size:(r + 1) * size] for r in range(size)], ncols=size)


def _normalized(vector) -> Vector:
    lead = next(c for c in vector if c)
    return tuple(c / lead for c in vector)


def lie_span(matrices: Sequence[ExactMatrix], size) -> List[ExactMatrix]:
    """Basis of the matrix Lie algebra generated by `matrices`"""
    echelon = EchelonBasis(size * size)
    basis: List[ExactMatrix] = []
    queue = list(matrices)
    while queue:
        x = queue.pop(0)
        if x.is_zero() or not echelon.add(_flatten(x)):
            continue
        for y in basis:
            queue.append(x.commutator(y))
        basis.append(x)
    return basis


def central_elements(basis: Sequence[ExactMatrix]) -> List[ExactMatrix]:
    """Basis of the center of the matrix Lie algebra spanned by `basis`"""
    if not basis:
        return []
    columns = []
    for yi in basis:
        column = []
        for yj in basis:
            column.extend(_flatten(yi.commutator(yj)))
        columns.append(column)
    system = ExactMatrix.from_columns(columns, nrows=len(columns[0]))
    size = basis[0].nrows
    out = []
    for coeffs in kernel(system):
        z = ExactMatrix.zeros(size, size)
        for c, y in zip(coeffs, basis):
            if c:
                z = z + y.scale(c)
        out.append(z)
    return out


def _restrict(matrix: ExactMatrix, vectors) -> ExactMatrix:
    """Matrix of `matrix` on the invariant subspace spanned by `vectors`"""
    echelon = EchelonBasis(matrix.nrows, vectors)
    columns = []
    for v in vectors:
        coords = echelon.express(matrix.apply(v))
        if coords is None:
            raise ContractViolation("Subspace is not invariant under the algebra")
        columns.append(coords)
    return ExactMatrix.from_columns(columns, nrows=len(vectors))


# ---------------------------------------------------------------------------
# Nilpotent algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NilpotentAlgebra:
    """
    Matrix Lie algebra generated by nilpotent matrices

    With a form, every generator must also be skew for it.
    """

    generators: Tuple[ExactMatrix, ...]
    size: int
    form: Optional[SymmetricForm] = None

    def __post_init__(self):
        generators = tuple(self.generators)
        object.__setattr__(self, "generators", generators)
        for i, x in enumerate(generators):
            if x.kind != "rational" or x.shape != (self.size, self.size):
                raise DomainError(f"Generator {i} is not a rational {self.size}x{self.size} matrix")
            if x.nilpotency_index() is None:
                raise ContractViolation(f"Generator {i} is not nilpotent: its power {self.size} is nonzero")
        if self.form is not None:
            if self.form.dim != self.size:
                raise DomainError("Form and generators have different sizes")
            gram = self.form.gram
            for i, x in enumerate(generators):
                if not (x.transpose() @ gram + gram @ x).is_zero():
                    raise ContractViolation(f"Generator {i} is not skew for the form")

    @classmethod
    def of(cls, generators, form=None):
        generators = list(generators)
        if form is not None and not isinstance(form, SymmetricForm):
            form = SymmetricForm(form)
        if generators:
            size = generators[0].nrows
        elif form is not None:
            size = form.dim
        else:
            raise DomainError("Cannot infer the size of an empty algebra without a form")
        return cls(tuple(generators), size, form)

    def closure(self) -> List[ExactMatrix]:
        return lie_span(self.generators, self.size)

    def annihilates(self, vector) -> bool:
        return all(vec_is_zero(x.apply(vector)) for x in self.generators)


@dataclass(frozen=True)
class EngelResult:
    """Vector produced by an Engel reduction and the dimension chain it went through"""

    vector: Vector
    steps: int
    dims: Tuple[int, ...]

    def to_dict(self):
        return {"vector": [format_fraction(c) for c in self.vector],
                "steps": self.steps, "dims": list(self.dims)}


def _engel(matrices, size, start=None) -> Tuple[Vector, int, List[int]]:
    """
    Engel reduction on an invariant subspace

    Each step restricts the algebra to the current subspace, takes the first
    central element of the restriction and passes to its kernel.
    """
    current = list(start) if start is not None else [unit_vector(size, i) for i in range(size)]
    dims = [len(current)]
    steps = 0
    while True:
        restricted = [_restrict(x, current) for x in matrices]
        algebra = lie_span(restricted, len(current))
        if not algebra:
            return current[0], steps, dims
        centre = central_elements(algebra)
        if not centre:
            raise ContractViolation("Restricted algebra has trivial center; it is not nilpotent")
        directions = kernel(centre[0])
        if not directions:
            raise ContractViolation("Central element is invertible; the algebra is not nilpotent")
        current = [lin_comb(c, current, size) for c in directions]
        steps += 1
        dims.append(len(current))
        if steps > size:
            raise ContractViolation("Engel reduction did not terminate")


def engel_reduction(alg: NilpotentAlgebra) -> EngelResult:
    """
    Common annihilated vector with its reduction certificate

    Raises:
        DomainError: For a zero-dimensional ambient space
        ContractViolation: When the algebra turns out not to be nilpotent
    """
    if alg.size == 0:
        raise DomainError("Engel reduction needs a nonzero ambient space")
    vector, steps, dims = _engel(alg.generators, alg.size)
    vector = _normalized(vector)
    if not alg.annihilates(vector):
        raise ConstructionError("Engel reduction returned a vector that is not annihilated")
    return EngelResult(vector, steps, tuple(dims))


def common_annihilated_vector(alg: NilpotentAlgebra) -> Vector:
    """Nonzero v with X v = 0 for every generator X"""
    return engel_reduction(alg).vector


def _first_null_basis_vector(form: SymmetricForm) -> Vector:
    for i in range(form.dim):
        if form.gram[i, i] == 0:
            return unit_vector(form.dim, i)
    raise DomainError("The form has no null standard basis vector")


def isotropic_reduction(alg: NilpotentAlgebra) -> EngelResult:
    """
    Isotropic fixed vector of a unipotent subalgebra of o(q)

    E is the common kernel of the center of the algebra; the algebra preserves
    E and its orthogonal, and the Engel reduction on the orthogonal yields a
    vector of E inside its own orthogonal.

    Raises:
        DomainError: When the algebra carries no form
        ConstructionError: When the vector found fails its defining equations
    """
    form = alg.form
    if form is None:
        raise DomainError("An isotropic fixed vector needs the ambient form")
    algebra = alg.closure()
    if not algebra:
        # u' = 0: any null vector is fixed
        return EngelResult(_first_null_basis_vector(form), 0, (alg.size,))

    centre = central_elements(algebra)
    if not centre:
        raise ContractViolation("The algebra has trivial center; it is not nilpotent")
    stacked = ExactMatrix([row for z in centre for row in z.rows], ncols=alg.size)
    fixed = kernel(stacked)
    if fixed:
        orthogonal = kernel(ExactMatrix([form.gram.apply(e) for e in fixed], ncols=alg.size))
    else:
        orthogonal = [unit_vector(alg.size, i) for i in range(alg.size)]
    if not orthogonal:
        raise ConstructionError("Orthogonal of the common kernel is zero")

    vector, steps, dims = _engel(alg.generators, alg.size, start=orthogonal)
    vector = _normalized(vector)
    if not alg.annihilates(vector) or form.value(vector, vector) != 0:
        raise ConstructionError("No isotropic fixed vector: the reduction produced " + str(vector))
    return EngelResult(vector, steps + 1, (alg.size,) + tuple(dims))


def isotropic_fixed_vector(alg: NilpotentAlgebra) -> Vector:
    """Nonzero v with q(v) = 0 and X v = 0 for every generator X"""
    return isotropic_reduction(alg).vector


# ---------------------------------------------------------------------------
# Conjugation into u_max
# ---------------------------------------------------------------------------

def reflection(gram: ExactMatrix, r) -> ExactMatrix:
    """Orthogonal reflection x -> x - 2 B(x,r)/B(r,r) r for a non-null r"""
    form = SymmetricForm(gram)
    norm = form.value(r, r)
    if norm == 0:
        raise DomainError("Cannot reflect in a null vector")
    jr = gram.apply(r)
    size = gram.nrows
    entries = {}
    for i in range(size):
        for j in range(size):
            value = (1 if i == j else 0) - 2 * r[i] * jr[j] / norm
            if value:
                entries[(i, j)] = value
    return ExactMatrix.from_entries(size, size, entries)


def null_vector_transport(gram: ExactMatrix, w) -> ExactMatrix:
    """
    Orthogonal map sending e_0 to a multiple of the null vector w

    For B(e_0, w) != 0 the reflection in e_0 - w swaps them; otherwise w is
    already a multiple of e_0.
    """
    size = gram.nrows
    e0 = unit_vector(size, 0)
    form = SymmetricForm(gram)
    if form.value(e0, w) == 0:
        return ExactMatrix.identity(size)
    return reflection(gram, tuple(a - b for a, b in zip(e0, w)))


@dataclass(frozen=True)
class ConjugationResult:
    """Conjugator p = diag(1, g, 1) in P and whether Ad(p) u lies in u_max"""

    n: int
    conjugator: ExactMatrix
    images: Tuple[ExactMatrix, ...]
    inside: bool
    offending: Optional[Tuple[int, str, Fraction]]
    fixed_vector: Vector
    steps: int

    def __iter__(self):
        return iter((self.conjugator, self.inside))

    def to_dict(self):
        return {
            "n": self.n,
            "conjugator": [[format_fraction(v) for v in row] for row in self.conjugator.rows],
            "inside": self.inside,
            "offending": None if self.offending is None else {
                "generator": self.offending[0], "label": self.offending[1],
                "value": format_fraction(self.offending[2])},
            "fixed_vector": [format_fraction(c) for c in self.fixed_vector],
            "steps": self.steps,
        }


def conjugate_into_umax(u: NilpotentAlgebra) -> ConjugationResult:
    """
    Conjugate a unipotent subalgebra of p(2,n) into u_max(n) inside P

    The middle block of each generator lies in o(1,n-1); an isotropic fixed
    vector w of those blocks gives g in O(1,n-1) with g e_0 ~ w, and
    p = diag(1, g^-1, 1) is the conjugator.

    Raises:
        DomainError: When a generator is outside p(2,n)
    """
    size = u.size
    n = size - 2
    g = make_algebra("o2n", n=n)
    allowed = set(g.index(label) for label in parabolic_labels(n))
    for i, x in enumerate(u.generators):
        coords = g.coordinates(x)
        if coords is None or any(c and j not in allowed for j, c in enumerate(coords)):
            raise DomainError(f"Generator {i} is not in p(2,{n})")

    middle_gram = lorentz_gram(n)
    blocks = [ExactMatrix([row[1:n + 1] for row in x.rows[1:n + 1]], ncols=n) for x in u.generators]
    projected = NilpotentAlgebra(tuple(blocks), n, SymmetricForm(middle_gram))
    result = isotropic_reduction(projected)
    h = null_vector_transport(middle_gram, result.vector)
    one = ExactMatrix.identity(1)
    conjugator = ExactMatrix.block_diagonal(one, inverse(h), one)
    back = ExactMatrix.block_diagonal(one, h, one)

    target = set(g.index(label) for label in umax_labels(n))
    images = []
    offending = None
    for i, x in enumerate(u.generators):
        image = conjugator @ x @ back
        images.append(image)
        coords = g.coordinates(image)
        if coords is None:
            raise ConstructionError("Conjugated generator left o(2,n)")
        if offending is None:
            bad = next((j for j, c in enumerate(coords) if c and j not in target), None)
            if bad is not None:
                offending = (i, g.labels[bad], coords[bad])
    if offending is not None:
        logger.error(f"Conjugate of generator {offending[0]} has {offending[1]} = {offending[2]} outside u_max({n})")
    return ConjugationResult(n, conjugator, tuple(images), offending is None, offending,
                             result.vector, result.steps)


# ---------------------------------------------------------------------------
# Random trials
# ---------------------------------------------------------------------------

def random_orthogonal(rng, gram: ExactMatrix, reflections=2, bound=5) -> ExactMatrix:
    """Product of random reflections in non-null rational vectors"""
    size = gram.nrows
    form = SymmetricForm(gram)
    result = ExactMatrix.identity(size)
    made = 0
    while made < reflections:
        r = tuple(random_fraction(rng, bound) for _ in range(size))
        if form.value(r, r) == 0:
            continue
        result = result @ reflection(gram, r)
        made += 1
    return result


def _random_combinations(rng, matrices, count, bound):
    out = []
    for _ in range(count):
        acc = ExactMatrix.zeros(matrices[0].nrows, matrices[0].ncols)
        for x in matrices:
            c = random_fraction(rng, bound)
            if c:
                acc = acc + x.scale(c)
        out.append(acc)
    return out


def random_lorentz_unipotent(rng, k, generators=2, bound=5) -> NilpotentAlgebra:
    """Random Ad-conjugate of a subspace of the alpha root space of o(1,k)"""
    g = make_algebra("o1k", k=k)
    layout = g.meta["layout"]
    gram = lorentz_gram(k + 1)
    root_vectors = [g.realization[i] for i in layout.alpha]
    h = random_orthogonal(rng, gram, bound=bound)
    h_inv = inverse(h)
    picked = [h @ x @ h_inv for x in _random_combinations(rng, root_vectors, generators, bound)]
    return NilpotentAlgebra(tuple(picked), k + 1, SymmetricForm(gram))


def random_parabolic_unipotent(rng, n, generators=2, bound=5) -> NilpotentAlgebra:
    """Random conjugate of a subspace of u_max(n) by diag(1, g, 1), g in O(1,n-1)"""
    g = make_algebra("o2n", n=n)
    basis = [g.realization[g.index(label)] for label in umax_labels(n)]
    h = random_orthogonal(rng, lorentz_gram(n), bound=bound)
    one = ExactMatrix.identity(1)
    p = ExactMatrix.block_diagonal(one, h, one)
    p_inv = ExactMatrix.block_diagonal(one, inverse(h), one)
    picked = [p @ x @ p_inv for x in _random_combinations(rng, basis, generators, bound)]
    return NilpotentAlgebra(tuple(picked), n + 2)


@dataclass(frozen=True)
class EngelHarnessReport:
    n: int
    trials: int
    seed: int
    isotropic_passed: int
    conjugation_passed: int
    max_steps: int
    failures: Tuple[str, ...]

    @property
    def passed(self):
        return not self.failures and self.isotropic_passed == self.trials == self.conjugation_passed

    def to_dict(self):
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "isotropic_passed": self.isotropic_passed,
            "conjugation_passed": self.conjugation_passed,
            "max_steps": self.max_steps,
            "failures": list(self.failures),
        }


def engel_harness(n, trials=None, seed=None, config=None) -> EngelHarnessReport:
    """
    Random unipotent subalgebras of o(1,n-1) and p(2,n)

    Each trial checks an isotropic fixed vector in o(1,n-1) and a conjugation
    of a random conjugate of a subspace of u_max(n) back into u_max(n).
    """
    config = config or get_config()
    trials = config.ENGEL_TRIALS if trials is None else trials
    seed = config.DEFAULT_SEED if seed is None else seed
    if not isinstance(n, int) or n < 3:
        raise DomainError(f"Engel trials need n >= 3, got {n}")
    if trials < 0:
        raise DomainError(f"trials must be non-negative, got {trials}")
    rng = random.Random(seed)
    bound = config.RANDOM_ENTRY_BOUND
    isotropic_ok = conjugation_ok = 0
    max_steps = 0
    failures: List[str] = []
    for trial in progress(range(trials), f"engel n={n}", total=trials, config=config):
        count = rng.randint(1, 3)
        lorentz = random_lorentz_unipotent(rng, n - 1, count, bound)
        try:
            found = isotropic_reduction(lorentz)
            isotropic_ok += 1
            max_steps = max(max_steps, found.steps)
        except (ConstructionError, ContractViolation) as e:
            failures.append(f"trial {trial}: isotropic vector: {e}")

        parabolic_alg = random_parabolic_unipotent(rng, n, count, bound)
        try:
            conjugated = conjugate_into_umax(parabolic_alg)
            if conjugated.inside:
                conjugation_ok += 1
            else:
                failures.append(f"trial {trial}: conjugate has {conjugated.offending[1]} "
                                f"= {format_fraction(conjugated.offending[2])}")
            max_steps = max(max_steps, conjugated.steps)
        except (ConstructionError, ContractViolation) as e:
            failures.append(f"trial {trial}: conjugation: {e}")

    report = EngelHarnessReport(n, trials, seed, isotropic_ok, conjugation_ok, max_steps, tuple(failures))
    if failures:
        logger.error(f"Engel trials n={n}: {len(failures)} failures")
    else:
        logger.info(f"Engel trials n={n}: {trials} isotropic and conjugation checks passed")
    return report
