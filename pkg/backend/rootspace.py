"""
LieVerify Backend - Root Space Module
Cartan involutions, trace forms and restricted root-space decompositions of
the rank-one families, the sl2-type identity behind the subalgebra trick,
Meataxe irreducibility checks and the diagonal profile of the Cartan flow
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Poly, QQ, Rational, symbols

from .config import get_config
from .errors import ConstructionError, ContractViolation, DecompositionError, DomainError
from .exactmath import (
    EchelonBasis,
    ExactMatrix,
    Scalar,
    SymmetricForm,
    Vector,
    characteristic_polynomial,
    eigenspace_split,
    kernel,
    polynomial_at,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
)
from .liealg import LieAlgebra, LinearMap, Subspace, bracket_defects, bracket_space
from .utils import format_fraction, random_fraction


logger = logging.getLogger(__name__)

# alpha(A) = 1 puts every restricted root value in this list
ROOT_VALUES = (-2, -1, 0, 1, 2)

IRREDUCIBLE = "irreducible"
REDUCIBLE = "reducible"
INCONCLUSIVE = "inconclusive"

_X = symbols("x")


def _layout(g):
    layout = g.meta.get("layout")
    if layout is None:
        raise DomainError(f"{g.name} is not a rank-one family with a root layout")
    return layout


# ---------------------------------------------------------------------------
# Cartan involution
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CartanData:
    """theta: X -> -X*, the split Cartan subspace a = span(A) and alpha(A) = 1"""

    algebra: LieAlgebra
    theta: LinearMap
    cartan_subspace: Subspace
    generator: int
    normalization: Fraction = Fraction(1)

    @property
    def generator_vector(self) -> Vector:
        return self.algebra.basis_vector(self.generator)

    def is_involution(self) -> bool:
        g = self.algebra
        return all(self.theta(self.theta(g.basis_vector(i))) == g.basis_vector(i) for i in range(g.dim))

    def is_automorphism(self) -> bool:
        return not bracket_defects(self.theta, limit=1)

    def to_dict(self):
        return {
            "algebra": self.algebra.name,
            "generator": self.algebra.labels[self.generator],
            "alpha_of_generator": format_fraction(self.normalization),
            "theta_involution": self.is_involution(),
            "theta_automorphism": self.is_automorphism(),
        }


def cartan_data(g: LieAlgebra, generator="A") -> CartanData:
    """
    Cartan involution and split Cartan subspace of a realized algebra

    Args:
        g: Algebra with a matrix realization closed under X -> -X*
        generator (str): Label of the diagonal R-split generator

    Returns:
        CartanData: theta as a linear map on g

    Raises:
        DomainError: When g has no realization
        ConstructionError: When -X* leaves the algebra for some basis matrix
        ContractViolation: When alpha(A) != 1 on the rank-one layout
    """
    if g.realization is None:
        raise DomainError(f"{g.name} has no matrix realization")
    images = []
    for i, matrix in enumerate(g.realization):
        coords = g.coordinates(-matrix.conjugate_transpose())
        if coords is None:
            raise ConstructionError(f"{g.name}: theta({g.labels[i]}) is not in the algebra")
        images.append(coords)
    theta = LinearMap.from_images(g, g, images)
    index = g.index(generator)

    layout = g.meta.get("layout")
    if layout is not None and layout.alpha:
        x = g.basis_vector(layout.alpha[0])
        if g.bracket(g.basis_vector(index), x) != x:
            raise ContractViolation(f"{g.name}: generator {generator} is not normalized by alpha(A) = 1")

    data = CartanData(g, theta, g.coordinate_subspace([generator]), index)
    logger.debug(f"Cartan data for {g.name}: generator {generator}")
    return data


# ---------------------------------------------------------------------------
# Trace form
# ---------------------------------------------------------------------------

def _real_entries(matrix):
    out = {}
    for (i, j), v in matrix.nonzero_entries().items():
        parts = v.coeffs if isinstance(v, Scalar) else (v,)
        for c, a in enumerate(parts):
            if a:
                out[(i, j, c)] = a
    return out


@dataclass(frozen=True)
class TraceForm:
    """B_theta(X, Y) = Re Tr(X theta(Y)) on the algebra basis"""

    algebra: LieAlgebra
    form: SymmetricForm

    @property
    def gram(self) -> ExactMatrix:
        return self.form.gram

    def value(self, x, y) -> Fraction:
        return self.form.value(x, y)

    def signature(self):
        return self.form.signature()

    @property
    def negative_definite(self):
        return self.signature() == (0, self.algebra.dim, 0)


@lru_cache(maxsize=None)
def trace_form(g: LieAlgebra) -> TraceForm:
    """
    Gram matrix of B_theta in the realization used for the bracket

    With theta(Y) = -Y*, Re Tr(X theta(Y)) is minus the real inner product of
    the entry components of X and Y, which is what is summed here.
    """
    if g.realization is None:
        raise DomainError(f"{g.name} has no matrix realization")
    entries = [_real_entries(m) for m in g.realization]
    gram = [[Fraction(0)] * g.dim for _ in range(g.dim)]
    for i in range(g.dim):
        for j in range(i, g.dim):
            small, large = (entries[i], entries[j]) if len(entries[i]) <= len(entries[j]) else (entries[j], entries[i])
            value = -sum((a * large[key] for key, a in small.items() if key in large), Fraction(0))
            gram[i][j] = gram[j][i] = value
    return TraceForm(g, SymmetricForm(ExactMatrix(gram, ncols=g.dim)))


def trace_pairing(g: LieAlgebra, x, y) -> Fraction:
    """Re Tr(X theta(Y)) computed directly from the matrices"""
    mx, my = g.to_matrix(x), g.to_matrix(y)
    return (mx @ -my.conjugate_transpose()).real_trace()


# ---------------------------------------------------------------------------
# Root-space decomposition
# ---------------------------------------------------------------------------

def expected_root_dims(g: LieAlgebra) -> Optional[Dict[int, int]]:
    """Closed-form root-space dimensions of o(1,k), su(1,k) and sp(1,k)"""
    family = g.meta.get("family")
    layout = g.meta.get("layout")
    if layout is None:
        return None
    r = layout.k - 1
    if family == "o1k":
        dims = {-1: r, 0: 1 + r * (r - 1) // 2, 1: r}
    elif family == "su1k":
        dims = {-2: 1, -1: 2 * r, 0: 1 + r * r, 1: 2 * r, 2: 1}
    elif family == "sp1k":
        dims = {-2: 3, -1: 4 * r, 0: 4 + r * (2 * r + 1), 1: 4 * r, 2: 3}
    else:
        return None
    return {root: d for root, d in dims.items() if d}


@dataclass(frozen=True)
class RootDecomposition:
    """Eigenspaces h_beta of ad(A) for integer root values beta"""

    algebra: LieAlgebra
    spaces: Dict[int, Subspace]
    grading_defects: Tuple[Tuple[int, int], ...]
    expected_dims: Optional[Dict[int, int]] = None

    @property
    def roots(self) -> Tuple[int, ...]:
        return tuple(sorted(r for r, s in self.spaces.items() if s.dim))

    @property
    def zero_space(self) -> Subspace:
        return self.space(0)

    def space(self, root) -> Subspace:
        s = self.spaces.get(root)
        return s if s is not None else self.algebra.zero_subspace()

    @property
    def dims(self) -> Dict[int, int]:
        return {r: self.spaces[r].dim for r in self.roots}

    @property
    def is_direct_sum(self):
        return sum(self.dims.values()) == self.algebra.dim

    @property
    def grading_ok(self):
        return not self.grading_defects

    @property
    def dims_match(self):
        return self.expected_dims is None or self.dims == self.expected_dims

    @property
    def passed(self):
        return self.is_direct_sum and self.grading_ok and self.dims_match

    def to_dict(self):
        return {
            "algebra": self.algebra.name,
            "roots": list(self.roots),
            "dims": {str(r): d for r, d in self.dims.items()},
            "expected_dims": {str(r): d for r, d in self.expected_dims.items()} if self.expected_dims else None,
            "direct_sum": self.is_direct_sum,
            "grading_defects": [list(p) for p in self.grading_defects],
        }


def _grading_defects(g, spaces):
    roots = sorted(r for r, s in spaces.items() if s.dim)
    defects = []
    for beta in roots:
        for gamma in roots:
            if gamma < beta:
                continue
            target = spaces.get(beta + gamma)
            if target is None:
                target = g.zero_subspace()
            if bracket_space(spaces[beta], spaces[gamma], within=target) is None:
                defects.append((beta, gamma))
    return tuple(defects)


def decompose(g: LieAlgebra, cd: CartanData) -> RootDecomposition:
    """
    Split g into eigenspaces of ad(A) and check the grading

    Raises:
        DecompositionError: When ad(A) is not diagonalizable with integer eigenvalues
    """
    split = eigenspace_split(g.ad(cd.generator_vector), ROOT_VALUES)
    if not split.semisimple:
        raise DecompositionError(
            f"{g.name}: ad(A) leaves a residual of dimension {split.residual_dim} "
            f"outside the eigenvalues {list(ROOT_VALUES)}"
        )
    spaces = {int(lam): Subspace.from_vectors(g, split.space(lam)) for lam in split.eigenvalues}
    decomposition = RootDecomposition(g, spaces, _grading_defects(g, spaces), expected_root_dims(g))
    if not decomposition.grading_ok:
        logger.error(f"{g.name}: grading fails on root pairs {list(decomposition.grading_defects)}")
    if not decomposition.dims_match:
        logger.error(f"{g.name}: root dimensions {decomposition.dims} differ from {decomposition.expected_dims}")
    logger.debug(f"Decomposed {g.name}: {decomposition.dims}")
    return decomposition


def module_action(g: LieAlgebra, acting: Subspace, space: Subspace) -> List[ExactMatrix]:
    """
    Matrices of ad(a) restricted to `space`, one per basis vector a of `acting`

    Raises:
        DomainError: When `space` is not ad(acting)-invariant
    """
    matrices = []
    for a in acting.basis:
        columns = []
        for v in space.basis:
            coords = space.coordinates(g.bracket(a, v))
            if coords is None:
                raise DomainError(f"{g.name}: subspace is not invariant under the acting elements")
            columns.append(coords)
        matrices.append(ExactMatrix.from_columns(columns, nrows=space.dim))
    return matrices


# ---------------------------------------------------------------------------
# Bracket relations of the subalgebra trick
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelationCheck:
    relation: str
    holds: bool

    def to_dict(self):
        return {"relation": self.relation, "holds": self.holds}


_RELATIONS = {
    "o1k": ((-1, 1, 0), (0, 1, 1)),
    "su1k": ((-1, -1, -2), (1, 1, 2), (-1, 1, 0), (0, 1, 1), (-2, 1, -1)),
}


def _space_name(root):
    return {0: "h_0", 1: "h_a", -1: "h_-a", 2: "h_2a", -2: "h_-2a"}[root]


def bracket_relations(decomposition: RootDecomposition) -> List[RelationCheck]:
    """Equalities [h_beta, h_gamma] = h_delta used to climb from h_-a to everything"""
    g = decomposition.algebra
    family = g.meta.get("family")
    if family not in _RELATIONS:
        raise DomainError(f"No bracket relations recorded for {family}")
    if decomposition.space(1).dim == 0:
        raise DomainError(f"{g.name}: h_alpha is trivial")
    checks = []
    for beta, gamma, delta in _RELATIONS[family]:
        spanned = bracket_space(decomposition.space(beta), decomposition.space(gamma))
        holds = spanned.same_as(decomposition.space(delta))
        checks.append(RelationCheck(f"[{_space_name(beta)}, {_space_name(gamma)}] = {_space_name(delta)}", holds))
    return checks


def normalized_closure(g: LieAlgebra, seeds, normalizer: Subspace) -> Subspace:
    """Smallest subalgebra containing `seeds` and normalized by `normalizer`"""
    echelon = EchelonBasis(g.dim, seeds)
    queue = list(echelon.basis)
    done = []
    while queue:
        v = queue.pop(0)
        candidates = [g.bracket(x, v) for x in normalizer.basis]
        candidates += [g.bracket(v, w) for w in done + [v]]
        for u in candidates:
            if not vec_is_zero(u) and echelon.add(u):
                queue.append(echelon.basis[-1])
        done.append(v)
    return Subspace(g, tuple(echelon.basis))


def generates_everything(decomposition: RootDecomposition, seed: Vector) -> bool:
    """A subalgebra normalized by h_alpha and containing `seed` in h_-alpha is all of g"""
    g = decomposition.algebra
    if vec_is_zero(seed) or not decomposition.space(-1).contains(seed):
        raise DomainError("Seed must be a nonzero element of h_-alpha")
    closure = normalized_closure(g, [seed], decomposition.space(1))
    return closure.dim == g.dim


# ---------------------------------------------------------------------------
# sl2-type identity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    defect: Vector

    def __bool__(self):
        return self.holds

    def to_dict(self):
        return {"holds": self.holds, "defect": [format_fraction(c) for c in self.defect]}


def complex_structure(g: LieAlgebra) -> Optional[LinearMap]:
    """
    Multiplication by i on h_-alpha of su(1,k), zero elsewhere

    Returns None for o(1,k), where h_-alpha carries no complex structure.

    Raises:
        DomainError: For sp(1,k) and non rank-one algebras
    """
    layout = _layout(g)
    if layout.kind == "rational":
        return None
    if layout.kind != "gaussian":
        raise DomainError(f"{g.name}: the complex-structure correction is defined for su(1,k) only")
    position = {mu: idx for idx, mu in zip(layout.neg_alpha, layout.neg_alpha_units)}
    images = [g.zero() for _ in range(g.dim)]
    for idx, (m, u) in zip(layout.neg_alpha, layout.neg_alpha_units):
        if u == 0:
            images[idx] = g.basis_vector(position[(m, 1)])
        else:
            images[idx] = vec_scale(-1, g.basis_vector(position[(m, 0)]))
    return LinearMap.from_images(g, g, images)


def verify_sl2_identity(g: LieAlgebra, cd: CartanData, x, y, corrected=False) -> IdentityCheck:
    """
    Check [[Y, theta X], Y] = B(X, Y) Y - 1/2 B(Y, Y) X for X, Y in h_-alpha

    Args:
        g: Rank-one algebra
        cd: Its Cartan data
        x, y: Coordinate vectors in h_-alpha
        corrected (bool): Also subtract B(X, JY) JY, J the complex structure
            of su(1,k); a no-op on o(1,k)

    Returns:
        IdentityCheck: holds flag and the defect vector lhs - rhs

    Raises:
        DomainError: When X or Y lies outside h_-alpha
    """
    layout = _layout(g)
    neg = g.coordinate_subspace([g.labels[i] for i in layout.neg_alpha])
    if not (neg.contains(x) and neg.contains(y)):
        raise DomainError("sl2 identity arguments must lie in h_-alpha")

    my = g.to_matrix(y)
    theta_x = g.to_matrix(cd.theta(x))
    lhs = g.coordinates(my.commutator(theta_x).commutator(my))
    if lhs is None:
        raise ConstructionError(f"{g.name}: [[Y, theta X], Y] left the algebra")

    form = trace_form(g)
    rhs = vec_sub(vec_scale(form.value(x, y), y), vec_scale(Fraction(1, 2) * form.value(y, y), x))
    if corrected:
        j = complex_structure(g)
        if j is not None:
            jy = j(y)
            rhs = vec_sub(rhs, vec_scale(form.value(x, jy), jy))
    defect = vec_sub(lhs, rhs)
    return IdentityCheck(vec_is_zero(defect), defect)


@dataclass(frozen=True)
class Sl2Certificate:
    """Identity checked on a spanning set of X and the polarization points of Y"""

    algebra: str
    corrected: bool
    spanning_dim: int
    evaluations: int
    failure_count: int
    failures: Tuple[Tuple[str, str], ...]

    @property
    def holds(self):
        return self.failure_count == 0

    def to_dict(self):
        return {
            "algebra": self.algebra,
            "corrected": self.corrected,
            "spanning_dim": self.spanning_dim,
            "evaluations": self.evaluations,
            "failure_count": self.failure_count,
            "failures": [list(f) for f in self.failures],
        }


def real_slice(g: LieAlgebra) -> Tuple[int, ...]:
    """Indices of the h_-alpha generators with a real coefficient"""
    layout = _layout(g)
    return tuple(idx for idx, (_, u) in zip(layout.neg_alpha, layout.neg_alpha_units) if u == 0)


def sl2_identity_certificate(g: LieAlgebra, cd: CartanData = None, indices=None,
                             corrected=False, max_failures=10) -> Sl2Certificate:
    """
    Certify the sl2 identity on span(indices) (default: all of h_-alpha)

    The identity is linear in X and quadratic in Y, so basis vectors for X and
    basis vectors plus pairwise sums for Y determine it everywhere.
    """
    cd = cd or cartan_data(g)
    layout = _layout(g)
    indices = tuple(layout.neg_alpha if indices is None else indices)
    basis = [g.basis_vector(i) for i in indices]
    ys = [(g.labels[i], v) for i, v in zip(indices, basis)]
    for (a, va), (b, vb) in combinations(zip(indices, basis), 2):
        ys.append((f"{g.labels[a]}+{g.labels[b]}", vec_add(va, vb)))

    failures = []
    count = 0
    evaluations = 0
    for i, x in zip(indices, basis):
        for label, y in ys:
            evaluations += 1
            if not verify_sl2_identity(g, cd, x, y, corrected=corrected):
                count += 1
                if len(failures) < max_failures:
                    failures.append((g.labels[i], label))
    certificate = Sl2Certificate(g.name, corrected, len(indices), evaluations, count, tuple(failures))
    logger.debug(f"sl2 identity on {g.name} (corrected={corrected}): {count}/{evaluations} failures")
    return certificate


# ---------------------------------------------------------------------------
# Meataxe irreducibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IrreducibilityResult:
    """
    Outcome of the Meataxe test on a module given by generator matrices

    A reducible result carries a proper invariant subspace; an irreducible one
    carries the Norton witness (factor of a characteristic polynomial whose
    evaluation has nullity equal to its degree). The commutant dimension is
    always reported.
    """

    status: str
    dim: int
    commutant_dim: int
    invariant_subspace: Tuple[Vector, ...] = ()
    witness: Optional[Dict] = None
    trials: int = 0

    def __bool__(self):
        return self.status == IRREDUCIBLE

    @property
    def absolutely_irreducible(self):
        return self.status == IRREDUCIBLE and self.commutant_dim == 1

    def to_dict(self):
        return {
            "status": self.status,
            "dim": self.dim,
            "commutant_dim": self.commutant_dim,
            "invariant_subspace": [[format_fraction(c) for c in v] for v in self.invariant_subspace],
            "witness": self.witness,
            "trials": self.trials,
        }


def spin(vectors, generators: Sequence[ExactMatrix]) -> List[Vector]:
    """Basis of the smallest generator-invariant subspace containing `vectors`"""
    n = generators[0].nrows
    echelon = EchelonBasis(n)
    queue = [v for v in vectors if echelon.add(v)]
    while queue:
        v = queue.pop()
        for m in generators:
            w = m.apply(v)
            if echelon.add(w):
                queue.append(w)
    return list(echelon.basis)


def commutant_dim(generators: Sequence[ExactMatrix]) -> int:
    """Dimension of {C : GC = CG for every generator G}"""
    n = generators[0].nrows
    rows = []
    for m in generators:
        for i in range(n):
            for j in range(n):
                # (GC - CG)_{ij}, unknown C_{rs} at position r * n + s
                row = [Fraction(0)] * (n * n)
                for r in range(n):
                    row[r * n + j] += m[i, r]
                    row[i * n + r] -= m[r, j]
                if any(row):
                    rows.append(row)
    if not rows:
        return n * n
    return len(kernel(ExactMatrix(rows, ncols=n * n)))


def _irreducible_factors(matrix):
    coeffs = characteristic_polynomial(matrix)
    poly = Poly([Rational(c.numerator, c.denominator) for c in coeffs], _X, domain=QQ)
    _, factors = poly.factor_list()
    out = []
    for factor, _ in factors:
        values = [Fraction(int(c.p), int(c.q)) for c in factor.all_coeffs()]
        out.append(tuple(v / values[0] for v in values))
    return sorted(out, key=lambda f: (len(f), f))


def _random_element(generators, rng, bound):
    n = generators[0].nrows
    element = ExactMatrix.identity(n).scale(random_fraction(rng, bound))
    for m in generators:
        element = element + m.scale(random_fraction(rng, bound))
    for _ in range(2):
        a = generators[rng.randrange(len(generators))]
        b = generators[rng.randrange(len(generators))]
        element = element + (a @ b).scale(random_fraction(rng, bound))
    return element


def irreducible(rep: Sequence[ExactMatrix], rng=None, retries=None, config=None) -> IrreducibilityResult:
    """
    Meataxe test (Norton's criterion) over Q

    Each trial draws a random element M of the enveloping algebra and, for each
    irreducible factor p of its characteristic polynomial, spins a vector of
    ker p(M). A proper spin is a reducibility certificate; when the nullity of
    p(M) equals deg p, full spins of that vector and of a vector of
    ker p(M)^T prove irreducibility.

    Args:
        rep: Square rational matrices of equal size (the acting generators)
        rng: random.Random owned by the caller; seeded from config when None
        retries (int): Trials before returning "inconclusive"
        config: Configuration object

    Returns:
        IrreducibilityResult: Status, commutant dimension and certificate
    """
    config = config or get_config()
    generators = list(rep)
    if not generators:
        raise DomainError("Module needs at least one acting matrix")
    n = generators[0].nrows
    if n == 0 or any(m.shape != (n, n) or m.kind != "rational" for m in generators):
        raise DomainError("Module generators must be nonempty square rational matrices of one size")
    retries = config.MEATAXE_RETRIES if retries is None else retries
    rng = rng or random.Random(config.DEFAULT_SEED)
    c_dim = commutant_dim(generators)

    if n == 1:
        return IrreducibilityResult(IRREDUCIBLE, 1, c_dim, witness={"reason": "dimension one"})

    transposed = [m.transpose() for m in generators]
    for trial in range(1, retries + 1):
        element = _random_element(generators, rng, config.RANDOM_ENTRY_BOUND)
        for factor in _irreducible_factors(element):
            evaluated = polynomial_at(factor, element)
            null = kernel(evaluated)
            sub = spin(null[:1], generators)
            if len(sub) < n:
                logger.debug(f"Meataxe: invariant subspace of dimension {len(sub)} at trial {trial}")
                return IrreducibilityResult(REDUCIBLE, n, c_dim, tuple(sub), trials=trial)
            if len(null) != len(factor) - 1:
                continue
            dual = spin(kernel(evaluated.transpose())[:1], transposed)
            if len(dual) < n:
                annihilator = kernel(ExactMatrix(dual, ncols=n))
                return IrreducibilityResult(REDUCIBLE, n, c_dim, tuple(annihilator), trials=trial)
            witness = {"factor_degree": len(factor) - 1,
                       "factor": [format_fraction(c) for c in factor],
                       "nullity": len(null)}
            return IrreducibilityResult(IRREDUCIBLE, n, c_dim, witness=witness, trials=trial)

    logger.warning(f"Meataxe inconclusive after {retries} trials (dim {n})")
    return IrreducibilityResult(INCONCLUSIVE, n, c_dim, trials=retries)


def is_invariant(rep: Sequence[ExactMatrix], vectors) -> bool:
    """True when span(vectors) is mapped into itself by every generator"""
    if not vectors:
        return True
    echelon = EchelonBasis(len(vectors[0]), vectors)
    return all(echelon.contains(m.apply(v)) for m in rep for v in vectors)


# ---------------------------------------------------------------------------
# Diagonal profile of the Cartan flow
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiagonalProfile:
    """
    Eigenspace dimensions of ad(A) keyed by eigenvalue

    ad(A) acts on h_beta by beta, so Ad(exp(sA)) acts by x^beta with x = e^s;
    ad(N) for N in the nilradical is nilpotent of bounded index
    """

    eigenspace_dims: Dict[int, int]
    scalar_action: bool
    nilpotency: Dict[str, Optional[int]]
    nilpotency_bound: int

    @property
    def passed(self):
        return self.scalar_action and all(
            idx is not None and idx <= self.nilpotency_bound for idx in self.nilpotency.values()
        )

    def to_dict(self):
        return {
            "eigenspace_dims": {str(r): d for r, d in self.eigenspace_dims.items()},
            "flow_blocks": {str(r): f"x^{r}" for r in self.eigenspace_dims},
            "scalar_action": self.scalar_action,
            "nilpotency": dict(self.nilpotency),
            "nilpotency_bound": self.nilpotency_bound,
        }


def ad_diagonal_profile(g: LieAlgebra, cd: CartanData, generators=None,
                        decomposition: RootDecomposition = None) -> DiagonalProfile:
    """
    Eigenvalue table of ad(A) and nilpotency of ad on the positive generators

    Args:
        generators: Labels or vectors in a + h_alpha + h_2alpha; defaults to
            the h_alpha and h_2alpha basis

    Raises:
        DomainError: When a generator is neither in a nor in h_alpha + h_2alpha
    """
    decomposition = decomposition or decompose(g, cd)
    a_vec = cd.generator_vector
    scalar = True
    for root in decomposition.roots:
        for v in decomposition.space(root).basis:
            if g.bracket(a_vec, v) != vec_scale(root, v):
                scalar = False

    positive = decomposition.space(1) + decomposition.space(2)
    if generators is None:
        generators = [g.labels[i] for i in _layout(g).alpha + _layout(g).two_alpha]
    nilpotency = {}
    for item in generators:
        vector = g.basis_vector(item) if isinstance(item, str) else tuple(Fraction(c) for c in item)
        name = item if isinstance(item, str) else "[" + ", ".join(format_fraction(c) for c in vector) + "]"
        if cd.cartan_subspace.contains(vector):
            continue
        if not positive.contains(vector):
            raise DomainError(f"Generator {name} is outside a + h_alpha + h_2alpha")
        nilpotency[name] = g.ad(vector).nilpotency_index()

    roots = decomposition.roots
    bound = roots[-1] - roots[0] + 1
    return DiagonalProfile(decomposition.dims, scalar, nilpotency, bound)
