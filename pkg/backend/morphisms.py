"""
LieVerify Backend - Morphisms Module
Lie morphism checks and the obstruction showing that no subalgebra of u_max(n)
maps onto heisH(7)
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

import sympy

from .config import get_config
from .errors import ConstructionError, DomainError
from .exactmath import ExactMatrix
from .families import make_algebra, umax_semidirect
from .liealg import LieAlgebra, LinearMap, Subspace, bracket_defects, derived_algebra, subalgebra
from .utils import format_fraction, progress, random_fraction


logger = logging.getLogger(__name__)

GENERATORS = ("U", "U_i", "U_j", "U_k")
CENTER = ("Z_i", "Z_j", "Z_k")

# upper triangle of the heisH(7) relations; the rest follows by antisymmetry
HEIS7_TABLE = {
    ("U", "U_i"): {"Z_i": 1},
    ("U", "U_j"): {"Z_j": 1},
    ("U", "U_k"): {"Z_k": 1},
    ("U_i", "U_j"): {"Z_k": 1},
    ("U_i", "U_k"): {"Z_j": -1},
    ("U_j", "U_k"): {"Z_i": 1},
}

# per-variable degree of the image formulas
DEGREE_BOUND = 2


def is_lie_morphism(f: LinearMap) -> bool:
    """True iff f[X, Y] = [fX, fY] on every basis pair of the source"""
    return not bracket_defects(f, limit=1)


# ---------------------------------------------------------------------------
# heisH(7) relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Heis7Table:
    """
    Brackets of U, U_i, U_j, U_k in heisH(7), expressed in Z_i, Z_j, Z_k

    Z_q is defined as [U, U_q]; `center_scale` records Z_q in the algebra's
    own central basis.
    """

    algebra: LieAlgebra
    generators: Dict[str, Tuple[Fraction, ...]]
    center: Dict[str, Tuple[Fraction, ...]]
    entries: Dict[Tuple[str, str], Dict[str, Fraction]]

    def bracket(self, a, b) -> Dict[str, Fraction]:
        return self.entries[(a, b)]

    def center_scale(self) -> Dict[str, Dict[str, str]]:
        h = self.algebra
        return {name: {h.labels[k]: format_fraction(c) for k, c in enumerate(v) if c}
                for name, v in self.center.items()}

    def to_dict(self):
        return {
            "rows": {a: {b: {z: format_fraction(c) for z, c in self.entries[(a, b)].items()}
                         for b in GENERATORS} for a in GENERATORS},
            "center_normalization": self.center_scale(),
        }


def _expected_entry(a, b):
    if a == b:
        return {}
    if (a, b) in HEIS7_TABLE:
        return {z: Fraction(c) for z, c in HEIS7_TABLE[(a, b)].items()}
    return {z: -Fraction(c) for z, c in HEIS7_TABLE[(b, a)].items()}


def heis7_bracket_table() -> Heis7Table:
    """
    Build the 4x4 table of heisH(7) and compare it entry by entry

    Raises:
        ConstructionError: When any entry differs from the expected relations
    """
    h = make_algebra("heisH", dim=7)
    gens = {name: h.basis_vector(label) for name, label in zip(GENERATORS, ("q1", "q1_i", "q1_j", "q1_k"))}
    center = {z: h.bracket(gens["U"], gens["U" + z[1:]]) for z in CENTER}
    z_space = Subspace.from_vectors(h, list(center.values()))
    if z_space.dim != 3:
        raise ConstructionError("[U, U_q] do not span a 3-dimensional center")
    z_basis = Subspace(h, tuple(center[z] for z in CENTER))

    entries = {}
    for a in GENERATORS:
        for b in GENERATORS:
            value = h.bracket(gens[a], gens[b])
            coords = z_basis.coordinates(value)
            if coords is None:
                raise ConstructionError(f"[{a}, {b}] is not central in {h.name}")
            got = {z: c for z, c in zip(CENTER, coords) if c}
            if got != _expected_entry(a, b):
                raise ConstructionError(f"heisH(7) table mismatch at [{a}, {b}]: {got}")
            entries[(a, b)] = got
    return Heis7Table(h, gens, center, entries)


# ---------------------------------------------------------------------------
# Obstruction engine
# ---------------------------------------------------------------------------

# (b, c) for the images f([t_b X_1 - t_1 X_b, t_c X_1 - t_1 X_c])
_IMAGE_PAIRS = ((2, 3), (2, 4), (3, 4))


def _image_formula(table, t, pivot, first, second):
    """Coefficients of [t_first U_pivot - t_pivot U_first, t_second U_pivot - t_pivot U_second]"""
    u = {1: "U", 2: "U_i", 3: "U_j", 4: "U_k"}
    out = {z: Fraction(0) for z in CENTER}
    left = ((t[first], u[pivot]), (-t[pivot], u[first]))
    right = ((t[second], u[pivot]), (-t[pivot], u[second]))
    for ca, a in left:
        for cb, b in right:
            for z, c in table.bracket(a, b).items():
                out[z] += ca * cb * c
    return out


def _displayed_rows(t):
    """The three image rows as written in the proof, in (Z_i, Z_j, Z_k) coordinates"""
    t1, t2, t3, t4 = t[1], t[2], t[3], t[4]
    return (
        (t1 * t3, -t1 * t2, t1 * t1),
        (t1 * t4, -t1 * t1, -t1 * t2),
        (t1 * t1, t1 * t4, -t1 * t3),
    )


@dataclass(frozen=True)
class IdentityGridCheck:
    identity: str
    grid_size: int
    passed: bool
    failing_point: Optional[Tuple[Fraction, ...]] = None

    def to_dict(self):
        return {
            "identity": self.identity,
            "grid_size": self.grid_size,
            "pass": self.passed,
            "failing_point": [format_fraction(c) for c in self.failing_point] if self.failing_point else None,
        }


@dataclass(frozen=True)
class ObstructionReport:
    """Every sub-check of the proof that no morphism u -> heisH(7) is onto"""

    n: int
    table_ok: bool
    identity_checks: Tuple[IdentityGridCheck, ...]
    minor: str
    minor_factorization: str
    minor_forces_t1_zero: bool
    all_parameters_forced: bool
    derived_dim: int
    center_span_dim: int
    dimD_contradiction: bool
    splitting: Dict = field(default_factory=dict)
    degree_bound: int = DEGREE_BOUND

    @property
    def passed(self):
        return (self.table_ok and all(c.passed for c in self.identity_checks)
                and self.minor_forces_t1_zero and self.all_parameters_forced and self.dimD_contradiction)

    def to_dict(self):
        return {
            "n": self.n,
            "table_ok": self.table_ok,
            "identity_checks": [c.to_dict() for c in self.identity_checks],
            "degree_bound": self.degree_bound,
            "minor": self.minor,
            "minor_factorization": self.minor_factorization,
            "minor_forces_t1_zero": self.minor_forces_t1_zero,
            "all_parameters_forced": self.all_parameters_forced,
            "derived_dim": self.derived_dim,
            "center_span_dim": self.center_span_dim,
            "dimD_contradiction": self.dimD_contradiction,
            "splitting": self.splitting,
        }


def _grid_identities(table, grid):
    """
    Evaluate the image formulas on grid^4

    Brackets of the preimages X_a = t_a * t + w_a must map to the displayed
    rows under any morphism sending X_a to the U generators. The t-coordinate
    of t_b X_a - t_a X_b cancels identically, so membership of those
    combinations in the ideal is not rechecked here.
    """
    checked = 0
    displayed_fail = None
    for point in itertools.product(grid, repeat=4):
        checked += 1
        t = {a + 1: Fraction(v) for a, v in enumerate(point)}
        rows = _displayed_rows(t)
        for row, (first, second) in zip(rows, _IMAGE_PAIRS):
            image = _image_formula(table, t, 1, first, second)
            if displayed_fail is None and tuple(image[z] for z in CENTER) != row:
                displayed_fail = tuple(t[a] for a in (1, 2, 3, 4))
    return (IdentityGridCheck("image formulas", checked, displayed_fail is None, displayed_fail),)


_T = sympy.symbols("t1 t2 t3 t4")


def _symbolic_rows(table, pivot):
    others = [a for a in (1, 2, 3, 4) if a != pivot]
    t = {a: _T[a - 1] for a in (1, 2, 3, 4)}
    rows = []
    for first, second in ((others[0], others[1]), (others[0], others[2]), (others[1], others[2])):
        u = {1: "U", 2: "U_i", 3: "U_j", 4: "U_k"}
        out = {z: sympy.Integer(0) for z in CENTER}
        left = ((t[first], u[pivot]), (-t[pivot], u[first]))
        right = ((t[second], u[pivot]), (-t[pivot], u[second]))
        for ca, a in left:
            for cb, b in right:
                for z, c in table.bracket(a, b).items():
                    out[z] += ca * cb * sympy.Rational(c.numerator, c.denominator)
        rows.append([sympy.expand(out[z]) for z in CENTER])
    return sympy.Matrix(rows)


def forces_zero(polynomial, variable) -> bool:
    """
    True when the real zero set of `polynomial` lies in {variable = 0}

    Every irreducible factor must be the variable itself or a definite binary
    quadratic form involving it.
    """
    poly = sympy.Poly(polynomial, *_T)
    if poly.is_zero:
        return False
    _, factors = sympy.factor_list(poly.as_expr())
    seen = False
    for factor, _ in factors:
        factor = sympy.Poly(factor, *_T)
        gens = [s for s in _T if factor.degree(s) > 0]
        if factor.as_expr() == variable or factor.as_expr() == -variable:
            seen = True
            continue
        if variable not in gens or len(gens) != 2 or factor.total_degree() != 2 or not factor.is_homogeneous:
            return False
        other = gens[0] if gens[1] == variable else gens[1]
        a = factor.coeff_monomial(variable ** 2)
        b = factor.coeff_monomial(variable * other)
        c = factor.coeff_monomial(other ** 2)
        if 4 * a * c - b * b <= 0:
            return False
        seen = True
    return seen


def _forcing_minor(matrix, variable):
    for rows in itertools.combinations(range(3), 2):
        for cols in itertools.combinations(range(3), 2):
            minor = sympy.expand(matrix.extract(list(rows), list(cols)).det())
            if forces_zero(minor, variable):
                return minor
    return None


def obstruction_identities(n, config=None) -> ObstructionReport:
    """
    Check the algebraic incompatibility of u_max(n) with heisH(7)

    For preimages X_1..X_4 of U, U_i, U_j, U_k with t-coordinates t_1..t_4:
    the image formulas hold on the grid (a proof at per-variable degree 2),
    a 2x2 minor of the image matrix forces each t_a to vanish, and then
    [X_1, X_2], [X_1, X_3] map onto two independent central elements while
    [heisC, heisC] is a line.

    Raises:
        DomainError: When n < 3
    """
    config = config or get_config()
    if n < 3:
        raise DomainError(f"Obstruction needs n >= 3, got {n}")
    table = heis7_bracket_table()
    u = make_algebra("umax", n=n)
    ideal_labels = [label for label in u.labels if label != "t"]
    ideal_space = u.coordinate_subspace(ideal_labels)
    ideal, _ = subalgebra(u, ideal_space, labels=ideal_labels)

    checks = _grid_identities(table, config.GRID_VALUES)
    grid_points = len(config.GRID_VALUES) ** 4

    t1, _, _, t4 = _T
    minor = sympy.Matrix([[t1 * t4, -t1 ** 2], [t1 ** 2, t1 * t4]]).det()
    minor = sympy.expand(minor)
    factorization = sympy.factor(minor)
    t1_forced = forces_zero(minor, t1)
    # the displayed minor must be a minor of the computed matrix
    matrix = _symbolic_rows(table, 1)
    t1_forced = t1_forced and sympy.expand(matrix.extract([1, 2], [0, 1]).det() - minor) == 0
    forced = all(_forcing_minor(_symbolic_rows(table, a), _T[a - 1]) is not None for a in (1, 2, 3, 4))

    derived_dim = derived_algebra(ideal).dim
    h = table.algebra
    center_span = Subspace.from_vectors(h, [h.bracket(table.generators["U"], table.generators["U_i"]),
                                            h.bracket(table.generators["U"], table.generators["U_j"])])
    semidirect = umax_semidirect(n)

    report = ObstructionReport(
        n=n,
        table_ok=True,
        identity_checks=checks,
        minor=str(minor),
        minor_factorization=str(factorization),
        minor_forces_t1_zero=t1_forced,
        all_parameters_forced=forced,
        derived_dim=derived_dim,
        center_span_dim=center_span.dim,
        dimD_contradiction=derived_dim <= 1 < center_span.dim,
        splitting={"complement": list(semidirect.complement), "ideal": ideal_labels,
                   "alpha_image": semidirect.center_image, "grid_points": grid_points},
    )
    log = logger.info if report.passed else logger.error
    log(f"Obstruction identities for u_max({n}): {'pass' if report.passed else 'FAIL'}")
    return report


# ---------------------------------------------------------------------------
# Random falsifier
# ---------------------------------------------------------------------------

SURJECTIVE = "candidate"
REJECTED = "rejected"
COUNTEREXAMPLE = "counterexample"


def classify_candidate(f: LinearMap) -> str:
    """'rejected' when f is not onto, 'counterexample' when it is an onto morphism, else 'candidate'"""
    if not f.is_surjective():
        return REJECTED
    if is_lie_morphism(f):
        return COUNTEREXAMPLE
    return SURJECTIVE


@dataclass(frozen=True)
class FalsifierReport:
    """Negative evidence: sampled onto maps u_max(n) -> heisH(7) that are morphisms"""

    n: int
    trials: int
    seed: int
    sampled: int
    rejected: int
    counterexamples: Tuple[Tuple[Tuple[str, ...], ...], ...]
    vacuous: bool
    reason: str = ""

    @property
    def passed(self):
        return not self.counterexamples

    def to_dict(self):
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "sampled": self.sampled,
            "rejected": self.rejected,
            "counterexamples": [[list(row) for row in m] for m in self.counterexamples],
            "vacuous": self.vacuous,
            "reason": self.reason,
            "kind": "evidence",
        }


def random_morphism_falsifier(n, trials=None, seed=None, config=None) -> FalsifierReport:
    """
    Sample random rational maps u_max(n) -> heisH(7) and look for onto morphisms

    Maps of rank below 7 are rejected and not counted. When dim u_max(n) < 7
    no onto map exists and the pass is vacuous.
    """
    config = config or get_config()
    trials = config.FALSIFIER_TRIALS if trials is None else trials
    seed = config.DEFAULT_SEED if seed is None else seed
    if trials < 0:
        raise DomainError(f"trials must be non-negative, got {trials}")
    source = make_algebra("umax", n=n)
    target = make_algebra("heisH", dim=7)

    if trials == 0:
        logger.warning(f"Falsifier for u_max({n}) ran no trials: vacuous pass")
        return FalsifierReport(n, 0, seed, 0, 0, (), True, "no trials")
    if source.dim < target.dim:
        logger.warning(f"dim u_max({n}) = {source.dim} < 7: no onto map exists, vacuous pass")
        return FalsifierReport(n, trials, seed, 0, 0, (), True,
                               f"dimension obstruction: dim u_max({n}) = {source.dim} < {target.dim}")

    rng = random.Random(seed)
    bound = config.RANDOM_ENTRY_BOUND
    sampled = rejected = 0
    found = []
    for _ in progress(range(trials), f"falsifier n={n}", total=trials, config=config):
        rows = [[random_fraction(rng, bound) for _ in range(source.dim)] for _ in range(target.dim)]
        f = LinearMap(source, target, ExactMatrix(rows, ncols=source.dim))
        outcome = classify_candidate(f)
        if outcome == REJECTED:
            rejected += 1
            continue
        sampled += 1
        if outcome == COUNTEREXAMPLE:
            logger.error(f"Onto morphism u_max({n}) -> heisH(7) found")
            found.append(tuple(tuple(format_fraction(c) for c in row) for row in rows))
    report = FalsifierReport(n, trials, seed, sampled, rejected, tuple(found), False)
    logger.info(f"Falsifier u_max({n}): {sampled} onto maps sampled, {rejected} rejected, {len(found)} counterexamples")
    return report
