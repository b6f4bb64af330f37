"""
LieVerify Backend - Verification Module
Lemma registry, per-lemma checks and the ordered report stream
"""

from __future__ import annotations

import concurrent.futures
import logging
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from .config import get_config
from .conformal import (
    GRADING_GENERATOR,
    LORENTZIAN,
    SIGNATURE_CONVENTION,
    ad_conformal_factor,
    build_model,
    classify_subspace,
    generator_factors,
    isotropic_search,
    root_space_images,
)
from .errors import ContractViolation, DomainError, LieVerifyError
from .exactmath import unit_vector
from .families import (
    heisenberg_embedding,
    make_algebra,
    o2n_gram,
    orthogonal,
    quaternionic_nilradical_embedding,
    umax_semidirect,
)
from .morphisms import DEGREE_BOUND, heis7_bracket_table, obstruction_identities, random_morphism_falsifier
from .nilpotent import engel_harness
from .rootspace import (
    ad_diagonal_profile,
    bracket_relations,
    cartan_data,
    decompose,
    generates_everything,
    irreducible,
    module_action,
    real_slice,
    sl2_identity_certificate,
    trace_form,
)
from .rootsys import (
    dim_inequality_scan,
    embeds,
    make_root_system,
    min_faithful_dim,
    resolve_exceptions,
    tabulated_min_faithful_dim,
)
from .utils import format_duration, format_fraction, report_digest


logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class VerificationReport:
    """
    Outcome of one lemma check

    A fail always carries at least one counterexample and a pass carries none.
    """

    lemma_id: str
    params: Dict
    status: str
    witnesses: List = field(default_factory=list)
    counterexamples: List = field(default_factory=list)
    timing: Optional[float] = None
    degree_bounds: Optional[Dict] = None
    search_counts: Optional[Dict] = None

    def __post_init__(self):
        if self.status not in (PASS, FAIL, INCONCLUSIVE):
            raise ContractViolation(f"Unknown report status: {self.status}")
        if self.status == FAIL and not self.counterexamples:
            raise ContractViolation(f"{self.lemma_id}: a failing report needs a counterexample")
        if self.status == PASS and self.counterexamples:
            raise ContractViolation(f"{self.lemma_id}: a passing report cannot carry counterexamples")

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self, include_timing=False):
        data = {
            "lemma_id": self.lemma_id,
            "params": self.params,
            "status": self.status,
            "witnesses": self.witnesses,
            "counterexamples": self.counterexamples,
        }
        if self.degree_bounds is not None:
            data["degree_bounds"] = self.degree_bounds
        if self.search_counts is not None:
            data["search_counts"] = self.search_counts
        if include_timing and self.timing is not None:
            data["timing"] = round(self.timing, 6)
        return data

    def to_text(self):
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        duration = format_duration(self.timing) if self.timing is not None else "-"
        return f"{self.lemma_id} [{params}] {self.status.upper()} ({duration})"


@dataclass(frozen=True)
class VerifyContext:
    max_n: int
    seed: int
    config: object

    @property
    def sizes(self):
        return range(self.config.MIN_N, self.max_n + 1)


def _outcome(lemma_id, params, witnesses, counterexamples, inconclusive=False, **extra):
    if counterexamples:
        status = FAIL
    elif inconclusive:
        status = INCONCLUSIVE
    else:
        status = PASS
    return VerificationReport(lemma_id, params, status, witnesses, counterexamples, **extra)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

RANK_ONE = ("o1k", "su1k", "sp1k")


def _rank_one_sizes(ctx):
    return range(2, ctx.max_n + 1)


def check_construction_soundness(ctx: VerifyContext) -> VerificationReport:
    algebras = []
    for n in ctx.sizes:
        algebras += [make_algebra(family, k=n) for family in RANK_ONE]
        algebras += [make_algebra("heisC", dim=2 * n - 3), make_algebra("heisH", dim=4 * n - 5),
                     make_algebra("o2n", n=n), make_algebra("parabolic", n=n), make_algebra("umax", n=n)]
    algebras.append(make_algebra("f4_nilradical"))

    witnesses, failures = [], []
    for g in algebras:
        jacobi = g.jacobi_defect()
        realization = g.realization_defect()
        witnesses.append({"algebra": g.name, "dim": g.dim,
                          "jacobi_defect": format_fraction(jacobi),
                          "realization_defect": format_fraction(realization)})
        if jacobi or realization:
            failures.append(f"{g.name}: jacobi defect {jacobi}, realization defect {realization}")

    for n in ctx.sizes:
        generic = orthogonal(o2n_gram(n))
        coords = make_algebra("o2n", n=n)
        if generic.dim != coords.dim or generic.jacobi_defect():
            failures.append(f"o(2,{n}): generic orthogonal algebra has dim {generic.dim}, "
                            f"coordinates give {coords.dim}")
    return _outcome("construction-soundness", {"max_n": ctx.max_n}, witnesses, failures)


def check_root_decompositions(ctx: VerifyContext) -> VerificationReport:
    witnesses, failures = [], []
    for family in RANK_ONE:
        for k in _rank_one_sizes(ctx):
            g = make_algebra(family, k=k)
            cd = cartan_data(g)
            dec = decompose(g, cd)
            entry = dec.to_dict()
            entry["theta"] = cd.to_dict()
            entry["trace_form_negative_definite"] = trace_form(g).negative_definite
            witnesses.append(entry)
            if not dec.passed:
                failures.append(f"{g.name}: decomposition {dec.to_dict()}")
            if not (cd.is_involution() and cd.is_automorphism()):
                failures.append(f"{g.name}: theta is not an involutive automorphism")
            if not entry["trace_form_negative_definite"]:
                failures.append(f"{g.name}: trace form is not negative definite")
            if family in ("o1k", "su1k"):
                relations = bracket_relations(dec)
                entry["relations"] = [r.to_dict() for r in relations]
                failures += [f"{g.name}: {r.relation} fails" for r in relations if not r.holds]
                seed = dec.space(-1).basis[0]
                if not generates_everything(dec, seed):
                    failures.append(f"{g.name}: subalgebra normalized by h_a through h_-a is proper")
    return _outcome("root-decompositions", {"max_n": ctx.max_n}, witnesses, failures)


def check_heis_embeddings(ctx: VerifyContext) -> VerificationReport:
    witnesses, failures = [], []
    certificates = []
    for n in ctx.sizes:
        certificates += [heisenberg_embedding("su1k", n - 1), heisenberg_embedding("sp1k", n - 1)]
    certificates.append(quaternionic_nilradical_embedding())
    for cert in certificates:
        witnesses.append(cert.to_dict())
        if not cert.verified:
            failures.append(f"{cert.description}: isomorphism check failed")
    return _outcome("heis-embeddings", {"max_n": ctx.max_n}, witnesses, failures)


def check_heis7_table(ctx: VerifyContext) -> VerificationReport:
    table = heis7_bracket_table()
    return _outcome("heis7-table", {}, [table.to_dict()], [])


def check_umax_semidirect(ctx: VerifyContext) -> VerificationReport:
    witnesses, failures = [], []
    for n in ctx.sizes:
        report = umax_semidirect(n)
        witnesses.append(report.to_dict())
        if not report.passed:
            failures.append(f"u_max({n}): {report.to_dict()}")
    return _outcome("umax-semidirect", {"max_n": ctx.max_n}, witnesses, failures)


def check_heis7_obstruction(ctx: VerifyContext) -> VerificationReport:
    config = ctx.config
    witnesses, failures = [], []
    for n in ctx.sizes:
        report = obstruction_identities(n, config=config)
        witnesses.append(report.to_dict())
        if not report.passed:
            failures.append(f"obstruction for u_max({n}) failed")

    counts = {}
    for n in config.FALSIFIER_SIZES:
        falsifier = random_morphism_falsifier(n, seed=ctx.seed, config=config)
        witnesses.append(falsifier.to_dict())
        counts[str(n)] = {"trials": falsifier.trials, "sampled": falsifier.sampled,
                          "rejected": falsifier.rejected, "vacuous": falsifier.vacuous}
        if not falsifier.passed:
            failures.append(f"u_max({n}): {len(falsifier.counterexamples)} onto morphisms found")
            failures += [{"n": n, "matrix": [list(row) for row in m]} for m in falsifier.counterexamples]

    bounds = {"per_variable_degree": DEGREE_BOUND,
              "grid": [format_fraction(v) for v in config.GRID_VALUES],
              "grid_points": len(config.GRID_VALUES) ** 4}
    return _outcome("heis7-obstruction", {"max_n": ctx.max_n, "seed": ctx.seed}, witnesses, failures,
                    degree_bounds=bounds, search_counts=counts)


def _acting_module(g, dec):
    return module_action(g, dec.zero_space, dec.space(-1))


def check_sl2_identity(ctx: VerifyContext) -> VerificationReport:
    config = ctx.config
    witnesses, failures = [], []
    top = min(ctx.max_n, config.SL2_MAX_K)
    for k in range(2, top + 1):
        g = make_algebra("o1k", k=k)
        cd = cartan_data(g)
        certificate = sl2_identity_certificate(g, cd)
        entry = {"algebra": g.name, "displayed": certificate.to_dict()}
        if not certificate.holds:
            failures.append(f"{g.name}: identity fails at {list(certificate.failures)}")

        module = irreducible(_acting_module(g, decompose(g, cd)),
                             rng=random.Random(ctx.seed), config=config)
        entry["irreducibility"] = module.to_dict()
        if k >= 4 and not module.absolutely_irreducible:
            failures.append(f"{g.name}: h_0 on h_-a is not absolutely irreducible ({module.status})")
        elif k < 4 and module.status != "irreducible":
            failures.append(f"{g.name}: h_0 on h_-a is {module.status}")
        witnesses.append(entry)

    for k in range(2, top + 1):
        g = make_algebra("su1k", k=k)
        cd = cartan_data(g)
        on_slice = sl2_identity_certificate(g, cd, indices=real_slice(g))
        corrected = sl2_identity_certificate(g, cd, corrected=True)
        displayed = sl2_identity_certificate(g, cd)
        witnesses.append({"algebra": g.name, "real_slice": on_slice.to_dict(),
                          "corrected": corrected.to_dict(),
                          "displayed_off_slice_failures": displayed.failure_count})
        if not on_slice.holds:
            failures.append(f"{g.name}: identity fails on the real slice at {list(on_slice.failures)}")
        if not corrected.holds:
            failures.append(f"{g.name}: corrected identity fails at {list(corrected.failures)}")
    return _outcome("sl2-identity", {"max_k": top, "seed": ctx.seed}, witnesses, failures)


_EXPECTED_ROOTS = {"o1k": {-1, 0, 1}, "su1k": {-2, -1, 0, 1, 2}, "sp1k": {-2, -1, 0, 1, 2}}


def check_discompact_profile(ctx: VerifyContext) -> VerificationReport:
    witnesses, failures = [], []
    for family in RANK_ONE:
        for k in _rank_one_sizes(ctx):
            g = make_algebra(family, k=k)
            cd = cartan_data(g)
            profile = ad_diagonal_profile(g, cd)
            entry = profile.to_dict()
            entry["algebra"] = g.name
            witnesses.append(entry)
            if set(profile.eigenspace_dims) != _EXPECTED_ROOTS[family] or not profile.passed:
                failures.append(f"{g.name}: eigenvalue profile {entry}")
    return _outcome("discompact-profile", {"max_n": ctx.max_n}, witnesses, failures)


ROOT_EMBEDDING_CASES = (
    ("A1+A1", "B2", True),
    ("A1+BC1", "B2", False),
    ("BC1+BC1", "B2", False),
    ("A3+A1", "D4", False),
    ("BC1", "A1", False),
)


def check_root_embeddings(ctx: VerifyContext) -> VerificationReport:
    witnesses, failures = [], []
    counts = {}
    for source, target, expected in ROOT_EMBEDDING_CASES:
        result = embeds(make_root_system(source), make_root_system(target))
        witnesses.append(result.to_dict())
        counts[f"{source} in {target}"] = {"examined": result.examined, "pruned": result.pruned,
                                           "predicted": result.predicted, "nodes": result.nodes}
        if result.embeds != expected:
            failures.append(f"{source} in {target}: expected {expected}, got {result.embeds}")
        elif not expected and result.examined + result.pruned != result.predicted:
            failures.append(f"{source} in {target}: search is not exhaustive")
    return _outcome("root-embeddings", {}, witnesses, failures, search_counts=counts)


EXPECTED_SCAN = [(3, 3), (6, 3)]


def check_dim_scan(ctx: VerifyContext) -> VerificationReport:
    bound = ctx.config.ROOT_SYSTEM_SCAN_BOUND
    failures = []
    table = {str(n): min_faithful_dim(n) for n in range(3, bound + 1)}
    mismatched = [n for n in range(3, bound + 1) if min_faithful_dim(n) != tabulated_min_faithful_dim(n)]
    if mismatched:
        failures.append(f"closed-form d_n differs from the table at n = {mismatched}")
    pairs = dim_inequality_scan(bound)
    if pairs != EXPECTED_SCAN:
        failures.append(f"scan returned {pairs}")
    resolutions = resolve_exceptions(pairs)
    failures += [f"pair {r['pair']} is not resolved" for r in resolutions if not r["resolved"]]
    witnesses = [{"d_n": table, "exceptions": [list(p) for p in pairs], "resolutions": resolutions}]
    return _outcome("dim-scan", {"bound": bound}, witnesses, failures)


def check_conformal_quotient(ctx: VerifyContext) -> VerificationReport:
    witnesses, failures = [], []
    for n in ctx.sizes:
        model = build_model(n)
        factors = generator_factors(model)
        grading = factors[GRADING_GENERATOR]
        search = isotropic_search(model)
        whole = classify_subspace(model, [unit_vector(n, i) for i in range(n)])
        images = root_space_images(model)
        scaled = model.rescaled(3)
        stable = all(classify_subspace(scaled, [model.project(model.g.basis_vector(label))
                                                for label in image.labels]).label == image.kind.label
                     for image in images if image.kind is not None)
        witnesses.append({
            "model": model.to_dict(),
            "factors": {label: f.to_dict() for label, f in factors.items()},
            "grading_factor": format_fraction(grading.factor),
            "isotropic_search": search.to_dict(),
            "quotient_class": whole.label,
            "root_images": [image.to_dict() for image in images],
        })
        if abs(grading.factor) != 2:
            failures.append(f"o(2,{n}): grading generator has factor {grading.factor}")
        nilradical = ad_conformal_factor(model, model.g.basis_vector("b"))
        if nilradical.factor != 0 or not nilradical.nilpotent:
            failures.append(f"o(2,{n}): nilradical generator b acts with factor {nilradical.factor}")
        if not search.passed:
            failures.append(f"o(2,{n}): totally isotropic subspace of dim {search.max_dim}")
        if whole.label != LORENTZIAN:
            failures.append(f"o(2,{n}): g/p is {whole.label}")
        if not stable:
            failures.append(f"o(2,{n}): classification changes under Q -> 3Q")
    return _outcome("conformal-quotient", {"max_n": ctx.max_n, "convention": SIGNATURE_CONVENTION},
                    witnesses, failures)


def check_engel_isotropic(ctx: VerifyContext) -> VerificationReport:
    witnesses, failures = [], []
    counts = {}
    for n in ctx.config.ENGEL_SIZES:
        report = engel_harness(n, seed=ctx.seed, config=ctx.config)
        witnesses.append(report.to_dict())
        counts[str(n)] = {"trials": report.trials, "max_steps": report.max_steps}
        failures += list(report.failures)
    return _outcome("engel-isotropic", {"seed": ctx.seed}, witnesses, failures, search_counts=counts)


LEMMAS: Dict[str, Callable[[VerifyContext], VerificationReport]] = {
    "construction-soundness": check_construction_soundness,
    "root-decompositions": check_root_decompositions,
    "heis-embeddings": check_heis_embeddings,
    "heis7-table": check_heis7_table,
    "umax-semidirect": check_umax_semidirect,
    "heis7-obstruction": check_heis7_obstruction,
    "sl2-identity": check_sl2_identity,
    "discompact-profile": check_discompact_profile,
    "root-embeddings": check_root_embeddings,
    "dim-scan": check_dim_scan,
    "conformal-quotient": check_conformal_quotient,
    "engel-isotropic": check_engel_isotropic,
}


def select_lemmas(selection: Sequence[str]) -> List[str]:
    """
    Resolve a selection into lemma ids in registry order

    Raises:
        DomainError: For an unknown lemma id
    """
    selection = list(selection) or ["all"]
    if "all" in selection:
        return list(LEMMAS)
    unknown = [s for s in selection if s not in LEMMAS]
    if unknown:
        raise DomainError(f"Unknown lemma id(s): {', '.join(unknown)}")
    return [lemma for lemma in LEMMAS if lemma in selection]


def run_lemma(lemma_id, ctx: VerifyContext) -> VerificationReport:
    """Run one check; library errors become a failing report"""
    start = time.perf_counter()
    try:
        report = LEMMAS[lemma_id](ctx)
    except LieVerifyError as e:
        logger.error(f"{lemma_id} raised {type(e).__name__}: {e}")
        report = VerificationReport(lemma_id, {"max_n": ctx.max_n}, FAIL,
                                    counterexamples=[f"{type(e).__name__}: {e}"])
    report.timing = time.perf_counter() - start
    log = logger.info if report.status != FAIL else logger.error
    log(f"{lemma_id}: {report.status} in {format_duration(report.timing)}")
    return report


def run_verify(selection=("all",), max_n=None, seed=None, config=None, jobs=None) -> List[VerificationReport]:
    """
    Run the selected checks and return their reports in registry order

    Args:
        selection: "all" or lemma ids
        max_n (int): Largest size parameter, at least 3
        seed (int): Seed for every randomized harness
        config: Configuration object
        jobs (int): Worker threads for independent checks

    Returns:
        list: VerificationReport per selected lemma

    Raises:
        DomainError: Unknown lemma id or max_n < 3
    """
    config = config or get_config()
    max_n = config.DEFAULT_MAX_N if max_n is None else max_n
    seed = config.DEFAULT_SEED if seed is None else seed
    jobs = config.JOBS if jobs is None else jobs
    if max_n < 3:
        raise DomainError(f"max_n must be at least 3, got {max_n}")
    lemmas = select_lemmas(selection)
    ctx = VerifyContext(max_n, seed, config)
    logger.info(f"Verifying {len(lemmas)} lemma(s) with max_n={max_n}, seed={seed}, jobs={jobs}")

    if jobs <= 1 or len(lemmas) == 1:
        return [run_lemma(lemma, ctx) for lemma in lemmas]

    with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as executor:
        futures = {lemma: executor.submit(run_lemma, lemma, ctx) for lemma in lemmas}
        return [futures[lemma].result() for lemma in lemmas]


def report_document(reports: Sequence[VerificationReport], max_n, seed, config=None, include_timing=False):
    """
    JSON document for a report stream, keyed in a fixed order

    `digest` fingerprints the reports without their timings, so reruns with
    the same seed and parameters agree on it whether or not timings are shown.
    """
    config = config or get_config()
    return {
        "tool": config.APP_NAME,
        "version": config.VERSION,
        "max_n": max_n,
        "seed": seed,
        "status": PASS if all(r.passed for r in reports) else FAIL,
        "reports": [r.to_dict(include_timing=include_timing) for r in reports],
        "digest": report_digest([r.to_dict() for r in reports]),
    }
