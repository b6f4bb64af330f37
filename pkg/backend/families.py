"""
LieVerify Backend - Algebra Families Module
Matrix and abstract constructors for every algebra family used by the checks
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from .errors import ConstructionError, DomainError
from .exactmath import (
    KIND_SIZES,
    UNIT_LABELS,
    ExactMatrix,
    Scalar,
    SymmetricForm,
    determinant,
    inverse,
    kernel,
    unit_vector,
)
from .liealg import (
    LieAlgebra,
    LinearMap,
    extend_to_center,
    structure_report,
    subalgebra,
    verify_isomorphism,
)
from .utils import format_fraction


logger = logging.getLogger(__name__)

RANK_ONE_KINDS = {"o1k": "rational", "su1k": "gaussian", "sp1k": "quaternion"}


@dataclass(frozen=True)
class RankOneLayout:
    """
    Basis bookkeeping for o(1,k), su(1,k) and sp(1,k)

    Matrices are (k+1)x(k+1) over the kind's scalars and preserve the form
    J = antidiag corners plus identity in the middle. Indices are positions in
    the algebra basis; `neg_alpha` pairs each h_-alpha index with its middle
    row and scalar unit.
    """

    kind: str
    k: int
    cartan: int
    compact: Tuple[int, ...]
    alpha: Tuple[int, ...]
    two_alpha: Tuple[int, ...]
    neg_alpha: Tuple[int, ...]
    neg_two_alpha: Tuple[int, ...]
    neg_alpha_units: Tuple[Tuple[int, int], ...]

    @property
    def zero_space(self):
        return (self.cartan,) + self.compact

    def root_space(self, value):
        return {0: self.zero_space, 1: self.alpha, 2: self.two_alpha,
                -1: self.neg_alpha, -2: self.neg_two_alpha}[value]


def _suffix(kind, unit):
    return "" if unit == 0 else f"_{UNIT_LABELS[kind][unit]}"


def _rank_one(family, k):
    kind = RANK_ONE_KINDS[family]
    if k < 1:
        raise DomainError(f"{family} needs k >= 1, got {k}")
    size = k + 1
    last = k
    units = [Scalar.unit(kind, u) for u in range(KIND_SIZES[kind])]
    imaginary = list(range(1, len(units)))
    half = Fraction(1, 2)

    matrices, labels = [], []
    groups: Dict[str, list] = {"cartan": [], "compact": [], "alpha": [], "two_alpha": [],
                               "neg_alpha": [], "neg_two_alpha": []}
    neg_units = []

    def add(group, label, entries):
        groups[group].append(len(matrices))
        labels.append(label)
        matrices.append(ExactMatrix.from_entries(size, size, entries, kind))

    add("cartan", "A", {(0, 0): 1, (last, last): -1})

    if kind == "quaternion":
        for u in imaginary:
            add("compact", f"C{_suffix(kind, u)}", {(0, 0): units[u], (last, last): units[u]})

    for p in range(1, k):
        for q in range(p, k):
            if p == q:
                for u in imaginary:
                    e = units[u]
                    if kind == "gaussian":
                        # trace compensated on the corners
                        entries = {(p, p): e, (0, 0): -e * half, (last, last): -e * half}
                    else:
                        entries = {(p, p): e}
                    add("compact", f"M{p}.{p}{_suffix(kind, u)}", entries)
            else:
                for u, e in enumerate(units):
                    add("compact", f"M{p}.{q}{_suffix(kind, u)}", {(p, q): e, (q, p): -e.conj()})

    for m in range(1, k):
        for u, e in enumerate(units):
            add("alpha", f"X{m}{_suffix(kind, u)}", {(0, m): e, (m, last): -e.conj()})
    for u in imaginary:
        add("two_alpha", f"Z{_suffix(kind, u)}", {(0, last): units[u]})
    for m in range(1, k):
        for u, e in enumerate(units):
            neg_units.append((m, u))
            add("neg_alpha", f"Y{m}{_suffix(kind, u)}", {(m, 0): -e.conj(), (last, m): e})
    for u in imaginary:
        add("neg_two_alpha", f"W{_suffix(kind, u)}", {(last, 0): units[u]})

    layout = RankOneLayout(
        kind=kind,
        k=k,
        cartan=groups["cartan"][0],
        compact=tuple(groups["compact"]),
        alpha=tuple(groups["alpha"]),
        two_alpha=tuple(groups["two_alpha"]),
        neg_alpha=tuple(groups["neg_alpha"]),
        neg_two_alpha=tuple(groups["neg_two_alpha"]),
        neg_alpha_units=tuple(neg_units),
    )
    name = {"o1k": "o", "su1k": "su", "sp1k": "sp"}[family] + f"(1,{k})"
    gram = lorentz_gram(size)
    return LieAlgebra.from_realization(name, labels, matrices,
                                       meta={"family": family, "layout": layout, "gram": gram})


def lorentz_gram(size) -> ExactMatrix:
    """J_{1,size-1}: ones on the two anti-diagonal corners and the middle diagonal"""
    entries = {(0, size - 1): 1, (size - 1, 0): 1}
    for m in range(1, size - 1):
        entries[(m, m)] = 1
    return ExactMatrix.from_entries(size, size, entries)


def orthogonal(gram: ExactMatrix, name=None) -> LieAlgebra:
    """
    o(p,q;J) = {M : M^T J + J M = 0} for an invertible symmetric rational J

    The basis is the reduced-echelon kernel basis of the defining linear system
    in the n^2 matrix entries, labelled by each vector's free entry.
    """
    form = SymmetricForm(gram)
    n = form.dim
    if n == 0 or determinant(gram) == 0:
        raise DomainError("Orthogonal algebra needs an invertible Gram matrix")
    rows = []
    for i in range(n):
        for j in range(i, n):
            row = [Fraction(0)] * (n * n)
            for l in range(n):
                # (M^T J)_{ij} = sum_l M_{li} J_{lj};  (J M)_{ij} = sum_l J_{il} M_{lj}
                row[l * n + i] += gram[l, j]
                row[l * n + j] += gram[i, l]
            if any(row):
                rows.append(row)
    basis = kernel(ExactMatrix(rows, ncols=n * n))
    matrices, labels = [], []
    for v in basis:
        free = next(idx for idx, a in enumerate(v) if a == 1 and all(
            w[idx] == 0 for w in basis if w is not v))
        labels.append(f"O{free // n}.{free % n}")
        matrices.append(ExactMatrix([v[r * n:(r + 1) * n] for r in range(n)]))
    pos, neg, _ = form.signature()
    return LieAlgebra.from_realization(name or f"o({neg},{pos};J)", labels, matrices,
                                       meta={"family": "orthogonal", "gram": gram})


# ---------------------------------------------------------------------------
# o(2,n) in block coordinates
# ---------------------------------------------------------------------------

def o2n_gram(n) -> ExactMatrix:
    """Gram matrix of 2 x1 x_{n+2} + 2 x2 x_{n+1} + x3^2 + ... + x_n^2"""
    size = n + 2
    entries = {(0, size - 1): 1, (size - 1, 0): 1, (1, size - 2): 1, (size - 2, 1): 1}
    for m in range(2, n):
        entries[(m, m)] = 1
    return ExactMatrix.from_entries(size, size, entries)


def _o2n_entries(n):
    """Basis matrices of o(2,n) as {label: {(row, col): value}}"""
    top = n + 1
    mids = list(range(2, n))
    entries_by_label = {
        "a": {(0, 0): 1, (top, top): -1},
        "b": {(0, 1): 1, (n, top): -1},
        "c": {(1, 0): 1, (top, n): -1},
        "d": {(1, 1): 1, (n, n): -1},
    }
    for i, m in enumerate(mids, start=1):
        entries_by_label[f"u{i}"] = {(0, m): 1, (m, top): -1}
    for i, m in enumerate(mids, start=1):
        entries_by_label[f"v{i}"] = {(1, m): 1, (m, n): -1}
    for i, m in enumerate(mids, start=1):
        entries_by_label[f"z{i}"] = {(m, 0): -1, (top, m): 1}
    for i, m in enumerate(mids, start=1):
        entries_by_label[f"w{i}"] = {(m, 1): -1, (n, m): 1}
    entries_by_label["alpha"] = {(0, n): 1, (1, top): -1}
    entries_by_label["beta"] = {(n, 0): 1, (top, 1): -1}
    for i, p in enumerate(mids, start=1):
        for j, q in enumerate(mids, start=1):
            if p < q:
                entries_by_label[f"A{i}.{j}"] = {(p, q): 1, (q, p): -1}
    return entries_by_label


def parabolic_labels(n):
    """Coordinates cut out by c = z_1 = ... = z_{n-2} = beta = 0"""
    return [label for label in _o2n_entries(n)
            if not (label == "c" or label == "beta" or (label.startswith("z") and label[1:].isdigit()))]


def umax_labels(n):
    return ["b"] + [f"u{i}" for i in range(1, n - 1)] + [f"v{i}" for i in range(1, n - 1)] + ["alpha"]


def o2n(n) -> LieAlgebra:
    if n < 3:
        raise DomainError(f"o(2,n) coordinates need n >= 3, got {n}")
    entries_by_label = _o2n_entries(n)
    size = n + 2
    matrices = [ExactMatrix.from_entries(size, size, entries) for entries in entries_by_label.values()]
    return LieAlgebra.from_realization(f"o(2,{n})", list(entries_by_label), matrices,
                                       meta={"family": "o2n", "n": n, "gram": o2n_gram(n)})


def parabolic(n) -> LieAlgebra:
    g = make_algebra("o2n", n=n)
    labels = parabolic_labels(n)
    p, _ = subalgebra(g, g.coordinate_subspace(labels), labels=labels, name=f"p(2,{n})")
    p.meta.update({"family": "parabolic", "n": n})
    return p


def umax(n) -> LieAlgebra:
    """
    Maximal unipotent subalgebra of the parabolic: t (= b), u_i, v_i, alpha

    Basis order t, u_1..u_{n-2}, v_1..v_{n-2}, alpha.
    """
    g = make_algebra("o2n", n=n)
    source = umax_labels(n)
    labels = ["t"] + source[1:]
    u, _ = subalgebra(g, g.coordinate_subspace(source), labels=labels, name=f"u_max({n})")
    u.meta.update({"family": "umax", "n": n})
    return u


# ---------------------------------------------------------------------------
# Heisenberg algebras
# ---------------------------------------------------------------------------

def omega_c(u, v) -> Fraction:
    """
    Classical symplectic form on C^m written on real coordinates

    u and v list (re_1, im_1, re_2, im_2, ...); the value is 2 Im(sum conj(u_l) v_l),
    the coefficient of the su(1,m+1) bracket on its h_2alpha generator.
    """
    total = Fraction(0)
    for l in range(0, len(u), 2):
        a, b = u[l], u[l + 1]
        c, d = v[l], v[l + 1]
        total += a * d - b * c
    return 2 * total


@lru_cache(maxsize=None)
def derived_omega_c(m) -> Tuple[Tuple[Fraction, ...], ...]:
    """
    Gram matrix of the classical form read off the su(1,m+1) bracket

    Entry (a, b) is the h_2alpha coefficient of [X_a, X_b] for the h_alpha
    basis X of su(1,m+1).
    """
    g = make_algebra("su1k", k=m + 1)
    layout = g.meta["layout"]
    z = layout.two_alpha[0]
    gram = []
    for a in layout.alpha:
        row = []
        for b in layout.alpha:
            coords = g.basis_bracket(a, b)
            extra = set(coords) - {z}
            if extra:
                raise ConstructionError("h_alpha brackets of su leave h_2alpha")
            row.append(coords.get(z, Fraction(0)))
        gram.append(tuple(row))
    return tuple(gram)


def heis_c(dim) -> LieAlgebra:
    """heis^C(2m+1): basis z1, z1_i, ..., zm, zm_i, Z with [z, z'] = omega_C(z, z') Z"""
    if dim < 3 or dim % 2 == 0:
        raise DomainError(f"heisC needs an odd dimension >= 3, got {dim}")
    m = (dim - 1) // 2
    gram = derived_omega_c(m)
    labels = []
    for l in range(1, m + 1):
        labels += [f"z{l}", f"z{l}_i"]
    labels.append("Z")
    table = {}
    for a in range(2 * m):
        for b in range(a + 1, 2 * m):
            if gram[a][b]:
                table[(a, b)] = {2 * m: gram[a][b]}
    return LieAlgebra(f"heisC({dim})", labels, table, meta={"family": "heisC", "omega": gram})


def omega_h(u, v) -> Tuple[Fraction, Fraction, Fraction]:
    """
    u tv-bar - v tu-bar for quaternion vectors, as (i, j, k) coefficients

    u and v are sequences of quaternion Scalars.
    """
    acc = Scalar.zero("quaternion")
    for a, b in zip(u, v):
        acc = acc + a * b.conj() - b * a.conj()
    if acc.re != 0:
        raise ConstructionError("omega_H produced a non-imaginary value")
    return acc.coeffs[1:]


def heis_h(dim) -> LieAlgebra:
    """heis^H(4m+3): basis q1, q1_i, q1_j, q1_k, ..., Z_i, Z_j, Z_k with [u, v] = omega_H(u, v)"""
    if dim < 7 or dim % 4 != 3:
        raise DomainError(f"heisH needs dimension 4m+3 >= 7, got {dim}")
    m = (dim - 3) // 4
    units = [Scalar.unit("quaternion", u) for u in range(4)]
    labels = []
    vectors = []
    for l in range(m):
        for u in range(4):
            labels.append(f"q{l + 1}{_suffix('quaternion', u)}")
            vec = [Scalar.zero("quaternion")] * m
            vec[l] = units[u]
            vectors.append(vec)
    labels += ["Z_i", "Z_j", "Z_k"]
    center = 4 * m
    table = {}
    for a in range(4 * m):
        for b in range(a + 1, 4 * m):
            coeffs = omega_h(vectors[a], vectors[b])
            coords = {center + t: c for t, c in enumerate(coeffs) if c}
            if coords:
                table[(a, b)] = coords
    return LieAlgebra(f"heisH({dim})", labels, table, meta={"family": "heisH"})


def f4_nilradical() -> LieAlgebra:
    """
    O + Im(O) with [x1, x2] = x1 sigma(x2) - x2 sigma(x1) into the second summand

    sigma is octonion conjugation; the second summand is central. Basis
    o0..o7 (octonion units 1, i, j, k, l, il, jl, kl) then p1..p7 (imaginary units).
    """
    units = [Scalar.unit("octonion", u) for u in range(8)]
    labels = [f"o{u}" for u in range(8)] + [f"p{u}" for u in range(1, 8)]
    table = {}
    for a in range(8):
        for b in range(a + 1, 8):
            value = units[a] * units[b].conj() - units[b] * units[a].conj()
            if value.re != 0:
                raise ConstructionError("Nilradical bracket left the imaginary octonions")
            coords = {7 + u: c for u, c in enumerate(value.coeffs) if u > 0 and c}
            if coords:
                table[(a, b)] = coords
    return LieAlgebra("f4_nilradical", labels, table, meta={"family": "f4_nilradical"})


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

FAMILY_ALIASES = {
    "o(p,q;J)": "orthogonal", "o": "orthogonal", "orthogonal": "orthogonal",
    "o1k": "o1k", "su1k": "su1k", "sp1k": "sp1k",
    "heisC": "heisC", "heisH": "heisH",
    "o2n": "o2n", "o2n_coords": "o2n",
    "parabolic": "parabolic", "parabolic_p": "parabolic",
    "umax": "umax", "u_max": "umax",
    "f4_nilradical": "f4_nilradical",
}


@lru_cache(maxsize=None)
def _cached(family, key):
    params = dict(key)
    if family in RANK_ONE_KINDS:
        return _rank_one(family, params["k"])
    if family == "heisC":
        return heis_c(params["dim"])
    if family == "heisH":
        return heis_h(params["dim"])
    if family == "o2n":
        return o2n(params["n"])
    if family == "parabolic":
        return parabolic(params["n"])
    if family == "umax":
        return umax(params["n"])
    if family == "f4_nilradical":
        return f4_nilradical()
    raise DomainError(f"Unknown algebra family: {family}")


def make_algebra(family, **params) -> LieAlgebra:
    """
    Construct an algebra of a named family

    Args:
        family (str): o(p,q;J) / orthogonal (gram=...), o1k / su1k / sp1k (k=...),
            heisC / heisH (dim=...), o2n / parabolic / umax (n=...), f4_nilradical
        **params: Family parameters

    Returns:
        LieAlgebra: Shared, immutable instance for repeated parameters

    Raises:
        DomainError: Unknown family or parameters out of range
    """
    canonical = FAMILY_ALIASES.get(family)
    if canonical is None:
        raise DomainError(f"Unknown algebra family: {family}")
    if canonical == "orthogonal":
        gram = params.get("gram")
        if gram is None:
            raise DomainError("Orthogonal family needs a gram matrix")
        if not isinstance(gram, ExactMatrix):
            gram = ExactMatrix(gram)
        return orthogonal(gram)
    required = {"o1k": "k", "su1k": "k", "sp1k": "k", "heisC": "dim", "heisH": "dim",
                "o2n": "n", "parabolic": "n", "umax": "n"}.get(canonical)
    if required is not None:
        if required not in params:
            raise DomainError(f"{family} needs parameter {required}")
        value = params[required]
        if not isinstance(value, int) or isinstance(value, bool):
            raise DomainError(f"{family}: {required} must be an integer")
        if canonical in ("o2n", "parabolic", "umax") and value < 3:
            raise DomainError(f"{family} needs n >= 3, got {value}")
        key = ((required, value),)
    else:
        key = ()
    return _cached(canonical, key)


# ---------------------------------------------------------------------------
# Isomorphism certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingCertificate:
    """Explicit isomorphism from a subalgebra onto a Heisenberg algebra"""

    description: str
    linear_map: LinearMap
    certify: str
    verified: bool

    def to_dict(self):
        src, tgt = self.linear_map.source, self.linear_map.target
        images = {}
        for i, column in enumerate(self.linear_map.matrix.columns()):
            images[src.labels[i]] = {tgt.labels[k]: format_fraction(c) for k, c in enumerate(column) if c}
        return {
            "description": self.description,
            "source": src.name,
            "target": tgt.name,
            "certify": self.certify,
            "verified": self.verified,
            "images": images,
        }


def heisenberg_embedding(family, k) -> EmbeddingCertificate:
    """
    h_alpha (+) h_2alpha of su(1,k) onto heisC(2k-1), or of sp(1,k) onto heisH(4k-1)

    h_alpha generators go to the Heisenberg generators in the same order; the
    images of the h_2alpha generators are solved from the brackets.
    """
    if family not in ("su1k", "sp1k"):
        raise DomainError(f"Heisenberg embeddings exist for su1k and sp1k, not {family}")
    if k < 2:
        raise DomainError(f"h_alpha is trivial for k = {k}")
    g = make_algebra(family, k=k)
    layout = g.meta["layout"]
    labels = [g.labels[i] for i in layout.alpha + layout.two_alpha]
    h, _ = subalgebra(g, g.coordinate_subspace(labels), labels=labels,
                      name=f"h_alpha+h_2alpha of {g.name}")
    if family == "su1k":
        target, certify = make_algebra("heisC", dim=2 * k - 1), "heisC"
    else:
        target, certify = make_algebra("heisH", dim=4 * k - 1), "heisH"
    known = {a: unit_vector(target.dim, a) for a in range(len(layout.alpha))}
    f = extend_to_center(h, target, known)
    verified = verify_isomorphism(f, certify)
    logger.debug(f"{h.name} -> {target.name}: {'verified' if verified else 'FAILED'}")
    return EmbeddingCertificate(f"{h.name} -> {target.name}", f, certify, verified)


def quaternionic_nilradical_embedding() -> EmbeddingCertificate:
    """H (+) Im(H) inside the octonion nilradical, mapped identically onto heisH(7)"""
    n = make_algebra("f4_nilradical")
    labels = ["o0", "o1", "o2", "o3", "p1", "p2", "p3"]
    h, _ = subalgebra(n, n.coordinate_subspace(labels), labels=labels, name="H+Im(H) of f4_nilradical")
    target = make_algebra("heisH", dim=7)
    f = LinearMap(h, target, ExactMatrix.identity(target.dim))
    verified = verify_isomorphism(f, "heisH")
    return EmbeddingCertificate(f"{h.name} -> {target.name}", f, "heisH", verified)


@dataclass(frozen=True)
class SemidirectReport:
    """u_max(n) as R t (x) heisC(2n-3) with t acting by (tv + i0) + 0Z"""

    n: int
    ideal_dim: int
    ideal_is_ideal: bool
    codimension: int
    derived_in_ideal: bool
    heisenberg_iso: bool
    derivation_matches: bool
    center_image: Dict[str, str]
    complement: Tuple[str, ...] = ("t",)

    @property
    def passed(self):
        return (self.ideal_is_ideal and self.codimension == 1 and self.derived_in_ideal
                and self.heisenberg_iso and self.derivation_matches)

    def to_dict(self):
        return {
            "n": self.n,
            "ideal_dim": self.ideal_dim,
            "ideal_is_ideal": self.ideal_is_ideal,
            "codimension": self.codimension,
            "derived_in_ideal": self.derived_in_ideal,
            "heisenberg_iso": self.heisenberg_iso,
            "derivation_matches": self.derivation_matches,
            "alpha_image": self.center_image,
            "splitting_complement": list(self.complement),
        }


def umax_semidirect(n) -> SemidirectReport:
    """
    Check that {t = 0} is a codimension-one Heisenberg ideal of u_max(n) and
    that ad(t) acts on it by the derivation z = x + iy -> y

    The splitting uses the complement spanned by t.
    """
    u = make_algebra("umax", n=n)
    m = n - 2
    ideal_labels = [label for label in u.labels if label != "t"]
    ideal_space = u.coordinate_subspace(ideal_labels)
    ideal, inclusion = subalgebra(u, ideal_space, labels=ideal_labels, name=f"t=0 ideal of {u.name}")
    derived = structure_report(u).derived

    target = make_algebra("heisC", dim=2 * m + 1)
    known = {}
    for i in range(m):
        known[i] = unit_vector(target.dim, 2 * i)
        known[m + i] = unit_vector(target.dim, 2 * i + 1)
    f = extend_to_center(ideal, target, known)
    iso = verify_isomorphism(f, "heisC")

    # transport ad(t) to heisC through f
    t = u.basis_vector("t")
    f_inverse = inverse(f.matrix) if f.is_bijective() else None
    matches = f_inverse is not None
    if matches:
        for col in range(target.dim):
            x = f_inverse.column(col)
            image = u.bracket(t, inclusion(x))
            coords = ideal_space.coordinates(image)
            if coords is None:
                matches = False
                break
            got = f(coords)
            expected = [Fraction(0)] * target.dim
            if col < 2 * m and col % 2 == 1:
                expected[col - 1] = Fraction(1)
            if tuple(expected) != got:
                matches = False
                break

    alpha_image = f.matrix.column(ideal.index("alpha"))
    report = SemidirectReport(
        n=n,
        ideal_dim=ideal.dim,
        ideal_is_ideal=ideal_space.is_ideal(),
        codimension=u.dim - ideal.dim,
        derived_in_ideal=ideal_space.contains_subspace(derived),
        heisenberg_iso=iso,
        derivation_matches=matches,
        center_image={target.labels[k]: format_fraction(c) for k, c in enumerate(alpha_image) if c},
    )
    logger.debug(f"u_max({n}) semidirect structure: {report.to_dict()}")
    return report
