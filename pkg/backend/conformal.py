"""
LieVerify Backend - Conformal Module
The quotient g/p of o(2,n) by its parabolic, the invariant conformal class of
Lorentz forms on it and the sub-Lorentzian trichotomy for subspaces
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .errors import ConstructionError, ContractViolation, DomainError
from .exactmath import ExactMatrix, SymmetricForm, Vector, kernel, span_basis
from .families import make_algebra, parabolic_labels
from .liealg import LieAlgebra, Subspace, bracket_space
from .utils import format_fraction


logger = logging.getLogger(__name__)

RIEMANNIAN = "riemannian"
LORENTZIAN = "lorentzian"
DEGENERATE_POSITIVE = "degenerate_positive"

SIGNATURE_CONVENTION = "Lorentz signature counted as (1 negative, n-1 positive)"
GRADING_GENERATOR = "a"


@dataclass(frozen=True)
class ConformalModel:
    """
    o(2,n), its parabolic p and the induced Lorentz form Q on g/p

    g/p is identified with the span of the coordinate directions c, z_i, beta;
    `quotient_indices` are their positions in the basis of g.
    """

    n: int
    g: LieAlgebra
    p: Subspace
    quotient_labels: Tuple[str, ...]
    quotient_indices: Tuple[int, ...]
    form: SymmetricForm
    invariance_dim: int = 1

    @property
    def quotient_dim(self):
        return len(self.quotient_indices)

    def project(self, vector) -> Vector:
        """Class of an element of g in g/p"""
        return tuple(Fraction(vector[i]) for i in self.quotient_indices)

    def lift(self, coords) -> Vector:
        v = [Fraction(0)] * self.g.dim
        for i, c in zip(self.quotient_indices, coords):
            v[i] = Fraction(c)
        return tuple(v)

    def quotient_action(self, x) -> ExactMatrix:
        """Matrix of the map induced by ad(x) on g/p, for x in p"""
        if not self.p.contains(x):
            raise DomainError("Quotient action is only defined for elements of p")
        columns = []
        for s in range(self.quotient_dim):
            q = self.g.basis_vector(self.quotient_indices[s])
            columns.append(self.project(self.g.bracket(x, q)))
        return ExactMatrix.from_columns(columns, nrows=self.quotient_dim)

    def rescaled(self, c) -> "ConformalModel":
        """Same model with Q replaced by c*Q for c > 0"""
        c = Fraction(c)
        if c <= 0:
            raise DomainError(f"Conformal rescaling needs a positive factor, got {c}")
        return replace(self, form=self.form.scaled(c))

    def to_dict(self):
        pos, neg, null = self.form.signature()
        return {
            "n": self.n,
            "dim_g": self.g.dim,
            "dim_p": self.p.dim,
            "dim_quotient": self.quotient_dim,
            "quotient_basis": list(self.quotient_labels),
            "gram": [[format_fraction(v) for v in row] for row in self.form.gram.rows],
            "signature": {"negative": neg, "positive": pos, "null": null},
            "invariance_dim": self.invariance_dim,
            "convention": SIGNATURE_CONVENTION,
        }


def _symmetric_slots(m):
    return [(i, j) for i in range(m) for j in range(i, m)]


def _invariance_rows(action: ExactMatrix, slots):
    """Rows of rho^T Q + Q rho = 0 in the upper-triangle unknowns of Q"""
    m = action.nrows
    position = {}
    for idx, (i, j) in enumerate(slots):
        position[(i, j)] = position[(j, i)] = idx
    rows = []
    for r, s in slots:
        row = [Fraction(0)] * len(slots)
        for k in range(m):
            # (rho^T Q)_{rs} = sum_k rho_{kr} Q_{ks};  (Q rho)_{rs} = sum_k Q_{rk} rho_{ks}
            if action[k, r]:
                row[position[(k, s)]] += action[k, r]
            if action[k, s]:
                row[position[(r, k)]] += action[k, s]
        if any(row):
            rows.append(row)
    return rows


def build_model(n) -> ConformalModel:
    """
    Build o(2,n), p and the invariant Lorentz form on g/p

    Q is solved from the linear system rho(X)^T Q + Q rho(X) = 0 over a basis of
    [p, p]; every character of p vanishes there, so the invariant conformal
    class is the one-dimensional solution space. The sign is fixed so that Q
    has exactly one negative direction.

    Args:
        n (int): Size parameter, n >= 3

    Returns:
        ConformalModel: The model

    Raises:
        DomainError: When n < 3
        ConstructionError: When the solution space is not one-dimensional or
            its generator is not of Lorentz signature
    """
    if not isinstance(n, int) or n < 3:
        raise DomainError(f"The conformal model needs n >= 3, got {n}")
    g = make_algebra("o2n", n=n)
    p_labels = parabolic_labels(n)
    p = g.coordinate_subspace(p_labels)
    if not p.is_subalgebra():
        raise ConstructionError(f"p(2,{n}) is not closed under the bracket")
    kept = set(p_labels)
    quotient_labels = tuple(label for label in g.labels if label not in kept)
    if len(quotient_labels) != n:
        raise ConstructionError(f"p(2,{n}) has codimension {len(quotient_labels)}, expected {n}")

    scaffold = ConformalModel(n, g, p, quotient_labels,
                              tuple(g.index(label) for label in quotient_labels),
                              SymmetricForm(ExactMatrix.identity(n)), 0)

    derived = bracket_space(p, p)
    slots = _symmetric_slots(n)
    rows = []
    for x in derived.basis:
        rows += _invariance_rows(scaffold.quotient_action(x), slots)
    solutions = kernel(ExactMatrix(rows, ncols=len(slots))) if rows else []
    if len(solutions) != 1:
        raise ConstructionError(
            f"Invariant forms on o(2,{n})/p: solution space has dimension {len(solutions)}, expected 1"
        )
    entries = {}
    for (i, j), value in zip(slots, solutions[0]):
        entries[(i, j)] = entries[(j, i)] = value
    form = SymmetricForm(ExactMatrix.from_entries(n, n, entries))

    pos, neg, null = form.signature()
    if (pos, neg) == (1, n - 1):
        form = form.scaled(-1)
        pos, neg = neg, pos
    if (neg, pos, null) != (1, n - 1, 0):
        raise ConstructionError(
            f"Invariant form on o(2,{n})/p has signature (neg {neg}, pos {pos}, null {null}), not Lorentz"
        )
    model = replace(scaffold, form=form, invariance_dim=1)
    logger.debug(f"Conformal model o(2,{n})/p: dim g {g.dim}, dim p {p.dim}, derived [p,p] dim {derived.dim}")
    return model


# ---------------------------------------------------------------------------
# Conformal factors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConformalFactor:
    """lambda with rho^T Q + Q rho = lambda Q, and whether rho is nilpotent"""

    factor: Fraction
    nilpotent: bool

    def to_dict(self):
        return {"factor": format_fraction(self.factor), "nilpotent": self.nilpotent}


def ad_conformal_factor(model: ConformalModel, p_elem) -> ConformalFactor:
    """
    Conformal factor of the quotient action of an element of p

    Raises:
        DomainError: When p_elem is not in p
        ContractViolation: When the symmetrized action is not a multiple of Q
    """
    action = model.quotient_action(p_elem)
    gram = model.form.gram
    symmetrized = action.transpose() @ gram + gram @ action
    i, j = next(iter(gram.nonzero_entries()))
    factor = symmetrized[i, j] / gram[i, j]
    if symmetrized != gram.scale(factor):
        raise ContractViolation("Quotient action is not conformal for Q")
    return ConformalFactor(factor, action.nilpotency_index() is not None)


def generator_factors(model: ConformalModel) -> Dict[str, ConformalFactor]:
    """Conformal factor of every basis generator of p, by label"""
    g = model.g
    out = {}
    for i, label in enumerate(g.labels):
        if i in model.quotient_indices:
            continue
        out[label] = ad_conformal_factor(model, g.basis_vector(i))
    return out


# ---------------------------------------------------------------------------
# Sub-Lorentzian trichotomy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubspaceClass:
    label: str
    dim: int
    signature: Tuple[int, int, int]

    @property
    def kernel_dim(self):
        return self.signature[2]

    def to_dict(self):
        pos, neg, null = self.signature
        return {"label": self.label, "dim": self.dim,
                "signature": {"negative": neg, "positive": pos, "null": null}}


def classify_subspace(model: ConformalModel, vectors) -> SubspaceClass:
    """
    Sub-Lorentzian type of a subspace W of g/p

    Args:
        model: Conformal model supplying Q
        vectors: Spanning vectors of W in quotient coordinates

    Returns:
        SubspaceClass: riemannian (Q|W positive definite), lorentzian (one
            negative direction) or degenerate_positive (one-dimensional
            kernel, positive on a complement)

    Raises:
        DomainError: When W is zero
        ContractViolation: For any other signature
    """
    basis = span_basis([tuple(Fraction(c) for c in v) for v in vectors], model.quotient_dim)
    if not basis:
        raise DomainError("Cannot classify the zero subspace")
    pos, neg, null = model.form.restrict(basis).signature()
    if neg == 0 and null == 0:
        label = RIEMANNIAN
    elif neg == 1 and null == 0:
        label = LORENTZIAN
    elif neg == 0 and null == 1:
        label = DEGENERATE_POSITIVE
    else:
        raise ContractViolation(
            f"Restriction of Q has signature (neg {neg}, pos {pos}, null {null}), outside the trichotomy"
        )
    return SubspaceClass(label, len(basis), (pos, neg, null))


@dataclass(frozen=True)
class IsotropicSearch:
    """Largest totally isotropic coordinate subspace of (g/p, Q)"""

    max_dim: int
    examined: int
    witness: Tuple[str, ...]
    signature_bound: int

    @property
    def passed(self):
        return self.max_dim <= 1 and self.signature_bound <= 1

    def to_dict(self):
        return {"max_dim": self.max_dim, "examined": self.examined,
                "witness": list(self.witness), "signature_bound": self.signature_bound}


def isotropic_search(model: ConformalModel) -> IsotropicSearch:
    """
    Exhaustive search over coordinate subspaces for totally isotropic ones

    The signature bound is min(pos, neg) + null, the largest possible
    dimension of a totally isotropic subspace.
    """
    m = model.quotient_dim
    gram = model.form.gram
    best: Tuple[int, ...] = ()
    examined = 0
    for size in range(1, m + 1):
        for subset in combinations(range(m), size):
            examined += 1
            if size > len(best) and all(gram[i, j] == 0 for i in subset for j in subset):
                best = subset
    pos, neg, null = model.form.signature()
    return IsotropicSearch(len(best), examined,
                           tuple(model.quotient_labels[i] for i in best),
                           min(pos, neg) + null)


# ---------------------------------------------------------------------------
# Root-space images
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootImage:
    """Image in g/p of a joint eigenspace of ad(a), ad(d)"""

    weight: Tuple[Fraction, Fraction]
    labels: Tuple[str, ...]
    image_dim: int
    kind: Optional[SubspaceClass]

    def to_dict(self):
        return {
            "weight": [format_fraction(w) for w in self.weight],
            "labels": list(self.labels),
            "image_dim": self.image_dim,
            "class": self.kind.label if self.kind else None,
        }


def root_space_images(model: ConformalModel) -> List[RootImage]:
    """
    Classify the images in g/p of the root spaces of o(2,n)

    The basis of o(2,n) consists of joint eigenvectors of ad(a) and ad(d);
    spaces with zero image are listed with no class.
    """
    g = model.g
    cartan = [g.basis_vector("a"), g.basis_vector("d")]
    groups: Dict[Tuple[Fraction, Fraction], List[int]] = {}
    for i in range(g.dim):
        e = g.basis_vector(i)
        weight = []
        for h in cartan:
            image = g.bracket(h, e)
            value = image[i]
            if image != tuple(value * c for c in e):
                raise ContractViolation(f"{g.labels[i]} is not a joint eigenvector of the Cartan subspace")
            weight.append(value)
        groups.setdefault(tuple(weight), []).append(i)

    out = []
    for weight in sorted(groups):
        indices = groups[weight]
        images = span_basis([model.project(g.basis_vector(i)) for i in indices], model.quotient_dim)
        kind = classify_subspace(model, images) if images else None
        out.append(RootImage(weight, tuple(g.labels[i] for i in indices), len(images), kind))
    return out
