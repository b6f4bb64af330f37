"""
LieVerify Backend - Root Systems Module
Abstract root systems, exhaustive embedding search and the minimal faithful
representation dimensions of o(n, C)
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .errors import DomainError
from .exactmath import EchelonBasis, Vector, lin_comb, vec_dot, vec_scale


logger = logging.getLogger(__name__)

_COMPONENT = re.compile(r"^(BC|A|B|C|D)(\d+)$")


@dataclass(frozen=True)
class RootSystem:
    """Finite root system realized by integer vectors in Q^ambient_dim"""

    type_tag: str
    rank: int
    ambient_dim: int
    roots: Tuple[Vector, ...]

    def __post_init__(self):
        root_set = set(self.roots)
        if any(vec_scale(-1, r) not in root_set for r in self.roots):
            raise DomainError(f"{self.type_tag}: roots are not closed under negation")
        if len(EchelonBasis(self.ambient_dim, self.roots)) != self.rank:
            raise DomainError(f"{self.type_tag}: roots do not span a space of dimension {self.rank}")

    def __len__(self):
        return len(self.roots)

    def __contains__(self, vector):
        return tuple(Fraction(c) for c in vector) in self._root_set()

    def _root_set(self):
        return set(self.roots)

    def base(self) -> Tuple[Vector, ...]:
        """First maximal independent family of roots, in listing order"""
        echelon = EchelonBasis(self.ambient_dim)
        for r in self.roots:
            echelon.add(r)
        return tuple(echelon.basis)

    def has_doubled_root(self) -> bool:
        root_set = self._root_set()
        return any(vec_scale(2, r) in root_set for r in self.roots)


def _e(n, *pairs):
    v = [Fraction(0)] * n
    for i, c in pairs:
        v[i] += c
    return tuple(v)


def _component(letter, r):
    """Roots of one simple system, in listing order"""
    if r < 1:
        raise DomainError(f"Rank must be positive: {letter}{r}")
    roots: List[Vector] = []
    if letter == "A":
        n = r + 1
        for i in range(n):
            for j in range(n):
                if i != j:
                    roots.append(_e(n, (i, 1), (j, -1)))
        return n, roots
    n = r
    if letter in ("B", "BC"):
        for i in range(n):
            roots += [_e(n, (i, 1)), _e(n, (i, -1))]
    if letter in ("C", "BC"):
        for i in range(n):
            roots += [_e(n, (i, 2)), _e(n, (i, -2))]
    if letter == "D" and r < 2:
        raise DomainError("D_r needs r >= 2")
    for i, j in combinations(range(n), 2):
        for a in (1, -1):
            for b in (1, -1):
                roots.append(_e(n, (i, a), (j, b)))
    return n, roots


def make_root_system(tag) -> RootSystem:
    """
    Standard integer realization of a root system tag

    Tags are A_r, B_r, C_r, D_r and BC_r components (underscore optional)
    joined by '+' or '⊕'; A_r lives in the sum-zero hyperplane of Q^(r+1).

    Raises:
        DomainError: Unsupported tag
    """
    parts = [p.strip().replace("_", "") for p in re.split(r"[+⊕]", str(tag))]
    if not parts or any(not p for p in parts):
        raise DomainError(f"Unsupported root system tag: {tag!r}")
    blocks = []
    for part in parts:
        match = _COMPONENT.match(part)
        if match is None:
            raise DomainError(f"Unsupported root system tag: {tag!r}")
        letter, r = match.group(1), int(match.group(2))
        blocks.append((letter, r) + _component(letter, r))

    ambient = sum(b[2] for b in blocks)
    roots = []
    offset = 0
    for _, _, n, block_roots in blocks:
        for root in block_roots:
            roots.append(tuple([Fraction(0)] * offset) + root + tuple([Fraction(0)] * (ambient - offset - n)))
        offset += n
    canonical = "+".join(f"{letter}{r}" for letter, r, _, _ in blocks)
    return RootSystem(canonical, sum(r for _, r, _, _ in blocks), ambient, tuple(roots))


# ---------------------------------------------------------------------------
# Embedding search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingResult:
    """
    Outcome of the exhaustive search

    examined counts complete base-image tuples that were tested; pruned counts
    the complete tuples skipped because a partial assignment already failed.
    After an exhaustive negative search examined + pruned == predicted.
    """

    source: str
    target: str
    embeds: bool
    witness: Optional[Tuple[Tuple[Vector, Vector], ...]]
    examined: int
    pruned: int
    predicted: int
    exhausted: bool
    nodes: int = 0
    reason: str = ""

    def __bool__(self):
        return self.embeds

    def to_dict(self):
        def fmt(v):
            return [str(c) for c in v]
        return {
            "source": self.source,
            "target": self.target,
            "embeds": self.embeds,
            "witness": [[fmt(b), fmt(img)] for b, img in self.witness] if self.witness else None,
            "examined": self.examined,
            "pruned": self.pruned,
            "predicted": self.predicted,
            "exhausted": self.exhausted,
            "nodes": self.nodes,
            "reason": self.reason,
        }


def cartan_integer(a, b) -> Fraction:
    """<a, b^v> = 2 (a, b) / (b, b) for the standard inner product"""
    return 2 * vec_dot(a, b) / vec_dot(b, b)


def embeds(r1: RootSystem, r2: RootSystem) -> EmbeddingResult:
    """
    Search for an injective linear map span(R1) -> span(R2) sending R1 into R2
    and preserving Cartan integers

    Images of a base of R1 are chosen one at a time among the roots of R2.
    After each choice every root of R1 lying in the span of the assigned base
    vectors must already map onto a root, its Cartan integers against the
    roots placed so far must match those in R1, and the images must stay
    independent. Roots of different summands are orthogonal, so their images
    must be orthogonal too.
    """
    predicted = len(r2) ** r1.rank
    if r1.rank > r2.rank:
        return EmbeddingResult(r1.type_tag, r2.type_tag, False, None, 0, predicted, predicted, True,
                               reason="rank of source exceeds rank of target")

    base = r1.base()
    if r1.ambient_dim == r2.ambient_dim and r1._root_set() == r2._root_set():
        return EmbeddingResult(r1.type_tag, r2.type_tag, True, tuple((b, b) for b in base),
                               1, 0, predicted, False, reason="identity")

    echelon = EchelonBasis(r1.ambient_dim, base)
    # depth at which each root becomes checkable
    by_depth: Dict[int, List[Tuple[Tuple[Fraction, ...], Vector]]] = {}
    for root in r1.roots:
        c = echelon.express(root)
        depth = max(i for i, a in enumerate(c) if a) + 1
        by_depth.setdefault(depth, []).append((c, root))

    target_roots = r2.roots
    target_set = set(target_roots)
    counts = {"examined": 0, "pruned": 0, "nodes": 0}

    def consistent(images, depth):
        placed = []
        for d in range(1, depth + 1):
            for c, root in by_depth.get(d, ()):
                image = lin_comb(c[:d], images[:d], r2.ambient_dim)
                if d == depth and image not in target_set:
                    return False
                placed.append((root, image, d == depth))
        for root, image, new in placed:
            if not new:
                continue
            for other, other_image, _ in placed:
                if (cartan_integer(root, other) != cartan_integer(image, other_image)
                        or cartan_integer(other, root) != cartan_integer(other_image, image)):
                    return False
        return True

    def search(images, independent):
        depth = len(images)
        if depth == r1.rank:
            counts["examined"] += 1
            return list(images)
        remaining = len(target_roots) ** (r1.rank - depth - 1)
        for candidate in target_roots:
            counts["nodes"] += 1
            trial = EchelonBasis(r2.ambient_dim, independent)
            if not trial.add(candidate):
                counts["pruned"] += remaining
                continue
            images.append(candidate)
            if not consistent(images, depth + 1):
                counts["pruned"] += remaining
                images.pop()
                continue
            found = search(images, trial.basis)
            if found is not None:
                return found
            images.pop()
        return None

    images = search([], [])
    witness = tuple(zip(base, images)) if images is not None else None
    result = EmbeddingResult(
        r1.type_tag, r2.type_tag, images is not None, witness,
        counts["examined"], counts["pruned"], predicted,
        exhausted=images is None, nodes=counts["nodes"],
    )
    logger.debug(f"{r1.type_tag} into {r2.type_tag}: {result.embeds} "
                 f"(examined {result.examined}, pruned {result.pruned} of {predicted})")
    return result


# ---------------------------------------------------------------------------
# Representation dimensions
# ---------------------------------------------------------------------------

def min_faithful_dim(n) -> int:
    """
    Smallest dimension d_n of a faithful irreducible representation of o(n, C)

    o(2p) (p != 2): min(2p, 2^(p-1)); o(2p+1): min(2p+1, 2^p); o(4) = o(3) + o(3): 4.

    Raises:
        DomainError: When n < 3
    """
    if not isinstance(n, int) or n < 3:
        raise DomainError(f"d_n is defined for n >= 3, got {n}")
    if n == 4:
        return 4
    p, odd = divmod(n, 2)
    if odd:
        return min(n, 2 ** p)
    return min(n, 2 ** (p - 1))


def tabulated_min_faithful_dim(n) -> int:
    """d_3 = 2, d_4 = d_5 = d_6 = 4 and d_n = n from n = 7 on"""
    if not isinstance(n, int) or n < 3:
        raise DomainError(f"d_n is defined for n >= 3, got {n}")
    if n == 3:
        return 2
    if n <= 6:
        return 4
    return n


def dim_inequality_scan(bound) -> List[Tuple[int, int]]:
    """Pairs (n, m) with 3 <= m <= n <= bound and d_n * d_m < n + m"""
    if bound < 3:
        raise DomainError(f"Scan bound must be at least 3, got {bound}")
    return [(n, m) for n in range(3, bound + 1) for m in range(3, n + 1)
            if min_faithful_dim(n) * min_faithful_dim(m) < n + m]


def resolve_exceptions(pairs) -> List[Dict]:
    """
    Explain each exception of the dimension scan

    (3, 3) is o(1,2) + o(1,2) = o(2,2), excluded from the bound; (6, 3) is
    ruled out because A3 + A1 does not embed into D4.
    """
    out = []
    for n, m in pairs:
        if (n, m) == (3, 3):
            out.append({"pair": [n, m], "resolution": "o(1,2)+o(1,2) = o(2,2), excluded from the bound",
                        "resolved": True})
        elif (n, m) == (6, 3):
            search = embeds(make_root_system("A3+A1"), make_root_system("D4"))
            out.append({"pair": [n, m], "resolution": "A3+A1 does not embed into D4",
                        "resolved": not search.embeds, "search": search.to_dict()})
        else:
            out.append({"pair": [n, m], "resolution": "unexplained", "resolved": False})
    return out
