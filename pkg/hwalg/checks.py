"""
Bounded checks of the structure theorems for the highest-weight algebra.
"""
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from arithmetic.linalg import EchelonBasis
from arithmetic.scalars import random_scalar
from lie.rootdata import FoldedRootData, Weight
from hwalg.embedding import brute_force_surjective, embed_iota
from hwalg.symmetric import (
    HighestWeightAlgebra,
    HMonomial,
    SymLaurentElement,
    bounded_monomials,
    ev_xi,
    highest_weight_algebra,
)
from spectrum.xi import (
    OrbitMultiset,
    alpha_inv,
    alpha_iso,
    is_admissible,
    random_equivariant,
    symmetrize,
    untwisted_multiset,
    wt0,
    XiFunction,
)

logger = logging.getLogger(__name__)


@dataclass
class SpanningReport:
    lam: Weight
    bound: int
    family_size: int = 0
    family_rank: int = 0
    reductions_checked: int = 0
    failures: List[str] = field(default_factory=list)
    witness: Optional[Dict[str, str]] = None

    @property
    def independent(self):
        return self.family_rank == self.family_size

    @property
    def passed(self):
        return self.independent and not self.failures

    def to_dict(self):
        return {
            "lambda": list(self.lam),
            "bound": self.bound,
            "family_size": self.family_size,
            "family_rank": self.family_rank,
            "independent": self.independent,
            "reductions_checked": self.reductions_checked,
            "failures": list(self.failures),
            "witness": self.witness,
        }


def basis_spanning_check(hw: HighestWeightAlgebra, bound: int) -> SpanningReport:
    """Independence of the bounded spanning family and reduction of over-long products.

    The family consists of the images of monomials with at most
    lambda(h_i) factors at node i and steps 0 < |k| <= bound. A product
    with lambda(h_i) + 1 factors at node i has to lie in the span of the
    family with steps up to (lambda(h_i) + 1) * bound.
    """
    report = SpanningReport(hw.lam, bound)
    family = bounded_monomials(hw, bound)
    echelon = EchelonBasis(track=True)
    for mono in family:
        if not echelon.add(hw.tau_image(mono).terms):
            relation = echelon.last_relation
            report.witness = {str(family[i]): str(c) for i, c in sorted(relation.items())}
    report.family_size = len(family)
    report.family_rank = echelon.rank

    for i in range(hw.rank):
        r = hw.shape.sizes[i]
        if r == 0:
            continue
        lengths = [0] * hw.rank
        lengths[i] = r
        wide = (r + 1) * bound
        span = EchelonBasis()
        for mono in bounded_monomials(hw, wide, lengths):
            span.add(hw.tau_image(mono).terms)
        long_lengths = [0] * hw.rank
        long_lengths[i] = r + 1
        for mono in bounded_monomials(hw, bound, long_lengths):
            if mono.count(i) != r + 1:
                continue
            report.reductions_checked += 1
            if not span.contains(hw.tau_image(mono).terms):
                report.failures.append(f"{mono} does not reduce to at most {r} factors")
    logger.info(
        f"Spanning check for lambda = {hw.lam}: rank {report.family_rank}/{report.family_size}, "
        f"{report.reductions_checked} reductions"
    )
    return report


def elementary_from_power_sums(hw: HighestWeightAlgebra, i: int, inverse: bool = False) -> List[SymLaurentElement]:
    """e_0, ..., e_r of the variables t^(+-step) of factor i via Newton's identities."""
    r = hw.shape.sizes[i]
    step = hw.shape.steps[i] * (-1 if inverse else 1)
    e = [hw.one()]
    for j in range(1, r + 1):
        total = hw.zero()
        for k in range(1, j + 1):
            term = e[j - k] * hw.sym_generator(i, k * step)
            total = total + term.scale((-1) ** (k - 1))
        e.append(total.scale(Fraction(1, j)))
    return e


def elementary_check(hw: HighestWeightAlgebra, i: int) -> List[str]:
    """e_j from power sums equals the orbit sum of j equal steps; e_r e_r^-1 = 1."""
    r = hw.shape.sizes[i]
    step = hw.shape.steps[i]
    if r == 0:
        return []
    bad = []
    e = elementary_from_power_sums(hw, i)
    e_inv = elementary_from_power_sums(hw, i, inverse=True)
    for j in range(1, r + 1):
        key = list(hw.shape.zero_key())
        key[i] = (0,) * (r - j) + (step,) * j
        if e[j] != hw.monomial(tuple(key)):
            bad.append(f"e_{j} of factor {i + 1} differs from the orbit sum")
    if e[r] * e_inv[r] != hw.one():
        bad.append(f"e_{r} of factor {i + 1} times its inverse is not 1")
    return bad


def random_multiset(rng: random.Random, fd: FoldedRootData, lam0: Weight, point_bound: int = 4) -> OrbitMultiset:
    out = OrbitMultiset.for_fold(fd)
    for i0, count in enumerate(lam0):
        for _ in range(count):
            out.add(i0, random_scalar(rng, fd.m, point_bound, nonzero=True))
    return out


def random_hmonomial(rng: random.Random, rank0: int, max_length: int = 3, bound: int = 3) -> HMonomial:
    length = rng.randint(0, max_length)
    return HMonomial.of((rng.randrange(rank0), rng.randint(-bound, bound)) for _ in range(length))


def commdiag_violations(fd: FoldedRootData, lam0: Weight, rng: random.Random, samples: int) -> List[str]:
    """ev at alpha^-1(f) of a monomial equals ev at f of its image."""
    hw = highest_weight_algebra(fd, lam0, twisted=True)
    bad = []
    for _ in range(samples):
        fhat = random_multiset(rng, fd, lam0)
        mono = random_hmonomial(rng, fd.rank0)
        left = ev_xi(alpha_inv(fhat, fd), mono, fd)
        right = hw.ev_multiset(fhat, hw.tau_image(mono))
        if left != right:
            bad.append(f"{mono} at {fhat.to_dict()}: {left} != {right}")
    return bad


def alpha_roundtrip_violations(fd: FoldedRootData, rng: random.Random, samples: int) -> List[str]:
    """alpha_inv(alpha(chi)) = chi and wt0(chi) = wt(alpha(chi))."""
    bad = []
    for _ in range(samples):
        chi = random_equivariant(rng, fd, orbits=rng.randint(0, 3))
        fhat = alpha_iso(chi, fd)
        if alpha_inv(fhat, fd) != chi:
            bad.append(f"roundtrip failed for {chi.to_dict()}")
        if wt0(chi, fd) != fhat.wt():
            bad.append(f"weight mismatch for {chi.to_dict()}: {wt0(chi, fd)} != {fhat.wt()}")
    return bad


def iota_consistency_violations(xi: XiFunction, fd: FoldedRootData, monomials: List[HMonomial]) -> List[str]:
    """Evaluating iota(tau(mono)) at xi agrees with ev of the symmetrized function.

    This is the module isomorphism C_xi = C_Sigma(xi) over the twisted algebra.
    """
    embedding = embed_iota(xi.wt(), fd)
    chi = symmetrize(xi, fd)
    target = embedding.target
    point = untwisted_multiset(xi)
    bad = []
    if not is_admissible(xi, fd.m):
        logger.warning(f"iota consistency evaluated at non-admissible {xi.to_dict()}")
    for mono in monomials:
        image = embedding.image(embedding.source.tau_image(mono))
        left = target.ev_multiset(point, image)
        right = ev_xi(chi, mono, fd)
        if left != right:
            bad.append(f"{mono}: {left} != {right}")
    return bad


def iota_predicate_violations(fd: FoldedRootData, weights: List[Weight], bound: int = 1) -> List[str]:
    """The surjectivity criterion agrees with a brute-force rank comparison on an exponent box."""
    bad = []
    for lam in weights:
        embedding = embed_iota(lam, fd)
        brute, image_rank, dim = brute_force_surjective(embedding, bound)
        if brute != embedding.surjective:
            bad.append(
                f"lambda = {list(lam)}: criterion says {embedding.surjective}, box rank {image_rank}/{dim}"
            )
    return bad
