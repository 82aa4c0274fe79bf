"""
Symmetric Laurent polynomials in several tensor factors.

Factor i has r_i variables whose exponents are multiples of a step
(|Gamma_i| for the twisted algebra, 1 for the untwisted one). An element is
stored in the monomial-orbit basis: a key is a tuple with one sorted
exponent tuple per factor and stands for the product of the orbit sums
m_mu = sum over distinct rearrangements of mu.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from sympy.utilities.iterables import multiset_permutations

from arithmetic.linalg import vec_add, vec_scale
from arithmetic.scalars import Scalar
from exceptions import XiFunctionError
from lie.rootdata import FoldedRootData, Weight
from spectrum.xi import OrbitMultiset, XiFunction

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]
TermKey = Tuple[Exponents, ...]


def distinct_rearrangements(mu: Exponents) -> List[Exponents]:
    return [tuple(p) for p in multiset_permutations(list(mu))]


def _is_sorted(values) -> bool:
    return all(values[i] <= values[i + 1] for i in range(len(values) - 1))


def monomial_product(mu: Exponents, nu: Exponents) -> Dict[Exponents, int]:
    """m_mu * m_nu in the orbit-sum basis (same number of variables)."""
    out: Dict[Exponents, int] = {}
    if not mu:
        return {(): 1}
    for p in distinct_rearrangements(mu):
        for b in distinct_rearrangements(nu):
            s = tuple(x + y for x, y in zip(p, b))
            # the coefficient of m_s is the coefficient of its sorted monomial
            if _is_sorted(s):
                out[s] = out.get(s, 0) + 1
    return out


@dataclass(frozen=True)
class Shape:
    """Variables per factor and the exponent step of each factor."""

    sizes: Tuple[int, ...]
    steps: Tuple[int, ...]
    m: int

    def zero_key(self) -> TermKey:
        return tuple((0,) * r for r in self.sizes)


class SymLaurentElement:
    """Linear combination of products of monomial orbit sums."""

    __slots__ = ("shape", "terms")

    def __init__(self, shape: Shape, terms: Optional[Dict[TermKey, object]] = None):
        self.shape = shape
        self.terms: Dict[TermKey, object] = {k: c for k, c in (terms or {}).items() if c}
        for key in self.terms:
            for i, mu in enumerate(key):
                if len(mu) != shape.sizes[i] or not _is_sorted(mu):
                    raise XiFunctionError(f"Exponents {mu} are not canonical for factor {i + 1}")
                if any(e % shape.steps[i] for e in mu):
                    raise XiFunctionError(f"Exponents {mu} are not multiples of {shape.steps[i]}")

    @classmethod
    def constant(cls, shape: Shape, value=1) -> "SymLaurentElement":
        return cls(shape, {shape.zero_key(): value})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, SymLaurentElement) and self.shape == other.shape and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        vec_add(out, other.terms)
        return SymLaurentElement(self.shape, out)

    def __sub__(self, other):
        out = dict(self.terms)
        vec_add(out, other.terms, -1)
        return SymLaurentElement(self.shape, out)

    def scale(self, coeff) -> "SymLaurentElement":
        return SymLaurentElement(self.shape, vec_scale(self.terms, coeff))

    def __mul__(self, other: "SymLaurentElement") -> "SymLaurentElement":
        out: Dict[TermKey, object] = {}
        cache: Dict[Tuple[Exponents, Exponents], Dict[Exponents, int]] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                partial: Dict[TermKey, object] = {(): c1 * c2}
                for mu, nu in zip(k1, k2):
                    pair = (mu, nu)
                    if pair not in cache:
                        cache[pair] = monomial_product(mu, nu)
                    nxt: Dict[TermKey, object] = {}
                    for head, c in partial.items():
                        for s, count in cache[pair].items():
                            key = head + (s,)
                            nxt[key] = nxt.get(key, 0) + c * count
                    partial = nxt
                vec_add(out, partial)
        return SymLaurentElement(self.shape, out)

    def canonical(self) -> List[Tuple[TermKey, object]]:
        return sorted(self.terms.items())

    def to_dict(self) -> List[dict]:
        return [
            {"exponents": [list(mu) for mu in key], "coeff": str(c)} for key, c in self.canonical()
        ]

    def __repr__(self):
        return f"SymLaurentElement({self.to_dict()})"


@dataclass(frozen=True)
class HMonomial:
    """prod h_i(k bar) (x) t^-k over the factors (node i, k), sorted."""

    factors: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def of(cls, factors: Iterable[Tuple[int, int]]) -> "HMonomial":
        return cls(tuple(sorted((int(i), int(k)) for i, k in factors)))

    def __mul__(self, other: "HMonomial") -> "HMonomial":
        return HMonomial.of(self.factors + other.factors)

    def __len__(self):
        return len(self.factors)

    def count(self, node: int) -> int:
        return sum(1 for i, _ in self.factors if i == node)

    def to_dict(self):
        return [{"node": i + 1, "k": k} for i, k in self.factors]

    def __str__(self):
        return "*".join(f"h{i + 1}(t^{-k})" for i, k in self.factors) or "1"


class HighestWeightAlgebra:
    """Tensor product over nodes of symmetric Laurent rings in r_i = lambda(h_i) variables."""

    def __init__(self, fd: FoldedRootData, lam: Weight, twisted: bool = True):
        self.fd = fd
        self.twisted = twisted and fd.m > 1
        self.lam = tuple(int(c) for c in lam)
        if self.twisted:
            if len(self.lam) != fd.rank0:
                raise XiFunctionError(f"Weight {lam} is not a weight of g_0")
            steps = tuple(fd.stab_sizes)
        else:
            if len(self.lam) != fd.rs.rank:
                raise XiFunctionError(f"Weight {lam} is not a weight of g")
            steps = (1,) * fd.rs.rank
        if any(c < 0 for c in self.lam):
            raise XiFunctionError(f"Weight {lam} is not dominant")
        self.shape = Shape(self.lam, steps, fd.m)

    @property
    def rank(self):
        return len(self.lam)

    def one(self) -> SymLaurentElement:
        return SymLaurentElement.constant(self.shape)

    def zero(self) -> SymLaurentElement:
        return SymLaurentElement(self.shape)

    def monomial(self, key: TermKey, coeff=1) -> SymLaurentElement:
        return SymLaurentElement(self.shape, {tuple(tuple(sorted(mu)) for mu in key): coeff})

    def sym_generator(self, i: int, k: int) -> SymLaurentElement:
        """Power sum t_1^k + ... + t_r^k in factor i."""
        r = self.shape.sizes[i]
        step = self.shape.steps[i]
        if k % step:
            raise XiFunctionError(f"Exponent {k} is not a multiple of |Gamma_{i + 1}| = {step}")
        if r == 0:
            raise XiFunctionError(f"Factor {i + 1} is absent (lambda(h_{i + 1}) = 0)")
        if k == 0:
            return SymLaurentElement.constant(self.shape, r)
        key = list(self.shape.zero_key())
        key[i] = tuple(sorted([k] + [0] * (r - 1)))
        return SymLaurentElement(self.shape, {tuple(key): 1})

    def tau_image(self, mono: HMonomial) -> SymLaurentElement:
        """Image of h_i(k bar) (x) t^-k under the map to the symmetric rings.

        A factor whose element h_i(k bar) vanishes (k not a multiple of
        |Gamma_i|, or lambda(h_i) = 0) sends the whole product to zero.
        """
        result = self.one()
        for i, k in mono.factors:
            if self.shape.sizes[i] == 0 or k % self.shape.steps[i]:
                return self.zero()
            result = result * self.sym_generator(i, -k)
        return result

    def ev_multiset(self, fhat: OrbitMultiset, x: SymLaurentElement) -> Scalar:
        """Substitute the orbit keys for t_j^|Gamma_i| and evaluate."""
        if fhat.wt() != self.lam:
            raise XiFunctionError(f"Multiset of weight {fhat.wt()} does not match lambda = {self.lam}")
        values = [fhat.values(i) for i in range(self.rank)]
        total = Scalar(0, 0, self.fd.m)
        cache: Dict[Tuple[int, Exponents], Scalar] = {}
        for key, coeff in x.terms.items():
            term = Scalar(1, 0, self.fd.m) * coeff
            for i, mu in enumerate(key):
                if (i, mu) not in cache:
                    step = self.shape.steps[i]
                    value = Scalar(0, 0, self.fd.m)
                    for p in distinct_rearrangements(mu):
                        prod = Scalar(1, 0, self.fd.m)
                        for var, e in zip(values[i], p):
                            prod = prod * var ** (e // step)
                        value = value + prod
                    cache[(i, mu)] = value
                term = term * cache[(i, mu)]
            total = total + term
        return total

    def to_dict(self):
        return {
            "lambda": list(self.lam),
            "twisted": self.twisted,
            "variables": list(self.shape.sizes),
            "steps": list(self.shape.steps),
        }


def highest_weight_algebra(fd: FoldedRootData, lam: Weight, twisted: bool = True) -> HighestWeightAlgebra:
    return HighestWeightAlgebra(fd, lam, twisted)


def h_value(fd: FoldedRootData, weight: Weight, i0: int, k: int) -> Scalar:
    """weight(h_i(k bar)) with h_i(k bar) = (1/|Gamma_i|) sum_j zeta^(-kj) H_sigma^j(i)."""
    stab = fd.stab_sizes[i0]
    node = fd.reps[i0]
    total = Scalar(0, 0, fd.m)
    for j in range(fd.m):
        c = weight[node]
        if c:
            total = total + fd.zeta(-k * j) * c
        node = fd.aut(node)
    return total / Fraction(stab)


def orbit_representatives(xi: XiFunction, m: int) -> List[Scalar]:
    """Smallest support point of every Gamma-orbit met by the support."""
    seen = {}
    for point in xi.support():
        seen.setdefault(point ** m, point)
    return list(seen.values())


def ev_xi(xi: XiFunction, mono: HMonomial, fd: FoldedRootData) -> Scalar:
    """Product over factors of sum_(orbits a bar) a^-k xi(a)(h_i(k bar))."""
    reps = orbit_representatives(xi, fd.m)
    result = Scalar(1, 0, fd.m)
    for i0, k in mono.factors:
        value = Scalar(0, 0, fd.m)
        for point in reps:
            value = value + point ** (-k) * h_value(fd, xi(point), i0, k)
        result = result * value
        if not result:
            break
    return result


def ev_xi_untwisted(xi: XiFunction, mono: HMonomial) -> Scalar:
    """ev for the trivial group: h_j (x) t^-k -> sum_a a^-k xi(a)_j."""
    result = Scalar(1, 0, xi.m)
    for j, k in mono.factors:
        value = Scalar(0, 0, xi.m)
        for point, weight in xi.items():
            if weight[j]:
                value = value + point ** (-k) * weight[j]
        result = result * value
    return result


def bounded_monomials(hw: HighestWeightAlgebra, bound: int, lengths: Optional[List[int]] = None) -> List[HMonomial]:
    """Monomials with at most lengths[i] factors at node i and nonzero steps |k| <= bound."""
    lengths = list(hw.shape.sizes) if lengths is None else lengths
    per_node = []
    for i in range(hw.rank):
        step = hw.shape.steps[i]
        ks = [k for k in range(-bound, bound + 1) if k and k % step == 0]
        choices = []
        for length in range(lengths[i] + 1):
            for combo in itertools.combinations_with_replacement(ks, length):
                choices.append(tuple((i, k) for k in combo))
        per_node.append(choices)
    return [HMonomial.of(sum(combo, ())) for combo in itertools.product(*per_node)]
