"""
Dense univariate polynomials with Scalar coefficients.

Used for the truncation ideals q(u) of loop algebras. A polynomial built
from a root multiset remembers its roots, which lets tensor products find a
common refinement.
"""
from typing import Dict, List, Optional

from arithmetic.scalars import Scalar
from exceptions import TruncationError


class Poly:
    """Polynomial c_0 + c_1 u + ... with coefficients in Q(zeta_m)."""

    def __init__(self, coeffs, m, roots: Optional[Dict[Scalar, int]] = None):
        self.m = m
        coeffs = [Scalar.coerce(c, m) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs: List[Scalar] = coeffs
        self.roots = dict(roots) if roots is not None else None

    @classmethod
    def from_roots(cls, roots: Dict[Scalar, int], m):
        """prod (u - a)^N over the multiset {a: N}."""
        poly = cls([1], m)
        for root in sorted(roots, key=lambda r: Scalar.coerce(r, m).sort_key()):
            factor = cls([-Scalar.coerce(root, m), 1], m)
            for _ in range(roots[root]):
                poly = poly * factor
        poly.roots = {Scalar.coerce(r, m): n for r, n in roots.items() if n}
        return poly

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else Scalar(0, 0, self.m)

    def __call__(self, value):
        result = Scalar(0, 0, self.m)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return Poly([], self.m)
        out = [Scalar(0, 0, self.m)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out, self.m)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self):
        terms = [f"({c})u^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"

    def to_strings(self):
        return [str(c) for c in self.coeffs]

    def divides(self, other) -> bool:
        """True when self divides other, using the root data when known."""
        if self.roots is not None and other.roots is not None:
            return all(other.roots.get(r, 0) >= n for r, n in self.roots.items())
        return not any(reduce_coefficients(other.coeffs, self))


def lcm_of_root_polys(polys: List[Poly]) -> Poly:
    """Least common multiple of polynomials given by root multisets."""
    if not polys:
        raise TruncationError("No truncations to refine")
    m = polys[0].m
    merged: Dict[Scalar, int] = {}
    for poly in polys:
        if poly.roots is None:
            raise TruncationError("Incompatible truncations: ideal generator without known roots")
        for root, mult in poly.roots.items():
            merged[root] = max(merged.get(root, 0), mult)
    return Poly.from_roots(merged, m)


def reduce_coefficients(coeffs: List[Scalar], q: Poly) -> List[Scalar]:
    """Coefficients of (sum coeffs[i] u^i) mod q, padded to length deg q."""
    d = q.degree
    work = list(coeffs)
    lead = q.coeffs[-1]
    for top in range(len(work) - 1, d - 1, -1):
        c = work[top]
        if not c:
            continue
        factor = c / lead
        shift = top - d
        for i, qc in enumerate(q.coeffs):
            work[shift + i] = work[shift + i] - factor * qc
    work = work[:d]
    zero = Scalar(0, 0, q.m)
    return work + [zero] * (d - len(work))


class PowerTable:
    """u^k mod q for arbitrary integer k, with a cache.

    Negative powers use the inverse of u, which exists because q(0) != 0.
    """

    def __init__(self, q: Poly):
        if q.degree < 1:
            raise TruncationError("Constant ideal generator gives the zero algebra")
        if not q.is_monic():
            raise TruncationError("Ideal generator must be monic")
        if not q.constant_term():
            raise TruncationError("Ideal generator vanishes at 0; support must avoid 0")
        self.q = q
        self.m = q.m
        self.d = q.degree
        zero = Scalar(0, 0, self.m)
        one = Scalar(1, 0, self.m)
        self._cache = {0: [one] + [zero] * (self.d - 1)}
        # u * r(u) = 1 mod q with r = -(q(u) - q(0)) / (u q(0))
        q0 = q.constant_term()
        inverse = [-c / q0 for c in q.coeffs[1:]]
        self._inverse = reduce_coefficients(inverse, q)

    def _times_u(self, vector):
        return reduce_coefficients([Scalar(0, 0, self.m)] + list(vector), self.q)

    def multiply(self, a, b):
        out = [Scalar(0, 0, self.m)] * (2 * self.d - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return reduce_coefficients(out, self.q)

    def power(self, k) -> List[Scalar]:
        """Coordinates of u^k in the coset basis 1, u, ..., u^(d-1)."""
        if k in self._cache:
            return self._cache[k]
        if k > 0:
            result = self._times_u(self.power(k - 1))
        else:
            result = self.multiply(self.power(k + 1), self._inverse)
        self._cache[k] = result
        return result
