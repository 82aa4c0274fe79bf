"""
Garland series p(u) = exp(-sum_k h(k) u^k / k) and the annihilation
identity they govern in highest-weight modules:

    e(1)^(r) f(0)^(r+1) w + (-1)^(r+1) sum_(j<=r) f(j) p^(r-j) w = 0

for any loop copy of sl_2 (e(q), f(q), h(q)); the variables h(k) act on w
by scalars. Steps c*q with c in {1, 2} are checked as well.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Tuple

import sympy

from arithmetic.linalg import vec_add, vec_scale
from arithmetic.scalars import Scalar
from lie.liealg import FoldedAlgebra
from lie.looplie import SL2LoopCopy, ell_for_root, small_subalgebra
from weylmod.module import HWModule

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
GarlandPoly = Dict[Exponent, Fraction]


@dataclass
class GarlandSeries:
    """Coefficients p^0 .. p^J as polynomials in h(step k), 1 <= k <= J."""

    k0: int
    step: int
    order: int
    coefficients: List[GarlandPoly]

    def variables_used(self, j: int) -> List[int]:
        used = set()
        for exps in self.coefficients[j]:
            used.update(k + 1 for k, e in enumerate(exps) if e)
        return sorted(used)

    def evaluate(self, j: int, values: Dict[int, object]):
        """p^j with h(step k) replaced by values[k]."""
        total = 0
        for exps, c in self.coefficients[j].items():
            term = c
            for k, e in enumerate(exps):
                if e:
                    term = term * values[k + 1] ** e
            total = total + term
        return total

    def to_dict(self):
        return {
            "root": self.k0,
            "step": self.step,
            "order": self.order,
            "coefficients": [
                [{"exponents": list(exps), "coeff": str(c)} for exps, c in sorted(poly.items())]
                for poly in self.coefficients
            ],
        }


def _poly_mul(a: GarlandPoly, b: GarlandPoly) -> GarlandPoly:
    out: GarlandPoly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            vec_add(out, {key: ca * cb})
    return out


def garland_coeffs(k0: int, step: int, order: int) -> GarlandSeries:
    """Expand exp(-sum_(k<=J) h(step k) u^k / k) to order J.

    From p' = d' p: p^j = -(1/j) sum_(k=1..j) h(step k) p^(j-k).
    """
    zero = (0,) * order
    coefficients: List[GarlandPoly] = [{zero: Fraction(1)}]
    for j in range(1, order + 1):
        total: GarlandPoly = {}
        for k in range(1, j + 1):
            variable = {tuple(1 if i == k - 1 else 0 for i in range(order)): Fraction(1)}
            vec_add(total, _poly_mul(variable, coefficients[j - k]))
        coefficients.append(vec_scale(total, Fraction(-1, j)))
    return GarlandSeries(k0, step, order, coefficients)


def sympy_coefficients(order: int) -> List[GarlandPoly]:
    """The same coefficients from a symbolic series expansion."""
    if order == 0:
        return [{(): Fraction(1)}]
    u = sympy.Symbol("u")
    hs = sympy.symbols(f"h1:{order + 1}")
    exponent = -sum(hs[k - 1] * u ** k / k for k in range(1, order + 1))
    series = sympy.series(sympy.exp(exponent), u, 0, order + 1).removeO()
    out = []
    for j in range(order + 1):
        coeff = sympy.expand(series.coeff(u, j))
        poly = sympy.Poly(coeff, *hs).as_dict()
        out.append({tuple(exps): Fraction(int(c.p), int(c.q)) for exps, c in poly.items() if c})
    return out


def series_violations(order: int) -> List[str]:
    """Recurrence against sympy, p^0 = 1 and p^j only using h(k) with k <= j."""
    series = garland_coeffs(0, 1, order)
    bad = []
    if series.coefficients[0] != {(0,) * order: 1}:
        bad.append("p^0 != 1")
    for j, (mine, theirs) in enumerate(zip(series.coefficients, sympy_coefficients(order))):
        if mine != theirs:
            bad.append(f"p^{j} differs from the symbolic expansion")
        if any(k > j for k in series.variables_used(j)):
            bad.append(f"p^{j} involves h(k) with k > {j}")
    return bad


@dataclass
class GarlandCheck:
    copy: str
    k0: int
    multiple: int
    r: int
    lam_alpha: int
    identity_holds: bool
    corollary_holds: Optional[bool] = None
    witness: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self):
        return self.identity_holds and self.corollary_holds is not False

    def to_dict(self):
        return {
            "copy": self.copy,
            "root": self.k0,
            "multiple": self.multiple,
            "r": self.r,
            "lambda_alpha": self.lam_alpha,
            "identity": self.identity_holds,
            "corollary": self.corollary_holds,
            "witness": dict(self.witness),
        }


def _eigenvalue(module: HWModule, element, w):
    image = module.act_loop(element, w)
    return image.get(0, 0)


def _as_int(value) -> int:
    if isinstance(value, Scalar):
        value = value.to_fraction()
    return int(value)


def verify_garland(module: HWModule, copy: SL2LoopCopy, r: int, multiple: int = 1) -> GarlandCheck:
    """The Garland identity for E = e(c), F(j) = f(cj), h(ck) on the generator of module."""
    w = module.hw_vector
    c = multiple
    lam_alpha = _eigenvalue(module, copy.h(0), w)
    lam_int = _as_int(lam_alpha)
    values = {k: _eigenvalue(module, copy.h(c * k), w) for k in range(1, r + 1)}
    series = garland_coeffs(copy.k0, copy.step * c, r)

    lhs = dict(w)
    for _ in range(r + 1):
        lhs = module.act_loop(copy.f(0), lhs)
    for _ in range(r):
        lhs = module.act_loop(copy.e(c), lhs)
    lhs = vec_scale(lhs, Fraction(1, factorial(r) * factorial(r + 1)))

    tail: Dict[int, object] = {}
    f_images = [module.act_loop(copy.f(c * j), w) for j in range(r + 1)]
    for j in range(r + 1):
        vec_add(tail, f_images[j], series.evaluate(r - j, values))
    residual = dict(lhs)
    vec_add(residual, tail, (-1) ** (r + 1))
    check = GarlandCheck(copy.name, copy.k0, c, r, lam_int, not residual)
    if residual:
        check.witness = {module.labels[j]: str(v) for j, v in sorted(residual.items())}

    if r >= lam_int:
        # f(0)^(r+1) w = 0 turns the identity into a formula for f(cr) w
        expected: Dict[int, object] = {}
        for j in range(r):
            vec_add(expected, f_images[j], -series.evaluate(r - j, values))
        check.corollary_holds = f_images[r] == expected
        if not check.corollary_holds:
            check.witness["corollary"] = f"f({c * r}) w differs from the Garland expansion"
    return check


def garland_suite(
    module: HWModule, folded: FoldedAlgebra, margin: int = 2, multiples=(1, 2)
) -> List[GarlandCheck]:
    """Every positive root of g_0, every loop copy, r up to lambda(h_alpha) + margin."""
    checks = []
    w = module.hw_vector
    for k0 in range(len(folded.fd.positive_roots0)):
        sub = small_subalgebra(folded, k0)
        for copy in sub.copies:
            lam_alpha = _eigenvalue(module, copy.h(0), w)
            top = _as_int(lam_alpha) + margin
            for c in multiples:
                for r in range(top + 1):
                    check = verify_garland(module, copy, r, c)
                    if not check.passed:
                        logger.error(f"Garland identity fails for root {k0}, copy {copy.name}, c={c}, r={r}")
                    checks.append(check)
    logger.info(
        f"Garland suite on {module.name}: {sum(ch.passed for ch in checks)}/{len(checks)} passed "
        f"(minimal steps {[ell_for_root(folded.fd, k0) for k0 in range(len(folded.fd.positive_roots0))]})"
    )
    return checks
