"""
Builders for local Weyl modules, evaluation modules and their twisted versions.

Every builder runs the cyclic-quotient engine over a truncation of depth N
at the support points and deepens N until two consecutive depths give the
same dimension and character.
"""
import logging
from typing import Callable, Dict, List, Optional, Tuple

from arithmetic.scalars import Scalar
from config.settings import DEFAULT_DEPTH, MAX_DEPTH
from exceptions import DepthNotStabilizedError, ModuleConstructionError
from lie.liealg import FoldedAlgebra
from lie.looplie import LoopElement, TruncatedLie, truncate_at_points
from spectrum.xi import XiFunction, chi_admissible, for_fold
from weylmod.engine import build_cyclic_quotient
from weylmod.module import HWModule, Stabilization, TwistedView

logger = logging.getLogger(__name__)


def _points(xi: XiFunction, depth: int) -> Dict[Scalar, int]:
    # the trivial module still needs a nonzero truncation
    return {a: depth for a in xi.support()} or {Scalar(1, 0, xi.m): depth}


def loop_character(lie: TruncatedLie, xi: XiFunction) -> Callable[[int], object]:
    """h (x) t^k -> sum over the support of a^k xi(a)(h), for Cartan basis elements."""
    alg = lie.alg
    cache: Dict[int, object] = {}

    def character(idx: int):
        if idx not in cache:
            b = lie.basis[idx]
            vector = lie.g_vector(idx)
            total = Scalar(0, 0, xi.m)
            for point, weight in xi.items():
                pairing = sum(vector.get(alg.h(i), 0) * c for i, c in enumerate(weight))
                if pairing:
                    total = total + point ** b.degree * pairing
            cache[idx] = total
        return cache[idx]

    return character


def untwisted_relations(lie: TruncatedLie, lam) -> List[Tuple[Dict[int, object], int]]:
    """(x_i^- (x) 1)^(lambda(h_i) + 1)."""
    alg = lie.alg
    out = []
    for i, c in enumerate(lam):
        f = lie.coords(LoopElement.monomial({alg.x_minus(i): 1}, 0))
        out.append((f, int(c) + 1))
    return out


def twisted_relations(folded: FoldedAlgebra, lie: TruncatedLie, lam0) -> List[Tuple[Dict[int, object], int]]:
    """(x_i^-(0))^(lambda(h_i) + 1) with h_i the g_0 coroot."""
    fd = folded.fd
    g0 = fd.to_g0_coords(lam0)
    out = []
    for i0 in range(fd.rank0):
        vector = folded.twisted.x_minus[folded.twisted.simple_index(i0)][0]
        out.append((lie.coords(LoopElement.monomial(vector, 0)), int(g0[i0]) + 1))
    return out


def deepen(build_at: Callable[[int], HWModule], name: str, depth: Optional[int] = None,
           max_depth: Optional[int] = None) -> HWModule:
    """Build at N = depth, depth + 1, ... until N and N + 1 agree."""
    depth = depth or DEFAULT_DEPTH
    max_depth = max_depth or MAX_DEPTH
    history: List[int] = []
    current = build_at(depth)
    history.append(current.dim)
    while depth < max_depth:
        following = build_at(depth + 1)
        history.append(following.dim)
        if following.dim == current.dim and following.character_g0() == current.character_g0():
            current.stabilization = Stabilization(depth, history, True)
            logger.info(f"{name}: dim {current.dim}, stable from depth {depth} (dims {history})")
            return current
        depth += 1
        current = following
    raise DepthNotStabilizedError(f"{name} did not stabilize up to depth {max_depth}", history)


def build_at_depth_untwisted(folded: FoldedAlgebra, xi: XiFunction, depth: int, name: str = "") -> HWModule:
    lie = truncate_at_points(folded, _points(xi, depth), twisted=False)
    lam = xi.wt()
    return build_cyclic_quotient(lie, lam, loop_character(lie, xi), untwisted_relations(lie, lam), name)


def build_local_weyl_untwisted(
    folded: FoldedAlgebra, xi: XiFunction, depth: Optional[int] = None, max_depth: Optional[int] = None
) -> HWModule:
    """W(xi) for the untwisted loop algebra L(g)."""
    if xi.m != folded.m or xi.rank != folded.rs.rank:
        raise ModuleConstructionError(f"Function {xi.to_dict()} does not live over {folded.rs.label}")
    name = f"W({xi.to_dict()})"
    return deepen(lambda n: build_at_depth_untwisted(folded, xi, n, name), name, depth, max_depth)


def attach_twisted_view(folded: FoldedAlgebra, module: HWModule, xi: XiFunction, depth: int) -> HWModule:
    """Let L^Gamma act on a module over L(g) through the inclusion of truncations."""
    lie_tw = truncate_at_points(folded, _points(xi, depth), twisted=True)
    images = [module.lie.coords(lie_tw.to_loop(idx)) for idx in range(lie_tw.dim)]
    module.twisted_view = TwistedView(lie_tw, images, folded.fd.restrict_weight(xi.wt()))
    return module


def build_local_weyl_twisted(
    folded: FoldedAlgebra,
    chi: XiFunction,
    depth: Optional[int] = None,
    max_depth: Optional[int] = None,
    choice=None,
) -> HWModule:
    """W^Gamma(chi) as the restriction of W(xi) for a chi-admissible xi."""
    xi = chi_admissible(chi, folded.fd, choice)
    module = build_local_weyl_untwisted(folded, xi, depth, max_depth)
    module.name = f"W^Gamma({chi.to_dict()})"
    return attach_twisted_view(folded, module, xi, module.stabilization.depth)


def build_at_depth_direct(folded: FoldedAlgebra, chi: XiFunction, depth: int, name: str = "") -> HWModule:
    xi = chi_admissible(chi, folded.fd)
    lie = truncate_at_points(folded, _points(xi, depth), twisted=True)
    lam0 = folded.fd.restrict_weight(xi.wt())
    return build_cyclic_quotient(lie, lam0, loop_character(lie, xi), twisted_relations(folded, lie, lam0), name)


def build_local_weyl_direct(
    folded: FoldedAlgebra,
    chi: XiFunction,
    depth: Optional[int] = None,
    max_depth: Optional[int] = None,
    at_depth: Optional[int] = None,
) -> HWModule:
    """W^Gamma(chi) presented directly over the twisted truncation.

    With at_depth the quotient is built once over the truncation of that
    depth instead of deepening. At a depth where W(xi) has stabilized the
    twisted ideal acts on W^Gamma(chi) by zero, so the dimensions must agree.
    """
    name = f"W^Gamma_direct({chi.to_dict()})"
    if at_depth is not None:
        module = build_at_depth_direct(folded, chi, at_depth, name)
        module.stabilization = Stabilization(at_depth, [module.dim], True)
        logger.info(f"{name}: dim {module.dim} at depth {at_depth}")
        return module
    return deepen(lambda n: build_at_depth_direct(folded, chi, n, name), name, depth, max_depth)


def evaluation_module(
    folded: FoldedAlgebra, lam, point, points: Optional[Dict[Scalar, int]] = None
) -> HWModule:
    """V_a(lambda): the cyclic quotient over the depth-one truncation at a.

    points can name a larger truncation (containing a) so that several
    evaluation modules share one algebra.
    """
    point = Scalar.coerce(point, folded.m)
    if not point:
        raise ModuleConstructionError("Evaluation point must be nonzero")
    xi = for_fold(folded.fd, {point: tuple(lam)})
    truncation = dict(points or {point: 1})
    if point not in truncation:
        raise ModuleConstructionError(f"Truncation {truncation} does not contain the point {point}")
    if truncation[point] != 1:
        # deeper truncations at a present a local Weyl module, not V_a(lambda)
        raise ModuleConstructionError(f"Evaluation at {point} needs depth 1 there, got {truncation[point]}")
    lie = truncate_at_points(folded, truncation, twisted=False)
    lam = tuple(int(c) for c in lam)
    return build_cyclic_quotient(
        lie, lam, loop_character(lie, xi), untwisted_relations(lie, lam), f"V_{point}({list(lam)})"
    )
