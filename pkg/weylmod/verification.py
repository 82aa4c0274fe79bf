"""
Checks of the embedding chain W^Gamma(chi) -> W(xi) for equivariant chi of a
fixed restricted weight.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from hwalg.checks import iota_consistency_violations
from hwalg.embedding import embed_iota
from hwalg.symmetric import bounded_monomials
from lie.liealg import FoldedAlgebra
from lie.rootdata import Weight
from spectrum.xi import XiFunction, chi_admissible, for_fold
from weylmod.local_weyl import (
    attach_twisted_view,
    build_local_weyl_direct,
    build_local_weyl_twisted,
    build_local_weyl_untwisted,
)
from weylmod.module import generated_submodule

logger = logging.getLogger(__name__)


@dataclass
class ChainEntry:
    chi: Dict[str, List[int]]
    xi: Dict[str, List[int]]
    tau: List[int]
    dimension: int
    character_g0: Dict[Tuple[int, ...], int]
    twisted_cyclic: bool
    expected_dimension: int
    direct_dimension: Optional[int] = None
    iota_violations: List[str] = field(default_factory=list)

    def to_dict(self):
        return {
            "chi": self.chi,
            "xi": self.xi,
            "tau": list(self.tau),
            "dimension": self.dimension,
            "expected_dimension": self.expected_dimension,
            "direct_dimension": self.direct_dimension,
            "twisted_cyclic": self.twisted_cyclic,
            "character_g0": [{"weight": list(w), "multiplicity": c} for w, c in sorted(self.character_g0.items())],
            "iota_violations": list(self.iota_violations),
        }


@dataclass
class ChainReport:
    lam0: Weight
    entries: List[ChainEntry]
    checks: Dict[str, bool]
    witnesses: List[str] = field(default_factory=list)
    fundamental_dims: Dict[int, int] = field(default_factory=dict)
    control: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.checks.values())

    def to_dict(self):
        return {
            "lambda0": list(self.lam0),
            "passed": self.passed,
            "checks": dict(self.checks),
            "witnesses": list(self.witnesses),
            "fundamental_dimensions": {str(i + 1): d for i, d in sorted(self.fundamental_dims.items())},
            "entries": [e.to_dict() for e in self.entries],
            "non_admissible_control": dict(self.control),
        }


def _fundamental(n: int, i: int) -> Tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(n))


def fundamental_dims(folded: FoldedAlgebra, point=1, depth=None) -> Dict[int, int]:
    """dim W(omega_i) at a single point, for every node i."""
    n = folded.rs.rank
    out = {}
    for i in range(n):
        xi = for_fold(folded.fd, {point: _fundamental(n, i)})
        out[i] = build_local_weyl_untwisted(folded, xi, depth).dim
    return out


def pullback_violations(folded: FoldedAlgebra, dims: Dict[int, int], depth=None) -> List[str]:
    """dim W(omega_i) at 1 equals dim W(omega_sigma(i)) at zeta."""
    fd = folded.fd
    if fd.m == 1:
        return []
    n = folded.rs.rank
    bad = []
    for i in range(n):
        j = fd.aut(i)
        xi = for_fold(fd, {fd.zeta(1): _fundamental(n, j)})
        moved = build_local_weyl_untwisted(folded, xi, depth).dim
        if moved != dims[i]:
            bad.append(f"dim W(omega_{i + 1}) at 1 is {dims[i]} but dim W(omega_{j + 1}) at zeta is {moved}")
    return bad


def non_admissible_control(folded: FoldedAlgebra, xi: XiFunction, depth=None) -> Dict[str, object]:
    """Move one omega_i from a to omega_sigma(i) at zeta^-1 a and measure twisted cyclicity.

    Only done where xi(a) has more than omega_i, so a keeps some weight
    and the new function meets the orbit of a twice.
    """
    fd = folded.fd
    if fd.m == 1:
        return {}
    n = folded.rs.rank
    for point, weight in xi.items():
        if sum(weight) < 2:
            continue
        i = next(k for k, c in enumerate(weight) if c)
        entries = dict(xi.entries)
        entries[point] = tuple(c - (1 if k == i else 0) for k, c in enumerate(weight))
        target = fd.zeta(-1) * point
        shifted = entries.get(target, (0,) * n)
        entries[target] = tuple(c + (1 if k == fd.aut(i) else 0) for k, c in enumerate(shifted))
        bad = for_fold(fd, entries)
        module = build_local_weyl_untwisted(folded, bad, depth)
        attach_twisted_view(folded, module, bad, module.stabilization.depth)
        generated = generated_submodule(module, module.hw_vector, twisted_only=True).dim
        logger.info(f"Non-admissible {bad.to_dict()}: twisted span {generated} of {module.dim}")
        return {"xi": bad.to_dict(), "dimension": module.dim, "twisted_generated": generated}
    return {}


def verify_embedding_chain(
    folded: FoldedAlgebra,
    lam0: Weight,
    chis: List[XiFunction],
    depth: Optional[int] = None,
    direct: Optional[bool] = None,
    monomial_bound: int = 1,
) -> ChainReport:
    """Dimensions, characters and cyclicity of W^Gamma(chi) over every chi given."""
    fd = folded.fd
    if direct is None:
        direct = fd.is_a2n and fd.rs.rank == 2
    dims = fundamental_dims(folded, depth=depth)
    entries: List[ChainEntry] = []
    witnesses: List[str] = []
    for chi in chis:
        xi = chi_admissible(chi, fd)
        tau = xi.wt()
        module = build_local_weyl_twisted(folded, chi, depth)
        cyclic = generated_submodule(module, module.hw_vector, twisted_only=True).dim == module.dim
        expected = 1
        for i, c in enumerate(tau):
            expected *= dims[i] ** c
        entry = ChainEntry(chi.to_dict(), xi.to_dict(), list(tau), module.dim, module.character_g0(), cyclic, expected)
        if direct:
            entry.direct_dimension = build_local_weyl_direct(folded, chi, at_depth=module.stabilization.depth).dim
        source = embed_iota(tau, fd).source
        monomials = bounded_monomials(source, monomial_bound, [min(s, 2) for s in source.shape.sizes])
        entry.iota_violations = iota_consistency_violations(xi, fd, monomials)
        if not cyclic:
            witnesses.append(f"{chi.to_dict()}: the twisted algebra does not generate W(xi) from w")
        if module.dim != expected:
            witnesses.append(f"{chi.to_dict()}: dim {module.dim} but the fundamental product is {expected}")
        if entry.direct_dimension is not None and entry.direct_dimension != module.dim:
            witnesses.append(f"{chi.to_dict()}: direct presentation has dim {entry.direct_dimension}")
        witnesses.extend(entry.iota_violations)
        entries.append(entry)

    pullback = pullback_violations(folded, dims, depth)
    witnesses.extend(pullback)
    checks = {
        "weights_match": all(fd.restrict_weight(tuple(e.tau)) == tuple(lam0) for e in entries),
        "dimensions_agree": len({e.dimension for e in entries}) <= 1,
        "characters_agree": all(e.character_g0 == entries[0].character_g0 for e in entries),
        "twisted_cyclic": all(e.twisted_cyclic for e in entries),
        "fundamental_product": all(e.dimension == e.expected_dimension for e in entries),
        "direct_agrees": all(e.direct_dimension in (None, e.dimension) for e in entries),
        "iota_consistent": all(not e.iota_violations for e in entries),
        "sigma_pullback": not pullback,
    }
    if not checks["weights_match"]:
        witnesses.append(f"some chi does not restrict to {list(lam0)}")
    control = non_admissible_control(folded, chi_admissible(chis[0], fd), depth) if chis else {}
    report = ChainReport(tuple(lam0), entries, checks, witnesses, dims, control)
    logger.info(f"Embedding chain at {list(lam0)} over {len(entries)} functions: passed = {report.passed}")
    return report
