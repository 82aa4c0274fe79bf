"""
The natural map from the twisted highest-weight algebra of lambda bar into
the untwisted one of lambda, and its surjectivity criterion.

For a node i of I_0 with trivial stabilizer the r_i variables of factor i
split into blocks, one per node sigma^j(i) of the orbit, of sizes
m_sigma^j(i); the variables of block j are multiplied by zeta^j. A fixed
node keeps its variables.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from arithmetic.linalg import rank, vec_add
from lie.rootdata import FoldedRootData, Weight
from hwalg.symmetric import (
    HighestWeightAlgebra,
    SymLaurentElement,
    _is_sorted,
    distinct_rearrangements,
    highest_weight_algebra,
)

logger = logging.getLogger(__name__)


@dataclass
class Embedding:
    """iota: A(lambda bar) -> A(lambda) together with the surjectivity verdict."""

    fd: FoldedRootData
    lam: Weight
    source: HighestWeightAlgebra
    target: HighestWeightAlgebra
    blocks: List[List[Tuple[int, int]]]
    surjective: bool
    reasons: List[str] = field(default_factory=list)

    def image(self, x: SymLaurentElement) -> SymLaurentElement:
        """Substitute the scaled block variables and collect canonical monomials."""
        out: Dict[tuple, object] = {}
        n = self.fd.rs.rank
        for key, coeff in x.terms.items():
            per_node = []
            for i0, mu in enumerate(key):
                per_node.append(self._expand_factor(i0, mu))
            for combo in itertools.product(*per_node):
                target_key: List[Tuple[int, ...]] = [()] * n
                c = coeff
                for parts, scale in combo:
                    c = c * scale
                    for node, exps in parts:
                        target_key[node] = exps
                vec_add(out, {tuple(target_key): c})
        return SymLaurentElement(self.target.shape, out)

    def _expand_factor(self, i0: int, mu: Tuple[int, ...]):
        """(block assignments, zeta factor) for every canonical splitting of mu."""
        blocks = self.blocks[i0]
        if not mu:
            return [((), 1)]
        results = []
        for p in distinct_rearrangements(mu):
            parts = []
            start = 0
            ok = True
            scale_exp = 0
            for j, (node, size) in enumerate(blocks):
                chunk = p[start:start + size]
                start += size
                if not _is_sorted(chunk):
                    ok = False
                    break
                parts.append((node, tuple(chunk)))
                scale_exp += j * sum(chunk)
            if ok:
                results.append((tuple(parts), self.fd.zeta(scale_exp)))
        return results

    def to_dict(self):
        return {
            "lambda": list(self.lam),
            "lambda_bar": list(self.source.lam),
            "blocks": [[{"node": node + 1, "variables": size} for node, size in b] for b in self.blocks],
            "surjective": self.surjective,
            "reasons": list(self.reasons),
        }


def surjectivity_reasons(fd: FoldedRootData, lam: Weight) -> List[str]:
    """Violated conditions: a fixed node with m_i != 0, or two nonzero m_j on one orbit."""
    if fd.m == 1:
        return []
    reasons = []
    for orbit in fd.orbits:
        if len(orbit) == 1:
            if lam[orbit[0]]:
                reasons.append(f"fixed node {orbit[0] + 1} has m = {lam[orbit[0]]}")
        else:
            nonzero = [j for j in orbit if lam[j]]
            if len(nonzero) > 1:
                reasons.append(f"nodes {[j + 1 for j in nonzero]} of one orbit are all nonzero")
    return reasons


def embed_iota(lam: Weight, fd: FoldedRootData) -> Embedding:
    lam = tuple(int(c) for c in lam)
    lam_bar = fd.restrict_weight(lam)
    source = highest_weight_algebra(fd, lam_bar, twisted=True)
    target = highest_weight_algebra(fd, lam, twisted=False)
    blocks = []
    for i0, rep in enumerate(fd.reps):
        if fd.stab_sizes[i0] == fd.m:
            blocks.append([(rep, lam[rep])])
            continue
        orbit_nodes = []
        node = rep
        for _ in range(len(fd.orbits[i0])):
            orbit_nodes.append((node, lam[node]))
            node = fd.aut(node)
        blocks.append(orbit_nodes)
    reasons = surjectivity_reasons(fd, lam)
    embedding = Embedding(fd, lam, source, target, blocks, not reasons, reasons)
    logger.debug(f"iota for lambda = {lam}: surjective = {embedding.surjective}")
    return embedding


def _box_keys(shape, bound: int) -> List[tuple]:
    per_factor = []
    for r, step in zip(shape.sizes, shape.steps):
        values = [k for k in range(-bound, bound + 1) if k % step == 0]
        per_factor.append(list(itertools.combinations_with_replacement(values, r)))
    return [tuple(combo) for combo in itertools.product(*per_factor)]


def brute_force_surjective(embedding: Embedding, bound: int = 1) -> Tuple[bool, int, int]:
    """Compare the rank of iota on the twisted exponent box with the untwisted box dimension.

    Returns (surjective on the box, image rank, box dimension).
    """
    source_keys = _box_keys(embedding.source.shape, bound)
    images = [embedding.image(SymLaurentElement(embedding.source.shape, {key: 1})).terms for key in source_keys]
    target_dim = len(_box_keys(embedding.target.shape, bound))
    image_rank = rank(images)
    return image_rank == target_dim, image_rank, target_dim
