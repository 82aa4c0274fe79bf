"""
PBW normal forms over a truncated loop algebra.

Basis elements are ordered by (part, -height, loop degree, index): n^- before
the Cartan part before n^+, higher weights first inside each part. A
PBWMonomial is a tuple of basis indices sorted by that order.

PBWContext computes the action of basis elements on the module
U(n^-) w, where the Cartan part acts on w by a fixed character and n^+
kills w.
"""
import logging
import random
from typing import Callable, Dict, List, Optional, Tuple

from arithmetic.linalg import vec_add
from lie.looplie import PART_MINUS, PART_RANK, PART_ZERO, TruncatedLie

logger = logging.getLogger(__name__)

PBWMonomial = Tuple[int, ...]
PBWVector = Dict[PBWMonomial, object]


def pbw_key(lie: TruncatedLie, idx: int):
    b = lie.basis[idx]
    return (PART_RANK[b.part], -b.height, b.degree, idx)


def pbw_positions(lie: TruncatedLie) -> List[int]:
    """pos[idx] = rank of the basis element in the PBW order."""
    order = sorted(range(lie.dim), key=lambda idx: pbw_key(lie, idx))
    pos = [0] * lie.dim
    for rank, idx in enumerate(order):
        pos[idx] = rank
    return pos


def pbw_straighten(word, lie: TruncatedLie, rng: Optional[random.Random] = None) -> PBWVector:
    """Rewrite a word in U(L) into sorted monomials with xy -> yx + [x, y].

    Without rng the leftmost inversion is swapped first; with rng a random
    inversion is chosen, which is how confluence is tested.
    """
    pos = pbw_positions(lie)
    result: PBWVector = {}
    pending: PBWVector = {tuple(word): 1}
    while pending:
        current, coeff = pending.popitem()
        descents = [i for i in range(len(current) - 1) if pos[current[i]] > pos[current[i + 1]]]
        if not descents:
            vec_add(result, {current: coeff})
            continue
        i = rng.choice(descents) if rng is not None else descents[0]
        x, y = current[i], current[i + 1]
        head, tail = current[:i], current[i + 2:]
        vec_add(pending, {head + (y, x) + tail: coeff})
        for z, c in lie.bracket_basis(x, y).items():
            vec_add(pending, {head + (z,) + tail: coeff * c})
    return result


class PBWContext:
    """Memoized action of L on U(n^-) w."""

    def __init__(self, lie: TruncatedLie, character: Callable[[int], object]):
        self.lie = lie
        self.character = character
        self.pos = pbw_positions(lie)
        self.parts = [b.part for b in lie.basis]
        # drop of x: the weight of x is minus this, in root coordinates
        self.drops = [tuple(-c for c in b.root) for b in lie.basis]
        self.n_minus = sorted(lie.n_minus(), key=lambda idx: self.pos[idx])
        self.borel = sorted(lie.cartan_part() + lie.n_plus(), key=lambda idx: self.pos[idx])
        self._insert_cache: Dict[Tuple[int, PBWMonomial], PBWVector] = {}
        self._apply_cache: Dict[Tuple[int, PBWMonomial], PBWVector] = {}

    def monomial_drop(self, mon: PBWMonomial) -> Tuple[int, ...]:
        total = [0] * len(self.lie.basis[0].root) if self.lie.dim else []
        for idx in mon:
            for k, c in enumerate(self.drops[idx]):
                total[k] += c
        return tuple(total)

    def monomial_degree(self, mon: PBWMonomial) -> int:
        return sum(self.lie.basis[idx].degree for idx in mon)

    def monomial_order(self, mon: PBWMonomial):
        """Pivot order for relation subspaces: high loop degree first."""
        return (-self.monomial_degree(mon), len(mon), tuple(self.pos[idx] for idx in mon))

    def insert_minus(self, y: int, mon: PBWMonomial) -> PBWVector:
        """y * mon for y in n^-, in normal form."""
        key = (y, mon)
        cached = self._insert_cache.get(key)
        if cached is not None:
            return cached
        if not mon or self.pos[y] <= self.pos[mon[0]]:
            result = {(y,) + mon: 1}
        else:
            y1, rest = mon[0], mon[1:]
            result: PBWVector = {}
            for m2, c in self.insert_minus(y, rest).items():
                vec_add(result, self.insert_minus(y1, m2), c)
            for z, c in self.lie.bracket_basis(y, y1).items():
                vec_add(result, self.insert_minus(z, rest), c)
        return self._insert_cache.setdefault(key, result)

    def apply(self, x: int, mon: PBWMonomial) -> PBWVector:
        """x * (mon w) for any basis element x."""
        part = self.parts[x]
        if part == PART_MINUS:
            return self.insert_minus(x, mon)
        key = (x, mon)
        cached = self._apply_cache.get(key)
        if cached is not None:
            return cached
        if not mon:
            if part == PART_ZERO:
                value = self.character(x)
                result = {(): value} if value else {}
            else:
                result = {}
        else:
            y1, rest = mon[0], mon[1:]
            result = {}
            for m2, c in self.apply(x, rest).items():
                vec_add(result, self.insert_minus(y1, m2), c)
            for z, c in self.lie.bracket_basis(x, y1).items():
                vec_add(result, self.apply(z, rest), c)
        return self._apply_cache.setdefault(key, result)

    def apply_vector(self, xvec: Dict[int, object], vector: PBWVector) -> PBWVector:
        """(sum c_x x) applied to a vector of U(n^-) w."""
        out: PBWVector = {}
        for x, cx in xvec.items():
            for mon, c in vector.items():
                vec_add(out, self.apply(x, mon), cx * c)
        return out

    def act_word(self, word, vector: PBWVector) -> PBWVector:
        """Apply the letters of word right to left."""
        for x in reversed(word):
            out: PBWVector = {}
            for mon, c in vector.items():
                vec_add(out, self.apply(x, mon), c)
            vector = out
        return vector

    def cache_sizes(self) -> Dict[str, int]:
        return {"insert": len(self._insert_cache), "apply": len(self._apply_cache)}


def monomials_with_drop(ctx: PBWContext, drop: Tuple[int, ...]) -> List[PBWMonomial]:
    """Sorted n^- monomials whose drops add up to drop."""
    elements = ctx.n_minus
    out: List[PBWMonomial] = []

    def extend(start: int, remaining: Tuple[int, ...], prefix: PBWMonomial):
        if not any(remaining):
            out.append(prefix)
            return
        for k in range(start, len(elements)):
            y = elements[k]
            d = ctx.drops[y]
            nxt = tuple(r - c for r, c in zip(remaining, d))
            if all(c >= 0 for c in nxt):
                extend(k, nxt, prefix + (y,))

    extend(0, tuple(drop), ())
    return out


def word_violations(ctx: PBWContext, word, rng: random.Random, trials: int = 3) -> List[str]:
    """Straightening a word with random swap schedules always gives the same normal form."""
    reference = pbw_straighten(word, ctx.lie)
    bad = []
    for _ in range(trials):
        if pbw_straighten(word, ctx.lie, rng) != reference:
            bad.append(f"word {list(word)} has schedule-dependent normal forms")
    return bad


def normal_form_action_violations(ctx: PBWContext, word) -> List[str]:
    """Acting by the straightened word on w equals acting letter by letter."""
    direct = ctx.act_word(word, {(): 1})
    via_normal: PBWVector = {}
    for mon, c in pbw_straighten(word, ctx.lie).items():
        vec_add(via_normal, ctx.act_word(mon, {(): 1}), c)
    if direct != via_normal:
        return [f"word {list(word)}: direct action differs from the normal form"]
    return []
