"""
Cyclic highest-weight quotients over truncated loop algebras.

The module is U(n^-) w modulo the submodule generated by the relation
vectors, where the Cartan part acts on w by a character and n^+ kills w.
Weight spaces are indexed by their drop below the highest weight, in simple
root coordinates. Only drops of weights in the saturated set of lambda can
carry the quotient; the weights between those and lambda (the interval) are
computed too because the submodule reaches them.

Construction by weight:
    K = U(Cartan + n^+) . relations     closed by breadth-first search
    N_d = K_d + sum_y y . N_(d - drop y)  for y in n^-, by increasing drop
and the quotient basis at d is the set of monomials that are not pivots of N_d.
"""
import itertools
import logging
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from arithmetic.linalg import EchelonBasis
from exceptions import ModuleConstructionError
from lie.looplie import TruncatedLie
from utils.performance import parallel_map, timing_decorator
from weylmod.module import HWModule
from weylmod.pbw import PBWContext, PBWMonomial, PBWVector, monomials_with_drop

logger = logging.getLogger(__name__)

Drop = Tuple[int, ...]


def _drop_of(lattice, lam, mu) -> Drop:
    coords = lattice.root_coordinates(tuple(a - b for a, b in zip(lam, mu)))
    return tuple(int(c) for c in coords)


def _interval(saturated: Iterable[Drop]) -> List[Drop]:
    """Drops dominated componentwise by some saturated drop, by increasing height."""
    saturated = list(saturated)
    if not saturated:
        return []
    top = [max(d[k] for d in saturated) for k in range(len(saturated[0]))]
    out = []
    for d in itertools.product(*(range(t + 1) for t in top)):
        if any(all(a <= b for a, b in zip(d, s)) for s in saturated):
            out.append(tuple(d))
    out.sort(key=lambda d: (sum(d), d))
    return out


class CyclicQuotient:
    """Computation state for one cyclic quotient."""

    def __init__(
        self,
        lie: TruncatedLie,
        lam,
        character: Callable[[int], object],
        relations: List[Tuple[Dict[int, object], int]],
    ):
        self.lie = lie
        self.lam = tuple(lam)
        self.relations = relations
        self.ctx = PBWContext(lie, character)
        lattice = lie.lattice()
        self.lattice = lattice
        self.saturated = {_drop_of(lattice, self.lam, mu): mu for mu in lattice.saturated_weights(self.lam)}
        self.interval = _interval(self.saturated)
        self._monomials: Dict[Drop, List[PBWMonomial]] = {}
        self.kernel: Dict[Drop, EchelonBasis] = {}
        self.submodule: Dict[Drop, EchelonBasis] = {}
        self.bases: Dict[Drop, List[PBWMonomial]] = {}

    def _new_echelon(self) -> EchelonBasis:
        return EchelonBasis(order=self.ctx.monomial_order)

    def monomials(self, drop: Drop) -> List[PBWMonomial]:
        if drop not in self._monomials:
            self._monomials[drop] = monomials_with_drop(self.ctx, drop)
        return self._monomials[drop]

    def _vector_drop(self, vector: PBWVector) -> Drop:
        return self.ctx.monomial_drop(next(iter(vector)))

    def relation_vectors(self) -> List[PBWVector]:
        out = []
        for xvec, power in self.relations:
            v: PBWVector = {(): 1}
            for _ in range(power):
                v = self.ctx.apply_vector(xvec, v)
            if v:
                out.append(v)
        return out

    def close_kernel(self):
        """U(b^+) applied to the relation vectors."""
        queue: List[PBWVector] = []
        for v in self.relation_vectors():
            d = self._vector_drop(v)
            echelon = self.kernel.setdefault(d, self._new_echelon())
            if echelon.add(v):
                queue.append(v)
        while queue:
            v = queue.pop()
            for x in self.ctx.borel:
                image = self.ctx.apply_vector({x: 1}, v)
                if not image:
                    continue
                d = self._vector_drop(image)
                echelon = self.kernel.setdefault(d, self._new_echelon())
                if echelon.add(image):
                    queue.append(image)
        logger.debug(f"Relation closure: {sum(e.rank for e in self.kernel.values())} vectors")

    def close_submodule(self):
        """N_d over the interval, by increasing drop."""
        members = set(self.interval)
        for d in self.interval:
            echelon = self._new_echelon()
            if d in self.kernel:
                for row in self.kernel[d].rows.values():
                    echelon.add(row)
            for y in self.ctx.n_minus:
                source = tuple(a - b for a, b in zip(d, self.ctx.drops[y]))
                if source not in members or source not in self.submodule:
                    continue
                for row in self.submodule[source].rows.values():
                    image = self.ctx.apply_vector({y: 1}, row)
                    if image:
                        echelon.add(image)
            self.submodule[d] = echelon

    def quotient_bases(self) -> List[str]:
        """Fill self.bases at saturated drops; report nonzero quotients elsewhere in the interval."""
        violations = []
        for d in self.interval:
            pivots = self.submodule[d].rows
            basis = [mon for mon in self.monomials(d) if mon not in pivots]
            if d in self.saturated:
                self.bases[d] = sorted(basis, key=self.ctx.monomial_order)
            elif basis:
                violations.append(f"quotient of dimension {len(basis)} at drop {list(d)} outside the saturated set")
            logger.debug(f"drop {d}: {len(self.monomials(d))} monomials, quotient {len(basis)}")
        return violations

    def reduce(self, vector: PBWVector) -> Tuple[Optional[Drop], PBWVector]:
        if not vector:
            return None, {}
        d = self._vector_drop(vector)
        if d not in self.bases:
            return d, {}
        return d, self.submodule[d].reduce(vector)


def _label(lie: TruncatedLie, mon: PBWMonomial) -> str:
    return " ".join(lie.label(idx) for idx in mon) + (" w" if mon else "w")


@timing_decorator
def build_cyclic_quotient(
    lie: TruncatedLie,
    lam,
    character: Callable[[int], object],
    relations: List[Tuple[Dict[int, object], int]],
    name: str = "",
) -> HWModule:
    """The quotient of U(L) w by L-span of the relations, as an HWModule."""
    quotient = CyclicQuotient(lie, lam, character, relations)
    quotient.close_kernel()
    quotient.close_submodule()
    violations = quotient.quotient_bases()

    order = [d for d in quotient.interval if d in quotient.bases]
    basis: List[Tuple[Drop, PBWMonomial]] = [(d, mon) for d in order for mon in quotient.bases[d]]
    if not basis or basis[0] != (tuple(0 for _ in order[0]) if order else (), ()):
        raise ModuleConstructionError(f"Relations kill the highest-weight vector of {name or 'the module'}")
    index = {entry: j for j, entry in enumerate(basis)}

    def columns_for(x: int):
        columns = []
        for d, mon in basis:
            image = quotient.ctx.apply(x, mon)
            target, remainder = quotient.reduce(image)
            column = {}
            for m2, c in remainder.items():
                column[index[(target, m2)]] = c
            columns.append(column)
        return columns

    actions = parallel_map(columns_for, range(lie.dim))
    weights = [quotient.saturated[d] for d, _ in basis]
    labels = [_label(lie, mon) for _, mon in basis]
    ev_data = {}
    for x in lie.cartan_part():
        value = character(x)
        if value:
            ev_data[x] = value
    module = HWModule(lie, lam, weights, labels, actions, ev_data, relations, name)
    module.integrability_violations = violations
    logger.debug(f"{name}: dim {module.dim}, PBW caches {quotient.ctx.cache_sizes()}")
    return module
