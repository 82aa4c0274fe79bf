"""
Exact sparse linear algebra over Scalars.

Vectors are dicts mapping a column key to a nonzero coefficient. Column keys
only need a sort key; the elimination always pivots on the smallest key of a
row under that order, so results are deterministic.
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Optional

logger = logging.getLogger(__name__)

SparseVector = Dict[Hashable, object]


def _identity(key):
    return key


def vec_add(target: SparseVector, source: SparseVector, coeff=1) -> SparseVector:
    """target += coeff * source, in place, dropping zeros."""
    if not coeff:
        return target
    for key, value in source.items():
        new = target.get(key, 0) + coeff * value
        if new:
            target[key] = new
        else:
            target.pop(key, None)
    return target


def vec_scale(vector: SparseVector, coeff) -> SparseVector:
    if not coeff:
        return {}
    return {key: coeff * value for key, value in vector.items()}


class EchelonBasis:
    """Incremental row-echelon form of a growing set of sparse vectors.

    Each stored row has leading coefficient 1 at its pivot, which is the
    smallest column key of the row. With track=True every row also records
    the combination of inserted vectors it came from, so dependencies can be
    reported with a witness.
    """

    def __init__(self, order: Optional[Callable] = None, track: bool = False):
        self.order = order or _identity
        self.track = track
        self.rows: Dict[Hashable, SparseVector] = {}
        self.origins: Dict[Hashable, SparseVector] = {}
        self.count = 0

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def pivots(self) -> List[Hashable]:
        return sorted(self.rows, key=self.order)

    def _reduce(self, vector: SparseVector, origin: Optional[SparseVector]):
        work = dict(vector)
        while True:
            hits = [key for key in work if key in self.rows]
            if not hits:
                return work, origin
            pivot = min(hits, key=self.order)
            coeff = work[pivot]
            vec_add(work, self.rows[pivot], -coeff)
            if origin is not None:
                vec_add(origin, self.origins[pivot], -coeff)

    def reduce(self, vector: SparseVector) -> SparseVector:
        """Remainder of vector modulo the span (supported off the pivots)."""
        return self._reduce(vector, None)[0]

    def contains(self, vector: SparseVector) -> bool:
        return not self.reduce(vector)

    def add(self, vector: SparseVector) -> bool:
        """Insert vector; return True when it enlarged the span."""
        index = self.count
        self.count += 1
        origin = {index: 1} if self.track else None
        remainder, origin = self._reduce(vector, origin)
        if not remainder:
            if self.track:
                self.last_relation = origin
            return False
        pivot = min(remainder, key=self.order)
        lead = remainder[pivot]
        self.rows[pivot] = vec_scale(remainder, Fraction(1) / lead)
        if self.track:
            self.origins[pivot] = vec_scale(origin, Fraction(1) / lead)
        return True

    def express(self, vector: SparseVector) -> Optional[SparseVector]:
        """Coefficients over inserted vectors reproducing vector, or None."""
        if not self.track:
            raise ValueError("express() needs an EchelonBasis built with track=True")
        work = dict(vector)
        combination: SparseVector = {}
        while True:
            hits = [key for key in work if key in self.rows]
            if not hits:
                break
            pivot = min(hits, key=self.order)
            coeff = work[pivot]
            vec_add(work, self.rows[pivot], -coeff)
            vec_add(combination, self.origins[pivot], coeff)
        if work:
            return None
        return combination


def rank(vectors: Iterable[SparseVector], order: Optional[Callable] = None) -> int:
    basis = EchelonBasis(order)
    for vector in vectors:
        basis.add(vector)
    return basis.rank


def nullspace(columns: List[SparseVector], order: Optional[Callable] = None) -> List[SparseVector]:
    """Basis of {c : sum_j c_j columns[j] = 0}, as sparse vectors over column indices."""
    basis = EchelonBasis(order, track=True)
    relations = []
    for vector in columns:
        if not basis.add(vector):
            relations.append(basis.last_relation)
    return relations


def kernel_of_map(images: List[SparseVector], order: Optional[Callable] = None) -> List[SparseVector]:
    """Kernel of the linear map sending the j-th coordinate vector to images[j]."""
    return nullspace(images, order)

