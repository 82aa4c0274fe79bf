"""
Finite-type root systems, diagram automorphisms and folded root data.

Indices are 0-based internally; the CLI speaks 1-based node labels.
Folded weights are stored as pairings with the orbit sums h_i(0), so the
restriction of a weight is obtained by summing its coordinates over orbits.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from arithmetic.scalars import Scalar, zeta_power
from exceptions import RootDataError

logger = logging.getLogger(__name__)

Weight = Tuple[int, ...]
RootCoords = Tuple[int, ...]

CLASSICAL_POSITIVE_ROOT_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


def cartan_matrix(type_label: str, rank: int) -> List[List[int]]:
    """Cartan matrix a_ij = <alpha_i^vee, alpha_j> in Bourbaki numbering."""
    t = type_label.upper()
    n = rank
    valid = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }
    if t not in valid or not valid[t]:
        raise RootDataError(f"Invalid type/rank combination: {type_label}{rank}")

    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if t in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if t == "B":
            link(n - 2, n - 1, -1, -2)
        elif t == "C":
            link(n - 2, n - 1, -2, -1)
    elif t == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif t == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif t == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif t == "G":
        link(0, 1, -3, -1)
    return a


def symmetrizer(cartan: Sequence[Sequence[int]]) -> List[Fraction]:
    """d_i with d_i a_ij = d_j a_ji, normalized so min d_i = 1."""
    n = len(cartan)
    d: List[Optional[Fraction]] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and cartan[i][j] and d[j] is None:
                    d[j] = d[i] * cartan[i][j] / cartan[j][i]
                    stack.append(j)
    low = min(d)
    return [x / low for x in d]


def _leading_minors_positive(matrix: List[List[Fraction]]) -> bool:
    n = len(matrix)
    for k in range(1, n + 1):
        sub = [list(row[:k]) for row in matrix[:k]]
        det = Fraction(1)
        for col in range(k):
            pivot = next((r for r in range(col, k) if sub[r][col]), None)
            if pivot is None:
                return False
            if pivot != col:
                sub[col], sub[pivot] = sub[pivot], sub[col]
                det = -det
            det *= sub[col][col]
            for r in range(col + 1, k):
                factor = sub[r][col] / sub[col][col]
                for c in range(col, k):
                    sub[r][c] -= factor * sub[col][c]
        if det <= 0:
            return False
    return True


def is_finite_cartan(cartan: Sequence[Sequence[int]]) -> bool:
    n = len(cartan)
    for i in range(n):
        if cartan[i][i] != 2:
            return False
        for j in range(n):
            if i != j and (cartan[i][j] > 0 or (cartan[i][j] == 0) != (cartan[j][i] == 0)):
                return False
    d = symmetrizer(cartan)
    sym = [[d[i] * cartan[i][j] for j in range(n)] for i in range(n)]
    if any(sym[i][j] != sym[j][i] for i in range(n) for j in range(n)):
        return False
    return _leading_minors_positive(sym)


def positive_roots_from_cartan(cartan: Sequence[Sequence[int]]) -> List[RootCoords]:
    """All positive roots by root-string closure, sorted by (height, coords)."""
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        next_layer = []
        for beta in layer:
            for i in range(n):
                # q: how far beta - k alpha_i stays a root
                q = 0
                lower = list(beta)
                while True:
                    lower[i] -= 1
                    if tuple(lower) in roots:
                        q += 1
                    else:
                        break
                pairing = sum(cartan[i][j] * beta[j] for j in range(n))
                p = q - pairing
                if p > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        next_layer.append(up)
        layer = next_layer
    return sorted(roots, key=lambda r: (sum(r), tuple(-x for x in r)))


@dataclass(frozen=True)
class RootSystem:
    """Root system of a simple Lie algebra, positive roots in simple-root coordinates."""

    type_label: str
    rank: int
    cartan: Tuple[Tuple[int, ...], ...]
    positive_roots: Tuple[RootCoords, ...]
    theta: int

    @property
    def label(self):
        return f"{self.type_label}{self.rank}"

    @cached_property
    def root_index(self) -> Dict[RootCoords, int]:
        return {r: k for k, r in enumerate(self.positive_roots)}

    @cached_property
    def lengths(self) -> List[Fraction]:
        return symmetrizer(self.cartan)

    def inner(self, beta: RootCoords, gamma: RootCoords) -> Fraction:
        """Invariant form with (alpha_i, alpha_j) = d_i a_ij (short simple roots have d = 1)."""
        d = self.lengths
        return sum(
            beta[i] * gamma[j] * d[i] * self.cartan[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
            if beta[i] and gamma[j]
        )

    def root_to_weight(self, beta: RootCoords) -> Weight:
        """Weight coordinates beta(H_i) of a root."""
        return tuple(sum(self.cartan[i][j] * beta[j] for j in range(self.rank)) for i in range(self.rank))

    def is_simply_laced(self):
        return self.type_label in ("A", "D", "E")

    def lattice(self) -> "WeightLattice":
        return WeightLattice(
            pairing=[list(row) for row in self.cartan],
            scales=[Fraction(1)] * self.rank,
            positive_roots=list(self.positive_roots),
        )

    def to_dict(self):
        return {
            "type": self.type_label,
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "positive_roots": [list(r) for r in self.positive_roots],
            "theta": list(self.positive_roots[self.theta]),
        }


def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Root system of the given finite type."""
    t = type_label.upper()
    cartan = cartan_matrix(t, rank)
    roots = positive_roots_from_cartan(cartan)
    expected = CLASSICAL_POSITIVE_ROOT_COUNTS[t](rank)
    if len(roots) != expected:
        raise RootDataError(f"Root closure for {t}{rank} found {len(roots)} roots, expected {expected}")
    theta = max(range(len(roots)), key=lambda k: sum(roots[k]))
    # theta dominates every root
    for r in roots:
        if any(x > y for x, y in zip(r, roots[theta])):
            raise RootDataError(f"No unique maximal root in {t}{rank}")
    logger.debug(f"Built root system {t}{rank} with {len(roots)} positive roots")
    return RootSystem(t, rank, tuple(tuple(r) for r in cartan), tuple(roots), theta)


def classify_cartan(cartan: Sequence[Sequence[int]]) -> str:
    """Type label (e.g. "C2") of a connected finite Cartan matrix, up to relabeling.

    B_2 and C_2 only differ by which node is long, so the Bourbaki labelling
    is tried as given before any permutation: [[2,-1],[-2,2]] is B2 and
    [[2,-2],[-1,2]] is C2.
    """
    n = len(cartan)
    target = [list(row) for row in cartan]
    candidates = []
    for t in "ABCDEFG":
        try:
            candidates.append((t, cartan_matrix(t, n)))
        except RootDataError:
            continue
    for t, candidate in candidates:
        if candidate == target:
            return f"{t}{n}"
    for t, candidate in candidates:
        for perm in itertools.permutations(range(n)):
            if all(candidate[perm[i]][perm[j]] == target[i][j] for i in range(n) for j in range(n)):
                return f"{t}{n}"
    raise RootDataError(f"Unrecognized Cartan matrix: {target}")


@dataclass(frozen=True)
class DiagramAut:
    """Permutation of the Dynkin nodes preserving the Cartan matrix."""

    perm: Tuple[int, ...]
    m: int

    def __call__(self, i):
        return self.perm[i]

    def power(self, i, k):
        for _ in range(k % self.m):
            i = self.perm[i]
        return i

    def act_on_weight(self, weight: Weight) -> Weight:
        """sigma(omega_i) = omega_sigma(i)."""
        out = [0] * len(weight)
        for i, c in enumerate(weight):
            out[self.perm[i]] = c
        return tuple(out)

    def act_on_root(self, beta: RootCoords) -> RootCoords:
        out = [0] * len(beta)
        for i, c in enumerate(beta):
            out[self.perm[i]] = c
        return tuple(out)


def make_automorphism(rs: RootSystem, perm: Sequence[int]) -> DiagramAut:
    """Validate a 0-based node permutation and compute its order."""
    perm = tuple(perm)
    n = rs.rank
    if sorted(perm) != list(range(n)):
        raise RootDataError(f"Not a permutation of the {n} nodes: {perm}")
    for i in range(n):
        for j in range(n):
            if rs.cartan[perm[i]][perm[j]] != rs.cartan[i][j]:
                raise RootDataError(f"Permutation {perm} does not preserve the Cartan matrix of {rs.label}")
    m = 1
    current = perm
    while current != tuple(range(n)):
        current = tuple(perm[k] for k in current)
        m += 1
    if m not in (1, 2, 3):
        raise RootDataError(f"Automorphism order {m} is not supported")
    return DiagramAut(perm, m)


def diagram_automorphisms(rs: RootSystem) -> List[DiagramAut]:
    """Every nontrivial diagram automorphism of order 2 or 3, lexicographic in the permutation."""
    n = rs.rank
    out = []
    for perm in itertools.permutations(range(n)):
        if perm == tuple(range(n)):
            continue
        if all(rs.cartan[perm[i]][perm[j]] == rs.cartan[i][j] for i in range(n) for j in range(n)):
            try:
                out.append(make_automorphism(rs, perm))
            except RootDataError:
                continue
    return out


class WeightLattice:
    """Weights in pairing coordinates against a fixed set of coroot-like elements.

    pairing[i][j] is alpha_j paired with the i-th element; scales[i] turns
    that element into the true coroot (it is 1 except at the special node of
    a folded A_2n, where it is 2).
    """

    def __init__(self, pairing, scales, positive_roots):
        self.n = len(pairing)
        self.pairing = [[Fraction(x) for x in row] for row in pairing]
        self.scales = [Fraction(s) for s in scales]
        self.positive_roots = [tuple(r) for r in positive_roots]
        self._inverse = _invert(self.pairing)

    def root_weight(self, beta: RootCoords) -> Weight:
        return tuple(
            int(sum(self.pairing[i][j] * beta[j] for j in range(self.n))) for i in range(self.n)
        )

    def coroot_value(self, weight: Weight, i: int) -> Fraction:
        return self.scales[i] * weight[i]

    def reflect(self, weight: Weight, i: int) -> Weight:
        c = self.coroot_value(weight, i)
        simple = [self.pairing[k][i] for k in range(self.n)]
        return tuple(int(weight[k] - c * simple[k]) for k in range(self.n))

    def is_dominant(self, weight: Weight) -> bool:
        return all(x >= 0 for x in weight)

    def root_coordinates(self, weight: Weight) -> Tuple[Fraction, ...]:
        """Expansion of a weight over the simple roots."""
        return tuple(sum(self._inverse[j][i] * weight[i] for i in range(self.n)) for j in range(self.n))

    def is_below(self, mu: Weight, lam: Weight) -> bool:
        """lam - mu lies in the nonnegative integer span of the simple roots."""
        diff = tuple(a - b for a, b in zip(lam, mu))
        coords = self.root_coordinates(diff)
        return all(c >= 0 and c.denominator == 1 for c in coords)

    def depth(self, mu: Weight, lam: Weight) -> int:
        """Height of lam - mu (assumes is_below)."""
        diff = tuple(a - b for a, b in zip(lam, mu))
        return int(sum(self.root_coordinates(diff)))

    def weyl_orbit(self, weight: Weight) -> List[Weight]:
        seen = {tuple(weight)}
        stack = [tuple(weight)]
        while stack:
            w = stack.pop()
            for i in range(self.n):
                r = self.reflect(w, i)
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return sorted(seen)

    def dominant_weights_below(self, lam: Weight) -> List[Weight]:
        """Dominant mu <= lam, reached by subtracting positive roots while staying dominant."""
        lam = tuple(lam)
        found = {lam}
        stack = [lam]
        root_weights = [self.root_weight(r) for r in self.positive_roots]
        while stack:
            w = stack.pop()
            for rw in root_weights:
                nxt = tuple(a - b for a, b in zip(w, rw))
                if self.is_dominant(nxt) and nxt not in found:
                    found.add(nxt)
                    stack.append(nxt)
        return sorted(found)

    def saturated_weights(self, lam: Weight) -> List[Weight]:
        """Every weight of an integrable highest-weight module of highest weight lam can only lie here."""
        out = set()
        for mu in self.dominant_weights_below(lam):
            out.update(self.weyl_orbit(mu))
        return sorted(out, key=lambda w: (self.depth(w, lam), w))


def _invert(matrix: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(matrix)
    work = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if work[r][col])
        work[col], work[pivot] = work[pivot], work[col]
        lead = work[col][col]
        work[col] = [x / lead for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


@dataclass
class FoldedRootData:
    """The root system of g together with its folding by a diagram automorphism."""

    rs: RootSystem
    aut: DiagramAut
    orbits: List[Tuple[int, ...]]
    reps: List[int]
    stab_sizes: List[int]
    orbit_pairing: List[List[int]]
    folded_cartan: List[List[int]]
    folded_type: str
    positive_roots0: List[RootCoords]
    root_lengths0: List[Fraction]
    r0_long: List[bool]
    special_node: Optional[int] = None
    rep_of: Dict[int, int] = field(default_factory=dict)

    @property
    def m(self):
        return self.aut.m

    @property
    def rank0(self):
        return len(self.reps)

    @property
    def is_a2n(self):
        return self.special_node is not None

    def zeta(self, e=1) -> Scalar:
        return zeta_power(self.m, e)

    def stab_of_root(self, beta: RootCoords) -> int:
        """|Gamma_beta|: stabilizer of the root beta under the node permutation."""
        orbit = {tuple(beta)}
        current = tuple(beta)
        for _ in range(self.m):
            current = self.aut.act_on_root(current)
            orbit.add(current)
        return self.m // len(orbit)

    def restrict_root(self, beta: RootCoords) -> RootCoords:
        out = [0] * self.rank0
        for j, c in enumerate(beta):
            out[self.rep_of[j]] += c
        return tuple(out)

    def restrict_weight(self, weight: Weight) -> Weight:
        """lambda -> lambda bar, as pairings with h_i(0)."""
        return restrict_weight(self, weight)

    def to_g0_coords(self, weight0: Weight) -> Weight:
        """Fundamental-weight coordinates of g_0 (pairings with the true coroots)."""
        return tuple(int(self.scales[i] * w) for i, w in enumerate(weight0))

    @cached_property
    def scales(self) -> List[Fraction]:
        return [Fraction(2, self.orbit_pairing[i][i]) for i in range(self.rank0)]

    @cached_property
    def lattice0(self) -> WeightLattice:
        return WeightLattice(self.orbit_pairing, self.scales, self.positive_roots0)

    def p0_basis(self) -> List[Weight]:
        """Generators of the restricted dominant weights, in g_0 fundamental coordinates."""
        basis = []
        for i in range(self.rank0):
            w = [0] * self.rank0
            w[i] = 2 if i == self.special_node else 1
            basis.append(tuple(w))
        return basis

    def preimage_orbit(self, k0: int) -> List[RootCoords]:
        """Positive roots of g restricting to the k0-th root of R_0^+."""
        target = self.positive_roots0[k0]
        return [b for b in self.rs.positive_roots if self.restrict_root(b) == target]

    def preimage(self, k0: int) -> RootCoords:
        """Chosen preimage: the smallest root (by the fixed root order) in the orbit."""
        return self.preimage_orbit(k0)[0]

    def is_short(self, k0: int) -> bool:
        return not self.r0_long[k0]

    def to_dict(self):
        return {
            "type": self.rs.type_label,
            "rank": self.rs.rank,
            "perm": [p + 1 for p in self.aut.perm],
            "order": self.m,
            "orbits": [[i + 1 for i in orbit] for orbit in self.orbits],
            "representatives": [r + 1 for r in self.reps],
            "stabilizer_sizes": list(self.stab_sizes),
            "folded_cartan": [list(r) for r in self.folded_cartan],
            "folded_type": self.folded_type,
            "p0_basis": [list(w) for w in self.p0_basis()],
            "positive_roots0": [list(r) for r in self.positive_roots0],
            "root_lengths0": ["long" if long else "short" for long in self.r0_long],
        }


def fold(rs: RootSystem, aut: DiagramAut) -> FoldedRootData:
    """Folded data: orbits, representatives, stabilizers and the Cartan matrix of g_0."""
    n = rs.rank
    m = aut.m
    seen = set()
    orbits = []
    for i in range(n):
        if i in seen:
            continue
        orbit = []
        j = i
        while j not in orbit:
            orbit.append(j)
            j = aut(j)
        orbit = tuple(sorted(orbit))
        seen.update(orbit)
        orbits.append(orbit)
    orbits.sort(key=lambda o: o[0])
    reps = [o[0] for o in orbits]
    rep_of = {i: k for k, orbit in enumerate(orbits) for i in orbit}
    stab_sizes = [m // len(orbit) for orbit in orbits]

    # alpha_j paired with h_i(0) = sum of H_i' over the orbit of i
    rank0 = len(orbits)
    pairing = [
        [sum(rs.cartan[ip][reps[j]] for ip in orbits[i]) for j in range(rank0)] for i in range(rank0)
    ]
    folded = [
        [int(Fraction(2, pairing[i][i]) * pairing[i][j]) for j in range(rank0)] for i in range(rank0)
    ]
    if not is_finite_cartan(folded):
        raise RootDataError(f"Folding {rs.label} by {aut.perm} gives a non-finite Cartan matrix {folded}")

    special = None
    if rs.type_label == "A" and rs.rank % 2 == 0 and m == 2:
        special = rep_of[rs.rank // 2 - 1]

    roots0 = positive_roots_from_cartan(folded)
    data = FoldedRootData(
        rs=rs,
        aut=aut,
        orbits=orbits,
        reps=reps,
        stab_sizes=stab_sizes,
        orbit_pairing=pairing,
        folded_cartan=folded,
        folded_type=classify_cartan(folded),
        positive_roots0=roots0,
        root_lengths0=[],
        r0_long=[],
        special_node=special,
        rep_of=rep_of,
    )

    for k0 in range(len(roots0)):
        orbit = data.preimage_orbit(k0)
        if not orbit:
            raise RootDataError(f"Folded root {roots0[k0]} has no preimage in {rs.label}")
        length = sum(rs.inner(b, c) for b in orbit for c in orbit) / Fraction(len(orbit) ** 2)
        data.root_lengths0.append(length)
    top = max(data.root_lengths0)
    if special is not None:
        # the special node carries the short roots; long ones are twice as long
        shortest = min(data.root_lengths0)
        data.r0_long = [length != shortest for length in data.root_lengths0]
    else:
        data.r0_long = [length == top for length in data.root_lengths0]
    logger.info(
        f"Folded {rs.label} by {[p + 1 for p in aut.perm]}: g0 of type {data.folded_type}, orbits {orbits}"
    )
    return data


def restrict_weight(fd: FoldedRootData, weight: Weight) -> Weight:
    """Sum the coordinates of weight over each orbit (pairing with h_i(0))."""
    out = [0] * fd.rank0
    for i, c in enumerate(weight):
        out[fd.rep_of[i]] += c
    return tuple(out)


def orbit_of_point(m: int, a: Scalar) -> List[Scalar]:
    """{zeta^j a : 0 <= j < m} without repetitions."""
    if not a:
        raise RootDataError("Points must be nonzero")
    out = []
    for j in range(m):
        b = zeta_power(m, j) * a
        if b not in out:
            out.append(b)
    return out


def trivial_fold(rs: RootSystem) -> FoldedRootData:
    return fold(rs, DiagramAut(tuple(range(rs.rank)), 1))
