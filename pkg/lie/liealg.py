"""
Chevalley basis, lifted diagram automorphism, graded pieces g_s and the
twisted generators h_alpha(k), x_alpha^(+-)(k), x_2alpha^(+-)(1).

Basis indices of a ChevalleyAlgebra with P positive roots and rank n:
    0 .. P-1        x+_beta for the k-th positive root
    P .. 2P-1       x-_beta
    2P .. 2P+n-1    H_i
Vectors are sparse dicts index -> coefficient.
"""
import itertools
import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from arithmetic.linalg import EchelonBasis, kernel_of_map, vec_add, vec_scale
from arithmetic.scalars import Scalar, zeta_power
from exceptions import StructureConstantError
from lie.rootdata import (
    DiagramAut,
    FoldedRootData,
    RootSystem,
    build_root_system,
    fold,
    make_automorphism,
)
from utils.performance import timing_decorator

logger = logging.getLogger(__name__)

Vector = Dict[int, object]


def _sign(coords):
    return 1 if sum(coords) > 0 else -1


class ChevalleyAlgebra:
    """Simple Lie algebra with an explicit Chevalley basis and bracket table."""

    def __init__(self, rs: RootSystem, table: Dict[Tuple[int, int], Vector]):
        self.rs = rs
        self.P = len(rs.positive_roots)
        self.n = rs.rank
        self.dim = 2 * self.P + self.n
        self.table = table

    # indexing

    def x_plus(self, k):
        return k

    def x_minus(self, k):
        return self.P + k

    def h(self, i):
        return 2 * self.P + i

    def is_h(self, idx):
        return idx >= 2 * self.P

    def root_of(self, idx) -> Tuple[int, ...]:
        """Signed root coordinates of a basis vector (zero tuple for H_i)."""
        if idx < self.P:
            return self.rs.positive_roots[idx]
        if idx < 2 * self.P:
            return tuple(-c for c in self.rs.positive_roots[idx - self.P])
        return (0,) * self.n

    def index_of_root(self, coords) -> Optional[int]:
        coords = tuple(coords)
        if coords in self.rs.root_index:
            return self.rs.root_index[coords]
        neg = tuple(-c for c in coords)
        if neg in self.rs.root_index:
            return self.P + self.rs.root_index[neg]
        return None

    def weight_of(self, idx):
        return self.rs.root_to_weight(self.root_of(idx))

    def label(self, idx) -> str:
        if idx < self.P:
            return "x+" + "".join(str(c) for c in self.rs.positive_roots[idx])
        if idx < 2 * self.P:
            return "x-" + "".join(str(c) for c in self.rs.positive_roots[idx - self.P])
        return f"h{idx - 2 * self.P + 1}"

    # brackets

    def bracket_basis(self, a, b) -> Vector:
        if a == b:
            return {}
        if a < b:
            return self.table.get((a, b), {})
        return vec_scale(self.table.get((b, a), {}), -1)

    def bracket(self, u: Vector, v: Vector) -> Vector:
        result: Vector = {}
        for a, ca in u.items():
            for b, cb in v.items():
                if a == b:
                    continue
                vec_add(result, self.bracket_basis(a, b), ca * cb)
        return result

    def coroot_vector(self, k) -> Vector:
        """H_beta = [x+_beta, x-_beta] for the k-th positive root."""
        return self.bracket_basis(self.x_plus(k), self.x_minus(k))

    def structure_constants(self):
        """N_{alpha, beta} for pairs of root vectors whose sum is a root."""
        out = {}
        for (a, b), vec in self.table.items():
            if self.is_h(a) or self.is_h(b) or len(vec) != 1:
                continue
            (c, value), = vec.items()
            if not self.is_h(c):
                out[(a, b)] = value
        return out

    def dump_table(self) -> List[str]:
        """Sorted text dump of the nonzero brackets, for golden-file comparison."""
        lines = []
        for (a, b) in sorted(self.table):
            vec = self.table[(a, b)]
            if not vec:
                continue
            terms = " ".join(f"{vec[c]}*{self.label(c)}" for c in sorted(vec))
            lines.append(f"[{self.label(a)}, {self.label(b)}] = {terms}")
        return lines


def _cocycle(rs: RootSystem, alpha, beta) -> int:
    """Bimultiplicative sign with eps(a, a) = (-1)^((a, a)/2) on a simply-laced lattice."""
    exponent = 0
    for i, ai in enumerate(alpha):
        if not ai:
            continue
        for j, bj in enumerate(beta):
            if not bj:
                continue
            if i == j:
                exponent += ai * bj
            elif i < j and rs.cartan[i][j]:
                exponent += ai * bj
    return -1 if exponent % 2 else 1


def _simply_laced_table(rs: RootSystem) -> Dict[Tuple[int, int], Vector]:
    P = len(rs.positive_roots)
    n = rs.rank
    dim = 2 * P + n
    alg = ChevalleyAlgebra(rs, {})
    table: Dict[Tuple[int, int], Vector] = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            ra, rb = alg.root_of(a), alg.root_of(b)
            if alg.is_h(a) and alg.is_h(b):
                continue
            if alg.is_h(a) or alg.is_h(b):
                hidx, other = (a, b) if alg.is_h(a) else (b, a)
                i = hidx - 2 * P
                value = rs.root_to_weight(alg.root_of(other))[i]
                if value:
                    vec = {other: value if hidx == a else -value}
                    table[(a, b)] = vec
                continue
            total = tuple(x + y for x, y in zip(ra, rb))
            if not any(total):
                # [x+_beta, x-_beta] = H_beta; a < b means a is the positive one
                beta = ra
                table[(a, b)] = {2 * P + i: c for i, c in enumerate(beta) if c}
                continue
            c = alg.index_of_root(total)
            if c is None:
                continue
            # X_g = s(g) E_g converts the lattice construction to a Chevalley basis
            value = _sign(ra) * _sign(rb) * _sign(total) * _cocycle(rs, ra, rb)
            table[(a, b)] = {c: value}
    return table


# simply-laced algebras whose folding gives the non-simply-laced types
FOLDING_COVERS = {
    "B": lambda n: ("D", n + 1, tuple(range(n - 1)) + (n, n - 1)) if n >= 3 else ("A", 3, (2, 1, 0)),
    "C": lambda n: ("A", 2 * n - 1, tuple(reversed(range(2 * n - 1)))),
    "F": lambda n: ("E", 6, (5, 1, 4, 3, 2, 0)),
    "G": lambda n: ("D", 4, (2, 1, 3, 0)),
}


def _match_labels(folded, target) -> Tuple[int, ...]:
    n = len(target)
    for perm in itertools.permutations(range(n)):
        if all(folded[perm[i]][perm[j]] == target[i][j] for i in range(n) for j in range(n)):
            return perm
    raise StructureConstantError("Folded cover does not match the requested Cartan matrix")


def _folded_table(rs: RootSystem) -> Dict[Tuple[int, int], Vector]:
    """Chevalley basis of a non-simply-laced algebra as fixed points of a simply-laced cover."""
    cover_type, cover_rank, perm = FOLDING_COVERS[rs.type_label](rs.rank)
    cover_rs = build_root_system(cover_type, cover_rank)
    cover = build_chevalley(cover_rs)
    aut = make_automorphism(cover_rs, perm)
    fd = fold(cover_rs, aut)
    lifted = lift_automorphism(cover, aut)
    labels = _match_labels(fd.folded_cartan, rs.cartan)

    def fixed_vector(coords, sign):
        # coords in rs numbering -> folded numbering
        folded_coords = [0] * rs.rank
        for i, c in enumerate(coords):
            folded_coords[labels[i]] = c
        k0 = fd.positive_roots0.index(tuple(folded_coords))
        beta = fd.preimage(k0)
        idx = cover.index_of_root(tuple(sign * c for c in beta))
        return average(lifted, {idx: 1}, 0, fd.stab_of_root(beta))

    P = len(rs.positive_roots)
    n = rs.rank
    vectors: List[Vector] = []
    for r in rs.positive_roots:
        vectors.append(fixed_vector(r, 1))
    for r in rs.positive_roots:
        vectors.append(fixed_vector(r, -1))
    for i in range(n):
        simple = rs.root_index[tuple(1 if j == i else 0 for j in range(n))]
        vectors.append(cover.bracket(vectors[simple], vectors[P + simple]))

    basis = EchelonBasis(track=True)
    for v in vectors:
        if not basis.add(v):
            raise StructureConstantError("Fixed-point vectors are linearly dependent")

    table: Dict[Tuple[int, int], Vector] = {}
    for a in range(len(vectors)):
        for b in range(a + 1, len(vectors)):
            bracket = cover.bracket(vectors[a], vectors[b])
            if not bracket:
                continue
            coords = basis.express(bracket)
            if coords is None:
                raise StructureConstantError("Fixed-point subalgebra is not closed under brackets")
            clean = {}
            for c, value in coords.items():
                value = Fraction(value.to_fraction() if isinstance(value, Scalar) else value)
                if value.denominator != 1:
                    raise StructureConstantError(f"Non-integral structure constant {value}")
                clean[c] = int(value)
            table[(a, b)] = clean
    return table


_CHEVALLEY_CACHE: Dict[str, ChevalleyAlgebra] = {}
# one algebra object per key, also when built from worker threads
_CACHE_LOCK = threading.RLock()


@timing_decorator
def build_chevalley(rs: RootSystem) -> ChevalleyAlgebra:
    """Chevalley algebra of rs with integer structure constants."""
    with _CACHE_LOCK:
        if rs.label in _CHEVALLEY_CACHE:
            return _CHEVALLEY_CACHE[rs.label]
        if rs.is_simply_laced():
            table = _simply_laced_table(rs)
        else:
            table = _folded_table(rs)
        alg = ChevalleyAlgebra(rs, table)
        for (a, b), vec in alg.structure_constants().items():
            if abs(vec) > 3:
                raise StructureConstantError(
                    f"Structure constant {vec} out of range for {alg.label(a)}, {alg.label(b)}"
                )
        logger.info(f"Built Chevalley algebra {rs.label} of dimension {alg.dim}")
        _CHEVALLEY_CACHE[rs.label] = alg
        return alg


def jacobi_violations(alg: ChevalleyAlgebra, limit=None) -> List[Tuple[int, int, int]]:
    """Basis triples on which the Jacobi identity fails."""
    bad = []
    for a, b, c in itertools.combinations(range(alg.dim), 3):
        total: Vector = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            vec_add(total, alg.bracket({x: 1}, alg.bracket_basis(y, z)))
        if total:
            bad.append((a, b, c))
            if limit and len(bad) >= limit:
                break
    return bad


class LiftedAut:
    """Lie algebra automorphism of g induced by a diagram automorphism."""

    def __init__(self, alg: ChevalleyAlgebra, aut: DiagramAut, images: Dict[int, Vector]):
        self.alg = alg
        self.aut = aut
        self.images = images

    @property
    def m(self):
        return self.aut.m

    def apply(self, vector: Vector) -> Vector:
        out: Vector = {}
        for idx, c in vector.items():
            vec_add(out, self.images[idx], c)
        return out

    def sign_on(self, idx) -> int:
        """c with sigma(x_idx) = c x_sigma(idx) (root vectors only)."""
        (_, c), = self.images[idx].items()
        return c


def lift_automorphism(alg: ChevalleyAlgebra, aut: DiagramAut) -> LiftedAut:
    """Extend e_i -> e_sigma(i), f_i -> f_sigma(i), h_i -> h_sigma(i) to all of g."""
    rs = alg.rs
    n = rs.rank
    images: Dict[int, Vector] = {}
    for i in range(n):
        images[alg.h(i)] = {alg.h(aut(i)): 1}
    simple = [rs.root_index[tuple(1 if j == i else 0 for j in range(n))] for i in range(n)]
    for i in range(n):
        images[alg.x_plus(simple[i])] = {alg.x_plus(simple[aut(i)]): 1}
        images[alg.x_minus(simple[i])] = {alg.x_minus(simple[aut(i)]): 1}

    # breadth first by height: x_beta = [x_alpha_i, x_gamma] / N
    for k, beta in enumerate(rs.positive_roots):
        if sum(beta) == 1:
            continue
        for sign, base in ((1, alg.x_plus), (-1, alg.x_minus)):
            image = None
            for i in range(n):
                gamma = tuple(c - (1 if j == i else 0) for j, c in enumerate(beta))
                if gamma not in rs.root_index:
                    continue
                g_idx = base(rs.root_index[gamma])
                s_idx = base(simple[i])
                bracket = alg.bracket_basis(s_idx, g_idx)
                coeff = bracket.get(base(k))
                if not coeff:
                    continue
                candidate = vec_scale(
                    alg.bracket(images[s_idx], images[g_idx]), Fraction(1) / coeff
                )
                if image is None:
                    image = candidate
                elif candidate != image:
                    raise StructureConstantError(
                        f"Inconsistent lift of {aut.perm} at root {beta}: {candidate} vs {image}"
                    )
            if image is None or len(image) != 1:
                raise StructureConstantError(f"Could not propagate the automorphism to root {beta}")
            images[base(k)] = {c: int(v) for c, v in image.items()}

    lifted = LiftedAut(alg, aut, images)
    logger.debug(f"Lifted diagram automorphism {aut.perm} of {rs.label}")
    return lifted


def automorphism_violations(lifted: LiftedAut) -> List[Tuple[int, int]]:
    """Basis pairs where sigma fails to respect the bracket, plus failures of sigma^m = id."""
    alg = lifted.alg
    bad = []
    for a in range(alg.dim):
        image = {a: 1}
        for _ in range(lifted.m):
            image = lifted.apply(image)
        if image != {a: 1}:
            bad.append((a, a))
        for b in range(a + 1, alg.dim):
            lhs = lifted.apply(alg.bracket_basis(a, b))
            rhs = alg.bracket(lifted.images[a], lifted.images[b])
            if lhs != rhs:
                bad.append((a, b))
    return bad


def average(lifted: LiftedAut, vector: Vector, s: int, stab: int) -> Vector:
    """(1/stab) * sum_j zeta^(-s j) sigma^j(vector), an element of g_s."""
    m = lifted.m
    out: Vector = {}
    current = vector
    for j in range(m):
        coeff = zeta_power(m, -s * j) / stab if m > 1 else Fraction(1, stab)
        vec_add(out, current, coeff)
        current = lifted.apply(current)
    return out


def projector(lifted: LiftedAut, vector: Vector, s: int) -> Vector:
    """Projection of vector onto g_s along the other eigenspaces."""
    return average(lifted, vector, s, lifted.m)


def eigen_grade(lifted: LiftedAut, vector: Vector) -> Optional[int]:
    """s with sigma(vector) = zeta^s vector, or None for zero and non-eigenvectors."""
    if not vector:
        return None
    image = lifted.apply(vector)
    for s in range(lifted.m):
        if image == vec_scale(vector, zeta_power(lifted.m, s)):
            return s
    return None


@dataclass
class GradedPieces:
    """Eigenspaces g_s of sigma, each with a nullspace basis and a weight basis."""

    m: int
    nullspace_bases: List[List[Vector]]
    weight_bases: List[List[Vector]]
    weight_indices: List[List[int]] = field(default_factory=list)

    def dims(self) -> List[int]:
        return [len(b) for b in self.weight_bases]


@timing_decorator
def graded_decomposition(alg: ChevalleyAlgebra, lifted: LiftedAut) -> GradedPieces:
    """g_s = ker(sigma - zeta^s) for each s, by exact elimination."""
    m = lifted.m
    nullspace_bases = []
    weight_bases = []
    weight_indices = []
    for s in range(m):
        eigen = zeta_power(m, s)
        images = []
        for a in range(alg.dim):
            col = dict(lifted.images[a])
            vec_add(col, {a: 1}, -eigen)
            images.append(col)
        relations = kernel_of_map(images)
        nullspace_bases.append([{k: v for k, v in rel.items()} for rel in relations])

        # weight-adapted basis: projector images of Chevalley vectors, in index order
        echelon = EchelonBasis()
        chosen, sources = [], []
        for a in range(alg.dim):
            image = projector(lifted, {a: 1}, s)
            if image and echelon.add(image):
                chosen.append(image)
                sources.append(a)
        if len(chosen) != len(relations):
            raise StructureConstantError(
                f"Eigenspace g_{s}: projector rank {len(chosen)} differs from nullspace rank {len(relations)}"
            )
        weight_bases.append(chosen)
        weight_indices.append(sources)
    total = sum(len(b) for b in weight_bases)
    if total != alg.dim:
        raise StructureConstantError(f"Graded pieces have total dimension {total}, expected {alg.dim}")
    logger.debug(f"Graded dimensions for {alg.rs.label}: {[len(b) for b in weight_bases]}")
    return GradedPieces(m, nullspace_bases, weight_bases, weight_indices)


def grading_violations(alg: ChevalleyAlgebra, lifted: LiftedAut, pieces: GradedPieces):
    """Pairs (s, s') with [g_s, g_s'] not inside g_(s+s')."""
    m = lifted.m
    bad = []
    for s in range(m):
        for t in range(m):
            eigen = zeta_power(m, s + t)
            for u in pieces.weight_bases[s]:
                for v in pieces.weight_bases[t]:
                    w = alg.bracket(u, v)
                    diff = lifted.apply(w)
                    vec_add(diff, w, -eigen)
                    if diff:
                        bad.append((s, t))
                        break
    return bad


def highest_weight_vector_count(alg, pieces: GradedPieces, twisted, s) -> int:
    """dim of {v in g_s : [x_i+(0), v] = 0 for all i in I_0}."""
    basis = pieces.weight_bases[s]
    raising = [twisted.x_plus[twisted.simple_index(i)][0] for i in range(twisted.fd.rank0)]
    images = []
    for v in basis:
        col = {}
        for i, e in enumerate(raising):
            for c, value in alg.bracket(e, v).items():
                col[(i, c)] = value
        images.append(col)
    return len(kernel_of_map(images))


class TwistedGenerators:
    """h_alpha(k), x_alpha^(+-)(k) for alpha in R_0^+ and x_2alpha^(+-)(1) in type A_2n."""

    def __init__(self, alg: ChevalleyAlgebra, lifted: LiftedAut, fd: FoldedRootData):
        self.alg = alg
        self.lifted = lifted
        self.fd = fd
        m = fd.m
        self.x_plus: List[List[Vector]] = []
        self.x_minus: List[List[Vector]] = []
        self.h: List[List[Vector]] = []
        self.x2_plus: Dict[int, Vector] = {}
        self.x2_minus: Dict[int, Vector] = {}
        for k0 in range(len(fd.positive_roots0)):
            beta = fd.preimage(k0)
            stab = fd.stab_of_root(beta)
            kb = alg.rs.root_index[beta]
            hb = alg.coroot_vector(kb)
            self.x_plus.append([average(lifted, {alg.x_plus(kb): 1}, s, stab) for s in range(m)])
            self.x_minus.append([average(lifted, {alg.x_minus(kb): 1}, s, stab) for s in range(m)])
            self.h.append([average(lifted, hb, s, stab) for s in range(m)])
            if not self.x_plus[k0][0] or not self.x_minus[k0][0]:
                raise StructureConstantError(f"Folded root {fd.positive_roots0[k0]} averages to zero in g_0")
            if fd.is_a2n and fd.is_short(k0):
                plus = alg.bracket({alg.x_plus(kb): 1}, lifted.apply({alg.x_plus(kb): 1}))
                minus = alg.bracket({alg.x_minus(kb): 1}, lifted.apply({alg.x_minus(kb): 1}))
                if plus:
                    self.x2_plus[k0] = plus
                    self.x2_minus[k0] = minus

    def simple_index(self, i0: int) -> int:
        """Index in R_0^+ of the i0-th folded simple root."""
        coords = tuple(1 if j == i0 else 0 for j in range(self.fd.rank0))
        return self.fd.positive_roots0.index(coords)

    def h_simple(self, i0: int, s: int) -> Vector:
        """h_i(s) for the folded simple root i0 (h_i(0) when the node is fixed)."""
        k0 = self.simple_index(i0)
        vector = self.h[k0][s % self.fd.m]
        if not vector and self.fd.stab_sizes[i0] == self.fd.m:
            return self.h[k0][0]
        return vector

    def pairing(self, h_vec: Vector, x_vec: Vector) -> Optional[object]:
        """c with [h, x] = c x, or None if x is not an eigenvector."""
        bracket = self.alg.bracket(h_vec, x_vec)
        if not bracket:
            return 0
        key = next(iter(x_vec))
        c = bracket.get(key, 0) / x_vec[key]
        if vec_scale(x_vec, c) != bracket:
            return None
        return c

    def folded_cartan(self) -> List[List[int]]:
        """Cartan matrix of g_0 recomputed from brackets of x_i^(+-)(0), h_i(0)."""
        n0 = self.fd.rank0
        raw = [[self.pairing(self.h_simple(i, 0), self.x_plus[self.simple_index(j)][0]) for j in range(n0)]
               for i in range(n0)]
        out = []
        for i in range(n0):
            scale = Fraction(2) / _as_fraction(raw[i][i])
            out.append([int(scale * _as_fraction(raw[i][j])) for j in range(n0)])
        return out

    def sl2_triple(self, k0: int) -> Tuple[Vector, Vector, Vector]:
        """(e, f, h) spanning sl_2 for alpha in R_0^+, with the coroot normalized."""
        e = self.x_plus[k0][0]
        f = self.x_minus[k0][0]
        h = self.alg.bracket(e, f)
        c = _as_fraction(self.pairing(h, e))
        scale = Fraction(2) / c
        return e, vec_scale(f, scale), vec_scale(h, scale)

    def averaging_report(self) -> List[dict]:
        """Grades reached by averaging each simple root vector.

        x_alpha^+(k) weights sigma^j by zeta^(-k j) and lies in g_k. Weighting
        by zeta^(k j) instead reaches g_(-k); both agree only when m <= 2.
        """
        m = self.fd.m
        out = []
        for i0 in range(self.fd.rank0):
            k0 = self.simple_index(i0)
            beta = self.fd.preimage(k0)
            stab = self.fd.stab_of_root(beta)
            root_vector = {self.alg.x_plus(self.alg.rs.root_index[beta]): 1}
            flipped = [average(self.lifted, root_vector, -k, stab) for k in range(m)]
            out.append({
                "node": i0 + 1,
                "grades": [eigen_grade(self.lifted, self.x_plus[k0][k]) for k in range(m)],
                "positive_exponent_grades": [eigen_grade(self.lifted, v) for v in flipped],
            })
        return out


def _as_fraction(value) -> Fraction:
    if isinstance(value, Scalar):
        return value.to_fraction()
    return Fraction(value)


def twisted_generators(alg, lifted, fd) -> TwistedGenerators:
    return TwistedGenerators(alg, lifted, fd)


def sl2_violations(alg: ChevalleyAlgebra, e: Vector, f: Vector, h: Vector) -> List[str]:
    bad = []
    if alg.bracket(e, f) != h:
        bad.append("[e,f] != h")
    if alg.bracket(h, e) != vec_scale(e, 2):
        bad.append("[h,e] != 2e")
    if alg.bracket(h, f) != vec_scale(f, -2):
        bad.append("[h,f] != -2f")
    return bad


@dataclass
class FoldedAlgebra:
    """Everything about g and sigma needed downstream, built once."""

    rs: RootSystem
    fd: FoldedRootData
    alg: ChevalleyAlgebra
    lifted: LiftedAut
    pieces: GradedPieces
    twisted: TwistedGenerators

    @property
    def m(self):
        return self.fd.m


_FOLDED_CACHE: Dict[Tuple[str, int, Tuple[int, ...]], FoldedAlgebra] = {}


def build_folded_algebra(type_label: str, rank: int, perm=None) -> FoldedAlgebra:
    """Root data, Chevalley basis, sigma, grading and twisted generators (0-based perm)."""
    perm = tuple(perm) if perm is not None else tuple(range(rank))
    key = (type_label.upper(), rank, perm)
    with _CACHE_LOCK:
        if key in _FOLDED_CACHE:
            return _FOLDED_CACHE[key]
        rs = build_root_system(type_label, rank)
        aut = make_automorphism(rs, perm)
        fd = fold(rs, aut)
        alg = build_chevalley(rs)
        lifted = lift_automorphism(alg, aut)
        pieces = graded_decomposition(alg, lifted)
        twisted = twisted_generators(alg, lifted, fd)
        folded = FoldedAlgebra(rs, fd, alg, lifted, pieces, twisted)
        _FOLDED_CACHE[key] = folded
        return folded
