"""
Loop algebras g (x) C[t, t^-1], their twisted subalgebras and finite
truncations.

A TruncatedLie is the quotient of the (twisted) loop algebra by
g_s (x) t^-s J_0 with J_0 = (q(u)). In the twisted case u = t^m and a basis
element (s, l, j) stands for v_l (x) t^-s u^j, v_l the l-th weight vector
of g_s. In the untwisted case m = 1, u = t and the v_l are the Chevalley
basis vectors.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from arithmetic.linalg import EchelonBasis, rank, vec_add, vec_scale
from arithmetic.polynomials import Poly, PowerTable
from arithmetic.scalars import Scalar, zeta_power
from exceptions import TruncationError
from lie.liealg import (
    ChevalleyAlgebra,
    FoldedAlgebra,
    GradedPieces,
    LiftedAut,
    average,
    graded_decomposition,
)
from lie.rootdata import FoldedRootData

logger = logging.getLogger(__name__)

Vector = Dict[int, object]

PART_MINUS = "-"
PART_ZERO = "0"
PART_PLUS = "+"
PART_RANK = {PART_MINUS: 0, PART_ZERO: 1, PART_PLUS: 2}


class LoopElement:
    """Finite sum of x_idx (x) t^k, stored as {(idx, k): coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[int, int], object]] = None):
        self.terms = {key: c for key, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, vector: Vector, k: int) -> "LoopElement":
        return cls({(idx, k): c for idx, c in vector.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, LoopElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        vec_add(out, other.terms)
        return LoopElement(out)

    def __sub__(self, other):
        out = dict(self.terms)
        vec_add(out, other.terms, -1)
        return LoopElement(out)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, coeff) -> "LoopElement":
        return LoopElement(vec_scale(self.terms, coeff))

    def slices(self) -> Dict[int, Vector]:
        """{k: g-vector} grouping the terms by loop exponent."""
        out: Dict[int, Vector] = {}
        for (idx, k), c in self.terms.items():
            out.setdefault(k, {})[idx] = c
        return out

    def canonical(self) -> List[Tuple[int, int, object]]:
        """Terms as (k, idx, coeff) sorted by exponent then basis index."""
        return sorted((k, idx, c) for (idx, k), c in self.terms.items())

    def to_dict(self, alg: Optional[ChevalleyAlgebra] = None) -> List[dict]:
        out = []
        for k, idx, c in self.canonical():
            out.append({"basis": alg.label(idx) if alg else idx, "exponent": k, "coeff": str(c)})
        return out

    def __repr__(self):
        return f"LoopElement({self.canonical()})"


def loop_bracket(alg: ChevalleyAlgebra, x: LoopElement, y: LoopElement) -> LoopElement:
    """[x (x) t^k, y (x) t^l] = [x, y] (x) t^(k+l), extended bilinearly."""
    out: Dict[Tuple[int, int], object] = {}
    for (a, k), ca in x.terms.items():
        for (b, l), cb in y.terms.items():
            if a == b:
                continue
            for c, value in alg.bracket_basis(a, b).items():
                key = (c, k + l)
                new = out.get(key, 0) + ca * cb * value
                if new:
                    out[key] = new
                else:
                    out.pop(key, None)
    return LoopElement(out)


def is_twisted_member(lifted: LiftedAut, x: LoopElement) -> bool:
    """x lies in L^Gamma(g): every slice v (x) t^k has sigma(v) = zeta^-k v."""
    m = lifted.m
    for k, vector in x.slices().items():
        image = lifted.apply(vector)
        vec_add(image, vector, -zeta_power(m, -k))
        if image:
            return False
    return True


@dataclass(frozen=True)
class LoopBasisElement:
    """v_l (x) t^-s u^j with the grading data used for PBW ordering."""

    s: int
    local: int
    j: int
    vector: Tuple[Tuple[int, object], ...]
    root: Tuple[int, ...]
    weight: Tuple[int, ...]
    degree: int

    @property
    def height(self):
        return sum(self.root)

    @property
    def part(self):
        h = self.height
        if h > 0:
            return PART_PLUS
        if h < 0:
            return PART_MINUS
        return PART_ZERO


class TruncatedLie:
    """Finite-dimensional quotient of the (twisted) loop algebra by an ideal (q)."""

    def __init__(
        self,
        fd: FoldedRootData,
        alg: ChevalleyAlgebra,
        lifted: LiftedAut,
        q: Poly,
        twisted: bool,
        pieces: Optional[GradedPieces] = None,
    ):
        self.fd = fd
        self.alg = alg
        self.lifted = lifted
        self.q = q
        self.twisted = twisted and fd.m > 1
        self.m = fd.m if self.twisted else 1
        self.powers = PowerTable(q)
        self.depth = q.degree

        if self.twisted:
            if pieces is None:
                pieces = graded_decomposition(alg, lifted)
            piece_vectors = pieces.weight_bases
            piece_sources = pieces.weight_indices
        else:
            piece_vectors = [[{a: 1} for a in range(alg.dim)]]
            piece_sources = [list(range(alg.dim))]
        self.piece_vectors: List[List[Vector]] = piece_vectors
        self._piece_echelon = []
        for vectors in piece_vectors:
            echelon = EchelonBasis(track=True)
            for v in vectors:
                echelon.add(v)
            self._piece_echelon.append(echelon)

        self.basis: List[LoopBasisElement] = []
        self._index: Dict[Tuple[int, int, int], int] = {}
        for s, vectors in enumerate(piece_vectors):
            for local, vector in enumerate(vectors):
                source = piece_sources[s][local]
                if self.twisted:
                    root = fd.restrict_root(alg.root_of(source))
                    weight = fd.lattice0.root_weight(root)
                else:
                    root = alg.root_of(source)
                    weight = alg.weight_of(source)
                for j in range(self.depth):
                    self._index[(s, local, j)] = len(self.basis)
                    self.basis.append(
                        LoopBasisElement(
                            s=s,
                            local=local,
                            j=j,
                            vector=tuple(sorted(vector.items())),
                            root=tuple(root),
                            weight=tuple(weight),
                            degree=self.m * j - s,
                        )
                    )
        self.dim = len(self.basis)
        self._g_cache: Dict[Tuple[int, int, int, int], Vector] = {}
        self._cache: Dict[Tuple[int, int], Vector] = {}
        logger.debug(
            f"Truncated {'twisted' if self.twisted else 'untwisted'} loop algebra of {alg.rs.label}: "
            f"deg q = {self.depth}, dim = {self.dim}"
        )

    # basis data

    def index(self, s, local, j) -> int:
        return self._index[(s, local, j)]

    def indices(self, part: str) -> List[int]:
        return [i for i, b in enumerate(self.basis) if b.part == part]

    def n_minus(self) -> List[int]:
        return self.indices(PART_MINUS)

    def n_plus(self) -> List[int]:
        return self.indices(PART_PLUS)

    def cartan_part(self) -> List[int]:
        return self.indices(PART_ZERO)

    def g_vector(self, idx) -> Vector:
        return dict(self.basis[idx].vector)

    def to_loop(self, idx) -> LoopElement:
        b = self.basis[idx]
        return LoopElement.monomial(self.g_vector(idx), b.degree)

    def g0_weight(self, weight) -> Tuple[int, ...]:
        """g_0 fundamental-weight coordinates of a weight of this algebra."""
        if self.twisted:
            return self.fd.to_g0_coords(weight)
        return self.fd.to_g0_coords(self.fd.restrict_weight(weight))

    def lattice(self):
        return self.fd.lattice0 if self.twisted else self.alg.rs.lattice()

    def label(self, idx) -> str:
        b = self.basis[idx]
        source = "+".join(self.alg.label(a) for a, _ in b.vector[:2])
        if len(b.vector) > 2:
            source += "+..."
        return f"({source})t^{b.degree}"

    # brackets

    def _piece_bracket(self, s1, l1, s2, l2) -> Vector:
        """Coordinates of [v_l1, v_l2] in the weight basis of g_(s1+s2)."""
        key = (s1, l1, s2, l2)
        if key not in self._g_cache:
            s = (s1 + s2) % self.m
            bracket = self.alg.bracket(self.piece_vectors[s1][l1], self.piece_vectors[s2][l2])
            coords = self._piece_echelon[s].express(bracket) if bracket else {}
            if coords is None:
                raise TruncationError(f"Bracket of g_{s1} and g_{s2} leaves g_{s}")
            # setdefault: concurrent workers all get the first stored value
            self._g_cache.setdefault(key, coords)
        return self._g_cache[key]

    def bracket_basis(self, a, b) -> Vector:
        if a == b:
            return {}
        if a > b:
            return vec_scale(self.bracket_basis(b, a), -1)
        key = (a, b)
        if key in self._cache:
            return self._cache[key]
        x, y = self.basis[a], self.basis[b]
        coords = self._piece_bracket(x.s, x.local, y.s, y.local)
        out: Vector = {}
        if coords:
            total = x.s + y.s
            s = total % self.m
            # t^-(s1+s2) = t^-s u^-1 when the grades wrap around
            e = x.j + y.j - (total // self.m)
            loop = self.powers.power(e)
            for local, c in coords.items():
                for j, p in enumerate(loop):
                    if p:
                        vec_add(out, {self._index[(s, local, j)]: c * p})
        return self._cache.setdefault(key, out)

    def bracket(self, u: Vector, v: Vector) -> Vector:
        out: Vector = {}
        for a, ca in u.items():
            for b, cb in v.items():
                if a != b:
                    vec_add(out, self.bracket_basis(a, b), ca * cb)
        return out

    def coords(self, x: LoopElement) -> Vector:
        """Image of a loop element in the quotient, in this basis."""
        out: Vector = {}
        for k, vector in x.slices().items():
            if self.twisted:
                s = (-k) % self.m
                e = (k + s) // self.m
            else:
                s, e = 0, k
            local_coords = self._piece_echelon[s].express(vector)
            if local_coords is None:
                raise TruncationError(f"Slice at t^{k} does not lie in g_{s}; element is not twisted")
            loop = self.powers.power(e)
            for local, c in local_coords.items():
                for j, p in enumerate(loop):
                    if p:
                        vec_add(out, {self._index[(s, local, j)]: c * p})
        return out

    # checks and export

    def jacobi_violations(self, limit=None) -> List[Tuple[int, int, int]]:
        bad = []
        for a, b, c in itertools.combinations(range(self.dim), 3):
            total: Vector = {}
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                vec_add(total, self.bracket({x: 1}, self.bracket_basis(y, z)))
            if total:
                bad.append((a, b, c))
                if limit and len(bad) >= limit:
                    break
        return bad

    def grading_violations(self) -> List[Tuple[int, int]]:
        """Basis pairs whose bracket leaves the weight space wt(a) + wt(b)."""
        bad = []
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                target = tuple(x + y for x, y in zip(self.basis[a].weight, self.basis[b].weight))
                if any(self.basis[c].weight != target for c in self.bracket_basis(a, b)):
                    bad.append((a, b))
        return bad

    def evaluation(self, idx, point: Scalar) -> Vector:
        """Image of a basis element under x (x) t^k -> point^k x."""
        b = self.basis[idx]
        return vec_scale(self.g_vector(idx), point ** b.degree)

    def evaluation_rank(self, points: Iterable[Scalar]) -> int:
        """Rank of the joint evaluation map into copies of g, one per point."""
        points = list(points)
        rows = []
        for idx in range(self.dim):
            row = {}
            for p_index, point in enumerate(points):
                for a, c in self.evaluation(idx, point).items():
                    row[(p_index, a)] = c
            rows.append(row)
        return rank(rows)

    def grade_dims(self) -> List[int]:
        return [len(v) * self.depth for v in self.piece_vectors]

    def weight_histogram(self) -> List[Tuple[Tuple[int, ...], int]]:
        counts: Dict[Tuple[int, ...], int] = {}
        for b in self.basis:
            counts[b.weight] = counts.get(b.weight, 0) + 1
        return sorted(counts.items())

    def to_dict(self):
        return {
            "algebra": self.alg.rs.label,
            "twisted": self.twisted,
            "period": self.m,
            "ideal_generator": self.q.to_strings(),
            "dimension": self.dim,
            "grade_dimensions": self.grade_dims(),
            "parts": {
                "n_minus": len(self.n_minus()),
                "cartan": len(self.cartan_part()),
                "n_plus": len(self.n_plus()),
            },
            "weight_histogram": [{"weight": list(w), "count": c} for w, c in self.weight_histogram()],
        }


def truncate(
    fd: FoldedRootData,
    alg: ChevalleyAlgebra,
    lifted: LiftedAut,
    q: Poly,
    twisted: bool,
    pieces: Optional[GradedPieces] = None,
) -> TruncatedLie:
    """Quotient of L(g) (twisted=False, q in t) or L^Gamma(g) (twisted=True, q in u = t^m)."""
    if q.degree < 1:
        raise TruncationError("Constant ideal generator gives the zero algebra")
    return TruncatedLie(fd, alg, lifted, q, twisted, pieces)


def ideal_for_points(m: int, points: Dict[Scalar, int], twisted: bool) -> Poly:
    """prod (u - a^m)^N over orbit keys (twisted) or prod (t - a)^N (untwisted)."""
    roots: Dict[Scalar, int] = {}
    for a, depth in points.items():
        a = Scalar.coerce(a, m)
        key = a ** m if twisted else a
        roots[key] = max(roots.get(key, 0), depth)
    return Poly.from_roots(roots, m)


def truncate_at_points(folded: FoldedAlgebra, points: Dict[Scalar, int], twisted: bool) -> TruncatedLie:
    q = ideal_for_points(folded.m, points, twisted)
    return truncate(folded.fd, folded.alg, folded.lifted, q, twisted, folded.pieces)


# small subalgebras


CASE_LONG = "long"
CASE_SHORT = "short"
CASE_A2N_LONG = "a2n-long"
CASE_A2N_SHORT = "a2n-short"


@dataclass
class SL2LoopCopy:
    """Embedded L(sl_2): e(q) = e_q (x) t^(step q + shift), likewise f and h.

    The g-vectors may depend on q modulo the period (the averaged
    generators of a root orbit); the loop sl_2 relations
    [e(q), f(r)] = h(q + r), [h(q), e(r)] = 2 e(q + r) hold exactly.
    """

    name: str
    k0: int
    step: int
    shifts: Tuple[int, int, int]
    e_vectors: List[Vector]
    f_vectors: List[Vector]
    h_vectors: List[Vector]

    @property
    def period(self):
        return len(self.e_vectors)

    def _element(self, vectors, shift, q) -> LoopElement:
        k = self.step * q + shift
        return LoopElement.monomial(vectors[k % len(vectors)], k)

    def e(self, q) -> LoopElement:
        return self._element(self.e_vectors, self.shifts[0], q)

    def f(self, q) -> LoopElement:
        return self._element(self.f_vectors, self.shifts[1], q)

    def h(self, q) -> LoopElement:
        return self._element(self.h_vectors, self.shifts[2], q)

    def relation_violations(self, alg: ChevalleyAlgebra, span: int = 2) -> List[str]:
        bad = []
        for q in range(-span, span + 1):
            for r in range(-span, span + 1):
                if loop_bracket(alg, self.e(q), self.f(r)) != self.h(q + r):
                    bad.append(f"[e({q}), f({r})] != h({q + r})")
                if loop_bracket(alg, self.h(q), self.e(r)) != self.e(q + r).scale(2):
                    bad.append(f"[h({q}), e({r})] != 2e({q + r})")
                if loop_bracket(alg, self.h(q), self.f(r)) != self.f(q + r).scale(-2):
                    bad.append(f"[h({q}), f({r})] != -2f({q + r})")
                if loop_bracket(alg, self.h(q), self.h(r)):
                    bad.append(f"[h({q}), h({r})] != 0")
        return bad

    def to_dict(self, alg: ChevalleyAlgebra):
        return {
            "name": self.name,
            "step": self.step,
            "shifts": list(self.shifts),
            "e(0)": self.e(0).to_dict(alg),
            "f(0)": self.f(0).to_dict(alg),
            "h(0)": self.h(0).to_dict(alg),
        }


@dataclass
class SmallSubalgebra:
    """The loop copies attached to alpha in R_0^+ and which case produced them."""

    k0: int
    case: str
    copies: List[SL2LoopCopy]
    sl3_violations: Optional[List[str]] = None

    @property
    def main(self) -> SL2LoopCopy:
        return self.copies[0]

    def to_dict(self, alg: ChevalleyAlgebra):
        out = {
            "root": self.k0,
            "case": self.case,
            "copies": [c.to_dict(alg) for c in self.copies],
        }
        if self.sl3_violations is not None:
            out["sl3_equivariant"] = not self.sl3_violations
        return out


def _eigen_grade(lifted: LiftedAut, idx: int) -> int:
    """s with sigma(x_idx) = zeta^s x_idx for a sigma-fixed root vector."""
    c = lifted.sign_on(idx)
    for s in range(lifted.m):
        if zeta_power(lifted.m, s) == c:
            return s
    raise TruncationError(f"Root vector {lifted.alg.label(idx)} is not a sigma eigenvector")


def small_subalgebra(folded: FoldedAlgebra, k0: int) -> SmallSubalgebra:
    """Embedded L(sl_2) (and L^Gamma(sl_3) in type A_2n) through alpha = R_0^+[k0]."""
    fd, alg, lifted = folded.fd, folded.alg, folded.lifted
    m = fd.m
    beta = fd.preimage(k0)
    kb = alg.rs.root_index[beta]
    xp, xm = alg.x_plus(kb), alg.x_minus(kb)
    hb = alg.coroot_vector(kb)
    stab = fd.stab_of_root(beta)
    long = not fd.is_short(k0)

    if fd.is_a2n and not long:
        # e = X + sigma X lives in g_0 but only [h, e] = e; rescale f and h
        e = average(lifted, {xp: 1}, 0, 1)
        f = vec_scale(average(lifted, {xm: 1}, 0, 1), 2)
        h = vec_scale(average(lifted, hb, 0, 1), 2)
        main = SL2LoopCopy("alpha", k0, 2, (0, 0, 0), [e], [f], [h])
        copies = [main]
        x2p = folded.twisted.x2_plus.get(k0)
        x2m = folded.twisted.x2_minus.get(k0)
        if x2p:
            h2 = average(lifted, hb, 0, 1)
            c = alg.bracket(x2p, x2m)
            scale = _ratio(c, h2)
            copies.append(
                SL2LoopCopy("2alpha", k0, 2, (1, -1, 0), [x2p], [vec_scale(x2m, Fraction(1) / scale)], [h2])
            )
        sub = SmallSubalgebra(k0, CASE_A2N_SHORT, copies)
        sub.sl3_violations = sl3_embedding_violations(folded, k0)
        return sub

    if stab == m and m > 1:
        s = _eigen_grade(lifted, xp)
        main = SL2LoopCopy("alpha", k0, m, (-s, s, 0), [{xp: 1}], [{xm: 1}], [hb])
    else:
        # orbit of size m / stab; E(k) carries zeta^(kj), which lies in g_-k
        period = m
        main = SL2LoopCopy(
            "alpha",
            k0,
            1,
            (0, 0, 0),
            [average(lifted, {xp: 1}, -k, stab) for k in range(period)],
            [average(lifted, {xm: 1}, -k, stab) for k in range(period)],
            [average(lifted, hb, -k, stab) for k in range(period)],
        )
    if fd.is_a2n:
        case = CASE_A2N_LONG
    else:
        case = CASE_LONG if long else CASE_SHORT
    return SmallSubalgebra(k0, case, [main])


def _ratio(vector: Vector, base: Vector):
    key = next(iter(base))
    c = vector.get(key, 0) / base[key]
    if vec_scale(base, c) != vector:
        raise TruncationError("Bracket of the x_2alpha elements is not a multiple of h")
    return c


def ell_for_root(fd: FoldedRootData, k0: int) -> int:
    """Smallest loop step of the sl_2 copy through alpha (1, m, 2 or 1)."""
    if fd.is_a2n:
        return 2 if fd.is_short(k0) else 1
    if fd.is_short(k0):
        return 1
    return fd.m


def sl3_embedding_violations(folded: FoldedAlgebra, k0: int) -> List[str]:
    """Check that e_1 -> X_beta, e_2 -> sigma X_beta extends to a sigma-equivariant sl_3 -> g."""
    from lie.liealg import build_chevalley, lift_automorphism
    from lie.rootdata import build_root_system, make_automorphism

    alg, lifted, fd = folded.alg, folded.lifted, folded.fd
    sl3_rs = build_root_system("A", 2)
    sl3 = build_chevalley(sl3_rs)
    swap = lift_automorphism(sl3, make_automorphism(sl3_rs, (1, 0)))

    beta = fd.preimage(k0)
    kb = alg.rs.root_index[beta]
    images: Dict[int, Vector] = {}
    e1, e2 = sl3.x_plus(0), sl3.x_plus(1)
    f1, f2 = sl3.x_minus(0), sl3.x_minus(1)
    images[e1] = {alg.x_plus(kb): 1}
    images[e2] = lifted.apply(images[e1])
    images[f1] = {alg.x_minus(kb): 1}
    images[f2] = lifted.apply(images[f1])
    for top, (a, b) in ((sl3.x_plus(2), (e1, e2)), (sl3.x_minus(2), (f1, f2))):
        n = sl3.bracket_basis(a, b)[top]
        images[top] = vec_scale(alg.bracket(images[a], images[b]), Fraction(1) / n)
    for i in range(2):
        images[sl3.h(i)] = alg.bracket(images[sl3.x_plus(i)], images[sl3.x_minus(i)])

    def phi(vector: Vector) -> Vector:
        out: Vector = {}
        for idx, c in vector.items():
            vec_add(out, images[idx], c)
        return out

    bad = []
    for a in range(sl3.dim):
        if not images[a]:
            bad.append(f"{sl3.label(a)} maps to 0")
        if phi(swap.apply({a: 1})) != lifted.apply(images[a]):
            bad.append(f"sigma does not commute at {sl3.label(a)}")
        for b in range(a + 1, sl3.dim):
            if phi(sl3.bracket_basis(a, b)) != alg.bracket(images[a], images[b]):
                bad.append(f"bracket not preserved at ({sl3.label(a)}, {sl3.label(b)})")
    return bad
