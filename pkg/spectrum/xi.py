"""
Finitely supported dominant-weight-valued functions on points of Q(zeta_m)*.

A XiFunction maps points a to dominant weights of g (fundamental
coordinates). The generator sigma of Gamma acts on points by a -> zeta^-1 a
and on weights by omega_i -> omega_sigma(i); a function chi is equivariant
when chi(zeta^-1 a) = sigma(chi(a)).

An OrbitMultiset stores, for every node i of I_0, a multiset of
Gamma_i-orbits of points keyed by a^|Gamma_i|, together with one
representative point per key.
"""
import itertools
import logging
import random
from typing import Dict, Iterable, List, Optional, Tuple

from arithmetic.scalars import Scalar, parse_scalar, random_scalar
from exceptions import XiFunctionError
from lie.rootdata import FoldedRootData, Weight

logger = logging.getLogger(__name__)


def _add_weights(u: Weight, v: Weight) -> Weight:
    return tuple(a + b for a, b in zip(u, v))


class XiFunction:
    """Finitely supported function from points to nonzero dominant weights."""

    def __init__(self, entries: Optional[Dict[Scalar, Weight]], m: int, rank: int):
        self.m = m
        self.rank = rank
        self.entries: Dict[Scalar, Weight] = {}
        for point, weight in (entries or {}).items():
            point = Scalar.coerce(point, m)
            weight = tuple(int(c) for c in weight)
            if not point:
                raise XiFunctionError("Points must be nonzero")
            if len(weight) != rank:
                raise XiFunctionError(f"Weight {weight} does not have {rank} coordinates")
            if any(c < 0 for c in weight):
                raise XiFunctionError(f"Weight {weight} at {point} is not dominant")
            if any(weight):
                self.entries[point] = weight

    @classmethod
    def empty(cls, m, rank) -> "XiFunction":
        return cls({}, m, rank)

    def zero(self) -> Weight:
        return (0,) * self.rank

    def __call__(self, point) -> Weight:
        return self.entries.get(Scalar.coerce(point, self.m), self.zero())

    def __len__(self):
        return len(self.entries)

    def __bool__(self):
        return bool(self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, XiFunction)
            and self.m == other.m
            and self.rank == other.rank
            and self.entries == other.entries
        )

    def __add__(self, other: "XiFunction") -> "XiFunction":
        out = dict(self.entries)
        for point, weight in other.entries.items():
            out[point] = _add_weights(out.get(point, self.zero()), weight)
        return XiFunction(out, self.m, self.rank)

    def support(self) -> List[Scalar]:
        return sorted(self.entries, key=lambda a: a.sort_key())

    def items(self) -> List[Tuple[Scalar, Weight]]:
        return [(a, self.entries[a]) for a in self.support()]

    def wt(self) -> Weight:
        total = self.zero()
        for weight in self.entries.values():
            total = _add_weights(total, weight)
        return total

    def restrict_to(self, points: Iterable[Scalar]) -> "XiFunction":
        keep = {Scalar.coerce(p, self.m) for p in points}
        return XiFunction({a: w for a, w in self.entries.items() if a in keep}, self.m, self.rank)

    def to_dict(self) -> Dict[str, List[int]]:
        return {str(a): list(w) for a, w in self.items()}

    @classmethod
    def from_dict(cls, data: Dict[str, Iterable[int]], m: int, rank: int) -> "XiFunction":
        entries: Dict[Scalar, Weight] = {}
        for text, weight in data.items():
            point = parse_scalar(text, m)
            if point in entries:
                raise XiFunctionError(f"Point {text} given twice")
            entries[point] = tuple(weight)
        return cls(entries, m, rank)

    def __repr__(self):
        return f"XiFunction({self.to_dict()})"


def for_fold(fd: FoldedRootData, entries: Optional[Dict[object, Weight]] = None) -> XiFunction:
    """XiFunction over the points and weights of the given fold."""
    return XiFunction(entries or {}, fd.m, fd.rs.rank)


def orbit_key(point: Scalar, m: int) -> Scalar:
    """Key of the Gamma-orbit of a point."""
    return point ** m


def is_equivariant(xi: XiFunction, fd: FoldedRootData) -> bool:
    """xi(zeta^-1 a) = sigma(xi(a)) for every point a."""
    shift = fd.zeta(-1)
    for point, weight in xi.entries.items():
        if xi(shift * point) != fd.aut.act_on_weight(weight):
            return False
    return True


def is_admissible(xi: XiFunction, m: int) -> bool:
    """No two support points share a Gamma-orbit."""
    keys = [orbit_key(a, m) for a in xi.entries]
    return len(keys) == len(set(keys))


def symmetrize(xi: XiFunction, fd: FoldedRootData) -> XiFunction:
    """Sum over Gamma of sigma^j o xi o sigma^-j."""
    out: Dict[Scalar, Weight] = {}
    zero = xi.zero()
    for point, weight in xi.items():
        image_weight = weight
        for j in range(fd.m):
            target = fd.zeta(-j) * point
            out[target] = _add_weights(out.get(target, zero), image_weight)
            image_weight = fd.aut.act_on_weight(image_weight)
    return XiFunction(out, xi.m, xi.rank)


def support_orbits(xi: XiFunction, m: int) -> List[List[Scalar]]:
    """Support points grouped by Gamma-orbit, orbits ordered by their smallest point."""
    groups: Dict[Scalar, List[Scalar]] = {}
    for point in xi.support():
        groups.setdefault(orbit_key(point, m), []).append(point)
    return sorted(groups.values(), key=lambda g: g[0].sort_key())


def _require_equivariant(chi: XiFunction, fd: FoldedRootData):
    if not is_equivariant(chi, fd):
        raise XiFunctionError(f"Function {chi.to_dict()} is not equivariant")


def admissible_choices(chi: XiFunction, fd: FoldedRootData) -> List[Tuple[Scalar, ...]]:
    """Every maximal admissible subset of supp(chi): one point per orbit."""
    _require_equivariant(chi, fd)
    return [tuple(choice) for choice in itertools.product(*support_orbits(chi, fd.m))]


def chi_admissible(
    chi: XiFunction, fd: FoldedRootData, choice: Optional[Iterable[Scalar]] = None
) -> XiFunction:
    """The restriction of chi to a maximal admissible subset of its support.

    By default the subset takes the smallest point of every orbit.
    """
    _require_equivariant(chi, fd)
    if choice is None:
        choice = [orbit[0] for orbit in support_orbits(chi, fd.m)]
    choice = [Scalar.coerce(p, fd.m) for p in choice]
    xi = chi.restrict_to(choice)
    if len(xi) != len(choice) or not is_admissible(xi, fd.m):
        raise XiFunctionError(f"{[str(p) for p in choice]} is not a maximal admissible subset")
    if symmetrize(xi, fd) != chi:
        raise XiFunctionError("Chosen points do not meet every orbit of the support")
    return xi


def wt0(chi: XiFunction, fd: FoldedRootData, choice: Optional[Iterable[Scalar]] = None) -> Weight:
    """Restricted weight of chi (pairings with h_i(0))."""
    return fd.restrict_weight(chi_admissible(chi, fd, choice).wt())


# multisets


class OrbitMultiset:
    """Per node of I_0, a multiset of Gamma_i-orbits keyed by a^|Gamma_i|."""

    def __init__(self, stab_sizes: List[int], m: int):
        self.stab_sizes = list(stab_sizes)
        self.m = m
        self.nodes: List[Dict[Scalar, Tuple[Scalar, int]]] = [{} for _ in stab_sizes]

    @classmethod
    def for_fold(cls, fd: FoldedRootData) -> "OrbitMultiset":
        return cls(fd.stab_sizes, fd.m)

    def add(self, node: int, point: Scalar, count: int = 1):
        if count < 0:
            raise XiFunctionError("Multiplicities must be nonnegative")
        if not count:
            return
        point = Scalar.coerce(point, self.m)
        if not point:
            raise XiFunctionError("Points must be nonzero")
        key = point ** self.stab_sizes[node]
        rep, mult = self.nodes[node].get(key, (point, 0))
        if point.sort_key() < rep.sort_key():
            rep = point
        self.nodes[node][key] = (rep, mult + count)

    def entries(self, node: int) -> List[Tuple[Scalar, Scalar, int]]:
        """(key, representative, multiplicity) sorted by key."""
        return [(key, rep, mult) for key, (rep, mult) in sorted(
            self.nodes[node].items(), key=lambda item: item[0].sort_key()
        )]

    def values(self, node: int) -> List[Scalar]:
        """The keys repeated by multiplicity."""
        out = []
        for key, _, mult in self.entries(node):
            out.extend([key] * mult)
        return out

    def wt(self) -> Weight:
        return tuple(sum(mult for _, mult in node.values()) for node in self.nodes)

    def __add__(self, other: "OrbitMultiset") -> "OrbitMultiset":
        out = OrbitMultiset(self.stab_sizes, self.m)
        for source in (self, other):
            for node in range(len(self.nodes)):
                for _, rep, mult in source.entries(node):
                    out.add(node, rep, mult)
        return out

    def _signature(self):
        return [{key: mult for key, (_, mult) in node.items()} for node in self.nodes]

    def __eq__(self, other):
        return (
            isinstance(other, OrbitMultiset)
            and self.stab_sizes == other.stab_sizes
            and self._signature() == other._signature()
        )

    def to_dict(self):
        return [
            [{"key": str(key), "point": str(rep), "multiplicity": mult} for key, rep, mult in self.entries(i)]
            for i in range(len(self.nodes))
        ]

    @classmethod
    def from_dict(cls, data, stab_sizes: List[int], m: int) -> "OrbitMultiset":
        if len(data) != len(stab_sizes):
            raise XiFunctionError(f"Expected {len(stab_sizes)} nodes, got {len(data)}")
        out = cls(stab_sizes, m)
        for node, entries in enumerate(data):
            for entry in entries:
                point = parse_scalar(entry["point"], m)
                if "key" in entry and parse_scalar(entry["key"], m) != point ** stab_sizes[node]:
                    raise XiFunctionError(f"Key {entry['key']} does not match point {entry['point']}")
                out.add(node, point, int(entry["multiplicity"]))
        return out

    def __repr__(self):
        return f"OrbitMultiset({self.to_dict()})"


def alpha_iso(chi: XiFunction, fd: FoldedRootData) -> OrbitMultiset:
    """Equivariant function -> multiset: f_i counts chi(a)(h_i) over the orbits, divided by |Gamma_i|."""
    _require_equivariant(chi, fd)
    counts: List[Dict[Scalar, int]] = [{} for _ in range(fd.rank0)]
    reps: List[Dict[Scalar, Scalar]] = [{} for _ in range(fd.rank0)]
    for point, weight in chi.items():
        for i0, node in enumerate(fd.reps):
            if not weight[node]:
                continue
            key = point ** fd.stab_sizes[i0]
            counts[i0][key] = counts[i0].get(key, 0) + weight[node]
            reps[i0].setdefault(key, point)
    out = OrbitMultiset.for_fold(fd)
    for i0 in range(fd.rank0):
        stab = fd.stab_sizes[i0]
        for key, total in counts[i0].items():
            if total % stab:
                raise XiFunctionError(f"Orbit count {total} at node {i0 + 1} is not divisible by {stab}")
            out.add(i0, reps[i0][key], total // stab)
    return out


def alpha_inv(fhat: OrbitMultiset, fd: FoldedRootData) -> XiFunction:
    """Multiset -> equivariant function, inverse to alpha_iso."""
    if fhat.stab_sizes != list(fd.stab_sizes):
        raise XiFunctionError("Multiset does not match the fold")
    out: Dict[Scalar, List[int]] = {}
    n = fd.rs.rank
    for i0, node in enumerate(fd.reps):
        for _, rep, mult in fhat.entries(i0):
            target_node = node
            for j in range(fd.m):
                point = fd.zeta(-j) * rep
                out.setdefault(point, [0] * n)[target_node] += mult
                target_node = fd.aut(target_node)
    return XiFunction({a: tuple(w) for a, w in out.items()}, fd.m, n)


def untwisted_multiset(xi: XiFunction) -> OrbitMultiset:
    """Multiset of xi for the trivial group: node i counts the points with xi(a)_i."""
    out = OrbitMultiset([1] * xi.rank, xi.m)
    for point, weight in xi.items():
        for i, c in enumerate(weight):
            out.add(i, point, c)
    return out


def orbit_images(chi: XiFunction, fd: FoldedRootData) -> List[Dict[Scalar, int]]:
    """For every node j of g, the multiset of full Gamma-orbit keys weighted by chi(a)_j."""
    out: List[Dict[Scalar, int]] = [{} for _ in range(fd.rs.rank)]
    for point, weight in chi.items():
        key = orbit_key(point, fd.m)
        for j, c in enumerate(weight):
            if c:
                out[j][key] = out[j].get(key, 0) + c
    return out


def projection_violations(chi: XiFunction, fd: FoldedRootData) -> List[str]:
    """Nodes j where the orbit images at j and sigma(j) differ.

    Passing every point to its full Gamma-orbit forgets the choice of
    representative, so the images at j and sigma(j) must coincide and so
    must their total sizes.
    """
    images = orbit_images(chi, fd)
    bad = []
    for j in range(fd.rs.rank):
        k = fd.aut(j)
        if images[j] != images[k]:
            bad.append(f"orbit images differ at nodes {j + 1} and {k + 1}")
        elif sum(images[j].values()) != sum(images[k].values()):
            bad.append(f"orbit sizes differ at nodes {j + 1} and {k + 1}")
    return bad


# sampling


def random_dominant(rng: random.Random, rank: int, bound: int = 1) -> Weight:
    while True:
        weight = tuple(rng.randint(0, bound) for _ in range(rank))
        if any(weight):
            return weight


def random_equivariant(
    rng: random.Random, fd: FoldedRootData, orbits: int = 2, bound: int = 1, point_bound: int = 4
) -> XiFunction:
    """Symmetrization of a random admissible function with the given number of orbits."""
    entries: Dict[Scalar, Weight] = {}
    keys = set()
    while len(entries) < orbits:
        point = random_scalar(rng, fd.m, point_bound, nonzero=True)
        key = orbit_key(point, fd.m)
        if key in keys:
            continue
        keys.add(key)
        entries[point] = random_dominant(rng, fd.rs.rank, bound)
    return symmetrize(for_fold(fd, entries), fd)


def equivariant_with_weight(
    rng: random.Random, fd: FoldedRootData, lam0: Weight, point_bound: int = 4, used=None
) -> XiFunction:
    """Random equivariant chi with wt0(chi) = lam0 (pairing coordinates).

    The restricted weight is split into pieces supported on the orbit
    representatives and every piece is placed at a fresh Gamma-orbit.
    """
    pieces: List[Weight] = []
    n = fd.rs.rank
    for i0, count in enumerate(lam0):
        orbit = fd.orbits[i0]
        for _ in range(count):
            node = orbit[rng.randrange(len(orbit))]
            w = [0] * n
            w[node] = 1
            pieces.append(tuple(w))
    rng.shuffle(pieces)
    groups: List[Weight] = []
    for piece in pieces:
        if groups and rng.random() < 0.5:
            groups[-1] = _add_weights(groups[-1], piece)
        else:
            groups.append(piece)
    keys = set(used or ())
    entries: Dict[Scalar, Weight] = {}
    for weight in groups:
        while True:
            point = random_scalar(rng, fd.m, point_bound, nonzero=True)
            key = orbit_key(point, fd.m)
            if key not in keys:
                keys.add(key)
                break
        entries[point] = weight
    chi = symmetrize(for_fold(fd, entries), fd)
    logger.debug(f"Sampled equivariant function {chi.to_dict()} of restricted weight {lam0}")
    return chi

