"""
Finite-dimensional modules over a truncated loop algebra, stored as sparse
action matrices on a weight basis.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from arithmetic.linalg import EchelonBasis, vec_add
from arithmetic.polynomials import lcm_of_root_polys
from exceptions import ModuleConstructionError, TruncationError
from lie.looplie import LoopElement, TruncatedLie, truncate

logger = logging.getLogger(__name__)

Vector = Dict[int, object]
Column = Dict[int, object]


@dataclass
class TwistedView:
    """The twisted truncation acting through a Lie map into the module's algebra."""

    lie: TruncatedLie
    images: List[Vector]
    highest_weight: Tuple[int, ...] = ()

    @property
    def dim(self):
        return self.lie.dim


@dataclass
class Stabilization:
    """Dimensions by depth from iterative deepening."""

    depth: int
    history: List[int] = field(default_factory=list)
    characters_agree: bool = True

    def to_dict(self):
        return {"depth": self.depth, "history": list(self.history), "characters_agree": self.characters_agree}


class HWModule:
    """A module generated by a highest-weight vector (basis vector 0).

    actions[x][j] is the column of basis element x of the algebra applied to
    basis vector j. weights[j] is the weight of basis vector j in the
    coordinates of lie.lattice().
    """

    def __init__(
        self,
        lie: TruncatedLie,
        highest_weight,
        weights: List[Tuple[int, ...]],
        labels: List[str],
        actions: List[List[Column]],
        ev_data: Optional[Dict[int, object]] = None,
        relations: Optional[List[Tuple[Vector, int]]] = None,
        name: str = "",
    ):
        if len(weights) != len(labels):
            raise ModuleConstructionError("Every basis vector needs a weight and a label")
        self.lie = lie
        self.highest_weight = tuple(highest_weight)
        self.weights = [tuple(w) for w in weights]
        self.labels = labels
        self.actions = actions
        self.ev_data = dict(ev_data or {})
        self.relations = list(relations or [])
        self.name = name
        self.twisted_view: Optional[TwistedView] = None
        self.stabilization: Optional[Stabilization] = None
        self.integrability_violations: List[str] = []

    @property
    def dim(self):
        return len(self.weights)

    @property
    def hw_vector(self) -> Vector:
        return {0: 1} if self.dim else {}

    @property
    def weight_spaces(self) -> Dict[Tuple[int, ...], List[int]]:
        out: Dict[Tuple[int, ...], List[int]] = {}
        for j, w in enumerate(self.weights):
            out.setdefault(w, []).append(j)
        return out

    # actions

    def act(self, x: int, vector: Vector) -> Vector:
        out: Vector = {}
        columns = self.actions[x]
        for j, c in vector.items():
            vec_add(out, columns[j], c)
        return out

    def act_vector(self, xvec: Vector, vector: Vector) -> Vector:
        out: Vector = {}
        for x, cx in xvec.items():
            vec_add(out, self.act(x, vector), cx)
        return out

    def act_loop(self, element: LoopElement, vector: Vector) -> Vector:
        return self.act_vector(self.lie.coords(element), vector)

    # characters

    def character(self) -> Dict[Tuple[int, ...], int]:
        return dict(Counter(self.weights))

    def character_g0(self) -> Dict[Tuple[int, ...], int]:
        """Weight-space dimensions in g_0 fundamental coordinates."""
        out: Counter = Counter()
        for w in self.weights:
            out[self.lie.g0_weight(w)] += 1
        return dict(out)

    # checks

    def bracket_violations(self, limit: Optional[int] = None) -> List[str]:
        """Pairs (x, y) with rho([x, y]) != rho(x) rho(y) - rho(y) rho(x) on some basis vector."""
        bad = []
        for a in range(self.lie.dim):
            for b in range(a + 1, self.lie.dim):
                bracket = self.lie.bracket_basis(a, b)
                for j in range(self.dim):
                    e = {j: 1}
                    lhs = self.act_vector(bracket, e)
                    rhs = self.act(a, self.act(b, e))
                    vec_add(rhs, self.act(b, self.act(a, e)), -1)
                    if lhs != rhs:
                        bad.append(f"[{self.lie.label(a)}, {self.lie.label(b)}] fails on basis vector {j}")
                        break
                if limit and len(bad) >= limit:
                    return bad
        return bad

    def relation_flags(self) -> Dict[str, bool]:
        """The defining relations evaluated through the action matrices."""
        w = self.hw_vector
        plus_kills = all(not self.act(x, w) for x in self.lie.n_plus())
        cartan_scalar = True
        for x in self.lie.cartan_part():
            image = self.act(x, w)
            expected = self.ev_data.get(x, 0)
            if (image.get(0, 0) != expected) or any(k != 0 for k in image):
                cartan_scalar = False
                break
        powers_vanish = True
        for xvec, power in self.relations:
            v = dict(w)
            for _ in range(power):
                v = self.act_vector(xvec, v)
            if v:
                powers_vanish = False
                break
        return {
            "n_plus_kills_w": plus_kills,
            "cartan_acts_by_character": cartan_scalar,
            "lowering_powers_vanish": powers_vanish,
            "top_weight_space_is_line": len(self.weight_spaces.get(self.highest_weight, [])) == 1,
        }

    # export

    def to_dict(self, include_matrices: bool = False):
        out = {
            "name": self.name,
            "algebra": self.lie.alg.rs.label,
            "twisted_algebra": self.lie.twisted,
            "truncation": self.lie.q.to_strings(),
            "highest_weight": list(self.highest_weight),
            "dimension": self.dim,
            "weight_spaces": [
                {"weight": list(w), "dimension": len(js)} for w, js in sorted(self.weight_spaces.items())
            ],
            "character_g0": [
                {"weight": list(w), "multiplicity": c} for w, c in sorted(self.character_g0().items())
            ],
            "relations": self.relation_flags(),
            "basis": list(self.labels),
        }
        if self.stabilization is not None:
            out["stabilization"] = self.stabilization.to_dict()
        if self.integrability_violations:
            out["integrability_violations"] = list(self.integrability_violations)
        if include_matrices:
            out["matrices"] = self.matrix_dump()
        return out

    def matrix_dump(self) -> List[List[str]]:
        """Sparse triplets (algebra element, row, column, coefficient) as canonical strings."""
        rows = []
        for x, columns in enumerate(self.actions):
            for j, column in enumerate(columns):
                for i in sorted(column):
                    rows.append([self.lie.label(x), str(i), str(j), str(column[i])])
        return rows


def pullback(module: HWModule, lie: TruncatedLie) -> HWModule:
    """The module through L/(q') -> L/(q), where q divides q'."""
    if lie is module.lie:
        return module
    source = module.lie
    if lie.twisted != source.twisted or lie.alg is not source.alg or not source.q.divides(lie.q):
        raise ModuleConstructionError(f"{module.name} does not factor through the requested truncation")
    images = [source.coords(lie.to_loop(idx)) for idx in range(lie.dim)]
    actions: List[List[Column]] = []
    for image in images:
        columns: List[Column] = [{} for _ in range(module.dim)]
        for y, c in image.items():
            for j, column in enumerate(module.actions[y]):
                vec_add(columns[j], column, c)
        actions.append(columns)
    ev_data = {}
    for x in lie.cartan_part():
        value = 0
        for y, c in images[x].items():
            value = value + c * module.ev_data.get(y, 0)
        if value:
            ev_data[x] = value
    relations = []
    for vector, power in module.relations:
        element = LoopElement()
        for y, c in vector.items():
            element = element + source.to_loop(y).scale(c)
        relations.append((lie.coords(element), power))
    out = HWModule(lie, module.highest_weight, module.weights, module.labels, actions, ev_data, relations, module.name)
    out.integrability_violations = list(module.integrability_violations)
    return out


def tensor_modules(mods: List[HWModule]) -> HWModule:
    """Tensor product through x -> x (x) 1 + 1 (x) x.

    Factors over different truncations are pulled back to the one cut out
    by the least common multiple of their ideal generators.
    """
    if not mods:
        raise ModuleConstructionError("Nothing to tensor")
    lie = mods[0].lie
    for mod in mods[1:]:
        if mod.lie.twisted != lie.twisted or mod.lie.alg is not lie.alg:
            raise ModuleConstructionError("Factors live over different loop algebras")
    if any(mod.lie.q != lie.q for mod in mods[1:]):
        try:
            q = lcm_of_root_polys([mod.lie.q for mod in mods])
        except TruncationError as e:
            raise ModuleConstructionError(f"No common refinement of the truncations: {e}")
        lie = truncate(lie.fd, lie.alg, lie.lifted, q, lie.twisted)
        logger.info(f"Tensor factors pulled back to a truncation of dim {lie.dim}")
    factors = [pullback(mod, lie) for mod in mods]
    result = factors[0]
    for mod in factors[1:]:
        result = _tensor_pair(result, mod)
    return result


def _tensor_pair(left: HWModule, right: HWModule) -> HWModule:
    lie = left.lie
    n2 = right.dim
    weights = []
    labels = []
    for i in range(left.dim):
        for j in range(n2):
            weights.append(tuple(a + b for a, b in zip(left.weights[i], right.weights[j])))
            labels.append(f"{left.labels[i]} (x) {right.labels[j]}")
    actions: List[List[Column]] = []
    for x in range(lie.dim):
        columns: List[Column] = []
        for i in range(left.dim):
            for j in range(n2):
                column: Column = {}
                for k, c in left.actions[x][i].items():
                    column[k * n2 + j] = c
                for k, c in right.actions[x][j].items():
                    vec_add(column, {i * n2 + k: c})
                columns.append(column)
        actions.append(columns)
    ev_data = {x: left.ev_data.get(x, 0) + right.ev_data.get(x, 0) for x in lie.cartan_part()}
    highest = tuple(a + b for a, b in zip(left.highest_weight, right.highest_weight))
    out = HWModule(lie, highest, weights, labels, actions, ev_data, name=f"{left.name} (x) {right.name}")
    logger.debug(f"Tensor product {out.name}: dim {out.dim}")
    return out


@dataclass
class Submodule:
    dim: int
    basis: EchelonBasis

    def contains(self, vector: Vector) -> bool:
        return self.basis.contains(vector)


def generated_submodule(module: HWModule, vector: Vector, twisted_only: bool = False) -> Submodule:
    """Closure of {vector} under the algebra (or only its twisted subalgebra)."""
    if twisted_only:
        if module.twisted_view is None:
            raise ModuleConstructionError(f"Module {module.name} has no twisted view")
        operators = [image for image in module.twisted_view.images if image]
    else:
        operators = [{x: 1} for x in range(module.lie.dim)]
    basis = EchelonBasis()
    queue = []
    if vector and basis.add(vector):
        queue.append(dict(vector))
    while queue:
        v = queue.pop()
        for op in operators:
            image = module.act_vector(op, v)
            if image and basis.add(image):
                queue.append(image)
    return Submodule(basis.rank, basis)
