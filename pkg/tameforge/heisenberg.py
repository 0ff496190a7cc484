"""Finite Heisenberg p-groups, Heisenberg representations and Weil extensions.

Heisenberg elements are pairs (w, k) with w in W = F_p^{2n} and k the
exponent of zeta_p.  The Heisenberg representation is realized on functions
on the Lagrangian W^- of a polarization (Schroedinger model), every operator
being a monomial matrix.  The Weil extension is obtained from averaged
intertwiners, normalized by the quadratic Gauss sum and then corrected by a
trivialization of the resulting root-of-unity cocycle.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from tameforge.cyclotomic import Cyclotomic, CyclotomicMatrix, MonomialMatrix
from tameforge.errors import (
    CocycleNotTrivializable,
    NotAPolarization,
    NotSymplectic,
    PropertyViolation,
    TooLarge,
)
from tameforge.fields import FieldSpec, determinant, field_array, finite_field, null_space, rank, reduce_ints
from tameforge.groups import ClassFunction, FiniteGroup, LinearRep, close_under, induce_rep
from tameforge.lattice import solve_congruences

LOGGER = logging.getLogger(__name__)

Vec = Tuple[int, ...]
Mat = Tuple[Vec, ...]
HElement = Tuple[Vec, int]


@dataclass(frozen=True)
class SymplecticSpaceFp:
    """F_p^{2n} with an alternating nondegenerate form beta(u, v) = u^T B v."""

    p: int
    form: Mat

    def __post_init__(self) -> None:
        FieldSpec(self.p).require_odd()
        p = self.p
        form = tuple(tuple(int(v) % p for v in row) for row in self.form)
        object.__setattr__(self, "form", form)
        size = len(form)
        if size == 0 or size % 2 or any(len(row) != size for row in form):
            raise NotSymplectic("The form must be a nonempty square matrix of even size")
        for i in range(size):
            if form[i][i]:
                raise NotSymplectic(f"beta(e_{i}, e_{i}) != 0: the form is not alternating")
            for j in range(i + 1, size):
                if (form[i][j] + form[j][i]) % p:
                    raise NotSymplectic("The form is not alternating")
        if determinant(finite_field(p), form) == 0:
            raise NotSymplectic("The form is degenerate")

    @classmethod
    def standard(cls, p: int, n: int) -> "SymplecticSpaceFp":
        """Form [[0, I], [-I, 0]] in the basis e_1..e_n, f_1..f_n."""
        size = 2 * n
        rows = [[0] * size for _ in range(size)]
        for i in range(n):
            rows[i][n + i] = 1
            rows[n + i][i] = -1
        return cls(p, tuple(tuple(row) for row in rows))

    @property
    def dimension(self) -> int:
        return len(self.form)

    @property
    def n(self) -> int:
        return self.dimension // 2

    def beta(self, u: Sequence[int], v: Sequence[int]) -> int:
        total = 0
        for i, ui in enumerate(u):
            if ui:
                row = self.form[i]
                total += ui * sum(b * vj for b, vj in zip(row, v))
        return total % self.p

    def vectors(self) -> List[Vec]:
        return [tuple(v) for v in product(range(self.p), repeat=self.dimension)]

    def add(self, u: Sequence[int], v: Sequence[int]) -> Vec:
        return tuple((a + b) % self.p for a, b in zip(u, v))

    def neg(self, u: Sequence[int]) -> Vec:
        return tuple(-a % self.p for a in u)

    def apply(self, matrix: Mat, vector: Sequence[int]) -> Vec:
        return tuple(sum(a * b for a, b in zip(row, vector)) % self.p for row in matrix)

    def matmul(self, a: Mat, b: Mat) -> Mat:
        cols = list(zip(*b))
        return tuple(tuple(sum(x * y for x, y in zip(row, col)) % self.p for col in cols) for row in a)

    def identity(self) -> Mat:
        size = self.dimension
        return tuple(tuple(int(i == j) for j in range(size)) for i in range(size))

    def normalize(self, matrix: Sequence[Sequence[int]]) -> Mat:
        size = self.dimension
        if len(matrix) != size or any(len(row) != size for row in matrix):
            raise NotSymplectic(f"Expected a {size}x{size} matrix")
        return tuple(tuple(int(v) % self.p for v in row) for row in matrix)

    def is_symplectic(self, matrix: Mat) -> bool:
        size = self.dimension
        columns = [tuple(matrix[r][c] for r in range(size)) for c in range(size)]
        return all(
            self.beta(columns[i], columns[j]) == self.form[i][j] for i in range(size) for j in range(size)
        )

    def inverse_matrix(self, matrix: Mat) -> Mat:
        gf = finite_field(self.p)
        inverse = np.linalg.inv(field_array(gf, matrix))
        return tuple(tuple(int(v) for v in row) for row in np.asarray(inverse, dtype=np.int64).tolist())

    def fixed_dimension(self, matrix: Mat) -> int:
        """dim ker(s - 1)."""
        shifted = [[(matrix[i][j] - int(i == j)) % self.p for j in range(self.dimension)] for i in range(self.dimension)]
        if not any(any(row) for row in shifted):
            return self.dimension
        return len(null_space(finite_field(self.p), shifted, self.dimension))

    def transvection(self, v: Sequence[int]) -> Mat:
        """x -> x + beta(v, x) v."""
        size = self.dimension
        columns = []
        for j in range(size):
            e = tuple(int(i == j) for i in range(size))
            c = self.beta(v, e)
            columns.append(tuple((e[i] + c * v[i]) % self.p for i in range(size)))
        return tuple(tuple(columns[j][i] for j in range(size)) for i in range(size))

    def default_generators(self) -> List[Mat]:
        """Transvections along basis vectors and their pairwise sums."""
        size = self.dimension
        basis = [tuple(int(i == j) for i in range(size)) for j in range(size)]
        vectors = list(basis)
        for i in range(size):
            for j in range(i + 1, size):
                vectors.append(self.add(basis[i], basis[j]))
        return [self.transvection(v) for v in vectors]


class HeisenbergGroup:
    """W x Z/p with (w1,k1)(w2,k2) = (w1+w2, k1+k2+((p+1)/2) beta(w1,w2))."""

    def __init__(self, space: SymplecticSpaceFp, bound: Optional[int] = None) -> None:
        self.space = space
        self.p = space.p
        self.half = (space.p + 1) // 2
        self.order = space.p ** (space.dimension + 1)
        if bound is not None and self.order > bound:
            raise TooLarge(
                f"Heisenberg group of order {self.order} exceeds the bound {bound}",
                {"order": self.order, "bound": bound},
            )
        self.identity: HElement = (tuple([0] * space.dimension), 0)

    def multiply(self, a: HElement, b: HElement) -> HElement:
        (w1, k1), (w2, k2) = a, b
        return self.space.add(w1, w2), (k1 + k2 + self.half * self.space.beta(w1, w2)) % self.p

    def inverse(self, a: HElement) -> HElement:
        w, k = a
        return self.space.neg(w), -k % self.p

    def act(self, s: Mat, h: HElement) -> HElement:
        """Sp(W) acts on the first factor."""
        w, k = h
        return self.space.apply(s, w), k

    def central(self, k: int) -> HElement:
        return self.identity[0], k % self.p

    def commutator(self, a: HElement, b: HElement) -> HElement:
        return self.multiply(self.multiply(a, b), self.multiply(self.inverse(a), self.inverse(b)))

    @cached_property
    def group(self) -> FiniteGroup:
        elements = [(w, k) for w in self.space.vectors() for k in range(self.p)]
        return FiniteGroup(elements, self.multiply, self.inverse, self.identity, f"Heis({self.p},{self.space.n})")

    def generators(self) -> List[HElement]:
        size = self.space.dimension
        return [(tuple(int(i == j) for i in range(size)), 0) for j in range(size)] + [self.central(1)]


@dataclass(frozen=True)
class Polarization:
    """W = W^+ + W^-, both Lagrangian; vectors given as bases."""

    plus: Tuple[Vec, ...]
    minus: Tuple[Vec, ...]

    @classmethod
    def standard(cls, space: SymplecticSpaceFp) -> "Polarization":
        n, size = space.n, space.dimension
        basis = [tuple(int(i == j) for i in range(size)) for j in range(size)]
        return cls(tuple(basis[:n]), tuple(basis[n:]))

    def swapped(self) -> "Polarization":
        return Polarization(self.minus, self.plus)

    def validate(self, space: SymplecticSpaceFp) -> None:
        n = space.n
        plus = [tuple(int(v) % space.p for v in vec) for vec in self.plus]
        minus = [tuple(int(v) % space.p for v in vec) for vec in self.minus]
        if len(plus) != n or len(minus) != n or any(len(v) != space.dimension for v in plus + minus):
            raise NotAPolarization(f"Each Lagrangian needs {n} vectors of length {space.dimension}")
        for name, part in (("W+", plus), ("W-", minus)):
            if any(space.beta(u, v) for u in part for v in part):
                raise NotAPolarization(f"{name} is not totally isotropic")
        if rank(finite_field(space.p), plus + minus) != space.dimension:
            raise NotAPolarization("W+ and W- are not complementary")


class SchroedingerModel:
    """Operators of the Heisenberg representation on functions on W^-.

    Basis vectors are delta functions on W^-, indexed by coordinates in the
    given basis of W^- (index = sum c_j p^j).  For w = u+ + u-:
    tau(w, k) delta_y = zeta^(k + beta(y - u-, u+) - beta(u+, u-)/2) delta_(y - u-).
    Nothing is enumerated, so the model is usable on spaces whose Heisenberg
    group is far too large to list.
    """

    def __init__(self, space: SymplecticSpaceFp, polarization: Polarization) -> None:
        polarization.validate(space)
        self.space = space
        self.polarization = polarization
        self.p = space.p
        self.n = space.n
        self.half = (space.p + 1) // 2
        self.dimension = space.p**space.n
        gf = finite_field(space.p)
        vectors = [reduce_ints(v, space.p) for v in list(polarization.plus) + list(polarization.minus)]
        basis = field_array(gf, vectors).T
        self._coordinates = np.asarray(np.linalg.inv(basis), dtype=np.int64).tolist()

    def index(self, coeffs: Sequence[int]) -> int:
        return sum((c % self.p) * self.p**j for j, c in enumerate(coeffs))

    def coeffs(self, index: int) -> List[int]:
        out = []
        for _ in range(self.n):
            index, digit = divmod(index, self.p)
            out.append(digit)
        return out

    def split(self, w: Sequence[int]) -> Tuple[List[int], List[int]]:
        """Coordinates of u+ and u- with w = u+ + u-."""
        coeffs = [sum(a * b for a, b in zip(row, w)) % self.p for row in self._coordinates]
        return coeffs[: self.n], coeffs[self.n :]

    def _combine(self, basis: Sequence[Vec], coeffs: Sequence[int]) -> Vec:
        out = [0] * self.space.dimension
        for c, vec in zip(coeffs, basis):
            if c:
                for i, v in enumerate(vec):
                    out[i] = (out[i] + c * v) % self.p
        return tuple(out)

    def operator(self, h: HElement) -> MonomialMatrix:
        w, k = h
        a, b = self.split(w)
        space, p = self.space, self.p
        u_plus = self._combine(self.polarization.plus, a)
        u_minus = self._combine(self.polarization.minus, b)
        against = [space.beta(f, u_plus) for f in self.polarization.minus]
        const = k - self.half * space.beta(u_plus, u_minus)
        perm, exps = [], []
        for index in range(self.dimension):
            shifted = [(c - bj) % p for c, bj in zip(self.coeffs(index), b)]
            perm.append(self.index(shifted))
            exps.append(const + sum(d * x for d, x in zip(shifted, against)))
        return MonomialMatrix(p, perm, exps)


class HeisenbergRep(LinearRep):
    """Heisenberg representation with central character zeta_p^k, in the Schroedinger model."""

    def __init__(self, heisenberg: HeisenbergGroup, polarization: Polarization) -> None:
        self.heisenberg = heisenberg
        self.model = SchroedingerModel(heisenberg.space, polarization)
        self.polarization = polarization
        self.space = heisenberg.space
        self.p = heisenberg.p
        self.n = heisenberg.space.n
        images = {h: self.model.operator(h) for h in heisenberg.group.elements}
        super().__init__(heisenberg.group, images, check=False)
        pairs = [(g, t) for g in heisenberg.group.elements for t in heisenberg.generators()]
        self.check_multiplicative(pairs)
        LOGGER.debug("Heisenberg representation of dimension %d built", self.dimension)

    def dense(self, h: HElement) -> CyclotomicMatrix:
        return self.images[h].to_dense()


def build_heisenberg_rep(
    space: SymplecticSpaceFp,
    polarization: Optional[Polarization] = None,
    bound: Optional[int] = None,
) -> HeisenbergRep:
    """Heisenberg representation of dimension p^n on which (0, k) acts as zeta_p^k."""
    heisenberg = HeisenbergGroup(space, bound)
    rep = HeisenbergRep(heisenberg, polarization or Polarization.standard(space))
    centre = rep.images[heisenberg.central(1)]
    if centre != MonomialMatrix(space.p, range(rep.dimension), [1] * rep.dimension):
        raise PropertyViolation("Central character is not the identity on mu_p")
    return rep


def heisenberg_rep_by_induction(heisenberg: HeisenbergGroup, polarization: Polarization) -> LinearRep:
    """Ind from W^+ x mu_p of (1 x identity), the brute-force oracle for HeisenbergRep."""
    space = heisenberg.space
    polarization.validate(space)
    p = space.p
    plus_vectors = set()
    for coeffs in product(range(p), repeat=space.n):
        vec = [0] * space.dimension
        for c, basis in zip(coeffs, polarization.plus):
            for i, v in enumerate(basis):
                vec[i] = (vec[i] + c * v) % p
        plus_vectors.add(tuple(vec))
    members = [(w, k) for w in sorted(plus_vectors) for k in range(p)]
    subgroup = heisenberg.group.subgroup(members, "W+ x mu_p")
    images = {h: MonomialMatrix(p, [0], [h[1]]) for h in subgroup.elements}
    return induce_rep(heisenberg.group, members, LinearRep(subgroup, images))


def gauss_sum(p: int) -> Cyclotomic:
    """sum over x in F_p of zeta_p^(x^2)."""
    counts: Dict[int, int] = {}
    for x in range(p):
        counts[x * x % p] = counts.get(x * x % p, 0) + 1
    return Cyclotomic.from_exponent_counts(p, counts)


def weil_scalar(p: int) -> Cyclotomic:
    """epsilon * g / p with epsilon^2 = (-1/p), so (epsilon g)^2 = p."""
    epsilon = Cyclotomic.one(4) if p % 4 == 1 else Cyclotomic.root_of_unity(4, 1)
    return epsilon * gauss_sum(p) / p


class WeilExtension(LinearRep):
    """omega on a finite subgroup S of Sp(W) with omega(s) tau(h) omega(s)^-1 = tau(s.h)."""

    def __init__(
        self,
        rep: HeisenbergRep,
        group: FiniteGroup,
        images: Mapping[Mat, CyclotomicMatrix],
        level: int,
        generator_exponents: Tuple[int, ...],
        solutions: int,
        det_one: bool,
        canonical_lift: bool,
    ) -> None:
        super().__init__(group, images, check=False)
        self.rep = rep
        self.level = level
        self.generator_exponents = generator_exponents
        self.solutions = solutions
        self.det_one = det_one
        self.canonical_lift = canonical_lift

    def to_dict(self) -> Dict[str, object]:
        return {
            "p": self.rep.p,
            "dim_W": self.rep.space.dimension,
            "group_order": self.group.order,
            "level": self.level,
            "generator_exponents": list(self.generator_exponents),
            "solutions": self.solutions,
            "det_one": self.det_one,
            "canonical_lift_convention": self.canonical_lift,
        }


def _element_order(space: SymplecticSpaceFp, s: Mat) -> int:
    identity = space.identity()
    power, order = s, 1
    while power != identity:
        power = space.matmul(power, s)
        order += 1
    return order


def _averaged_intertwiner(rep: HeisenbergRep, s: Mat, level: int) -> CyclotomicMatrix:
    """sum_w tau(sw, 0) tau(-w, 0), scaled by (epsilon g / p)^dim Fix(s) / p^n."""
    heisenberg, space = rep.heisenberg, rep.space
    size = rep.dimension
    counts: List[List[Dict[int, int]]] = [[{} for _ in range(size)] for _ in range(size)]
    for w in space.vectors():
        h = heisenberg.multiply((space.apply(s, w), 0), (space.neg(w), 0))
        image = rep.images[h]
        for col, (row, e) in enumerate(zip(image.perm, image.exps)):
            cell = counts[row][col]
            cell[e] = cell.get(e, 0) + 1
    summed = CyclotomicMatrix(
        [[Cyclotomic.from_exponent_counts(rep.p, cell) for cell in row] for row in counts],
        rep.p,
    )
    factor = weil_scalar(rep.p) ** space.fixed_dimension(s) / rep.p**rep.n
    return summed.scale(factor).promote(level)


def _cocycle_exponent(
    left: CyclotomicMatrix,
    right: CyclotomicMatrix,
    product_image: CyclotomicMatrix,
    level: int,
) -> int:
    """e with left @ right = zeta_level^e * product_image."""
    composed = left @ right
    row, col = next(
        (i, j) for i, r in enumerate(product_image.rows) for j, entry in enumerate(r) if entry
    )
    ratio = composed.rows[row][col] / product_image.rows[row][col]
    if composed != product_image.scale(ratio):
        raise PropertyViolation("Normalized intertwiners are not projectively multiplicative")
    exponent = ratio.root_exponent(level)
    if exponent is None:
        raise CocycleNotTrivializable(
            f"Cocycle value is not a root of unity of order dividing {level}",
            {"level": level, "value": repr(ratio)},
        )
    return exponent


def _propagate(
    group: FiniteGroup,
    generators: Sequence[Mat],
    assignment: Sequence[int],
    edges: Mapping[Tuple[Mat, int], int],
    level: int,
) -> Optional[Dict[Mat, int]]:
    """Solve a_{gt} = a_g + a_t + e(g, t) from a_1 = 0; None on a contradiction."""
    values = {group.identity: 0}
    queue = deque([group.identity])
    while queue:
        g = queue.popleft()
        for j, t in enumerate(generators):
            target = group.multiply(g, t)
            value = (values[g] + assignment[j] + edges[(g, j)]) % level
            known = values.get(target)
            if known is None:
                values[target] = value
                queue.append(target)
            elif known != value:
                return None
    return values


def _exponent_system(
    group: FiniteGroup,
    generators: Sequence[Mat],
    edges: Mapping[Tuple[Mat, int], int],
    level: int,
) -> Tuple[List[List[int]], List[int]]:
    """Linear congruences on the generator exponents from a_{gt} = a_g + a_t + e(g, t).

    A BFS tree writes every a_s as a word in the generator exponents; each
    edge off the tree contributes one congruence mod level.
    """
    k = len(generators)
    words = {group.identity: ([0] * k, 0)}
    queue = deque([group.identity])
    rows: List[List[int]] = []
    rhs: List[int] = []
    while queue:
        g = queue.popleft()
        coeffs, constant = words[g]
        for j, t in enumerate(generators):
            target = group.multiply(g, t)
            step = [c + int(i == j) for i, c in enumerate(coeffs)]
            value = constant + edges[(g, j)]
            known = words.get(target)
            if known is None:
                words[target] = (step, value)
                queue.append(target)
                continue
            row = [x - y for x, y in zip(step, known[0])]
            difference = (known[1] - value) % level
            if any(row) or difference:
                rows.append(row)
                rhs.append(difference)
    return rows, rhs


def symplectic_subgroup(
    space: SymplecticSpaceFp,
    generators: Iterable[Sequence[Sequence[int]]],
    bound: int = 10_000,
) -> Tuple[List[Mat], FiniteGroup]:
    gens = []
    for k, matrix in enumerate(generators):
        g = space.normalize(matrix)
        if not space.is_symplectic(g):
            raise NotSymplectic(f"Generator {k} does not preserve the symplectic form", {"generator": k})
        gens.append(g)
    elements = close_under(gens, space.matmul, space.identity(), bound)
    group = FiniteGroup(elements, space.matmul, space.inverse_matrix, space.identity(), "S")
    return gens, group


def weil_extend(
    rep: HeisenbergRep,
    generators: Iterable[Sequence[Sequence[int]]],
    bound: int = 10_000,
    search_bound: int = 1_000_000,
) -> WeilExtension:
    """Extend tau to the subgroup S generated by `generators` (the Weil representation).

    The trivializations solve a linear system over Z/level in the generator
    exponents.  Among them, those with det omega = 1 are preferred;
    remaining ties are broken by the lexicographically least generator
    exponents.
    """
    space = rep.space
    p = space.p
    gens, group = symplectic_subgroup(space, generators, bound)
    exponent = math.lcm(*(_element_order(space, s) for s in group.elements))
    level = math.lcm(4 * p, exponent)
    normalized = {s: _averaged_intertwiner(rep, s, level) for s in group.elements}
    if normalized[group.identity] != CyclotomicMatrix.identity(rep.dimension, level):
        raise PropertyViolation("Normalized intertwiner of the identity is not the identity")
    edges = {
        (g, j): _cocycle_exponent(normalized[g], normalized[t], normalized[space.matmul(g, t)], level)
        for g in group.elements
        for j, t in enumerate(gens)
    }

    rows, rhs = _exponent_system(group, gens, edges, level)
    solved = solve_congruences(rows, rhs, level, len(gens))
    if solved is None:
        raise CocycleNotTrivializable(
            "No exponent assignment trivializes the Weil cocycle",
            {"level": level, "group_order": group.order, "p": p, "dim_W": space.dimension},
        )
    if solved.count > search_bound:
        raise TooLarge(
            f"{solved.count} cocycle trivializations exceed the search bound {search_bound}",
            {"level": level, "solutions": solved.count, "bound": search_bound},
        )
    solutions = []
    for assignment in solved:
        values = _propagate(group, gens, assignment, edges, level)
        if values is None:
            raise PropertyViolation(
                "Congruence solution does not trivialize the cocycle",
                {"assignment": list(assignment)},
            )
        solutions.append((assignment, values))

    d = rep.dimension
    det_exponents = [normalized[t].det().root_exponent(level) for t in gens]
    det_one = [
        (assignment, values)
        for assignment, values in solutions
        if all(delta is not None and (d * a + delta) % level == 0 for a, delta in zip(assignment, det_exponents))
    ]
    pool = det_one or solutions
    assignment, values = min(pool, key=lambda item: item[0])
    canonical_lift = (p, space.dimension) == (3, 2)
    if len(pool) > 1 and not canonical_lift:
        LOGGER.warning(
            "%d cocycle trivializations remain after the determinant tie-break; using the least",
            len(pool),
        )
    images = {
        s: normalized[s].scale(Cyclotomic.root_of_unity(level, values[s])) for s in group.elements
    }
    LOGGER.info(
        "Weil extension on |S| = %d at level %d: %d trivializations, det-one %s",
        group.order,
        level,
        len(solutions),
        bool(det_one),
    )
    return WeilExtension(
        rep,
        group,
        images,
        level,
        tuple(assignment),
        len(solutions),
        bool(det_one),
        canonical_lift,
    )


def check_covariance(weil: WeilExtension, elements: Optional[Iterable[HElement]] = None) -> None:
    """omega(s) tau(h) = tau(s.h) omega(s) for every s in S and the given h."""
    rep = weil.rep
    heisenberg = rep.heisenberg
    chosen = list(elements) if elements is not None else list(heisenberg.group.elements)
    for s in weil.group.elements:
        omega = weil.images[s]
        for h in chosen:
            if omega @ rep.dense(h) != rep.dense(heisenberg.act(s, h)) @ omega:
                raise PropertyViolation(
                    "Weil covariance fails",
                    {"s": [list(r) for r in s], "h": [list(h[0]), h[1]]},
                )


def check_homomorphism(weil: WeilExtension) -> None:
    weil.check_multiplicative((s, t) for s in weil.group.elements for t in weil.group.elements)


def weil_trace(weil: WeilExtension, s: Mat, w: Vec) -> Cyclotomic:
    """tr(omega(s) tau(w, 0))."""
    omega = weil.images[s]
    tau = weil.rep.images[(tuple(w), 0)]
    total = Cyclotomic.zero(omega.level)
    for col, (row, e) in enumerate(zip(tau.perm, tau.exps)):
        entry = omega.rows[col][row]
        if entry:
            total = total + entry * Cyclotomic.root_of_unity(tau.level, e)
    return total


def weil_trace_support(weil: WeilExtension, s: Mat) -> FrozenSet[Vec]:
    """{w : tr(omega(s) tau(w, 0)) != 0}."""
    return frozenset(w for w in weil.rep.space.vectors() if weil_trace(weil, s, w))


def image_of_s_minus_one(space: SymplecticSpaceFp, s: Mat) -> FrozenSet[Vec]:
    return frozenset(space.add(space.apply(s, w), space.neg(w)) for w in space.vectors())


def character_table_rows(character: ClassFunction) -> List[Tuple[int, object, int, Cyclotomic]]:
    """(class_index, class_rep, size, value) rows for CSV/JSON emission."""
    return character.rows()
