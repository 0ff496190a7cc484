"""Fibered sums W* = W13 + W0 + gW13 and the intertwiner Hom(g tau, tau).

W* carries the orthogonal-sum form in the hyperbolic basis

    plus  = W1 (a) | W2 (b) | gW1 (a)
    minus = W3 (a) | W4 (b) | gW3 (a)

with dim W13 = 2a, dim W0 = 2b.  tau* is the Schroedinger model of W* on
functions on the minus part; V_tau, V_gtau and V_tau0 are cut out as fixed
vectors of gW1, W1 and both.  The group H_0 is realized as the overlap
(W1 + W0 + gW1) x mu_p, on which tau and g tau are compared.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from tameforge.cyclotomic import Cyclotomic, CyclotomicMatrix, MonomialMatrix
from tameforge.errors import InvalidInput, OddDimension, PropertyViolation, TheoremViolation
from tameforge.fields import determinant, finite_field
from tameforge.heisenberg import HElement, Mat, Polarization, SchroedingerModel, SymplecticSpaceFp, Vec

LOGGER = logging.getLogger(__name__)

BLOCKS = ("W1", "W2", "gW1", "W3", "W4", "gW3")


@dataclass(frozen=True)
class FiberedSumData:
    p: int
    dim_w13: int
    dim_w0: int
    space: SymplecticSpaceFp = field(init=False, compare=False)
    polarization: Polarization = field(init=False, compare=False)
    blocks: Dict[str, Tuple[Vec, ...]] = field(init=False, compare=False)

    def __post_init__(self) -> None:
        a, b = self.dim_w13 // 2, self.dim_w0 // 2
        size = 4 * a + 2 * b
        object.__setattr__(self, "space", SymplecticSpaceFp.standard(self.p, size // 2))
        basis = [tuple(int(i == j) for i in range(size)) for j in range(size)]
        half = size // 2
        widths = (a, b, a, a, b, a)
        offsets = (0, a, a + b, half, half + a, half + a + b)
        blocks = {
            name: tuple(basis[start : start + width])
            for name, start, width in zip(BLOCKS, offsets, widths)
        }
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "polarization", Polarization.standard(self.space))
        self.validate()

    def subspace(self, *names: str) -> List[Vec]:
        return [v for name in names for v in self.blocks[name]]

    @property
    def w(self) -> List[Vec]:
        return self.subspace("W1", "W3", "W2", "W4")

    @property
    def gw(self) -> List[Vec]:
        return self.subspace("W2", "W4", "gW1", "gW3")

    @property
    def w0(self) -> List[Vec]:
        return self.subspace("W2", "W4")

    def validate(self) -> None:
        space = self.space
        for name in BLOCKS:
            part = self.blocks[name]
            if any(space.beta(u, v) for u in part for v in part):
                raise PropertyViolation(f"{name} is not totally isotropic")
        gf = finite_field(self.p)
        for left, right in (("W1", "W3"), ("W2", "W4"), ("gW1", "gW3")):
            if not self.blocks[left]:
                continue
            pairing = [[space.beta(u, v) for v in self.blocks[right]] for u in self.blocks[left]]
            if determinant(gf, pairing) == 0:
                raise PropertyViolation(f"Pairing between {left} and {right} is not perfect")
        if space.dimension != len(self.w) + len(self.gw) - len(self.w0):
            raise PropertyViolation("dim W* != dim W + dim gW - dim W0")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "dim_W13": self.dim_w13,
            "dim_W0": self.dim_w0,
            "dim_W": len(self.w),
            "dim_gW": len(self.gw),
            "dim_W_star": self.space.dimension,
            "blocks": {name: [list(v) for v in vecs] for name, vecs in self.blocks.items()},
        }


def build_fibered_sum(dim_w13: int, dim_w0: int, p: int) -> FiberedSumData:
    """Amalgam of W = W13 + W0 and gW = W0 + gW13 along W0, in hyperbolic bases."""
    for name, value in (("dim_W13", dim_w13), ("dim_W0", dim_w0)):
        if value < 0:
            raise InvalidInput(f"{name} must be >= 0, got {value}")
        if value % 2:
            raise OddDimension(f"{name} = {value} is odd", {name: value})
    if dim_w13 == 0 and dim_w0 == 0:
        raise InvalidInput("dim_W13 and dim_W0 cannot both be 0")
    data = FiberedSumData(p, dim_w13, dim_w0)
    LOGGER.debug("Fibered sum built: dim W* = %d", data.space.dimension)
    return data


class _WeightedUnionFind:
    """x = zeta^w y relations among matrix entries; inconsistent cycles force zero."""

    def __init__(self, size: int, level: int) -> None:
        self.parent = list(range(size))
        self.potential = [0] * size
        self.zero = [False] * size
        self.level = level

    def find(self, x: int) -> Tuple[int, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, accumulating potentials from the top down
        total = 0
        for node in reversed(path):
            total = (total + self.potential[node]) % self.level
            self.potential[node] = total
            self.parent[node] = root
        return root, self.potential[path[0]] if path else 0

    def union(self, x: int, y: int, weight: int) -> None:
        """value(x) = zeta^weight * value(y)."""
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            if (px - weight - py) % self.level:
                self.zero[rx] = True
            return
        self.parent[rx] = ry
        self.potential[rx] = (weight + py - px) % self.level
        self.zero[ry] = self.zero[ry] or self.zero[rx]


def _restrict(operator: MonomialMatrix, support: Sequence[int]) -> MonomialMatrix:
    position = {index: k for k, index in enumerate(support)}
    perm, exps = [], []
    for index in support:
        row = operator.perm[index]
        if row not in position:
            raise PropertyViolation("Operator does not preserve the fixed subspace")
        perm.append(position[row])
        exps.append(operator.exps[index])
    return MonomialMatrix(operator.level, perm, exps)


def hom_space(
    source_ops: Sequence[MonomialMatrix],
    target_ops: Sequence[MonomialMatrix],
    level: int,
) -> List[CyclotomicMatrix]:
    """Basis of {T : T A_g = B_g T for all g} for monomial A_g (source) and B_g (target)."""
    n_cols = source_ops[0].size
    n_rows = target_ops[0].size
    finder = _WeightedUnionFind(n_rows * n_cols, level)
    for a_op, b_op in zip(source_ops, target_ops):
        a_op, b_op = a_op.promote(level), b_op.promote(level)
        inverse_b = [0] * n_rows
        for k, row in enumerate(b_op.perm):
            inverse_b[row] = k
        for i in range(n_rows):
            k = inverse_b[i]
            for j in range(n_cols):
                # T[i][perm_A(j)] zeta^eA_j = zeta^eB_k T[k][j]
                finder.union(i * n_cols + a_op.perm[j], k * n_cols + j, b_op.exps[k] - a_op.exps[j])
    components: Dict[int, List[Tuple[int, int]]] = {}
    for x in range(n_rows * n_cols):
        root, potential = finder.find(x)
        components.setdefault(root, []).append((x, potential))
    zero = Cyclotomic.zero(level)
    basis = []
    for root in sorted(components):
        if finder.zero[root]:
            continue
        rows = [[zero] * n_cols for _ in range(n_rows)]
        for x, potential in components[root]:
            i, j = divmod(x, n_cols)
            rows[i][j] = Cyclotomic.root_of_unity(level, potential)
        basis.append(CyclotomicMatrix(rows, level))
    return basis


def _fixed_indices(operators: Sequence[MonomialMatrix], size: int) -> List[int]:
    for op in operators:
        if not op.is_diagonal():
            raise PropertyViolation("Isotropic fixing operators must act diagonally")
    return [i for i in range(size) if all(op.exps[i] == 0 for op in operators)]


def siegel_element(data: FiberedSumData, blocks: Sequence[Sequence[Sequence[int]]]) -> Mat:
    """s = diag(A^-T, A) with A = diag(A3, A4, gA3) acting on the minus part."""
    p = data.p
    a, b = data.dim_w13 // 2, data.dim_w0 // 2
    half = 2 * a + b
    gf = finite_field(p)
    big = [[0] * half for _ in range(half)]
    offset = 0
    for block, width in zip(blocks, (a, b, a)):
        if len(block) != width or any(len(row) != width for row in block):
            raise InvalidInput(f"Block must be {width}x{width}")
        if width and determinant(gf, [[v % p for v in row] for row in block]) == 0:
            raise InvalidInput("Block is not invertible")
        for i, row in enumerate(block):
            for j, v in enumerate(row):
                big[offset + i][offset + j] = v % p
        offset += width
    inverse = data.space.inverse_matrix(tuple(tuple(r) for r in big)) if half else ()
    size = 2 * half
    s = [[0] * size for _ in range(size)]
    for i in range(half):
        for j in range(half):
            s[i][j] = inverse[j][i]
            s[half + i][half + j] = big[i][j]
    matrix = tuple(tuple(row) for row in s)
    if not data.space.is_symplectic(matrix):
        raise PropertyViolation("Block element does not preserve the form")
    return matrix


def siegel_operator(model: SchroedingerModel, s: Mat) -> MonomialMatrix:
    """f -> f o s^-1 on functions on the minus part (delta_y -> delta_{Ay})."""
    half = model.n
    perm = []
    for index in range(model.dimension):
        y = model.coeffs(index)
        image = [sum(s[half + i][half + j] * y[j] for j in range(half)) for i in range(half)]
        perm.append(model.index(image))
    return MonomialMatrix(model.p, perm, [0] * model.dimension)


def siegel_unipotent(data: FiberedSumData, blocks: Sequence[Sequence[Sequence[int]]]) -> Mat:
    """s = [[1, C], [0, 1]] with C = diag(C1, C2, gC1) symmetric, mapping W3, W4, gW3 into W1, W2, gW1."""
    p = data.p
    a, b = data.dim_w13 // 2, data.dim_w0 // 2
    half = 2 * a + b
    size = 2 * half
    s = [[int(i == j) for j in range(size)] for i in range(size)]
    offset = 0
    for block, width in zip(blocks, (a, b, a)):
        if len(block) != width or any(len(row) != width for row in block):
            raise InvalidInput(f"Block must be {width}x{width}")
        if any((block[i][j] - block[j][i]) % p for i in range(width) for j in range(width)):
            raise InvalidInput("Unipotent block must be symmetric")
        for i, row in enumerate(block):
            for j, v in enumerate(row):
                s[offset + i][half + offset + j] = v % p
        offset += width
    matrix = tuple(tuple(row) for row in s)
    if not data.space.is_symplectic(matrix):
        raise PropertyViolation("Unipotent element does not preserve the form")
    return matrix


def unipotent_operator(model: SchroedingerModel, s: Mat) -> MonomialMatrix:
    """delta_y -> zeta^(y^T C y / 2) delta_y for s = [[1, C], [0, 1]]."""
    half = model.n
    exps = []
    for index in range(model.dimension):
        y = model.coeffs(index)
        form = sum(y[i] * s[i][half + j] * y[j] for i in range(half) for j in range(half))
        exps.append(model.half * form)
    return MonomialMatrix(model.p, list(range(model.dimension)), exps)


def block_operator(model: SchroedingerModel, s: Mat) -> MonomialMatrix:
    """Weil operator of a Levi element diag(A^-T, A) or a unipotent [[1, C], [0, 1]]."""
    half = model.n
    lower_left = any(s[half + i][j] for i in range(half) for j in range(half))
    upper_right = any(s[i][half + j] for i in range(half) for j in range(half))
    if lower_left:
        raise InvalidInput("Element does not stabilize the minus Lagrangian")
    if not upper_right:
        return siegel_operator(model, s)
    if any(s[i][j] != int(i == j) or s[half + i][half + j] != int(i == j) for i in range(half) for j in range(half)):
        raise InvalidInput("Only Levi or unipotent block elements have a monomial operator here")
    return unipotent_operator(model, s)


def sample_block_elements(data: FiberedSumData, rng: random.Random, count: int = 4) -> List[Mat]:
    """Random invertible block-diagonal elements preserving W13, W0 and gW13."""
    p = data.p
    a, b = data.dim_w13 // 2, data.dim_w0 // 2
    gf = finite_field(p)
    out = []
    while len(out) < count:
        blocks = []
        for width in (a, b, a):
            while True:
                block = [[rng.randrange(p) for _ in range(width)] for _ in range(width)]
                if not width or determinant(gf, block):
                    break
            blocks.append(block)
        out.append(siegel_element(data, blocks))
    return out


def sample_unipotent_elements(data: FiberedSumData, rng: random.Random, count: int = 1) -> List[Mat]:
    """Random nontrivial unipotent elements [[1, C], [0, 1]] preserving W and gW."""
    p = data.p
    a, b = data.dim_w13 // 2, data.dim_w0 // 2
    out = []
    while len(out) < count:
        blocks = []
        for width in (a, b, a):
            block = [[0] * width for _ in range(width)]
            for i in range(width):
                for j in range(i, width):
                    block[i][j] = block[j][i] = rng.randrange(p)
            blocks.append(block)
        if any(v for block in blocks for row in block for v in row):
            out.append(siegel_unipotent(data, blocks))
    return out


@dataclass
class IntertwinerReport:
    operator: CyclotomicMatrix
    scalar: Cyclotomic
    hom_dimension: int
    dim_tau_star: int
    dim_tau: int
    dim_gtau: int
    dim_tau0: int
    multiplicity_in_tau: Cyclotomic
    multiplicity_in_gtau: Cyclotomic
    equivariance_checked: int
    tau_indices: Tuple[int, ...]
    gtau_indices: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "hom_dimension": self.hom_dimension,
            "dims": {
                "V_tau_star": self.dim_tau_star,
                "V_tau": self.dim_tau,
                "V_gtau": self.dim_gtau,
                "V_tau0": self.dim_tau0,
            },
            "multiplicity_tau0_in_tau": self.multiplicity_in_tau,
            "multiplicity_tau0_in_gtau": self.multiplicity_in_gtau,
            "scalar": self.scalar,
            "operator_shape": list(self.operator.shape),
            "operator_nonzero": [
                [i, j] for i, row in enumerate(self.operator.rows) for j, entry in enumerate(row) if entry
            ],
            "equivariance_checked": self.equivariance_checked,
        }


def _multiplicity(
    data: FiberedSumData,
    model: SchroedingerModel,
    support: Sequence[int],
    dim_tau0: int,
) -> Cyclotomic:
    """<tau|overlap, tau0 x 1>: only w0 = 0 contributes since the tau0 character vanishes elsewhere."""
    p = data.p
    isotropic = data.subspace("W1", "gW1")
    overlap_order = p ** (len(isotropic) + len(data.w0) + 1)
    total = Cyclotomic.zero(p)
    for coeffs in _coefficient_vectors(p, len(isotropic)):
        w = _combination(data, isotropic, coeffs)
        for k in range(p):
            trace = _restrict(model.operator((w, k)), support).trace()
            if trace:
                total = total + trace * Cyclotomic.root_of_unity(p, -k) * dim_tau0
    return total / overlap_order


def _coefficient_vectors(p: int, length: int) -> List[Tuple[int, ...]]:
    out = [()]
    for _ in range(length):
        out = [c + (x,) for c in out for x in range(p)]
    return out


def _combination(data: FiberedSumData, basis: Sequence[Vec], coeffs: Sequence[int]) -> Vec:
    out = [0] * data.space.dimension
    for c, vec in zip(coeffs, basis):
        for i, v in enumerate(vec):
            out[i] = (out[i] + c * v) % data.p
    return tuple(out)


def intertwiner(
    data: FiberedSumData,
    c: Optional[Cyclotomic] = None,
    rng: Optional[random.Random] = None,
    samples: int = 4,
    unipotent_samples: int = 1,
) -> IntertwinerReport:
    """The operator I_c: V_gtau -> V_tau equal to c on V_tau0 and 0 on the other H_0-constituents.

    The full linear intertwining system over the overlap group is solved and
    must have a one-dimensional solution space; TheoremViolation otherwise.
    """
    scalar = c if c is not None else Cyclotomic.one()
    model = SchroedingerModel(data.space, data.polarization)
    size = model.dimension

    def ops(names: Sequence[str]) -> List[MonomialMatrix]:
        return [model.operator((v, 0)) for v in data.subspace(*names)]

    tau_indices = _fixed_indices(ops(["gW1"]), size)
    gtau_indices = _fixed_indices(ops(["W1"]), size)
    tau0_indices = sorted(set(tau_indices) & set(gtau_indices))

    overlap = [(v, 0) for v in data.subspace("W1", "gW1", "W2", "W4")]
    overlap.append((tuple([0] * data.space.dimension), 1))
    full_ops = [model.operator(h) for h in overlap]
    source = [_restrict(op, gtau_indices) for op in full_ops]
    target = [_restrict(op, tau_indices) for op in full_ops]
    basis = hom_space(source, target, data.p)
    LOGGER.info("dim Hom_H0(g tau, tau) = %d (p=%d, dim W* = %d)", len(basis), data.p, data.space.dimension)
    if len(basis) != 1:
        raise TheoremViolation(
            f"Intertwining space has dimension {len(basis)}, expected 1",
            {"fibered_sum": data.to_dict(), "hom_dimension": len(basis)},
        )

    # I_1: identity on V_tau0 (delta_y with y in both subspaces), zero elsewhere
    zero = Cyclotomic.zero(data.p)
    one = Cyclotomic.one(data.p)
    tau_pos = {index: k for k, index in enumerate(tau_indices)}
    gtau_pos = {index: k for k, index in enumerate(gtau_indices)}
    rows = [[zero] * len(gtau_indices) for _ in tau_indices]
    for index in tau0_indices:
        rows[tau_pos[index]][gtau_pos[index]] = one
    explicit = CyclotomicMatrix(rows, data.p)
    (solution,) = basis
    anchor = solution.rows[tau_pos[tau0_indices[0]]][gtau_pos[tau0_indices[0]]]
    if not anchor or solution.scale(anchor.inverse()) != explicit:
        raise TheoremViolation(
            "Solved intertwiner is not supported on V_tau0",
            {"fibered_sum": data.to_dict()},
        )
    operator = explicit.scale(scalar)

    rng = rng or random.Random(0)
    checked = 0
    elements = sample_block_elements(data, rng, samples)
    elements += sample_unipotent_elements(data, rng, unipotent_samples)
    for s in elements:
        omega = block_operator(model, s)
        left = operator @ _restrict(omega, gtau_indices).to_dense()
        right = _restrict(omega, tau_indices).to_dense() @ operator
        if left != right:
            raise TheoremViolation(
                "Intertwiner is not equivariant under a block element",
                {"s": [list(r) for r in s]},
            )
        checked += 1

    dim_tau0 = len(tau0_indices)
    return IntertwinerReport(
        operator=operator,
        scalar=scalar,
        hom_dimension=len(basis),
        dim_tau_star=size,
        dim_tau=len(tau_indices),
        dim_gtau=len(gtau_indices),
        dim_tau0=dim_tau0,
        multiplicity_in_tau=_multiplicity(data, model, tau_indices, dim_tau0),
        multiplicity_in_gtau=_multiplicity(data, model, gtau_indices, dim_tau0),
        equivariance_checked=checked,
        tau_indices=tuple(tau_indices),
        gtau_indices=tuple(gtau_indices),
    )


def check_covariance(data: FiberedSumData, s: Mat) -> None:
    """omega(s) tau*(h) = tau*(s.h) omega(s) for the block operator on W* basis elements."""
    model = SchroedingerModel(data.space, data.polarization)
    omega = block_operator(model, s)
    size = data.space.dimension
    for j in range(size):
        w = tuple(int(i == j) for i in range(size))
        h: HElement = (w, 0)
        moved: HElement = (data.space.apply(s, w), 0)
        if omega @ model.operator(h) != model.operator(moved) @ omega:
            raise PropertyViolation("Block operator is not covariant", {"basis_vector": j})
