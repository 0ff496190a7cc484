"""Finite-field distinction on GL2(F_q): cuspidal characters, involution orbits and
the multiplicity formula <Theta, rho>_G = sum m_L(orbit) <orbit, rho>_L.

Matrices are 4-tuples (a, b, c, d) of field codes for [[a, b], [c, d]], with
arithmetic through the lookup tables of `fields.FieldTables`.  The elliptic
torus L is F_q[sqrt(eps)]^x embedded as [[x, eps*y], [y, x]].
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from tameforge.cyclotomic import Cyclotomic
from tameforge.errors import (
    InvalidInput,
    NotAnInvolution,
    NotGeneralPosition,
    PropertyViolation,
    SupportNotInK,
    TheoremViolation,
    ThetaDoesNotPreserveL,
    TooLarge,
)
from tameforge.fields import FieldTables, determinant, field_tables, finite_field, null_space, prime_power, solve_affine
from tameforge.groups import ClassFunction, FiniteGroup, character_pairing

LOGGER = logging.getLogger(__name__)

Elem = Tuple[int, int, int, int]

DEFAULT_GL2_Q = (3, 5, 7, 9)


class FiniteGroupTable(FiniteGroup):
    """GL2(F_q) or a subgroup, enumerated, with 2x2 matrix helpers."""

    def __init__(self, q: int, elements: Iterable[Elem], name: str) -> None:
        self.q = q
        self.tables: FieldTables = field_tables(q)
        self.eps = self.tables.first_nonsquare
        super().__init__(elements, self.mat_mul, self.mat_inv, self.scalar(1), name)

    # matrix arithmetic on codes; works for singular matrices too

    def mat_mul(self, x: Elem, y: Elem) -> Elem:
        add, mul = self.tables.add, self.tables.mul
        a, b, c, d = x
        e, f, g, h = y
        return (
            add[mul[a][e]][mul[b][g]],
            add[mul[a][f]][mul[b][h]],
            add[mul[c][e]][mul[d][g]],
            add[mul[c][f]][mul[d][h]],
        )

    def det(self, x: Elem) -> int:
        a, b, c, d = x
        return self.tables.sub(self.tables.mul[a][d], self.tables.mul[b][c])

    def trace(self, x: Elem) -> int:
        return self.tables.add[x[0]][x[3]]

    def mat_inv(self, x: Elem) -> Elem:
        inv_det = self.tables.inv[self.det(x)]
        mul, neg = self.tables.mul, self.tables.neg
        a, b, c, d = x
        return (mul[inv_det][d], mul[inv_det][neg[b]], mul[inv_det][neg[c]], mul[inv_det][a])

    def transpose(self, x: Elem) -> Elem:
        return (x[0], x[2], x[1], x[3])

    def scale(self, value: int, x: Elem) -> Elem:
        mul = self.tables.mul
        return tuple(mul[value][v] for v in x)  # type: ignore[return-value]

    def add(self, x: Elem, y: Elem) -> Elem:
        return tuple(self.tables.add[u][v] for u, v in zip(x, y))  # type: ignore[return-value]

    def scalar(self, value: int) -> Elem:
        return (value, 0, 0, value)

    def is_scalar(self, x: Elem) -> bool:
        return x[1] == 0 and x[2] == 0 and x[0] == x[3]

    def normalize(self, x: Elem) -> Elem:
        """Projective normal form: first nonzero entry equal to 1."""
        lead = next(v for v in x if v)
        return self.scale(self.tables.inv[lead], x)

    @property
    def minus_one(self) -> int:
        return self.tables.neg[1]

    def sub_table(self, members: Iterable[Elem], name: str) -> "FiniteGroupTable":
        group = FiniteGroupTable(self.q, members, name)
        if not self.is_subgroup(group.elements):
            raise PropertyViolation(f"{name} is not a subgroup")
        return group


def _check_q(q: int, allowed: Sequence[int]) -> None:
    p, _ = prime_power(q)
    if p == 2:
        raise InvalidInput(f"q = {q} must be odd")
    if q not in allowed:
        raise TooLarge(f"q = {q} is outside the configured list {list(allowed)}", {"q": q})


def build_group_gl2(q: int, allowed: Sequence[int] = DEFAULT_GL2_Q, bound: Optional[int] = None) -> FiniteGroupTable:
    """All invertible 2x2 matrices over F_q; order (q^2 - 1)(q^2 - q)."""
    _check_q(q, allowed)
    order = (q * q - 1) * (q * q - q)
    if bound is not None and order > bound:
        raise TooLarge(f"|GL2(F_{q})| = {order} exceeds the bound {bound}", {"order": order, "bound": bound})
    tables = field_tables(q)
    elements = []
    for a, b, c, d in product(range(q), repeat=4):
        if tables.sub(tables.mul[a][d], tables.mul[b][c]):
            elements.append((a, b, c, d))
    group = FiniteGroupTable(q, elements, f"GL2(F_{q})")
    if group.order != order:
        raise PropertyViolation(f"Enumerated {group.order} elements, expected {order}")
    LOGGER.debug("Built GL2(F_%d) with %d elements", q, order)
    return group


def build_group_sl2(q: int, allowed: Sequence[int] = DEFAULT_GL2_Q) -> FiniteGroupTable:
    gl2 = build_group_gl2(q, allowed)
    return gl2.sub_table((g for g in gl2.elements if gl2.det(g) == 1), f"SL2(F_{q})")


def diagonal_torus(G: FiniteGroupTable) -> List[Elem]:
    return [g for g in G.elements if g[1] == 0 and g[2] == 0]


def borel_subgroup(G: FiniteGroupTable) -> List[Elem]:
    return [g for g in G.elements if g[2] == 0]


def unipotent_subgroup(G: FiniteGroupTable) -> List[Elem]:
    return [(1, b, 0, 1) for b in range(G.q)]


def center(G: FiniteGroupTable) -> List[Elem]:
    return [g for g in G.elements if G.is_scalar(g)]


def nonsplit_torus(G: FiniteGroupTable) -> List[Elem]:
    """[[x, eps*y], [y, x]] with (x, y) != (0, 0); order q^2 - 1."""
    mul = G.tables.mul
    return sorted(
        (x, mul[G.eps][y], y, x) for x in range(G.q) for y in range(G.q) if x or y
    )


class EllipticTorusLog:
    """Discrete logarithm on F_q[sqrt(eps)]^x, elements given as pairs (x, y)."""

    def __init__(self, G: FiniteGroupTable) -> None:
        self.G = G
        self.order = G.q * G.q - 1
        generator = next(z for z in self._nonzero() if self._element_order(z) == self.order)
        self.generator = generator
        self.log: Dict[Tuple[int, int], int] = {}
        power = (1, 0)
        for j in range(self.order):
            self.log[power] = j
            power = self.multiply(power, generator)

    def _nonzero(self) -> List[Tuple[int, int]]:
        q = self.G.q
        return [(x, y) for x in range(q) for y in range(q) if x or y]

    def multiply(self, u: Tuple[int, int], v: Tuple[int, int]) -> Tuple[int, int]:
        add, mul = self.G.tables.add, self.G.tables.mul
        (x1, y1), (x2, y2) = u, v
        return (
            add[mul[x1][x2]][mul[self.G.eps][mul[y1][y2]]],
            add[mul[x1][y2]][mul[x2][y1]],
        )

    def _element_order(self, z: Tuple[int, int]) -> int:
        power, k = z, 1
        while power != (1, 0):
            power = self.multiply(power, z)
            k += 1
        return k

    @staticmethod
    def pair_of(element: Elem) -> Tuple[int, int]:
        return element[0], element[2]


@dataclass(frozen=True)
class CuspidalCharacter:
    q: int
    param: int
    character: ClassFunction

    def to_dict(self) -> Dict[str, Any]:
        return {"q": self.q, "param": self.param, "rows": self.character.rows()}


def is_general_position(q: int, k: int) -> bool:
    """theta_k != theta_k^q on F_{q^2}^x, i.e. (q + 1) does not divide k."""
    return k % (q + 1) != 0


def cuspidal_parameters(q: int) -> List[int]:
    """Least representative k of each pair {k, qk} in general position; (q^2 - q)/2 of them."""
    n = q * q - 1
    out = []
    for k in range(1, n):
        if is_general_position(q, k) and k <= (q * k) % n:
            out.append(k)
    return out


def _sqrt(tables: FieldTables, value: int) -> Optional[int]:
    return next((x for x in range(tables.q) if tables.mul[x][x] == value), None)


def cuspidal_character(G: FiniteGroupTable, k: int, validate: bool = True) -> ClassFunction:
    """Classical cuspidal character of GL2(F_q) attached to theta_k:

    a*I           -> (q - 1) theta(a)
    a*I + nilp.   -> -theta(a)
    split regular -> 0
    elliptic z    -> -(theta(z) + theta(z^q))
    """
    q = G.q
    n = q * q - 1
    if not is_general_position(q, k):
        raise NotGeneralPosition(f"theta_{k} equals its Frobenius twist for q = {q}", {"q": q, "param": k})
    torus = _torus_log(G)
    tables = G.tables
    half = tables.inv[tables.from_int(2)]

    def theta(pair: Tuple[int, int]) -> Cyclotomic:
        return Cyclotomic.root_of_unity(n, k * torus.log[pair])

    def value(g: Elem) -> Cyclotomic:
        t, d = G.trace(g), G.det(g)
        disc = tables.sub(tables.mul[t][t], tables.mul[tables.from_int(4)][d])
        if disc == 0:
            a = tables.mul[t][half]
            if G.is_scalar(g):
                return theta((a, 0)).scale(q - 1)
            return -theta((a, 0))
        if tables.is_square(disc):
            return Cyclotomic.zero(n)
        s = _sqrt(tables, tables.mul[disc][tables.inv[G.eps]])
        x = tables.mul[t][half]
        y = tables.mul[s][half]
        return -(theta((x, y)) + theta((x, tables.neg[y])))

    character = ClassFunction.from_function(G, value)
    if validate:
        check_cuspidal(G, character)
    return character


_TORUS_CACHE: Dict[int, EllipticTorusLog] = {}


def _torus_log(G: FiniteGroupTable) -> EllipticTorusLog:
    if G.q not in _TORUS_CACHE:
        _TORUS_CACHE[G.q] = EllipticTorusLog(G)
    return _TORUS_CACHE[G.q]


def check_cuspidal(G: FiniteGroupTable, character: ClassFunction) -> None:
    """Degree q - 1, self-pairing 1 and no vectors fixed by the unipotent radical."""
    q = G.q
    if character.degree != q - 1:
        raise PropertyViolation(f"Cuspidal degree is {character.degree!r}, expected {q - 1}")
    if character_pairing(character, character) != 1:
        raise PropertyViolation("Cuspidal character is not irreducible")
    unipotents = unipotent_subgroup(G)
    for g in G.elements:
        total = Cyclotomic.zero(character.level)
        for u in unipotents:
            total = total + character(G.multiply(g, u))
        if total:
            raise PropertyViolation("Cuspidal character has unipotent-invariant vectors", {"g": list(g)})


def torus_character(G: FiniteGroupTable, k: int) -> Callable[[Elem], Cyclotomic]:
    """rho = theta_k on the elliptic torus."""
    torus = _torus_log(G)
    n = G.q * G.q - 1

    def rho(h: Elem) -> Cyclotomic:
        return Cyclotomic.root_of_unity(n, k * torus.log[EllipticTorusLog.pair_of(h)])

    return rho


@dataclass(frozen=True, order=True)
class Involution:
    """theta(g) = M g M^-1 (inner) or M g^-T M^-1 (outer), M in projective normal form."""

    kind: str
    matrix: Elem

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "matrix": [list(self.matrix[:2]), list(self.matrix[2:])]}


def make_involution(G: FiniteGroupTable, kind: str, matrix: Sequence[int]) -> Involution:
    if kind not in ("inner", "outer"):
        raise InvalidInput(f"Involution kind must be inner or outer, got {kind!r}")
    m = tuple(int(v) for v in matrix)
    if len(m) != 4 or any(not 0 <= v < G.q for v in m) or not G.det(m):  # type: ignore[arg-type]
        raise InvalidInput(f"Involution matrix {list(matrix)} is not an invertible matrix over F_{G.q}")
    theta = Involution(kind, G.normalize(m))  # type: ignore[arg-type]
    _check_involution(G, theta)
    return theta


def _check_involution(G: FiniteGroupTable, theta: Involution) -> None:
    m = theta.matrix
    if theta.kind == "inner":
        if G.is_scalar(m):
            raise NotAnInvolution("Conjugation by a scalar is the identity")
        if not G.is_scalar(G.mat_mul(m, m)):
            raise NotAnInvolution("Int(M) has order 2 only when M^2 is scalar", {"matrix": list(m)})
    else:
        if not G.is_scalar(G.mat_mul(m, G.mat_inv(G.transpose(m)))):
            raise NotAnInvolution("g -> M g^-T M^-1 has order 2 only when M^T = +-M", {"matrix": list(m)})


def apply_involution(G: FiniteGroupTable, theta: Involution, g: Elem) -> Elem:
    m = theta.matrix
    inner = g if theta.kind == "inner" else G.mat_inv(G.transpose(g))
    return G.mat_mul(G.mat_mul(m, inner), G.mat_inv(m))


def act(G: FiniteGroupTable, g: Elem, theta: Involution) -> Involution:
    """g . theta = Int(g) o theta o Int(g)^-1."""
    if theta.kind == "inner":
        moved = G.mat_mul(G.mat_mul(g, theta.matrix), G.mat_inv(g))
    else:
        moved = G.mat_mul(G.mat_mul(g, theta.matrix), G.transpose(g))
    return Involution(theta.kind, G.normalize(moved))


def fixed_points(G: FiniteGroupTable, theta: Involution, within: Optional[Iterable[Elem]] = None) -> List[Elem]:
    return [g for g in (within if within is not None else G.elements) if apply_involution(G, theta, g) == g]


def stabilizer(G: FiniteGroupTable, theta: Involution, within: Optional[Iterable[Elem]] = None) -> List[Elem]:
    return [g for g in (within if within is not None else G.elements) if act(G, g, theta) == theta]


@dataclass
class InvolutionOrbit:
    index: int
    members: Tuple[Involution, ...]
    representative: Involution
    fixed_order: int
    stabilizer_order: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "size": len(self.members),
            "representative": self.representative.to_dict(),
            "fixed_order": self.fixed_order,
            "stabilizer_order": self.stabilizer_order,
        }


def default_involution_seeds(G: FiniteGroupTable) -> List[Involution]:
    """Int(t) for every t of order 2 mod the center, and M g^-T M^-1 for every M with M^T = +-M."""
    seeds = set()
    for t in G.elements:
        if not G.is_scalar(t) and G.is_scalar(G.mat_mul(t, t)):
            seeds.add(Involution("inner", G.normalize(t)))
        if G.is_scalar(G.mat_mul(t, G.mat_inv(G.transpose(t)))):
            seeds.add(Involution("outer", G.normalize(t)))
    return sorted(seeds)


def involution_orbits(G: FiniteGroupTable, seeds: Optional[Sequence[Involution]] = None) -> List[InvolutionOrbit]:
    """G-orbits of the seeds under g . theta, each with |G^theta| and |G_theta|."""
    chosen = list(seeds) if seeds is not None else default_involution_seeds(G)
    covered: Dict[Involution, int] = {}
    orbits: List[InvolutionOrbit] = []
    for seed in chosen:
        _check_involution(G, seed)
        if seed in covered:
            continue
        members = tuple(sorted({act(G, g, seed) for g in G.elements}))
        representative = members[0]
        fixed = fixed_points(G, representative)
        stab = stabilizer(G, representative)
        if not set(fixed) <= set(stab):
            raise PropertyViolation("Fixed points of an involution do not stabilize it")
        if len(members) * len(stab) != G.order:
            raise PropertyViolation("Orbit-stabilizer count fails for an involution orbit")
        for member in members:
            covered[member] = len(orbits)
        orbits.append(InvolutionOrbit(len(orbits), members, representative, len(fixed), len(stab)))
    LOGGER.debug("%d involution orbits from %d seeds", len(orbits), len(chosen))
    return orbits


def _gl2_basis() -> List[Elem]:
    return [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]


def _differential(G: FiniteGroupTable, theta: Involution, x: Elem) -> Elem:
    m, m_inv = theta.matrix, G.mat_inv(theta.matrix)
    if theta.kind == "inner":
        return G.mat_mul(G.mat_mul(m, x), m_inv)
    image = G.mat_mul(G.mat_mul(m, G.transpose(x)), m_inv)
    return G.scale(G.minus_one, image)


def fixed_lie_algebra(G: FiniteGroupTable, theta: Involution) -> List[Elem]:
    """Basis of g^theta inside gl2(F_q)."""
    field = finite_field(G.q)
    basis = _gl2_basis()
    images = [_differential(G, theta, x) for x in basis]
    # rows of (d theta - 1) acting on coordinate vectors
    shifted = [
        [G.tables.sub(images[j][i], basis[j][i]) for j in range(4)] for i in range(4)
    ]
    return [tuple(v) for v in null_space(field, shifted, 4)]  # type: ignore[misc]


def epsilon_value(G: FiniteGroupTable, theta: Involution, h: Elem, lie_basis: Optional[List[Elem]] = None) -> int:
    """det(Ad(h) | g^theta) as +1 or -1."""
    field = finite_field(G.q)
    basis = lie_basis if lie_basis is not None else fixed_lie_algebra(G, theta)
    if not basis:
        return 1
    h_inv = G.mat_inv(h)
    columns = []
    for x in basis:
        image = G.mat_mul(G.mat_mul(h, x), h_inv)
        matrix = [[b[i] for b in basis] for i in range(4)]
        coords, _ = solve_affine(field, matrix, list(image), len(basis))
        if coords is None:
            raise PropertyViolation("Ad(h) does not preserve g^theta")
        columns.append(coords)
    rows = [[columns[j][i] for j in range(len(basis))] for i in range(len(basis))]
    value = determinant(field, rows)
    if value == 1:
        return 1
    if value == G.minus_one:
        return -1
    raise PropertyViolation(f"epsilon value {value} is not +-1")


def preserves(G: FiniteGroupTable, theta: Involution, subgroup: Sequence[Elem]) -> bool:
    members = set(subgroup)
    return all(apply_involution(G, theta, g) in members for g in members)


def epsilon_character(G: FiniteGroupTable, theta: Involution, L: Sequence[Elem]) -> ClassFunction:
    """epsilon_{L,theta} on L^theta, checked to be a +-1 valued homomorphism."""
    if not preserves(G, theta, L):
        raise ThetaDoesNotPreserveL("theta(L) != L", {"theta": theta.to_dict()})
    fixed = fixed_points(G, theta, L)
    group = G.sub_table(fixed, "L^theta")
    lie_basis = fixed_lie_algebra(G, theta)
    values = {h: epsilon_value(G, theta, h, lie_basis) for h in group.elements}
    for g in group.elements:
        for h in group.elements:
            if values[group.multiply(g, h)] != values[g] * values[h]:
                raise PropertyViolation("epsilon is not multiplicative on L^theta")
    return ClassFunction.from_function(group, lambda h: Cyclotomic.rational(values[h]))


@dataclass
class LocalOrbitTerm:
    representative: Involution
    size: int
    m_L: int
    pairing: int
    selected: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "representative": self.representative.to_dict(),
            "size": self.size,
            "m_L": self.m_L,
            "pairing": self.pairing,
            "selected": self.selected,
        }


@dataclass
class TheoremSides:
    q: int
    theta_orbit_id: int
    rho_param: int
    lhs: int
    rhs: int
    orbits: List[LocalOrbitTerm]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q": self.q,
            "theta_orbit_id": self.theta_orbit_id,
            "rho_param": self.rho_param,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "orbits": [term.to_dict() for term in self.orbits],
        }


def _as_count(value: Cyclotomic, what: str) -> int:
    if not value.is_rational() or not value.is_integer() or value.to_fraction() < 0:
        raise PropertyViolation(f"{what} is not a nonnegative integer: {value!r}")
    return int(value.to_fraction())


def local_orbits(G: FiniteGroupTable, orbit: InvolutionOrbit, L: Sequence[Elem]) -> List[Tuple[Involution, ...]]:
    """L-orbits of the members of the orbit that preserve L."""
    stable = [theta for theta in orbit.members if preserves(G, theta, L)]
    seen: Dict[Involution, int] = {}
    out: List[Tuple[Involution, ...]] = []
    for theta in stable:
        if theta in seen:
            continue
        members = tuple(sorted({act(G, l, theta) for l in L}))
        for member in members:
            seen[member] = len(out)
        out.append(members)
    return out


def theorem_sides(
    G: FiniteGroupTable,
    orbit: InvolutionOrbit,
    L: Sequence[Elem],
    k: int,
    character: Optional[ClassFunction] = None,
    inject_violation: bool = False,
) -> TheoremSides:
    """lhs = dim Hom_{G^theta}(pi(rho), 1); rhs = sum over L-orbits of m_L * dim Hom_{L^theta}(rho, epsilon)."""
    chi = character if character is not None else cuspidal_character(G, k)
    rho = torus_character(G, k)
    fixed = fixed_points(G, orbit.representative)
    total = Cyclotomic.zero(chi.level)
    for g in fixed:
        total = total + chi(g)
    lhs = _as_count(total / len(fixed), "lhs")

    terms = []
    rhs = 0
    for members in local_orbits(G, orbit, L):
        theta = members[0]
        l_fixed = fixed_points(G, theta, L)
        lie_basis = fixed_lie_algebra(G, theta)
        pairing_value = Cyclotomic.zero(chi.level)
        for h in l_fixed:
            pairing_value = pairing_value + rho(h).scale(epsilon_value(G, theta, h, lie_basis))
        pairing = _as_count(pairing_value / len(l_fixed), "<orbit, rho>_L")
        g_fixed = fixed_points(G, theta)
        g_stab = stabilizer(G, theta)
        stab_in_l = [l for l in L if act(G, l, theta) == theta]
        product_set = {G.multiply(a, b) for a in g_fixed for b in stab_in_l}
        if len(g_stab) % len(product_set):
            raise PropertyViolation("G^theta (G_theta cap L) does not divide G_theta")
        m_l = len(g_stab) // len(product_set)
        selected = pairing != 0
        if selected:
            rhs += m_l * pairing
        terms.append(LocalOrbitTerm(theta, len(members), m_l, pairing, selected))

    if inject_violation:
        rhs += 1
    LOGGER.info("q=%d orbit %d rho=%d: lhs=%d rhs=%d", G.q, orbit.index, k, lhs, rhs)
    sides = TheoremSides(G.q, orbit.index, k, lhs, rhs, terms)
    if lhs != rhs:
        raise TheoremViolation(
            f"Distinction multiplicity mismatch: lhs={lhs}, rhs={rhs}",
            {"sides": sides.to_dict(), "orbit": orbit.to_dict()},
        )
    return sides


def frobenius_induce(
    G: FiniteGroup,
    K: Iterable[Any],
    chi_dot: Mapping[Any, Cyclotomic],
) -> ClassFunction:
    """(1/|K|) sum_{h in G} chi_dot(h g h^-1), chi_dot extended by zero off K."""
    members = set(K)
    outside = [g for g, value in chi_dot.items() if value and g not in members]
    if outside:
        raise SupportNotInK(f"chi_dot is nonzero on {len(outside)} elements outside K")
    if not G.is_subgroup(members):
        raise InvalidInput("K is not a subgroup")
    zero = Cyclotomic.zero()

    def value(g: Any) -> Cyclotomic:
        total = zero
        for h in G.elements:
            conj = G.conjugate(h, g)
            if conj in members:
                entry = chi_dot.get(conj)
                if entry is not None:
                    total = total + entry
        return total / len(members)

    return ClassFunction.from_function(G, value)


def extend_by_zero(character: ClassFunction) -> Dict[Any, Cyclotomic]:
    return {g: character(g) for g in character.group.elements}


def swap_distinction_multiplicity(G: FiniteGroup, chi1: ClassFunction, chi2: ClassFunction) -> Tuple[Cyclotomic, Cyclotomic]:
    """For G x G with theta(x, y) = (y, x) and pi = pi1 x contragredient(pi2):
    the G^theta-invariant count (sum over the diagonal) and <chi1, chi2>."""
    total = Cyclotomic.zero(max(chi1.level, chi2.level))
    for g in G.elements:
        # character of pi1 x pi2~ at (g, g)
        total = total + chi1(g) * chi2(g).conjugate()
    return total / G.order, character_pairing(chi1, chi2)
