"""The quadratic-unit theorem suite: Scholz reciprocity, the negative-Pell table,
knot orders, the reflection inequality, ray class numbers, and 2-primary primes."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .arith import (
    NonresidueError,
    factor,
    is_prime,
    jacobi,
    sqrt_mod_prime,
    squarefree_kernel,
)
from .quadratic import (
    BoundExceededError,
    ClassGroupStructure,
    class_group,
    class_number,
    fundamental_discriminant,
    fundamental_unit,
    radicand,
    _with_leading_coprime,
)
from .symbols import Sign, quartic_symbol, unit_character


class PreconditionError(ValueError):
    """Named precondition violation."""


class DegeneratePartnerError(ValueError):
    """The reflection partner field collapses to Q (radicand -3)."""


# ---------------------------------------------------------------------------
# Scholz reciprocity


@dataclass(frozen=True)
class ReciprocityReport:
    p: int
    q: int
    lhs: Sign                 # (eps_p / q)
    rhs: Sign                 # (p/q)_4 (q/p)_4
    lhs_swapped: Sign         # (eps_q / p)
    equal: bool


def scholz_reciprocity_check(p: int, q: int) -> ReciprocityReport:
    """Check (eps_p/q) = (p/q)_4 (q/p)_4, and the same with p and q swapped."""
    _require_pq(p, q)
    if jacobi(p, q) != 1:
        raise PreconditionError(f"({p}/{q}) = -1: the quartic symbols are undefined")
    s_pq = quartic_symbol(p, q)
    s_qp = quartic_symbol(q, p)
    rhs = s_pq * s_qp
    lhs = unit_character(p, q)
    lhs_swapped = unit_character(q, p)
    return ReciprocityReport(p, q, lhs, rhs, lhs_swapped, lhs == rhs and lhs_swapped == rhs)


def _require_pq(p: int, q: int) -> None:
    if p == q:
        raise PreconditionError("p and q must be distinct")
    if not (is_prime(p) and is_prime(q)):
        raise PreconditionError("p and q must be prime")
    if p % 4 != 1 or q % 4 != 1:
        raise PreconditionError("p and q must be = 1 (mod 4)")


# ---------------------------------------------------------------------------
# negative-Pell classification


class GroupLabel(enum.Enum):
    C2 = "[2]"
    C4 = "[4]"
    CYCLIC_8PLUS = "cyclic, 8 | order"

    def matches(self, divisors: tuple[int, ...]) -> bool:
        twos = tuple(d & -d for d in divisors if d % 2 == 0)
        if self is GroupLabel.C2:
            return twos == (2,)
        if self is GroupLabel.C4:
            return twos == (4,)
        return len(twos) == 1 and twos[0] % 8 == 0


@dataclass(frozen=True)
class PellClassification:
    p: int
    q: int
    case: int | str                    # 1, 2, 3, or "cyclic8plus"
    predicted_norm: int | None         # None when the table says nothing
    predicted_cl2: GroupLabel | None
    predicted_cl2_plus: GroupLabel


def negative_pell_classify(p: int, q: int) -> PellClassification:
    """Symbol-side prediction of N(eps_pq), Cl_2 and Cl_2^+ for d = pq."""
    _require_pq(p, q)
    if jacobi(p, q) == -1:
        return PellClassification(p, q, 1, -1, GroupLabel.C2, GroupLabel.C2)
    s_pq = quartic_symbol(p, q)
    s_qp = quartic_symbol(q, p)
    if s_pq * s_qp == Sign.MINUS:
        return PellClassification(p, q, 2, 1, GroupLabel.C2, GroupLabel.C4)
    if s_pq == Sign.MINUS:
        return PellClassification(p, q, 3, -1, GroupLabel.C4, GroupLabel.C4)
    return PellClassification(p, q, "cyclic8plus", None, None, GroupLabel.CYCLIC_8PLUS)


@dataclass(frozen=True)
class PellGroundTruth:
    d: int
    norm: int
    cl2: tuple[int, ...]        # wide class group divisors
    cl2_plus: tuple[int, ...]   # narrow class group divisors


def pell_ground_truth(p: int, q: int) -> PellGroundTruth:
    """Independent data: continued-fraction norm plus form class groups for d = pq."""
    d = fundamental_discriminant(p * q)
    unit = fundamental_unit(d)
    wide = class_group(d, narrow=False)
    narrow = class_group(d, narrow=True)
    return PellGroundTruth(d, unit.norm, wide.elementary_divisors, narrow.elementary_divisors)


def pell_prediction_matches(pred: PellClassification, truth: PellGroundTruth) -> bool:
    if pred.predicted_norm is not None and pred.predicted_norm != truth.norm:
        return False
    if pred.predicted_cl2 is not None and not pred.predicted_cl2.matches(truth.cl2):
        return False
    return pred.predicted_cl2_plus.matches(truth.cl2_plus)


# ---------------------------------------------------------------------------
# knots


@dataclass(frozen=True)
class KnotReport:
    p: int
    q: int
    unit_knot_order: int               # 1 or 2
    redei: bool
    number_knot_nontrivial: bool
    quartic_product: Sign | None       # None when (p/q) = -1
    reason: str | None                 # why the unit knot is trivial, when it is


def knot_report(p: int, q: int) -> KnotReport:
    """Unit-knot order and Redei property of Q(sqrt p, sqrt q) over Q."""
    _require_pq(p, q)
    if jacobi(p, q) != 1:
        return KnotReport(
            p, q, 1, False, False, None,
            "ramified primes do not split in the partner field: not a Redei configuration",
        )
    product = quartic_symbol(p, q) * quartic_symbol(q, p)
    if product == Sign.MINUS:
        return KnotReport(p, q, 2, True, True, product, None)
    return KnotReport(
        p, q, 1, True, True, product,
        "quartic product +1: unit knot trivial, the nontrivial knot lives on ideals",
    )


# ---------------------------------------------------------------------------
# reflection


@dataclass(frozen=True)
class ReflectionReport:
    m: int
    partner: int
    d_plus: int
    d_minus: int
    r_plus: int
    r_minus: int
    ok: bool
    special_units: bool   # a Q(i) side: logged, excluded from scan assertions


def reflection_check(m: int, bound: int = 10**8) -> ReflectionReport:
    """3-ranks of Cl(Q(sqrt m)) and Cl(Q(sqrt -3m)); ok iff they differ by at most 1."""
    if m in (0, 1):
        raise PreconditionError("m must be a squarefree integer different from 0 and 1")
    if squarefree_kernel(m) != m:
        raise PreconditionError(f"{m} is not squarefree")
    partner = squarefree_kernel(-3 * m)
    if partner == 1:
        raise DegeneratePartnerError("m = -3 pairs with the rational field; skipped")
    d_plus = fundamental_discriminant(m)
    d_minus = fundamental_discriminant(partner)
    r_plus = class_group(d_plus, bound=bound).p_rank(3)
    r_minus = class_group(d_minus, bound=bound).p_rank(3)
    special = m in (3, -1)
    return ReflectionReport(
        m, partner, d_plus, d_minus, r_plus, r_minus, abs(r_plus - r_minus) <= 1, special
    )


# ---------------------------------------------------------------------------
# quadratic-order elements on the (1, w) basis, w = (b0 + sqrt(d))/2


def _order_params(d: int) -> tuple[int, int]:
    b0 = d & 1
    return b0, (b0 * b0 - d) // 4  # w^2 = b0*w - c0


def _elt_mul(x: tuple[int, int], y: tuple[int, int], d: int) -> tuple[int, int]:
    b0, c0 = _order_params(d)
    x1, x2 = x
    y1, y2 = y
    return (x1 * y1 - x2 * y2 * c0, x1 * y2 + x2 * y1 + x2 * y2 * b0)


def _elt_norm(x: tuple[int, int], d: int) -> int:
    b0, c0 = _order_params(d)
    u, v = x
    return u * u + b0 * u * v + c0 * v * v


def _elt_residue(x: tuple[int, int], d: int, p: int, root: int) -> int:
    """Residue of u + v*w modulo the prime ideal (p, sqrt(d) - root)."""
    b0 = d & 1
    w = (b0 + root) * pow(2, -1, p) % p
    return (x[0] + x[1] * w) % p


def element_xy(x: tuple[int, int], d: int) -> tuple[int, int, int]:
    """Rewrite u + v*w as (a + b*sqrt(m))/den over the radicand m."""
    u, v = x
    b0 = d & 1
    if b0 == 0:
        return u, v, 1
    return 2 * u + v, v, 2


def format_element(x: tuple[int, int], d: int) -> str:
    a, b, den = element_xy(x, d)
    m = radicand(d)
    s = f"{a} + {b}*sqrt({m})" if b >= 0 else f"{a} - {-b}*sqrt({m})"
    return s if den == 1 else f"({s})/{den}"


class _Lattice2:
    """Full-rank sublattice of Z^2 in triangular form Z(n1,0) + Z(s,n2)."""

    def __init__(self, rows: list[tuple[int, int]]):
        pivot = (0, 0)
        for u, v in rows:
            g, alpha, beta = _xgcd(pivot[1], v)
            pivot = (alpha * pivot[0] + beta * u, g)
        if pivot[1] == 0:
            raise ValueError("lattice is not full rank")
        n2 = abs(pivot[1])
        if pivot[1] < 0:
            pivot = (-pivot[0], n2)
        n1 = 0
        for u, v in rows:
            k = v // n2
            n1 = math.gcd(n1, u - k * pivot[0])
        if n1 == 0:
            raise ValueError("lattice is not full rank")
        self.n1 = n1
        self.n2 = n2
        self.s = pivot[0] % n1

    def contains(self, x: tuple[int, int]) -> bool:
        u, v = x
        if v % self.n2:
            return False
        return (u - (v // self.n2) * self.s) % self.n1 == 0


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _form_ideal_rows(a: int, b: int, d: int) -> list[tuple[int, int]]:
    # ideal Z*a + Z*(-b + sqrt(d))/2 in (1, w) coordinates
    b0 = d & 1
    return [(a, 0), (-(b + b0) // 2, 1)]


def _ideal_square_lattice(a: int, b: int, d: int) -> _Lattice2:
    g1, g2 = _form_ideal_rows(a, b, d)
    rows = [
        _elt_mul(g1, g1, d),
        _elt_mul(g1, g2, d),
        _elt_mul(g2, g2, d),
    ]
    return _Lattice2(rows)


def _elements_of_norm(d: int, target: int) -> list[tuple[int, int]]:
    """All (u, v) with N(u + v w) = target, for d < 0 (definite norm form)."""
    assert d < 0
    b0, c0 = _order_params(d)
    out = []
    vmax = math.isqrt(4 * target // (-d))
    for v in range(-vmax, vmax + 1):
        disc_u = v * v * d + 4 * target
        if disc_u < 0:
            continue
        r = math.isqrt(disc_u)
        if r * r != disc_u:
            continue
        for sign in ((1,) if r == 0 else (1, -1)):
            num = -b0 * v + sign * r
            if num % 2 == 0:
                out.append((num // 2, v))
    return sorted(set(out))


# ---------------------------------------------------------------------------
# ray class numbers


def _unit_generators(d: int) -> list[tuple[int, int]]:
    """Generators of the unit group of the maximal order, in (1, w) coordinates."""
    if d < -4:
        return [(-1, 0)]
    if d == -4:
        return [(0, 1)]       # i = w
    if d == -3:
        return [(0, 1)]       # sixth root of unity (1 + sqrt(-3))/2
    unit = fundamental_unit(d)
    b0 = d & 1
    return [(-1, 0), ((unit.t - unit.u * b0) // 2, unit.u)]


def _mult_order(x: int, p: int) -> int:
    if x % p == 0:
        raise ValueError("zero residue has no multiplicative order")
    order = p - 1
    for f, _ in factor(p - 1).factors:
        while order % f == 0 and pow(x, order // f, p) == 1:
            order //= f
    return order


def _split_root(d: int, p: int, which_ideal: str) -> int:
    if p == 2 or not is_prime(p):
        raise PreconditionError(f"{p} must be an odd prime")
    if d % p == 0:
        raise PreconditionError(f"{p} ramifies in discriminant {d}, not split")
    if jacobi(d % p, p) != 1:
        raise PreconditionError(f"{p} is not split in discriminant {d}")
    r = sqrt_mod_prime(d % p, p)
    if which_ideal == "first":
        return r
    if which_ideal == "second":
        return p - r
    raise ValueError("which_ideal must be 'first' or 'second'")


def ray_class_number(d: int, p: int, which_ideal: str = "first") -> int:
    """Ray class number h * phi(P) / (E : E^(1)) modulo a degree-1 prime P above p."""
    root = _split_root(d, p, which_ideal)
    h = class_number(d, narrow=False)
    unit_index = 1
    for gen in _unit_generators(d):
        res = _elt_residue(gen, d, p, root)
        unit_index = math.lcm(unit_index, _mult_order(res, p))
    return h * (p - 1) // unit_index


# ---------------------------------------------------------------------------
# 2-primary split primes in imaginary quadratic fields


@dataclass(frozen=True)
class PrimaryPrimeWitness:
    d: int
    prime_norm: int
    root: int                                  # the ideal is (p, sqrt(d) - root)
    singular_basis: tuple[tuple[int, int], ...]  # elements on the (1, w) basis; (-1,0) first
    singular_text: tuple[str, ...]
    residues: tuple[int, ...]
    character_values: tuple[Sign, ...]
    primary: bool


def singular_basis(d: int, avoid: int, bound: int = 10**8) -> list[tuple[tuple[int, int], tuple[int, int, int]]]:
    """Generators of the group of singular numbers coprime to 2*avoid, modulo squares.

    Returns (element, form) pairs: each element generates the square of the
    ideal attached to the form, an order-2 class representative.  The unit -1
    is not included here.
    """
    if d >= 0:
        raise PreconditionError("singular basis implemented for imaginary fields only")
    group = class_group(d, bound=bound)
    out = []
    for n, gen in zip(group.elementary_divisors, group.generators):
        if n % 2:
            continue
        tors = gen
        # order-2 element of the cyclic factor
        k = n // 2
        cls = _pow_form(tors, k, d)
        rep = _with_leading_coprime(cls, 2 * avoid)
        lattice = _ideal_square_lattice(rep.a, rep.b, d)
        target = rep.a * rep.a
        found = None
        for cand in _elements_of_norm(d, target):
            if lattice.contains(cand):
                found = cand
                break
        if found is None:
            raise RuntimeError("generator search bound exceeded (no norm-a^2 generator found)")
        out.append((found, rep.as_tuple()))
    return out


def _pow_form(f, k: int, d: int):
    from .quadratic import compose, principal_form, reduce_form

    r = reduce_form(principal_form(d))
    base = f
    while k:
        if k & 1:
            r = compose(r, base)
        base = compose(base, base)
        k >>= 1
    return r


def is_2_primary(d: int, p: int, which_ideal: str = "first", bound: int = 10**8) -> PrimaryPrimeWitness:
    """Whether the split prime p is 2-primary for the imaginary field of discriminant d.

    Primary means every singular number coprime to 2 (units included) is a
    quadratic residue modulo the chosen prime ideal above p.
    """
    if d >= 0:
        raise PreconditionError("2-primary test implemented for d < 0")
    root = _split_root(d, p, which_ideal)
    basis: list[tuple[int, int]] = [(-1, 0)]
    for elt, _form in singular_basis(d, avoid=p, bound=bound):
        basis.append(elt)
    residues = []
    chars = []
    for elt in basis:
        res = _elt_residue(elt, d, p, root)
        if res == 0:
            raise RuntimeError("singular number not coprime to p (internal error)")
        residues.append(res)
        chars.append(Sign.of(jacobi(res, p)))
    primary = p % 4 == 1 and all(c == Sign.PLUS for c in chars)
    return PrimaryPrimeWitness(
        d,
        p,
        root,
        tuple(basis),
        tuple(format_element(e, d) for e in basis),
        tuple(residues),
        tuple(chars),
        primary,
    )
