"""Root discriminants and minimal discriminants: geometry-of-numbers lower
bounds, the cyclotomic and x^n - 2 families, a Wieferich scan, degree-2/3
minimal-discriminant scans, and counting biquadratic (Klein-four) fields."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from mpmath import mp, mpf

from .arith import is_prime, primes_up_to
from .quadratic import is_fundamental_discriminant


@dataclass(frozen=True)
class RootDiscriminantRecord:
    degree: int
    disc: int
    rd: float               # |disc|^(1/degree) to the stated precision
    precision_digits: int
    family_tag: str


def minkowski_rd_bound(n: int, r2: int) -> float:
    """Geometry-of-numbers lower bound on the root discriminant in degree n.

    sqrt|d| >= (n^n / n!) (pi/4)^r2, computed with the rational factor exact
    and the final root at 50 digits.
    """
    if n < 1 or r2 < 0 or 2 * r2 > n:
        raise ValueError("need 0 <= 2*r2 <= n")
    base = Fraction(n**n, math.factorial(n))
    with mp.workdps(50):
        val = mpf(base.numerator) / base.denominator * (mp.pi / 4) ** r2
        rd = val ** (mpf(2) / n)
        return float(rd)


def cyclotomic_rd(p: int) -> RootDiscriminantRecord:
    """Root discriminant p^((p-2)/(p-1)) of the p-th cyclotomic field, p odd prime.

    disc = (-1)^((p-1)/2) * p^(p-2) exactly; rd carries 12 significant digits.
    """
    if not is_prime(p) or p == 2:
        raise ValueError(f"{p} is not an odd prime")
    disc = p ** (p - 2)
    if (p - 1) // 2 % 2 == 1:
        disc = -disc
    with mp.workdps(30):
        rd = float(mpf(p) ** (mpf(p - 2) / (p - 1)))
    return RootDiscriminantRecord(p - 1, disc, rd, 12, "cyclotomic")


# ---------------------------------------------------------------------------
# exact resultants for the x^n - 2 family


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(f: list[int], g: list[int]) -> int:
    """Resultant of integer polynomials given by descending coefficient lists."""
    n = len(f) - 1
    m = len(g) - 1
    if n < 0 or m < 0:
        raise ValueError("empty polynomial")
    size = n + m
    rows = []
    for i in range(m):
        rows.append([0] * i + f + [0] * (m - 1 - i))
    for i in range(n):
        rows.append([0] * i + g + [0] * (n - 1 - i))
    return _bareiss_det(rows)


def poly_disc(f: list[int]) -> int:
    """Discriminant of a monic integer polynomial (descending coefficients)."""
    n = len(f) - 1
    fp = [c * (n - i) for i, c in enumerate(f[:-1])]
    r = resultant(f, fp)
    return r if (n * (n - 1) // 2) % 2 == 0 else -r


@dataclass(frozen=True)
class PerronReport:
    records: tuple[RootDiscriminantRecord, ...]
    bound_holds_all: bool              # |disc(x^n - 2)|^(1/n) < 2n for every n scanned
    wieferich_bound: int
    wieferich_primes: tuple[int, ...]


def perron_scan(n_max: int, wieferich_bound: int = 2000) -> PerronReport:
    """disc(x^n - 2) = +-(n^n 2^(n-1)) via exact resultants, with the 2n bound.

    The Wieferich report lists primes p <= bound with 2^(p-1) = 1 (mod p^2):
    exactly where the x^p - 2 discriminant drops below the generic value.
    """
    if n_max > 64:
        raise ValueError("n_max capped at 64 for exact polynomial discriminants")
    records = []
    ok_all = True
    for n in range(2, n_max + 1):
        f = [1] + [0] * (n - 1) + [-2]
        d = poly_disc(f)
        if abs(d) != n**n * 2 ** (n - 1):
            raise RuntimeError(f"resultant disagrees with n^n 2^(n-1) at n={n} (internal bug)")
        if abs(d) >= (2 * n) ** n:
            ok_all = False
        with mp.workdps(30):
            rd = float(mpf(abs(d)) ** (mpf(1) / n))
        records.append(RootDiscriminantRecord(n, d, rd, 12, "perron"))
    wf = tuple(
        p for p in primes_up_to(wieferich_bound) if pow(2, p - 1, p * p) == 1
    )
    return PerronReport(tuple(records), ok_all, wieferich_bound, wf)


# ---------------------------------------------------------------------------
# minimal discriminants in degrees 2 and 3


@dataclass(frozen=True)
class MinimalDiscReport:
    degree: int
    min_abs_disc: int                       # discriminant with sign
    witness: object
    min_real: int | None = None             # degree 2 only
    min_real_excluding_first: int | None = None


class _CubicOrder:
    """An order in Q[t]/(f), f monic irreducible cubic, as a basis over Q.

    Supports exact multiplication, trace-form discriminants, and one-prime
    enlargement, which is all the round-two style maximalization needs here.
    """

    def __init__(self, f: list[int], basis: list[tuple[Fraction, Fraction, Fraction]]):
        self.f = f
        self.basis = basis

    @classmethod
    def equation_order(cls, f: list[int]) -> "_CubicOrder":
        one = Fraction(1)
        zero = Fraction(0)
        return cls(f, [(one, zero, zero), (zero, one, zero), (zero, zero, one)])

    def _mul(self, u, v):
        a2, a1, a0 = self.f[1], self.f[2], self.f[3]
        u0, u1, u2 = u
        v0, v1, v2 = v
        c0 = u0 * v0
        c1 = u0 * v1 + u1 * v0
        c2 = u0 * v2 + u1 * v1 + u2 * v0
        c3 = u1 * v2 + u2 * v1
        c4 = u2 * v2
        return (
            c0 - c3 * a0 + c4 * a2 * a0,
            c1 - c3 * a1 + c4 * (a2 * a1 - a0),
            c2 - c3 * a2 + c4 * (a2 * a2 - a1),
        )

    def _trace(self, u) -> Fraction:
        # trace of the multiplication matrix on the power basis
        a2, a1 = self.f[1], self.f[2]
        u0, u1, u2 = u
        # Tr(1) = 3, Tr(t) = -a2, Tr(t^2) = a2^2 - 2 a1
        return 3 * u0 - a2 * u1 + (a2 * a2 - 2 * a1) * u2

    def _char_poly(self, u) -> list[Fraction]:
        r1 = u
        r2 = self._mul(u, u)
        r3 = self._mul(r2, u)
        # x^3 - e1 x^2 + e2 x - e3 with power sums from traces
        p1 = self._trace(r1)
        p2 = self._trace(r2)
        p3 = self._trace(r3)
        e1 = p1
        e2 = (e1 * p1 - p2) / 2
        e3 = (e2 * p1 - e1 * p2 + p3) / 3
        return [Fraction(1), -e1, e2, -e3]

    def discriminant(self) -> int:
        g = [[self._trace(self._mul(bi, bj)) for bj in self.basis] for bi in self.basis]
        det = (
            g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
            - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
        )
        assert det.denominator == 1
        return int(det)

    def _combo(self, coeffs, p):
        out = [Fraction(0)] * 3
        for c, b in zip(coeffs, self.basis):
            for i in range(3):
                out[i] += Fraction(c, p) * b[i]
        return tuple(out)

    def p_enlargement(self, p: int) -> "_CubicOrder | None":
        """The order enlarged by one integral candidate (sum of basis)/p, or None if p-maximal."""
        for c0 in range(p):
            for c1 in range(p):
                for c2 in range(p):
                    if (c0, c1, c2) == (0, 0, 0):
                        continue
                    eta = self._combo((c0, c1, c2), p)
                    cp = self._char_poly(eta)
                    if all(c.denominator == 1 for c in cp):
                        return self._extend(eta)
        return None

    def _extend(self, eta) -> "_CubicOrder":
        # HNF of the lattice spanned by the old basis, eta, eta^2, and products
        gens = list(self.basis) + [eta, self._mul(eta, eta)]
        for b in self.basis:
            gens.append(self._mul(eta, b))
        den = 1
        for g in gens:
            for c in g:
                den = den * c.denominator // math.gcd(den, c.denominator)
        rows = [[int(c * den) for c in g] for g in gens]
        hnf = _hnf3(rows)
        basis = [tuple(Fraction(x, den) for x in row) for row in hnf]
        return _CubicOrder(self.f, basis)


def _hnf3(rows: list[list[int]]) -> list[list[int]]:
    """Row HNF of a rank-3 integer lattice given by generators."""
    rows = [r[:] for r in rows if any(r)]
    basis: list[list[int]] = []
    for col in (2, 1, 0):
        pivot = None
        rest = []
        for r in rows:
            if r[col] != 0:
                if pivot is None:
                    pivot = r[:]
                else:
                    # reduce r against pivot by gcd steps
                    a, b = pivot[col], r[col]
                    while b:
                        q = a // b
                        pivot, r = r, [x - q * y for x, y in zip(pivot, r)]
                        a, b = pivot[col], r[col]
                    if any(r):
                        rest.append(r)
            else:
                rest.append(r)
        if pivot is None:
            raise ValueError("lattice not full rank")
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        basis.append(pivot)
        rows = rest
    basis.reverse()  # basis[i] has pivot in column i
    # reduce off-diagonal entries
    for i in range(2, 0, -1):
        for j in range(i):
            q = basis[j][i] // basis[i][i]
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return basis


def cubic_field_disc(f: list[int]) -> int:
    """Field discriminant of the cubic field defined by monic irreducible f."""
    order = _CubicOrder.equation_order(f)
    d = order.discriminant()
    while True:
        enlarged = None
        for p in range(2, math.isqrt(abs(d)) + 1):
            if d % (p * p) == 0:
                enlarged = order.p_enlargement(p)
                if enlarged is not None:
                    break
        if enlarged is None:
            return d
        order = enlarged
        d = order.discriminant()


def minimal_disc_scan(degree: int) -> MinimalDiscReport:
    """Exhaustive minimal-|disc| scan: degree 2 over fundamental discriminants,
    degree 3 over a Hunter-bound coefficient box (bounds enlarged by one)."""
    if degree == 2:
        min_abs = min_real = second_real = None
        d = 2
        while second_real is None:
            d += 1
            for cand in (d, -d):
                if not is_fundamental_discriminant(cand):
                    continue
                if min_abs is None:
                    min_abs = cand
                if cand > 0:
                    if min_real is None:
                        min_real = cand
                    elif second_real is None and cand != min_real:
                        second_real = cand
        return MinimalDiscReport(2, min_abs, f"Q(sqrt({min_abs}))", min_real, second_real)
    if degree != 3:
        raise ValueError("scan implemented for degrees 2 and 3")
    # Hunter bound for |d_K| <= 30: T2 <= 1/3 + (2/sqrt 3) * sqrt(30/3) < 4
    best: tuple[int, tuple] | None = None
    for a1 in (0, 1):
        for a2 in range(-3, 4):
            for a3 in range(-3, 4):
                if a3 == 0:
                    continue
                f = [1, -a1, a2, -a3]
                if _has_rational_root(f):
                    continue
                d = poly_disc(f)
                if d == 0:
                    continue
                dk = cubic_field_disc(f)
                if abs(dk) > 30:
                    continue
                if best is None or abs(dk) < abs(best[0]):
                    best = (dk, tuple(f))
    assert best is not None
    return MinimalDiscReport(3, best[0], {"poly": list(best[1])})


def _has_rational_root(f: list[int]) -> bool:
    # monic cubic: rational roots are integers dividing the constant term
    c = f[-1]
    if c == 0:
        return True
    for k in range(1, abs(c) + 1):
        if c % k == 0:
            for r in (k, -k):
                if ((f[0] * r + f[1]) * r + f[2]) * r + f[3] == 0:
                    return True
    return False


# ---------------------------------------------------------------------------
# Klein-four field counting


@dataclass(frozen=True)
class V4Report:
    bound: int
    count: int
    grid: tuple[int, ...]
    grid_counts: tuple[int, ...]
    slope_estimate: float | None   # None when the grid has fewer than two points


def _fundamental_discs_upto(limit: int) -> np.ndarray:
    """All fundamental discriminants with |d| <= limit, as (d, radicand) rows sorted by (|d|, d)."""
    n = limit
    sq = np.ones(n + 1, dtype=bool)
    sq[0] = False
    for p in range(2, math.isqrt(n) + 1):
        sq[p * p:: p * p] = False
    ms = np.nonzero(sq)[0]  # squarefree 1..limit
    rows = []
    for sign in (1, -1):
        m = sign * ms
        if sign == 1:
            m = m[m != 1]  # Q(sqrt 1) is not a field; m = -1 stays (d = -4)
        d = np.where(m % 4 == 1, m, 4 * m)
        keep = np.abs(d) <= limit
        rows.append(np.stack([d[keep], m[keep]], axis=1))
    allrows = np.concatenate(rows)
    order = np.lexsort((allrows[:, 0], np.abs(allrows[:, 0])))
    return allrows[order]


def v4_count(
    bound: int,
    grid: tuple[int, ...] = (10**6, 10**7, 10**8, 10**9),
) -> V4Report:
    """Count Klein-four fields with |disc| <= bound; disc = d1 d2 d3 over the
    three quadratic subfields.  The slope of log N against log X over the grid
    estimates the counting exponent (1/2 up to a log factor)."""
    if bound > 10**10:
        raise ValueError("bound capped at 10^10")
    grid = tuple(sorted(x for x in grid if x <= bound)) or (bound,)
    if grid[-1] != bound:
        grid = grid + (bound,)
    b2max = math.isqrt(bound // 3)
    table = _fundamental_discs_upto(max(b2max, 4))
    d_all = table[:, 0].astype(np.int64)
    r_all = table[:, 1].astype(np.int64)
    absd = np.abs(d_all)
    thresholds = np.array(grid, dtype=np.int64)
    counts = np.zeros(len(grid), dtype=np.int64)
    cube = round(bound ** (1 / 3)) + 2
    for idx in range(len(d_all)):
        d1 = int(d_all[idx])
        r1 = int(r_all[idx])
        a1 = abs(d1)
        if a1 > cube:
            break
        b2 = math.isqrt(bound // a1)
        # candidates strictly after idx in the (|d|, d) order, with |d2| <= b2
        hi = np.searchsorted(absd, b2 + 1)
        if hi <= idx + 1:
            continue
        d2 = d_all[idx + 1: hi]
        r2 = r_all[idx + 1: hi]
        g = np.gcd(np.abs(r2), abs(r1))
        r3 = (r1 // g) * (r2 // g)
        d3 = np.where(r3 % 4 == 1, r3, 4 * r3)
        a2 = np.abs(d2)
        a3 = np.abs(d3)
        # canonical ordering: (|d2|, d2) < (|d3|, d3)
        mask = (a3 > a2) | ((a3 == a2) & (d3 > d2))
        prod = a1 * a2 * a3
        mask &= prod <= bound
        if not mask.any():
            continue
        pv = prod[mask]
        counts += (pv[:, None] <= thresholds[None, :]).sum(axis=0)
    logs = np.log(np.array(grid, dtype=float))
    logn = np.log(np.maximum(counts.astype(float), 1.0))
    slope = float(np.polyfit(logs, logn, 1)[0]) if len(grid) > 1 else None
    return V4Report(bound, int(counts[-1]), grid, tuple(int(c) for c in counts), slope)
