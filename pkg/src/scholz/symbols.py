"""Rational quartic residue symbols and quadratic characters of fundamental units."""

from __future__ import annotations

import enum

from .arith import NonresidueError, is_prime, jacobi, sqrt_mod_prime
from .quadratic import fundamental_unit


class UndefinedSymbolError(ValueError):
    """Symbol requested outside its domain of definition."""


class Sign(enum.IntEnum):
    """A +-1 value carried as its own type so mod-q residues cannot leak through."""

    PLUS = 1
    MINUS = -1

    @classmethod
    def of(cls, v: int) -> "Sign":
        if v == 1:
            return cls.PLUS
        if v == -1:
            return cls.MINUS
        raise ValueError(f"not a sign: {v}")

    def __mul__(self, other):
        if isinstance(other, Sign):
            return Sign.of(int(self) * int(other))
        return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

    def __neg__(self) -> "Sign":
        return Sign.of(-int(self))


def quartic_symbol(a: int, q: int) -> Sign:
    """(a/q)_4 = a^((q-1)/4) mod q, defined when q = 1 (mod 4) and (a/q) = +1."""
    if not is_prime(q):
        raise UndefinedSymbolError(f"modulus {q} is not prime")
    if q % 4 != 1:
        raise UndefinedSymbolError(f"undefined: {q} != 1 (mod 4)")
    if a % q == 0:
        raise UndefinedSymbolError("undefined: argument divisible by the modulus")
    if jacobi(a, q) != 1:
        raise UndefinedSymbolError(f"undefined: {a} is a quadratic nonresidue mod {q}")
    v = pow(a, (q - 1) // 4, q)
    return Sign.PLUS if v == 1 else Sign.MINUS


def unit_character(p: int, q: int) -> Sign:
    """Quadratic character of the fundamental unit of Q(sqrt p) modulo a prime above q.

    Restricted to q = 1 (mod 4): there the value does not depend on which
    square root of p mod q is used, because the conjugate unit differs by
    -1/eps and (-1/q) = +1.
    """
    if p == q:
        raise UndefinedSymbolError("p and q must be distinct")
    if not (is_prime(p) and is_prime(q)):
        raise UndefinedSymbolError("p and q must be prime")
    if p % 4 != 1:
        raise UndefinedSymbolError(f"{p} != 1 (mod 4): no real quadratic unit convention")
    if q % 4 != 1:
        raise UndefinedSymbolError(
            f"refused: {q} = 3 (mod 4) makes the character depend on the choice of root"
        )
    if jacobi(p, q) != 1:
        raise NonresidueError(f"sqrt({p}) does not exist mod {q}")
    unit = fundamental_unit(p)
    r = sqrt_mod_prime(p, q)
    inv2 = pow(2, -1, q)
    residue = (unit.t + unit.u * r) * inv2 % q
    if residue == 0:
        raise RuntimeError("unit reduced to 0 mod q (internal error: units are coprime to q)")
    return Sign.of(jacobi(residue, q))


def unit_character_at_root(p: int, q: int, root: int) -> Sign:
    """Same character evaluated at a caller-chosen square root of p (for consistency tests)."""
    if (root * root - p) % q != 0:
        raise ValueError("root^2 != p (mod q)")
    unit = fundamental_unit(p)
    inv2 = pow(2, -1, q)
    residue = (unit.t + unit.u * root) * inv2 % q
    return Sign.of(jacobi(residue, q))
