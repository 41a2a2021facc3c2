"""Exact arithmetic in the residue ring Z/qZ.

Values are kept as canonical representatives in ``[0, q)``.  Matrix code in
:mod:`kqsets.modmatrix` stores entries in ``int64`` arrays, so the modulus is
bounded by :data:`MAX_MODULUS` to keep every ``q**2`` (and ``2*q**2``, which
appears in two-row combinations) inside 63 bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

#: Largest supported modulus: 2 * (q - 1)**2 must fit in a signed 64-bit int.
MAX_MODULUS = 2**31


class ModulusMismatch(ValueError):
    """Raised when operands over different moduli are combined."""


class NotAUnit(ArithmeticError):
    """Raised when inverting a zero divisor (or zero)."""

    def __init__(self, value: int, q: int):
        super().__init__(f"{value} is not a unit modulo {q}")
        self.value = value
        self.q = q


def check_modulus(q) -> int:
    """Validate a modulus and return it as a plain ``int``."""
    if isinstance(q, bool) or int(q) != q:
        raise TypeError(f"modulus must be an integer, got {q!r}")
    q = int(q)
    if q < 2:
        raise ValueError("modulus must be at least 2")
    if q > MAX_MODULUS:
        raise ValueError(f"modulus must not exceed {MAX_MODULUS}")
    return q


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(a, b) >= 0`` and ``s*a + t*b = g``."""
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1 != 0:
        k = r0 // r1
        r0, r1 = r1, r0 - k * r1
        s0, s1 = s1, s0 - k * s1
        t0, t1 = t1, t0 - k * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


def inverse_mod(a: int, q: int) -> int:
    """Inverse of ``a`` modulo ``q`` as an int; raises :class:`NotAUnit`."""
    g, s, _ = extended_gcd(a % q, q)
    if g != 1:
        raise NotAUnit(a % q, q)
    return s % q


def unit_normalizer(a: int, q: int) -> int:
    """Return a unit ``u`` with ``u * a == gcd(a, q) (mod q)``.

    For ``a == 0`` the unit is 1.  The Bezout coefficient of ``a`` is only a
    unit modulo ``q / g``; it is lifted to a unit modulo ``q`` by adding
    multiples of ``q / g``.
    """
    a %= q
    if a == 0:
        return 1
    g, s, _ = extended_gcd(a, q)
    step = q // g
    s %= q
    for k in range(g):
        u = (s + k * step) % q
        if gcd(u, q) == 1:
            return u
    raise AssertionError("unreachable: a unit lift always exists")


def annihilator_mod(a: int, q: int) -> int:
    """Generator ``q / gcd(a, q)`` (reduced mod q) of the annihilator of ``a``."""
    return (q // gcd(a % q, q)) % q


@dataclass(frozen=True)
class Residue:
    """An element of Z/qZ."""

    value: int
    q: int

    def __post_init__(self):
        q = check_modulus(self.q)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "value", int(self.value) % q)

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.q != self.q:
                raise ModulusMismatch(f"cannot combine residues mod {self.q} and mod {other.q}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue(self.value + v, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue(self.value - v, self.q)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue(v - self.value, self.q)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue(self.value * v, self.q)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.q)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value} mod {self.q})"

    def is_unit(self) -> bool:
        return gcd(self.value, self.q) == 1


def unit_inverse(a: Residue) -> Residue:
    """Multiplicative inverse of ``a``.

    Raises:
        NotAUnit: if ``gcd(a, q) != 1``.
    """
    return Residue(inverse_mod(a.value, a.q), a.q)


def annihilator(a: Residue) -> Residue:
    """Generator of the ideal ``{x : a*x == 0 (mod q)}``.

    A unit has only 0 in its annihilator, so the result is then 0.
    """
    return Residue(annihilator_mod(a.value, a.q), a.q)
