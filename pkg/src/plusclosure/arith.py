"""Exact integer, rational and prime-field arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "MAX_MODULUS",
    "PrimeModulus",
    "FieldElement",
    "binomial_exact",
    "binomial_mod_p",
    "is_prime",
    "as_modulus",
    "Fraction",
]

# field products must fit a signed 64-bit intermediate
MAX_MODULUS = 2**31

# deterministic Miller-Rabin witnesses, valid for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic primality test (exact for every n < 3.3e24)."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """The characteristic p of a prime field."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError(f"modulus must be an int, got {self.p!r}")
        if not 2 <= self.p < MAX_MODULUS:
            raise ValueError(f"modulus {self.p} outside supported range [2, 2^31)")
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def __int__(self):
        return self.p

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def is_power(self, q: int) -> bool:
        """True iff q = p^e for some e >= 0."""
        return self.log(q) is not None

    def log(self, q: int) -> int | None:
        """Return e with p^e == q, or None."""
        if q < 1:
            return None
        e = 0
        while q % self.p == 0:
            q //= self.p
            e += 1
        return e if q == 1 else None


def as_modulus(p) -> PrimeModulus:
    return p if isinstance(p, PrimeModulus) else PrimeModulus(int(p))


@dataclass(frozen=True, init=False)
class FieldElement:
    """An element of F_p, stored as its canonical representative in [0, p)."""

    value: int
    modulus: PrimeModulus

    def __init__(self, value: int, modulus):
        modulus = as_modulus(modulus)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "value", int(value) % modulus.p)

    @property
    def p(self) -> int:
        return self.modulus.p

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ValueError("field elements over different moduli")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value + o, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value - o, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(o - self.value, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value * o, self.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return FieldElement(pow(self.value, -1, self.p), self.modulus)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FieldElement(o, self.modulus).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(pow(self.value, e, self.p), self.modulus)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElement({self.value}, p={self.p})"


def binomial_exact(n: int, m: int) -> int:
    """n(n-1)...(n-m+1) / m!, exactly; C(n, 0) = 1 and negative n is allowed."""
    if m < 0:
        raise ValueError(f"binomial lower index must be >= 0, got {m}")
    num = 1
    den = 1
    for i in range(m):
        num *= n - i
        den *= i + 1
    return num // den


def _binomial_small(n: int, m: int, p: int) -> int:
    # 0 <= n, m < p, so m! is a unit mod p
    if m > n:
        return 0
    m = min(m, n - m)
    num = den = 1
    for i in range(m):
        num = num * (n - i) % p
        den = den * (i + 1) % p
    return num * pow(den, -1, p) % p


def binomial_mod_p(n: int, m: int, p) -> FieldElement:
    """C(n, m) mod p via base-p digits (Lucas)."""
    modulus = as_modulus(p)
    if n < 0 or m < 0:
        raise ValueError("binomial_mod_p needs n, m >= 0")
    q = modulus.p
    acc = 1
    while m and acc:
        acc = acc * _binomial_small(n % q, m % q, q) % q
        n //= q
        m //= q
    return FieldElement(acc, modulus)
