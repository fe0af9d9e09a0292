"""Determinants of Toeplitz matrices of binomial coefficients C(n, a+k-r+c),
exactly and against their closed-form product."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import FieldElement, as_modulus, binomial_exact, binomial_mod_p

__all__ = [
    "BinomialMatrixSpec",
    "DetComparison",
    "build_binomial_matrix",
    "det_exact",
    "det_cofactor",
    "det_closed_form",
    "check_identity",
    "residue_from_lucas",
]


@dataclass(frozen=True)
class BinomialMatrixSpec:
    n: int
    a: int
    k: int

    def __post_init__(self):
        for name in ("n", "a", "k"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} must be a nonnegative int, got {v!r}")

    @property
    def size(self) -> int:
        return self.k + 1


def build_binomial_matrix(s: BinomialMatrixSpec) -> list[list[int]]:
    """Row r, column c (0-based) holds C(n, a + k - r + c)."""
    return [[binomial_exact(s.n, s.a + s.k - r + c) for c in range(s.size)] for r in range(s.size)]


def det_exact(M) -> int:
    """Fraction-free (Bareiss) elimination over the integers."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(n - 1):
        if A[i][i] == 0:
            swap = next((r for r in range(i + 1, n) if A[r][i] != 0), None)
            if swap is None:
                return 0
            A[i], A[swap] = A[swap], A[i]
            sign = -sign
        piv = A[i][i]
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                A[r][c] = (A[r][c] * piv - A[r][i] * A[i][c]) // prev
            A[r][i] = 0
        prev = piv
    return sign * A[n - 1][n - 1]


def det_cofactor(M) -> int:
    """Laplace expansion along the first row; exponential, for small oracles."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for c in range(n):
        if M[0][c]:
            minor = [row[:c] + row[c + 1:] for row in M[1:]]
            total += (-1) ** c * M[0][c] * det_cofactor(minor)
    return total


def det_closed_form(s: BinomialMatrixSpec) -> Fraction:
    """prod_{i=0..k} C(n+i, a+k) / prod_{i=0..k} C(a+k+i, a+k)."""
    m = s.a + s.k
    num = 1
    den = 1
    for i in range(s.k + 1):
        num *= binomial_exact(s.n + i, m)
        den *= binomial_exact(m + i, m)
    return Fraction(num, den)


@dataclass(frozen=True)
class DetComparison:
    spec: BinomialMatrixSpec
    exact_det: int
    closed_form: Fraction
    equal: bool
    residue: FieldElement | None = None
    invertible_mod_p: bool | None = None

    def as_dict(self) -> dict:
        out = {
            "n": self.spec.n,
            "a": self.spec.a,
            "k": self.spec.k,
            "exact_det": str(self.exact_det),
            "closed_form": str(self.closed_form),
            "equal": self.equal,
        }
        if self.residue is not None:
            out["p"] = self.residue.p
            out["residue"] = self.residue.value
            out["invertible_mod_p"] = self.invertible_mod_p
        return out


def check_identity(s: BinomialMatrixSpec, p=None) -> DetComparison:
    det = det_exact(build_binomial_matrix(s))
    closed = det_closed_form(s)
    equal = closed.denominator == 1 and closed.numerator == det
    residue = invertible = None
    if p is not None:
        modulus = as_modulus(p)
        residue = FieldElement(det, modulus)
        invertible = bool(residue)
    return DetComparison(s, det, closed, equal, residue, invertible)


def residue_from_lucas(s: BinomialMatrixSpec, p) -> FieldElement:
    """Determinant mod p computed from Lucas-reduced entries (elimination in F_p)."""
    modulus = as_modulus(p)
    q = modulus.p
    A = [[binomial_mod_p(s.n, s.a + s.k - r + c, modulus).value for c in range(s.size)] for r in range(s.size)]
    n = len(A)
    det = 1
    for i in range(n):
        piv = next((r for r in range(i, n) if A[r][i]), None)
        if piv is None:
            return FieldElement(0, modulus)
        if piv != i:
            A[i], A[piv] = A[piv], A[i]
            det = -det
        det = det * A[i][i] % q
        inv = pow(A[i][i], -1, q)
        for r in range(i + 1, n):
            f = A[r][i] * inv % q
            if f:
                for c in range(i, n):
                    A[r][c] = (A[r][c] - f * A[i][c]) % q
    return FieldElement(det, modulus)
