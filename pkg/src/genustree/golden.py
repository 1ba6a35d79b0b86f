"""Exact arithmetic in the quadratic field Q(sqrt(5)).

Values are (a + b*sqrt5)/c with integer a, b and positive integer c, kept in
canonical form (gcd(|a|, |b|, c) == 1, zero is (0, 0, 1)).  Every verdict in
the verification suites routes through this module; floating point appears
only in the decimal printer used for reports.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "QuadraticNumber",
    "ExactMatrix",
    "ZERO",
    "ONE",
    "PHI",
    "PHI_INV",
    "SQRT5",
    "RATIO_1618",
    "add",
    "mul",
    "phi_pow",
    "compare",
    "identity_matrix",
    "mat_mul",
    "mat_vec",
    "mat_pow",
    "char_poly",
    "poly_eval_matrix",
    "to_decimal",
    "decimal_close",
]


def _sign_of_pair(p: int, q: int) -> int:
    """Exact sign of p + q*sqrt5."""
    if q == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return 1 if q > 0 else -1
    if p > 0 and q > 0:
        return 1
    if p < 0 and q < 0:
        return -1
    # Mixed signs: compare p^2 with 5 q^2 (5 is not a square, so never equal
    # with q != 0 unless p^2 == 5 q^2 which is impossible).
    if p > 0:  # q < 0: positive iff p^2 > 5 q^2
        return 1 if p * p > 5 * q * q else -1
    # p < 0, q > 0: positive iff 5 q^2 > p^2
    return 1 if 5 * q * q > p * p else -1


class QuadraticNumber:
    """An exact element (a + b*sqrt5)/c of Q(sqrt5)."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a: int, b: int = 0, c: int = 1):
        if c == 0:
            raise ZeroDivisionError("denominator must be nonzero")
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(abs(a), abs(b)), c)
        if g > 1:
            a //= g
            b //= g
            c //= g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticNumber is immutable")

    @classmethod
    def from_int(cls, n: int) -> "QuadraticNumber":
        return cls(n, 0, 1)

    @classmethod
    def from_fraction(cls, q: Fraction | int) -> "QuadraticNumber":
        q = Fraction(q)
        return cls(q.numerator, 0, q.denominator)

    @staticmethod
    def _coerce(value) -> "QuadraticNumber":
        if isinstance(value, QuadraticNumber):
            return value
        if isinstance(value, int):
            return QuadraticNumber(value)
        if isinstance(value, Fraction):
            return QuadraticNumber.from_fraction(value)
        raise TypeError(f"cannot interpret {value!r} as a QuadraticNumber")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return QuadraticNumber(
            self.a * o.c + o.a * self.c,
            self.b * o.c + o.b * self.c,
            self.c * o.c,
        )

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.c)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        # (a1 + b1 s)(a2 + b2 s) with s^2 = 5
        return QuadraticNumber(
            self.a * o.a + 5 * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.c * o.c,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticNumber":
        if self.a == 0 and self.b == 0:
            raise ZeroDivisionError("inverse of zero")
        # 1/((a + b s)/c) = c (a - b s) / (a^2 - 5 b^2)
        norm = self.a * self.a - 5 * self.b * self.b
        return QuadraticNumber(self.c * self.a, -self.c * self.b, norm)

    def __truediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "QuadraticNumber":
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = ONE
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.c)

    # -- ordering -----------------------------------------------------------

    def sign(self) -> int:
        return _sign_of_pair(self.a, self.b)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.c == o.c

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __lt__(self, other):
        return (self - self._coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - self._coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - self._coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - self._coerce(other)).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # -- conversions --------------------------------------------------------

    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.a, self.c)

    def __float__(self) -> float:
        return (self.a + self.b * math.sqrt(5.0)) / self.c

    def to_text(self) -> str:
        """Canonical rendering "(a + b*sqrt5)/c" (minus sign folded into b)."""
        if self.b < 0:
            return f"({self.a} - {-self.b}*sqrt5)/{self.c}"
        return f"({self.a} + {self.b}*sqrt5)/{self.c}"

    _TEXT_RE = re.compile(
        r"^\(\s*(-?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt5\s*\)\s*/\s*(\d+)$"
    )

    @classmethod
    def from_text(cls, text: str) -> "QuadraticNumber":
        m = cls._TEXT_RE.match(text.strip())
        if m is None:
            raise ValueError(f"cannot parse {text!r}")
        a = int(m.group(1))
        b = int(m.group(3))
        if m.group(2) == "-":
            b = -b
        return cls(a, b, int(m.group(4)))

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b}, {self.c})"


ZERO = QuadraticNumber(0)
ONE = QuadraticNumber(1)
PHI = QuadraticNumber(1, 1, 2)
PHI_INV = QuadraticNumber(-1, 1, 2)
SQRT5 = QuadraticNumber(0, 1, 1)
#: The decimal constant 1.618 used throughout the printed bounds, exactly.
RATIO_1618 = QuadraticNumber(809, 0, 500)


def add(x: QuadraticNumber, y: QuadraticNumber) -> QuadraticNumber:
    return x + y


def mul(x: QuadraticNumber, y: QuadraticNumber) -> QuadraticNumber:
    return x * y


_PHI_POW_CACHE: dict[int, QuadraticNumber] = {0: ONE, 1: PHI, -1: PHI_INV}


def phi_pow(k: int) -> QuadraticNumber:
    """Exact phi**k for any integer k (phi**-1 == phi - 1)."""
    try:
        return _PHI_POW_CACHE[k]
    except KeyError:
        value = PHI**k
        _PHI_POW_CACHE[k] = value
        return value


def compare(x: QuadraticNumber, y: QuadraticNumber) -> int:
    """Exact three-way comparison: -1, 0 or 1 as x <, ==, > y."""
    return (x - y).sign()


# ---------------------------------------------------------------------------
# Small exact matrices
# ---------------------------------------------------------------------------


class ExactMatrix:
    """Square matrix of QuadraticNumber entries, row-major."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries: Sequence[QuadraticNumber]):
        if dim < 1:
            raise ValueError("dimension must be positive")
        entries = tuple(QuadraticNumber._coerce(e) for e in entries)
        if len(entries) != dim * dim:
            raise ValueError(f"expected {dim * dim} entries, got {len(entries)}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[QuadraticNumber]]) -> "ExactMatrix":
        dim = len(rows)
        flat = [e for row in rows for e in row]
        return cls(dim, flat)

    def __getitem__(self, ij: tuple[int, int]) -> QuadraticNumber:
        i, j = ij
        return self.entries[i * self.dim + j]

    def row(self, i: int) -> tuple[QuadraticNumber, ...]:
        return self.entries[i * self.dim : (i + 1) * self.dim]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __hash__(self):
        return hash((self.dim, self.entries))

    def __repr__(self):
        rows = [
            "[" + ", ".join(e.to_text() for e in self.row(i)) + "]"
            for i in range(self.dim)
        ]
        return "ExactMatrix(\n  " + "\n  ".join(rows) + "\n)"


def identity_matrix(dim: int) -> ExactMatrix:
    return ExactMatrix(
        dim, [ONE if i == j else ZERO for i in range(dim) for j in range(dim)]
    )


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    n = a.dim
    out = []
    for i in range(n):
        arow = a.row(i)
        for j in range(n):
            acc = ZERO
            for k in range(n):
                acc = acc + arow[k] * b[k, j]
            out.append(acc)
    return ExactMatrix(n, out)


def mat_vec(a: ExactMatrix, v: Sequence[QuadraticNumber]) -> tuple[QuadraticNumber, ...]:
    if len(v) != a.dim:
        raise ValueError("dimension mismatch")
    out = []
    for i in range(a.dim):
        acc = ZERO
        for k, e in enumerate(a.row(i)):
            acc = acc + e * v[k]
        out.append(acc)
    return tuple(out)


def mat_pow(a: ExactMatrix, n: int) -> ExactMatrix:
    if n < 0:
        raise ValueError("exponent must be non-negative")
    result = identity_matrix(a.dim)
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        n >>= 1
    return result


def char_poly(a: ExactMatrix) -> list[QuadraticNumber]:
    """Monic characteristic polynomial, coefficients in descending power order.

    Returns [1, c_{n-1}, ..., c_0] with p(x) = x^n + c_{n-1} x^{n-1} + ... + c_0,
    computed by the Faddeev-LeVerrier recurrence (exact division by integers).
    Supported for dim <= 6.
    """
    n = a.dim
    if n > 6:
        raise ValueError("char_poly supports dimension <= 6")
    coeffs = [ONE]
    m = None  # running matrix M_k
    for k in range(1, n + 1):
        if m is None:
            m = a
        else:
            shifted = ExactMatrix(
                n,
                [
                    m.entries[i * n + j] + (coeffs[-1] if i == j else ZERO)
                    for i in range(n)
                    for j in range(n)
                ],
            )
            m = mat_mul(a, shifted)
        trace = ZERO
        for i in range(n):
            trace = trace + m[i, i]
        coeffs.append(-(trace / k))
    return coeffs


def poly_eval_matrix(coeffs: Sequence[QuadraticNumber], a: ExactMatrix) -> ExactMatrix:
    """Evaluate a polynomial (descending coefficients) at a matrix argument."""
    n = a.dim
    acc = ExactMatrix(n, [ZERO] * (n * n))
    for c in coeffs:
        acc = mat_mul(acc, a)
        acc = ExactMatrix(
            n,
            [
                acc.entries[i * n + j] + (c if i == j else ZERO)
                for i in range(n)
                for j in range(n)
            ],
        )
    return acc


# ---------------------------------------------------------------------------
# Decimal printer (reports only; never used in a verdict)
# ---------------------------------------------------------------------------


def _floor_scaled(x: QuadraticNumber, power: int) -> int:
    """floor(x * 10**power), exact."""
    if power >= 0:
        a = x.a * 10**power
        b = x.b * 10**power
        c = x.c
    else:
        a, b, c = x.a, x.b, x.c * 10 ** (-power)
    if b == 0:
        return a // c
    t = math.isqrt(5 * b * b)
    # floor(b*sqrt5): exact hit impossible since 5 is not a perfect square
    ip = t if b > 0 else -t - 1
    return (a + ip) // c


def to_decimal(x: QuadraticNumber | Fraction | int, sig: int = 12) -> str:
    """Decimal string with `sig` significant digits, round-half-even.

    Ties can only occur for rational values and are resolved exactly; for
    irrational values the fractional part is never exactly one half.
    """
    if not isinstance(x, QuadraticNumber):
        x = QuadraticNumber._coerce(x)
    if x.sign() == 0:
        return "0." + "0" * (sig - 1)
    neg = x.sign() < 0
    y = abs(x)
    # decimal exponent e with 10^e <= y < 10^(e+1)
    ip = _floor_scaled(y, 0)
    if ip > 0:
        e = len(str(ip)) - 1
    else:
        k = 1
        while _floor_scaled(y, k) == 0:
            k += 1
        e = -k
    scale = sig - 1 - e
    t = _floor_scaled(y, scale + 1)
    digits, r = divmod(t, 10)
    if r > 5:
        digits += 1
    elif r == 5:
        if y.b == 0 and Fraction(y.a, y.c) * 10 ** (scale + 1) == t:
            digits += digits & 1  # exact tie: round to even
        else:
            digits += 1  # true value strictly above the half
    if digits == 10**sig:
        digits //= 10
        e += 1
    ds = str(digits)
    if e >= sig:
        body = ds + "0" * (e - sig + 1)
    elif e >= 0:
        body = ds[: e + 1] + "." + ds[e + 1 :]
    else:
        body = "0." + "0" * (-e - 1) + ds
    return ("-" if neg else "") + body


def decimal_close(x: QuadraticNumber, literal: str) -> bool:
    """True when x agrees with a printed decimal like "2.618" to its last place.

    Printed values may be truncations or roundings of the exact quantity, so
    agreement means |x - v| < 10^-places, checked exactly.
    """
    v = Fraction(literal)
    places = len(literal.split(".")[1]) if "." in literal else 0
    tol = Fraction(1, 10**places)
    diff = x - QuadraticNumber.from_fraction(v)
    return abs(diff) < QuadraticNumber.from_fraction(tol)
