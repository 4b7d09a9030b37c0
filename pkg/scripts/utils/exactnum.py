"""Exact arithmetic over the rationals and real quadratic fields.

QuadReal is the workhorse: an element (p + q*sqrt(d)) / r of Q(sqrt(d)) kept in
canonical form, with floors computed through integer square roots so that
floor(n*k), ceil(n*k) and {n*k} never round. KValue wraps a parameter k > 1 in
one of three representations (rational, quadratic, approximate) behind one
floor/ceil interface; the approximate variant carries an exact rational
enclosure and refuses to answer when the enclosure straddles an integer.
"""

import logging
import math
import re
from abc import ABC, abstractmethod
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Union

import mpmath
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from scripts.utils.config import get_config
from scripts.utils.errors import KSpecError, PrecisionExhausted, UnsupportedRepresentation

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


class Ordering(str, Enum):
    """Result of an exact three-way comparison."""

    LT = "LT"
    EQ = "EQ"
    GT = "GT"

    @classmethod
    def from_sign(cls, s: int) -> "Ordering":
        if s < 0:
            return cls.LT
        if s > 0:
            return cls.GT
        return cls.EQ


# ---------------------------------------------------------------------------
# Integer helpers
# ---------------------------------------------------------------------------

def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


@lru_cache(maxsize=4096)
def _squarefree_split(d: int) -> tuple[int, int]:
    """Return (s, core) with d == s*s*core and core squarefree (d >= 1)."""
    s, core, rest = 1, 1, d
    f = 2
    while f * f <= rest:
        e = 0
        while rest % f == 0:
            rest //= f
            e += 1
        if e:
            s *= f ** (e // 2)
            if e % 2:
                core *= f
        f += 1 if f == 2 else 2
    return s, core * rest


def _sign_surd(m: int, n: int, d: int) -> int:
    """Sign of m + n*sqrt(d) for integers m, n and d >= 0."""
    if n == 0 or d == 0:
        return _sign(m)
    sn = _sign(n)
    if m == 0 or _sign(m) == sn:
        return sn
    diff = m * m - n * n * d
    if diff == 0:
        return 0
    return _sign(m) if diff > 0 else sn


def _floor_parts(p: int, q: int, d: int, r: int) -> int:
    """floor((p + q*sqrt(d)) / r) for r > 0 and d squarefree (or q == 0)."""
    if q == 0:
        return p // r
    # q*sqrt(d) is irrational, so it lies strictly between t and t + 1
    t = math.isqrt(q * q * d)
    if q > 0:
        return (p + t) // r
    return (p - t - 1) // r


# ---------------------------------------------------------------------------
# QuadReal
# ---------------------------------------------------------------------------

class QuadReal:
    """The real number (p + q*sqrt(d)) / r in canonical form.

    Canonical form: r > 0, gcd(p, q, r) == 1, d squarefree, and rationals are
    stored with q == 0 and d == 0. Two canonical values are equal exactly when
    their four integers are equal. Instances are immutable.
    """

    __slots__ = ("_p", "_q", "_d", "_r")

    def __new__(cls, p: int = 0, q: int = 0, d: int = 0, r: int = 1) -> "QuadReal":
        if r == 0:
            raise ZeroDivisionError(f"QuadReal({p}, {q}, {d}, 0)")
        if d < 0:
            raise ValueError(f"radicand must be non-negative, got {d}")
        if q != 0 and d != 0:
            s, core = _squarefree_split(d)
            q *= s
            if core == 1:
                p, q, d = p + q, 0, 0
            else:
                d = core
        return cls._canonical(p, q, d, r)

    @classmethod
    def _canonical(cls, p: int, q: int, d: int, r: int) -> "QuadReal":
        """Reduce sign and common factors; d must already be squarefree."""
        if q == 0 or d == 0:
            q, d = 0, 0
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(p, q, r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        self = object.__new__(cls)
        self._p = p
        self._q = q
        self._d = d
        self._r = r
        return self

    @classmethod
    def from_rational(cls, value: Rational) -> "QuadReal":
        value = Fraction(value)
        return cls._canonical(value.numerator, 0, 0, value.denominator)

    @classmethod
    def sqrt(cls, value: Rational) -> "QuadReal":
        """Exact square root of a non-negative rational."""
        value = Fraction(value)
        if value < 0:
            raise ValueError(f"square root of negative value {value}")
        # sqrt(n/m) = sqrt(n*m)/m
        return cls(0, 1, value.numerator * value.denominator, value.denominator)

    @property
    def p(self) -> int:
        return self._p

    @property
    def q(self) -> int:
        return self._q

    @property
    def d(self) -> int:
        return self._d

    @property
    def r(self) -> int:
        return self._r

    @property
    def is_rational(self) -> bool:
        return self._q == 0

    @property
    def is_integer(self) -> bool:
        return self._q == 0 and self._r == 1

    def as_fraction(self) -> Fraction:
        if self._q:
            raise ValueError(f"{self} is irrational")
        return Fraction(self._p, self._r)

    # -- field structure --------------------------------------------------

    def _field(self, other: "QuadReal") -> int:
        if self._q == 0:
            return other._d
        if other._q == 0 or other._d == self._d:
            return self._d
        raise ValueError(
            f"cannot combine elements of Q(sqrt({self._d})) and Q(sqrt({other._d}))"
        )

    def conjugate(self) -> "QuadReal":
        return QuadReal._canonical(self._p, -self._q, self._d, self._r)

    def norm(self) -> Fraction:
        """Field norm x * conjugate(x), a rational."""
        return Fraction(self._p * self._p - self._q * self._q * self._d, self._r * self._r)

    def inverse(self) -> "QuadReal":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        n = self._p * self._p - self._q * self._q * self._d
        return QuadReal._canonical(self._r * self._p, -self._r * self._q, self._d, n)

    def sign(self) -> int:
        return _sign_surd(self._p, self._q, self._d)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: object) -> "QuadReal":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        d = self._field(other)
        return QuadReal._canonical(
            self._p * other._r + other._p * self._r,
            self._q * other._r + other._q * self._r,
            d,
            self._r * other._r,
        )

    __radd__ = __add__

    def __neg__(self) -> "QuadReal":
        return QuadReal._canonical(-self._p, -self._q, self._d, self._r)

    def __pos__(self) -> "QuadReal":
        return self

    def __abs__(self) -> "QuadReal":
        return -self if self.sign() < 0 else self

    def __sub__(self, other: object) -> "QuadReal":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "QuadReal":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: object) -> "QuadReal":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        d = self._field(other)
        return QuadReal._canonical(
            self._p * other._p + self._q * other._q * d,
            self._p * other._q + other._p * self._q,
            d,
            self._r * other._r,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "QuadReal":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: object) -> "QuadReal":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "QuadReal":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # -- floors -----------------------------------------------------------

    def floor(self) -> int:
        return _floor_parts(self._p, self._q, self._d, self._r)

    def ceil(self) -> int:
        return -_floor_parts(-self._p, -self._q, self._d, self._r)

    def frac(self) -> "QuadReal":
        """x - floor(x), in [0, 1) for every real x."""
        return self - self.floor()

    __floor__ = floor
    __ceil__ = ceil

    def scaled_floor(self, n: int) -> int:
        """floor(n * x) without building n * x."""
        return _floor_parts(n * self._p, n * self._q, self._d, self._r)

    def scaled_ceil(self, n: int) -> int:
        return -_floor_parts(-n * self._p, -n * self._q, self._d, self._r)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self._p, self._q, self._d, self._r) == (other._p, other._q, other._d, other._r)

    def __hash__(self) -> int:
        if self._q == 0:
            return hash(Fraction(self._p, self._r))
        return hash((self._p, self._q, self._d, self._r))

    def _cmp(self, other: object) -> Optional[int]:
        other = _coerce(other)
        if other is None:
            return None
        return _compare_sign(self, other)

    def __lt__(self, other: object) -> bool:
        s = self._cmp(other)
        return NotImplemented if s is None else s < 0

    def __le__(self, other: object) -> bool:
        s = self._cmp(other)
        return NotImplemented if s is None else s <= 0

    def __gt__(self, other: object) -> bool:
        s = self._cmp(other)
        return NotImplemented if s is None else s > 0

    def __ge__(self, other: object) -> bool:
        s = self._cmp(other)
        return NotImplemented if s is None else s >= 0

    def __bool__(self) -> bool:
        return self._p != 0 or self._q != 0

    # -- rendering --------------------------------------------------------

    def to_decimal(self, digits: int, rounding: str = "nearest") -> str:
        """Render with a fixed number of fractional digits, computed exactly.

        Args:
            digits: Number of digits after the decimal point.
            rounding: "floor", "ceil" or "nearest" (half-up).
        """
        scale = 10 ** digits
        if rounding == "floor":
            m = self.scaled_floor(scale)
        elif rounding == "ceil":
            m = self.scaled_ceil(scale)
        elif rounding == "nearest":
            m = (self * scale + Fraction(1, 2)).floor()
        else:
            raise ValueError(f"unknown rounding mode: {rounding}")
        sign = "-" if m < 0 else ""
        m = abs(m)
        if digits == 0:
            return f"{sign}{m}"
        whole, frac = divmod(m, scale)
        return f"{sign}{whole}.{frac:0{digits}d}"

    def __float__(self) -> float:
        return float(self.to_decimal(20))

    @property
    def spec(self) -> str:
        return f"quad:({self._p},{self._q},{self._d},{self._r})"

    def __repr__(self) -> str:
        return f"QuadReal({self._p}, {self._q}, {self._d}, {self._r})"

    def __str__(self) -> str:
        if self._q == 0:
            return str(self._p) if self._r == 1 else f"{self._p}/{self._r}"
        surd = f"sqrt({self._d})" if abs(self._q) == 1 else f"{abs(self._q)}*sqrt({self._d})"
        if self._p == 0:
            num = surd if self._q > 0 else f"-{surd}"
        else:
            num = f"{self._p} {'+' if self._q > 0 else '-'} {surd}"
        if self._r == 1:
            return num
        return f"({num})/{self._r}"


ZERO = QuadReal._canonical(0, 0, 0, 1)
ONE = QuadReal._canonical(1, 0, 0, 1)


def _coerce(value: object) -> Optional[QuadReal]:
    if isinstance(value, QuadReal):
        return value
    if isinstance(value, int):
        return QuadReal._canonical(value, 0, 0, 1)
    if isinstance(value, Fraction):
        return QuadReal._canonical(value.numerator, 0, 0, value.denominator)
    return None


def _compare_sign(x: QuadReal, y: QuadReal) -> int:
    """Sign of x - y, exact for equal or different radicands."""
    if x._q == 0 or y._q == 0 or x._d == y._d:
        d = x._d or y._d
        return _sign_surd(x._p * y._r - y._p * x._r, x._q * y._r - y._q * x._r, d)
    # x - y has the sign of alpha - beta with alpha = A + B*sqrt(Dx), beta = E*sqrt(Dy)
    a = y._r * x._p - x._r * y._p
    b = y._r * x._q
    e = x._r * y._q
    s_alpha = _sign_surd(a, b, x._d)
    s_beta = _sign(e)
    if s_alpha != s_beta:
        return 1 if s_alpha > s_beta else -1
    # same sign: compare squares, alpha^2 - beta^2 lives in Q(sqrt(Dx))
    t = _sign_surd(a * a + b * b * x._d - e * e * y._d, 2 * a * b, x._d)
    return t if s_alpha > 0 else -t


def quad_normalize(p: int, q: int, d: int, r: int) -> QuadReal:
    """Canonical QuadReal for (p + q*sqrt(d)) / r."""
    return QuadReal(p, q, d, r)


def quad_compare(x: Union[QuadReal, Rational], y: Union[QuadReal, Rational]) -> Ordering:
    """Exact ordering of two real quadratic (or rational) numbers."""
    x_, y_ = _coerce(x), _coerce(y)
    if x_ is None or y_ is None:
        raise TypeError(f"cannot compare {type(x).__name__} with {type(y).__name__}")
    return Ordering.from_sign(_compare_sign(x_, y_))


def golden_value(a: int, b: int) -> QuadReal:
    """k = (a + sqrt(a^2 + 4b)) / 2, the positive root of k^2 = a*k + b."""
    disc = a * a + 4 * b
    if disc < 0:
        raise ValueError(f"a^2 + 4b = {disc} < 0: k is not real")
    return QuadReal(a, 1, disc, 2)


# ---------------------------------------------------------------------------
# KValue
# ---------------------------------------------------------------------------

class KValue(ABC):
    """A real parameter k > 1 with floor/ceil access to n*k and n/k."""

    is_exact: bool = False

    @property
    @abstractmethod
    def spec(self) -> str:
        """The k-spec string this value round-trips through."""

    @abstractmethod
    def floor_scaled(self, n: int) -> int:
        """floor(n * k)."""

    @abstractmethod
    def ceil_scaled(self, n: int) -> int:
        """ceil(n * k)."""

    @abstractmethod
    def floor_div(self, n: int) -> int:
        """floor(n / k)."""

    def frac_scaled(self, n: int) -> QuadReal:
        raise UnsupportedRepresentation(
            f"fractional parts need an exact k, got approximate {self.spec}"
        )

    @property
    def floor_k(self) -> int:
        return self.floor_scaled(1)

    @property
    def ceil_k(self) -> int:
        return self.ceil_scaled(1)

    def __str__(self) -> str:
        return self.spec


class ExactK(KValue):
    """k held exactly as a QuadReal (rational or quadratic irrational)."""

    is_exact = True

    def __init__(self, value: QuadReal, label: Optional[str] = None) -> None:
        if value <= 1:
            raise KSpecError(f"k must be > 1, got {value}")
        self._value = value
        self._inverse = value.inverse()
        self._label = label

    @property
    def value(self) -> QuadReal:
        return self._value

    @property
    def inverse(self) -> QuadReal:
        return self._inverse

    def floor_scaled(self, n: int) -> int:
        return self._value.scaled_floor(n)

    def ceil_scaled(self, n: int) -> int:
        return self._value.scaled_ceil(n)

    def floor_div(self, n: int) -> int:
        return self._inverse.scaled_floor(n)

    def frac_scaled(self, n: int) -> QuadReal:
        scaled = self._value * n
        return scaled - scaled.floor()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactK):
            return NotImplemented
        return self._value == other._value

    def __hash__(self) -> int:
        return hash(self._value)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec!r})"


class RationalK(ExactK):
    """k = num/den."""

    def __init__(self, num: int, den: int = 1, label: Optional[str] = None) -> None:
        if den <= 0:
            raise KSpecError(f"denominator must be positive, got {den}")
        super().__init__(QuadReal(num, 0, 0, den), label)

    @property
    def fraction(self) -> Fraction:
        return self._value.as_fraction()

    @property
    def spec(self) -> str:
        if self._label:
            return self._label
        return str(self._value)


class QuadK(ExactK):
    """k a quadratic irrational."""

    def __init__(self, value: QuadReal, label: Optional[str] = None) -> None:
        if value.is_rational:
            raise KSpecError(f"{value} is rational; use RationalK")
        super().__init__(value, label)

    @property
    def spec(self) -> str:
        return self._label or self._value.spec


def exact_k(value: QuadReal, label: Optional[str] = None) -> ExactK:
    """Wrap an exact value in the matching KValue variant."""
    if value.is_rational:
        frac = value.as_fraction()
        return RationalK(frac.numerator, frac.denominator, label)
    return QuadK(value, label)


# ---------------------------------------------------------------------------
# Approximate k
# ---------------------------------------------------------------------------

_CONSTANTS: dict[str, Callable[[], mpmath.mpf]] = {
    "pi": lambda: mpmath.mp.pi,
    "e": lambda: mpmath.mp.e,
    "phi": lambda: mpmath.mp.phi,
    "euler": lambda: mpmath.mp.euler,
}

_FUNCTIONS: dict[str, Callable[[mpmath.mpf], mpmath.mpf]] = {
    "sqrt": mpmath.sqrt,
    "cbrt": mpmath.cbrt,
    "log": mpmath.log,
    "exp": mpmath.exp,
}

_DECIMAL_RE = re.compile(r"^[+-]?(\d+\.\d*|\.\d+|\d+(\.\d*)?[eE][+-]?\d+)$")
_CALL_RE = re.compile(r"^([a-z]+)\(\s*([^()]+?)\s*\)$")


def _compile_expression(expr: str) -> Callable[[], mpmath.mpf]:
    """Turn a real:<expr> body into a thunk evaluated at the current mp precision."""
    if expr in _CONSTANTS:
        return _CONSTANTS[expr]
    match = _CALL_RE.match(expr)
    if match and match.group(1) in _FUNCTIONS:
        func = _FUNCTIONS[match.group(1)]
        try:
            arg = Fraction(match.group(2))
        except (ValueError, ZeroDivisionError) as exc:
            raise KSpecError(f"bad argument in {expr!r}: {exc}") from exc
        return lambda: func(mpmath.mpf(arg.numerator) / arg.denominator)
    raise KSpecError(
        f"unknown real expression {expr!r}; expected one of "
        f"{sorted(_CONSTANTS)} or {sorted(_FUNCTIONS)}(<rational>)"
    )


class ApproxK(KValue):
    """k known through an exact rational enclosure [lo, hi] at a digit budget.

    A terminating decimal literal is its own exact rational and has a
    zero-width enclosure. A real:<expr> source is evaluated by mpmath with
    ten guard digits and widened by 10**-digits on each side. Floors are only
    returned when both ends agree; otherwise the budget doubles up to
    max_digits and PrecisionExhausted is raised.
    """

    def __init__(
        self,
        source: str,
        digits: Optional[int] = None,
        max_digits: Optional[int] = None,
    ) -> None:
        precision = get_config().precision
        self._source = source.strip()
        self._digits = digits or precision.approx_digits
        self._max_digits = max(max_digits or precision.max_digits, self._digits)
        self._exact: Optional[Fraction] = None
        self._thunk: Optional[Callable[[], mpmath.mpf]] = None
        if _DECIMAL_RE.match(self._source):
            self._exact = Fraction(self._source)
        elif self._source.startswith("real:"):
            self._thunk = _compile_expression(self._source[len("real:"):].strip())
        else:
            raise KSpecError(f"not an approximate k-spec: {source!r}")
        self._cache: dict[int, tuple[Fraction, Fraction]] = {}
        lo, _ = self.enclosure(self._digits)
        if lo <= 1:
            raise KSpecError(f"k must be > 1, got {self._source}")

    @property
    def spec(self) -> str:
        return self._source

    @property
    def digits(self) -> int:
        return self._digits

    def to_fraction(self) -> Fraction:
        """The exact value of a decimal-literal source."""
        if self._exact is None:
            raise UnsupportedRepresentation(f"{self._source} has no exact rational value")
        return self._exact

    def enclosure(self, digits: Optional[int] = None) -> tuple[Fraction, Fraction]:
        """Exact rationals lo <= k <= hi at the given digit budget."""
        digits = digits or self._digits
        if self._exact is not None:
            return self._exact, self._exact
        if digits not in self._cache:
            with mpmath.mp.workdps(digits + 10):
                center = Fraction(mpmath.nstr(self._thunk(), digits + 10, strip_zeros=False))
            radius = Fraction(1, 10 ** digits) * (1 + abs(center))
            self._cache[digits] = (center - radius, center + radius)
        return self._cache[digits]

    def _attempts(self) -> int:
        attempts, digits = 1, self._digits
        while digits < self._max_digits:
            digits *= 2
            attempts += 1
        return attempts

    def _decide(self, n: int, pick: Callable[[int, Fraction, Fraction], tuple[int, int]]) -> int:
        for attempt in Retrying(
            retry=retry_if_exception_type(PrecisionExhausted),
            stop=stop_after_attempt(self._attempts()),
            reraise=True,
        ):
            with attempt:
                digits = min(
                    self._digits << (attempt.retry_state.attempt_number - 1),
                    self._max_digits,
                )
                lo, hi = self.enclosure(digits)
                first, second = pick(n, lo, hi)
                if first != second:
                    logger.debug("%s: n=%d ambiguous at %d digits", self._source, n, digits)
                    raise PrecisionExhausted(
                        f"cannot decide floor for n={n}, k={self._source} "
                        f"at {digits} digits",
                        digits=digits,
                    )
                return first
        raise AssertionError("unreachable")

    def floor_scaled(self, n: int) -> int:
        return self._decide(n, lambda m, lo, hi: (math.floor(m * lo), math.floor(m * hi)))

    def ceil_scaled(self, n: int) -> int:
        return self._decide(n, lambda m, lo, hi: (math.ceil(m * lo), math.ceil(m * hi)))

    def floor_div(self, n: int) -> int:
        return self._decide(n, lambda m, lo, hi: (math.floor(m / hi), math.floor(m / lo)))

    def __repr__(self) -> str:
        return f"ApproxK({self._source!r}, digits={self._digits})"


# ---------------------------------------------------------------------------
# Spec-level operations
# ---------------------------------------------------------------------------

def _check_node(n: int) -> None:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")


def floor_scaled(n: int, k: KValue) -> int:
    """floor(n * k), exact for exact k."""
    _check_node(n)
    return k.floor_scaled(n)


def ceil_scaled(n: int, k: KValue) -> int:
    """ceil(n * k), exact for exact k."""
    _check_node(n)
    return k.ceil_scaled(n)


def floor_div(n: int, k: KValue) -> int:
    """floor(n / k), exact for exact k."""
    _check_node(n)
    return k.floor_div(n)


def frac_scaled(n: int, k: KValue) -> QuadReal:
    """{n * k} as an exact field element in [0, 1)."""
    return k.frac_scaled(n)


# ---------------------------------------------------------------------------
# k-spec parsing
# ---------------------------------------------------------------------------

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")
_QUAD_RE = re.compile(r"^quad:\(([+-]?\d+),([+-]?\d+),(\d+),([+-]?\d+)\)$")
GOLDEN_RE = re.compile(r"^golden:([+-]?\d+),([+-]?\d+)$")


def parse_golden(spec: str) -> Optional[tuple[int, int]]:
    """Return (a, b) if spec is a golden:a,b spec, else None."""
    match = GOLDEN_RE.match(spec.replace(" ", ""))
    if not match:
        return None
    return int(match.group(1)), int(match.group(2))


def parse_k(spec: str) -> KValue:
    """Parse a k-spec string.

    Grammar:
        "3", "p/q"           rational
        "quad:(p,q,D,r)"     (p + q*sqrt(D)) / r
        "golden:a,b"         (a + sqrt(a^2 + 4b)) / 2
        "1.55", "2e0"        decimal literal (approximate variant)
        "real:pi"            mpmath expression (approximate variant)

    Raises:
        KSpecError: If the string matches no form or the value is not > 1.
    """
    text = spec.strip()
    compact = text.replace(" ", "")

    match = _RATIONAL_RE.match(compact)
    if match:
        den = int(match.group(2)) if match.group(2) else 1
        if den == 0:
            raise KSpecError(f"zero denominator in {spec!r}")
        return RationalK(int(match.group(1)), den)

    match = _QUAD_RE.match(compact)
    if match:
        p, q, d, r = (int(g) for g in match.groups())
        if r == 0:
            raise KSpecError(f"zero denominator in {spec!r}")
        return exact_k(QuadReal(p, q, d, r))

    golden = parse_golden(compact)
    if golden is not None:
        a, b = golden
        try:
            value = golden_value(a, b)
        except ValueError as exc:
            raise KSpecError(str(exc)) from exc
        return exact_k(value, label=f"golden:{a},{b}")

    if _DECIMAL_RE.match(compact) or compact.startswith("real:"):
        return ApproxK(text)

    raise KSpecError(f"unrecognized k-spec: {spec!r}")
