"""Exact truncated Laurent series in q with rational coefficients"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, List, Optional, Union

import mpmath

from models.Errors import DomainError, TruncationError
from models.helper.LogHelper import Logger
from models.helper.NumberTheoryHelper import require_positive, sigma

Scalar = Union[int, Fraction]

HAUPTMODUL_PRIMES = (2, 3, 5, 7, 13)
LABEL_PATTERN = re.compile(r"^(\d+)([AB])$")
MIN_DPS = 15


def _min_known(*values: Optional[int]) -> Optional[int]:
    known = [v for v in values if v is not None]
    return min(known) if known else None


class QSeries:
    """sum of c_n q^n, every coefficient with n <= precision known exactly

    A precision of None marks an exact Laurent polynomial.
    """

    def __init__(self, coefficients: Dict[int, Scalar] = None, precision: Optional[int] = None) -> None:
        self.precision = precision
        self.coefficients = {
            int(n): Fraction(c)
            for n, c in sorted((coefficients or {}).items())
            if c != 0 and (precision is None or n <= precision)
        }

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> "QSeries":
        return cls({n: c})

    @classmethod
    def constant(cls, c: Scalar) -> "QSeries":
        return cls({0: c})

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def valuation(self) -> Optional[int]:
        if self.coefficients:
            return min(self.coefficients)
        return None if self.precision is None else self.precision + 1

    @property
    def relative_precision(self) -> Optional[int]:
        if self.precision is None:
            return None
        return self.precision - self.valuation

    @property
    def n0(self) -> int:
        return self.valuation

    def __getitem__(self, n: int) -> Fraction:
        if self.precision is not None and n > self.precision:
            raise TruncationError(f"coefficient of q^{n} is beyond the precision q^{self.precision}")
        return self.coefficients.get(n, Fraction(0))

    def get(self, n: int, default=None):
        if self.precision is not None and n > self.precision:
            return default
        return self.coefficients.get(n, Fraction(0))

    def items(self):
        return self.coefficients.items()

    def is_normalized_principal(self) -> bool:
        return self.valuation == -1 and self.coefficients.get(-1) == 1 and 0 not in self.coefficients

    def truncate(self, precision: int) -> "QSeries":
        if self.precision is not None and precision > self.precision:
            raise TruncationError(f"cannot extend precision q^{self.precision} to q^{precision}")
        return QSeries(self.coefficients, precision)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.precision == other.precision and self.coefficients == other.coefficients

    def agrees_with(self, other: "QSeries", through: int) -> bool:
        return all(self[n] == other[n] for n in range(min(self.valuation, other.valuation, through), through + 1))

    def __repr__(self) -> str:
        head = ", ".join(f"{n}: {c}" for n, c in list(self.coefficients.items())[:6])
        return f"QSeries({{{head}{', ...' if len(self.coefficients) > 6 else ''}}}, precision={self.precision})"

    # arithmetic

    @staticmethod
    def _lift(other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries.constant(other)
        raise TypeError(f"cannot combine QSeries with {type(other).__name__}")

    def __add__(self, other) -> "QSeries":
        other = self._lift(other)
        precision = _min_known(self.precision, other.precision)
        total = dict(self.coefficients)
        for n, c in other.coefficients.items():
            total[n] = total.get(n, 0) + c
        return QSeries(total, precision)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries({n: -c for n, c in self.coefficients.items()}, self.precision)

    def __sub__(self, other) -> "QSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "QSeries":
        return self._lift(other) - self

    def scale(self, k: Scalar) -> "QSeries":
        return QSeries({n: k * c for n, c in self.coefficients.items()}, self.precision)

    def _scaled_integers(self, top: int) -> tuple:
        # (denominator, [D * c_n for n = valuation .. top])
        denominator = lcm(*(c.denominator for c in self.coefficients.values()))
        v = self.valuation
        return denominator, [(self.coefficients.get(n, 0) * denominator).numerator for n in range(v, top + 1)]

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._lift(other)

        if (self.is_zero and self.precision is None) or (other.is_zero and other.precision is None):
            return QSeries()

        v = self.valuation + other.valuation
        relative = _min_known(self.relative_precision, other.relative_precision)
        precision = None if relative is None else v + relative
        if relative is not None and relative < 0:
            return QSeries({}, precision)

        top_f = max(self.coefficients) if precision is None else min(max(self.coefficients), precision - other.valuation)
        top_g = max(other.coefficients) if precision is None else min(max(other.coefficients), precision - self.valuation)
        df, f = self._scaled_integers(top_f)
        dg, g = other._scaled_integers(top_g)

        limit = len(f) + len(g) - 1 if precision is None else min(len(f) + len(g) - 1, precision - v + 1)
        product = [0] * limit
        for i, a in enumerate(f):
            if a == 0:
                continue
            for j in range(min(len(g), limit - i)):
                product[i + j] += a * g[j]

        denominator = df * dg
        return QSeries({v + n: Fraction(c, denominator) for n, c in enumerate(product) if c}, precision)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        other = self._lift(other)
        if self.is_zero and self.precision is None:
            return QSeries()
        if other.is_zero:
            raise DomainError("division by a series with no known nonzero coefficient")

        v = self.valuation - other.valuation
        relative = _min_known(self.relative_precision, other.relative_precision)
        if relative is None:
            raise TruncationError("dividing exact series needs an explicit precision; truncate one side first")
        precision = v + relative
        if relative < 0:
            return QSeries({}, precision)

        # f = h g with f, g scaled to integer coefficients F, G
        df, f = self._scaled_integers(self.valuation + relative)
        dg, g = other._scaled_integers(min(max(other.coefficients), other.valuation + relative))
        lead = g[0]
        quotient: List = []
        for n in range(relative + 1):
            acc = f[n] if n < len(f) else 0
            for j in range(1, min(n, len(g) - 1) + 1):
                acc -= g[j] * quotient[n - j]
            # an integer quotient whenever the leading coefficient is a unit
            quotient.append(acc * lead if abs(lead) == 1 else Fraction(acc) / lead)

        factor = Fraction(dg, df)
        return QSeries({v + n: factor * c for n, c in enumerate(quotient) if c}, precision)

    def __rtruediv__(self, other) -> "QSeries":
        return self._lift(other) / self

    def __pow__(self, power: int) -> "QSeries":
        if not isinstance(power, int):
            raise DomainError(f"only integer powers of a series are defined, got {power!r}")
        if power < 0:
            return (1 / self) ** (-power)

        result = QSeries.constant(1)
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def compose(self, coefficients) -> "QSeries":
        """P(self) for the polynomial with the given coefficients (index = power), by Horner"""

        coefficients = [Fraction(c) for c in coefficients]
        if not coefficients:
            return QSeries()
        result = QSeries.constant(coefficients[-1])
        for c in reversed(coefficients[:-1]):
            result = result * self + c
        return result

    def substitute(self, m: int) -> "QSeries":
        """f(q^m)"""

        require_positive(m, "m")
        precision = None if self.precision is None else m * self.precision + m - 1
        return QSeries({m * n: c for n, c in self.coefficients.items()}, precision)

    def to_document(self) -> dict:
        return {
            "schema": "bp/1",
            "n0": self.valuation,
            "precision": self.precision,
            "coeffs": {str(n): str(c) for n, c in self.coefficients.items()},
        }


@dataclass(frozen=True)
class FaberPolynomial:
    """Monic Q_k with Q_k(f) = q^-k + O(q)"""

    coefficients: tuple

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, f: QSeries) -> QSeries:
        return f.compose(self.coefficients)

    def to_text(self) -> str:
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            monomial = "" if power == 0 else "x" if power == 1 else f"x^{power}"
            magnitude = abs(c)
            if monomial and magnitude == 1:
                text = monomial
            else:
                text = f"{magnitude}{'*' + monomial if monomial else ''}"
            sign = "-" if c < 0 else "+"
            terms.append(f"{sign} {text}" if terms else f"{'-' if c < 0 else ''}{text}")
        return " ".join(terms) if terms else "0"


def faber(f: QSeries, k: int) -> FaberPolynomial:
    require_positive(k, "k")
    if f.valuation != -1 or f.coefficients.get(-1) != 1:
        raise DomainError("Faber polynomials need a series of the form q^-1 + ...")
    if f.precision is not None and f.precision < k:
        raise TruncationError(f"Faber polynomial of degree {k} needs the series through q^{k}, have q^{f.precision}")

    powers = [QSeries.constant(1)]
    for _ in range(k):
        powers.append(powers[-1] * f)

    coefficients = [Fraction(0)] * k + [Fraction(1)]
    current = powers[k]
    for j in range(k - 1, -1, -1):
        c = current[-j]
        if c:
            coefficients[j] -= c
            current = current - powers[j].scale(c)
    return FaberPolynomial(tuple(coefficients))


# classical constructors


@lru_cache(maxsize=64)
def E4(T: int) -> QSeries:
    require_positive(T, "T")
    return QSeries({0: 1, **{n: 240 * sigma(n, 3) for n in range(1, T + 1)}}, T)


@lru_cache(maxsize=64)
def E6(T: int) -> QSeries:
    require_positive(T, "T")
    return QSeries({0: 1, **{n: -504 * sigma(n, 5) for n in range(1, T + 1)}}, T)


@lru_cache(maxsize=64)
def euler_product(T: int) -> QSeries:
    """prod (1 - q^n) through q^T from the pentagonal number theorem"""

    if T < 0:
        raise TruncationError("negative precision")
    coefficients = {}
    k = 0
    while True:
        found = False
        for m in (k, -k) if k else (0,):
            exponent = m * (3 * m - 1) // 2
            if exponent <= T:
                coefficients[exponent] = -1 if m % 2 else 1
                found = True
        if not found:
            break
        k += 1
    return QSeries(coefficients, T)


@lru_cache(maxsize=64)
def delta_series(T: int) -> QSeries:
    """Delta = q prod (1 - q^n)^24"""

    require_positive(T, "T")
    return QSeries.monomial(1) * euler_product(T - 1) ** 24


@lru_cache(maxsize=64)
def j_series(T: int) -> QSeries:
    require_positive(T, "T")
    Logger.debug(f"expanding j through q^{T}")
    return (E4(T + 1) ** 3 / delta_series(T + 2)).truncate(T)


@lru_cache(maxsize=64)
def J_series(T: int) -> QSeries:
    return j_series(T) - 744


def eta_quotient(exponents: Dict[int, int], T: int) -> QSeries:
    """prod over m of eta(m tau)^(r_m), through q^T"""

    weight = sum(m * r for m, r in exponents.items())
    if weight % 24:
        raise DomainError(f"eta quotient has fractional q-order {weight}/24")
    shift = weight // 24
    needed = T - shift
    if needed < 0:
        raise TruncationError(f"precision q^{T} is below the leading term q^{shift}")

    product = QSeries.constant(1)
    for m, r in sorted(exponents.items()):
        require_positive(m, "m")
        product = product * euler_product(needed // m).substitute(m) ** r
    return (QSeries.monomial(shift) * product).truncate(T)


@lru_cache(maxsize=64)
def hauptmodul(label: str, T: int) -> QSeries:
    """Normalized principal modulus of class 1A, pA or pB, p in 2, 3, 5, 7, 13"""

    if label == "1A":
        return J_series(T)

    match = LABEL_PATTERN.match(label)
    if not match or int(match.group(1)) not in HAUPTMODUL_PRIMES:
        raise DomainError(f"no built-in series for class {label}")

    p, letter = int(match.group(1)), match.group(2)
    r = 24 // (p - 1)
    s = eta_quotient({1: r, p: -r}, T)
    series = s + r
    if letter == "A":
        series = series + p ** (r // 2) / s
    return series.truncate(T)


SERIES_KINDS = {
    "j": j_series,
    "J": J_series,
    "E4": E4,
    "E6": E6,
    "delta": delta_series,
}


def named_series(kind: str, T: int) -> QSeries:
    if kind in SERIES_KINDS:
        return SERIES_KINDS[kind](T)
    return hauptmodul(kind, T)


@dataclass(frozen=True)
class Evaluation:
    value: complex
    tail_bound: float


def evaluate_mp(f: QSeries, z, T: int = None):
    """Partial sum at q = e^(2 pi i z) as an mpmath number, and the tail estimate"""

    z = mpmath.mpc(z)
    if z.imag <= 0:
        raise DomainError("evaluation needs Im(z) > 0")
    top = f.precision if T is None else _min_known(T, f.precision)
    if top is None:
        top = max(f.coefficients) if f.coefficients else 0

    q = mpmath.exp(2j * mpmath.pi * z)
    terms = [mpmath.mpf(c.numerator) / c.denominator * q**n for n, c in f.items() if n <= top]
    total = mpmath.fsum(terms) if terms else mpmath.mpc(0)
    r = abs(q)
    last = f.coefficients.get(top, Fraction(0))
    tail = abs(mpmath.mpf(last.numerator) / last.denominator) * r**top / (1 - r)
    return total, tail


def evaluate(f: QSeries, z: complex, T: int = None, dps: int = 50) -> Evaluation:
    if not isinstance(dps, int) or dps < MIN_DPS:
        raise DomainError(f"working precision must be at least {MIN_DPS} digits, got {dps!r}")
    with mpmath.workdps(dps):
        total, tail = evaluate_mp(f, z, T)
        return Evaluation(complex(total), float(tail))
