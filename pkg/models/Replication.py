"""Replicate powers, generalized Hecke operators and McKay-Thompson ingestion"""

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import mpmath
import pandas as pd

from models.Errors import (
    DomainError,
    IncompleteFamilyError,
    NotReplicableError,
    SeriesFormatError,
    TruncationError,
)
from models.QSeries import QSeries, evaluate_mp, faber
from models.helper.LogHelper import Logger
from models.helper.NumberTheoryHelper import divisors, require_positive

CSV_COLUMNS = ["class", "n", "value"]


@dataclass
class ReplicateFamily:
    """f = f^(1) together with the replicates f^(a) computed so far"""

    base: QSeries
    members: Dict[int, QSeries] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.base.is_normalized_principal():
            raise DomainError("replication needs a series of the form q^-1 + 0 + a1 q + ...")
        self.members[1] = self.base

    def member(self, a: int) -> QSeries:
        if a not in self.members:
            raise IncompleteFamilyError(f"replicate f^({a}) has not been computed")
        return self.members[a]


def required_precision(k: int, T: int) -> int:
    """Base precision needed for f^(k) through q^T"""

    return max(k * k * T, k * T + k - 1)


def max_replicate_precision(base: QSeries, k: int) -> int:
    """Largest T for which f^(k) through q^T is determined by the base"""

    if base.precision is None:
        raise TruncationError("replicates of an exact polynomial need an explicit precision")
    return min(base.precision // (k * k), (base.precision - k + 1) // k)


def _hecke_sum(family: ReplicateFamily, k: int, m: int, skip_k: bool = False) -> Fraction:
    # sum over ad = k, a | m, of d * c^(a)_{dm/a}
    total = Fraction(0)
    for a in divisors(k):
        if skip_k and a == k:
            continue
        if m % a:
            continue
        d = k // a
        total += d * family.member(a)[d * m // a]
    return total


def replicate(family: ReplicateFamily, k: int, T: int) -> QSeries:
    """f^(k) through q^T from the coefficient form of the replication identity"""

    require_positive(k, "k")
    require_positive(T, "T")
    existing = family.members.get(k)
    if existing is not None and (existing.precision is None or existing.precision >= T):
        return existing.truncate(T) if existing.precision is not None else existing
    if k == 1:
        raise TruncationError(f"the base is only known through q^{family.base.precision}")

    needed = required_precision(k, T)
    if family.base.precision is not None and family.base.precision < needed:
        raise TruncationError(f"f^({k}) through q^{T} needs the base through q^{needed}, have q^{family.base.precision}")

    for a in divisors(k)[1:-1]:
        replicate(family, a, (k // a) ** 2 * T)

    f = family.base.truncate(k * T + k - 1)
    faber_image = faber(f, k)(f)

    # every exponent m not divisible by k must cancel, or the replicate has fractional powers
    for m in range(1, k * T + 1):
        if m % k == 0:
            continue
        residual = faber_image[m] - _hecke_sum(family, k, m, skip_k=True)
        if residual:
            raise NotReplicableError(k, f"coefficient {residual} at fractional exponent q^({m}/{k})")

    coefficients = {-1: Fraction(1)}
    for j in range(1, T + 1):
        value = faber_image[k * j]
        for a in divisors(k)[:-1]:
            d = k // a
            value -= d * family.member(a)[d * d * j]
        coefficients[j] = value

    result = QSeries(coefficients, T)
    family.members[k] = result
    Logger.debug(f"replicate f^({k}) through q^{T}")
    return result


def generalized_hecke(family: ReplicateFamily, k: int, T: int) -> QSeries:
    """sum over ad = k, 0 <= b < d of f^(a)((a z + b) / d), through q^T"""

    require_positive(k, "k")
    missing = [a for a in divisors(k) if a not in family.members]
    if missing:
        raise IncompleteFamilyError(f"generalized Hecke operator {k} needs the replicates {missing}")
    return QSeries({m: _hecke_sum(family, k, m) for m in range(-k, T + 1)}, T)


@dataclass
class ReplicationResult:
    k: int
    ok: bool
    terms: int = 0
    failure: Optional[str] = None
    reason: Optional[str] = None
    integral: bool = True
    residual: Optional[float] = None
    series: Optional[QSeries] = None

    def to_document(self) -> dict:
        document = {"k": self.k, "ok": self.ok, "terms": self.terms, "integral": self.integral}
        if self.failure:
            document["failure"] = self.failure
            document["reason"] = self.reason
        if self.residual is not None:
            document["residual"] = self.residual
        if self.series is not None:
            document["coeffs"] = {str(n): str(c) for n, c in self.series.items()}
        return document


@dataclass
class ReplicabilityReport:
    results: List[ReplicationResult]

    @property
    def replicable(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> List[ReplicationResult]:
        return [r for r in self.results if not r.ok]

    def to_document(self) -> dict:
        return {"schema": "bp/1", "replicable": self.replicable, "results": [r.to_document() for r in self.results]}


def functional_equation_residual(family: ReplicateFamily, k: int, z, dps: int = 50) -> float:
    """Relative gap between the two sides of the replication identity at z

    f^(k)(kz) + sum over ad = k, a != k, 0 <= b < d of f^(a)((az + b)/d) = Q_k(f(z))
    """

    with mpmath.workdps(dps):
        z = mpmath.mpc(z)
        # Q_k only sees the coefficients below q^k
        q_k = faber(family.base.truncate(k), k)
        f_z, _ = evaluate_mp(family.base, z)
        rhs = mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * f_z**i for i, c in enumerate(q_k.coefficients))

        terms = [evaluate_mp(family.member(k), k * z)[0]]
        for a in divisors(k)[:-1]:
            d = k // a
            for b in range(d):
                terms.append(evaluate_mp(family.member(a), (a * z + b) / d)[0])
        lhs = mpmath.fsum(terms)
        return float(abs(lhs - rhs) / abs(rhs))


def is_replicable(f: QSeries, k_max: int, T: int, sample_points: Sequence[complex] = (), tolerance: float = 1e-8) -> ReplicabilityReport:
    """Tries f^(k) for every k <= k_max; failures are report entries, not exceptions"""

    require_positive(k_max, "k_max")
    if f.precision is None:
        # an exact polynomial is known to every order
        f = f.truncate(required_precision(k_max, T))
    family = ReplicateFamily(f)
    results = []
    for k in range(1, k_max + 1):
        if k == 1:
            results.append(ReplicationResult(1, True, f.precision, series=f.truncate(min(f.precision, T))))
            continue

        terms = min(T, max_replicate_precision(f, k))
        if terms < 1:
            results.append(ReplicationResult(k, False, failure="truncation", reason=f"base precision q^{f.precision} is too short"))
            continue

        try:
            series = replicate(family, k, terms)
        except NotReplicableError as err:
            results.append(ReplicationResult(k, False, terms, failure="fractional-exponent", reason=err.reason))
            continue
        except TruncationError as err:
            results.append(ReplicationResult(k, False, terms, failure="truncation", reason=str(err)))
            continue

        integral = all(c.denominator == 1 for c in series.coefficients.values())
        result = ReplicationResult(k, True, terms, integral=integral, series=series)
        if sample_points:
            result.residual = max(functional_equation_residual(family, k, z) for z in sample_points)
            if result.residual > tolerance:
                result.ok = False
                result.failure = "numeric"
                result.reason = f"functional equation residual {result.residual:.3e} exceeds {tolerance:g}"
        if not integral:
            Logger.warning(f"replicate f^({k}) has non-integral coefficients")
        results.append(result)

    return ReplicabilityReport(results)


def _parse_value(text: str, row: int) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise SeriesFormatError(f"malformed value {text!r}", row)


def load_mckay_thompson(path: str) -> Dict[str, QSeries]:
    """Reads "class,n,value" rows into normalized principal series, one per class"""

    if not os.path.isfile(path):
        raise SeriesFormatError(f"cannot open series file: {path}")
    try:
        df = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError:
        return {}

    if list(df.columns) != CSV_COLUMNS:
        raise SeriesFormatError(f"header must be {','.join(CSV_COLUMNS)}", 1)

    rows: Dict[str, Dict[int, tuple]] = {}
    for index, record in enumerate(df.itertuples(index=False), start=2):
        label, n_text, value_text = (str(x).strip() for x in record)
        if not label:
            raise SeriesFormatError("missing class label", index)
        try:
            n = int(n_text)
        except ValueError:
            raise SeriesFormatError(f"malformed exponent {n_text!r}", index)
        if n < -1:
            raise SeriesFormatError(f"exponent {n} is below -1", index)

        value = _parse_value(value_text, index)
        if n == 0 and value != 0:
            raise SeriesFormatError(f"class {label} has nonzero constant term {value}", index)
        if n == -1 and value != 1:
            raise SeriesFormatError(f"class {label} must have leading coefficient 1 at q^-1", index)

        coefficients = rows.setdefault(label, {})
        if n in coefficients:
            raise SeriesFormatError(f"duplicate coefficient q^{n} for class {label}", index)
        coefficients[n] = (value, index)

    result = {}
    for label, coefficients in rows.items():
        if -1 not in coefficients:
            first_row = min(row for _, row in coefficients.values())
            raise SeriesFormatError(f"class {label} has no q^-1 term", first_row)
        precision = max(coefficients)
        result[label] = QSeries({n: value for n, (value, _) in coefficients.items()}, precision)
        Logger.debug(f"loaded class {label} through q^{precision}")
    return result


def mckay_thompson_frame(series: Dict[str, QSeries]) -> pd.DataFrame:
    records = []
    for label, f in series.items():
        for n in range(-1, f.precision + 1):
            if n == 0:
                continue
            records.append({"class": label, "n": n, "value": str(f[n])})
    return pd.DataFrame(records, columns=CSV_COLUMNS)


def write_mckay_thompson(series: Dict[str, QSeries], path: str) -> None:
    mckay_thompson_frame(series).to_csv(path, index=False)
