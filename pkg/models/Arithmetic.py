"""Exact 2x2 matrix arithmetic, scalar normalisation and Hermite forms"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterator, Union

from models.Errors import DomainError, FormatError
from models.helper.NumberTheoryHelper import divisors

Rat = Fraction

ENTRY_PATTERN = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


@dataclass(frozen=True)
class IntMat2:
    """2x2 integer matrix [[a, b], [c, d]], rows are lattice basis vectors"""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def identity(cls) -> "IntMat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def diag(cls, x: int, y: int) -> "IntMat2":
        return cls(x, 0, 0, y)

    @property
    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def adj(self) -> "IntMat2":
        return IntMat2(self.d, -self.b, -self.c, self.a)

    def scale(self, k: int) -> "IntMat2":
        return IntMat2(k * self.a, k * self.b, k * self.c, k * self.d)

    def divide(self, k: int) -> "IntMat2":
        if any(x % k for x in self.entries):
            raise DomainError(f"{self.to_text()} is not divisible by {k}")
        return IntMat2(self.a // k, self.b // k, self.c // k, self.d // k)

    def __matmul__(self, other: "IntMat2") -> "IntMat2":
        if isinstance(other, RatMat2):
            return self.to_rat() @ other
        return IntMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "IntMat2":
        return self.scale(-1)

    def to_rat(self) -> "RatMat2":
        return RatMat2(*(Fraction(x) for x in self.entries))

    def to_text(self) -> str:
        return format_matrix(self)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class RatMat2:
    """2x2 rational matrix, an element of GL2+(Q) wherever det > 0 is required"""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "RatMat2":
        det = self.det
        if det == 0:
            raise DomainError("singular matrix has no inverse")
        return RatMat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def scale(self, k) -> "RatMat2":
        k = Fraction(k)
        return RatMat2(k * self.a, k * self.b, k * self.c, k * self.d)

    def __matmul__(self, other) -> "RatMat2":
        if isinstance(other, IntMat2):
            other = other.to_rat()
        return RatMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __rmatmul__(self, other) -> "RatMat2":
        return other.to_rat() @ self

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries)

    def to_int(self) -> IntMat2:
        if not self.is_integral():
            raise DomainError(f"{format_matrix(self)} is not integral")
        return IntMat2(*(x.numerator for x in self.entries))

    def to_text(self) -> str:
        return format_matrix(self)

    def __str__(self) -> str:
        return self.to_text()


Matrix = Union[IntMat2, RatMat2]


@dataclass(frozen=True)
class PGLClass:
    """Class of a matrix in PGL2+(Q), stored as its primitive integral representative"""

    rep: IntMat2

    @property
    def det(self) -> int:
        return self.rep.det

    def to_text(self) -> str:
        return self.rep.to_text()


def as_rat(m: Matrix) -> RatMat2:
    return m if isinstance(m, RatMat2) else m.to_rat()


def content(m: IntMat2) -> int:
    """gcd of the absolute values of the entries"""

    if m.entries == (0, 0, 0, 0):
        raise DomainError("zero matrix has no content")
    return reduce(gcd, (abs(x) for x in m.entries))


def is_primitive(m: IntMat2) -> bool:
    return content(m) == 1


def alpha(g: Matrix) -> Fraction:
    """Smallest positive rational alpha_g with alpha_g * g integral"""

    g = as_rat(g)
    if g.entries == (0, 0, 0, 0):
        raise DomainError("zero matrix has no content")
    denominator = lcm(*(x.denominator for x in g.entries))
    return Fraction(denominator, content(g.scale(denominator).to_int()))


def _sign_normalised(m: IntMat2) -> IntMat2:
    # first nonzero entry of the first column is positive
    lead = m.a if m.a != 0 else m.c
    return -m if lead < 0 else m


def primitive_rep(g: Matrix) -> PGLClass:
    """The section s: the primitive integral representative of the class of g"""

    g = as_rat(g)
    if g.det <= 0:
        raise DomainError(f"{format_matrix(g)} is not in GL2+(Q)")
    return PGLClass(_sign_normalised(g.scale(alpha(g)).to_int()))


def delta1(g: Matrix) -> int:
    """det(alpha_g * g), invariant under Q* scaling and SL2(Z) on either side"""

    return primitive_rep(g).det


def hnf_reduce(m: IntMat2) -> IntMat2:
    """Row-style Hermite form [[a, b], [0, d]], a, d >= 1, 0 <= b < d, of SL2(Z)*m"""

    det = m.det
    if det <= 0:
        raise DomainError(f"{m.to_text()} is not in M2+(Z)")

    a, b, c, d = m.entries
    swaps = 0
    while c != 0:
        q = a // c
        a, b, c, d = c, d, a - q * c, b - q * d
        swaps += 1

    # each swap has determinant -1, so fix the sign of the second row
    if swaps % 2:
        d = -d
    if a < 0:
        a, b, d = -a, -b, -d
    return IntMat2(a, b % d, 0, d)


def is_hnf(m: IntMat2) -> bool:
    return m.c == 0 and m.a >= 1 and m.d >= 1 and 0 <= m.b < m.d


def hnf_enumerate(n: int, primitive_only: bool = False) -> Iterator[IntMat2]:
    """All Hermite forms of determinant n, ordered by d then b"""

    for d in divisors(n):
        a = n // d
        for b in range(d):
            if primitive_only and gcd(gcd(a, b), d) != 1:
                continue
            yield IntMat2(a, b, 0, d)


def lattice_basis(rows) -> IntMat2:
    """Hermite basis of the rank-2 lattice spanned by integer row vectors"""

    rows = [(int(x), int(y)) for x, y in rows]
    pivot = None
    rest = []
    for row in rows:
        if pivot is None:
            pivot = row
            continue
        # Euclid on the first column between pivot and row
        p, r = pivot, row
        while r[0] != 0:
            q = p[0] // r[0]
            p, r = r, (p[0] - q * r[0], p[1] - q * r[1])
        pivot = p
        rest.append(r[1])

    if pivot is None or pivot[0] == 0:
        raise DomainError("rows do not span a rank 2 lattice")

    d = reduce(gcd, (abs(y) for y in rest), 0)
    if d == 0:
        raise DomainError("rows do not span a rank 2 lattice")

    a, b = pivot
    if a < 0:
        a, b = -a, -b
    return IntMat2(a, b % d, 0, d)


def _parse_entry(text: str) -> Fraction:
    if not ENTRY_PATTERN.match(text):
        raise FormatError(f"malformed matrix entry: {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise FormatError(f"zero denominator in matrix entry: {text!r}")
    except ValueError:
        raise FormatError(f"malformed matrix entry: {text!r}")


def parse_matrix(text: str) -> Matrix:
    """Parses "a,b;c,d" with optional "p/q" entries; integral input gives IntMat2"""

    rows = text.strip().split(";")
    if len(rows) != 2:
        raise FormatError(f"malformed matrix {text!r}: expected 'a,b;c,d'")
    entries = []
    for row in rows:
        cells = row.split(",")
        if len(cells) != 2:
            raise FormatError(f"malformed matrix {text!r}: expected 'a,b;c,d'")
        entries += [_parse_entry(cell) for cell in cells]

    m = RatMat2(*entries)
    return m.to_int() if m.is_integral() else m


def format_matrix(m: Matrix) -> str:
    a, b, c, d = (str(x) for x in m.entries)
    return f"{a},{b};{c},{d}"
