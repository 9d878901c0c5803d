"""The big picture: projective lattice classes, hyperdistance and the p-adic trees"""

from dataclasses import dataclass, field
from typing import Iterable, List, Set

from models.Arithmetic import (
    IntMat2,
    Matrix,
    alpha,
    content,
    hnf_enumerate,
    hnf_reduce,
    lattice_basis,
    parse_matrix,
    primitive_rep,
)
from models.Errors import DomainError, LevelInsufficientError
from models.helper.LogHelper import Logger
from models.helper.NumberTheoryHelper import (
    divisors,
    factorize,
    multiplicity,
    require_positive,
    require_prime,
)


@dataclass(frozen=True)
class Vertex:
    """A node of the big picture, named by its primitive Hermite form"""

    rep: IntMat2

    def __post_init__(self) -> None:
        if hnf_reduce(self.rep) != self.rep or content(self.rep) != 1:
            raise DomainError(f"{self.rep.to_text()} is not a canonical vertex")

    @classmethod
    def parse(cls, text: str) -> "Vertex":
        return vertex_of(parse_matrix(text))

    @property
    def det(self) -> int:
        return self.rep.det

    @property
    def key(self) -> tuple:
        return (self.rep.det, self.rep.d, self.rep.b)

    @property
    def id(self) -> str:
        return self.rep.to_text()

    def __lt__(self, other: "Vertex") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return self.id


@dataclass(frozen=True)
class Geodesic:
    vertices: tuple

    @property
    def steps(self) -> List[int]:
        """Prime hyperdistance of every consecutive pair"""

        return [hyperdistance(u, v) for u, v in zip(self.vertices, self.vertices[1:])]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class FiniteLevelRho:
    """A matrix over the profinite integers, known modulo its level"""

    level: int
    entries: tuple = field(default=(0, 0, 0, 0))

    def __post_init__(self) -> None:
        require_positive(self.level, "level")
        if len(self.entries) != 4:
            raise DomainError("rho needs exactly four entries")
        object.__setattr__(self, "entries", tuple(int(x) % self.level for x in self.entries))

    @classmethod
    def parse(cls, text: str, level: int) -> "FiniteLevelRho":
        m = parse_matrix(text)
        if not isinstance(m, IntMat2):
            raise DomainError("rho entries must be integers")
        return cls(level, m.entries)


def vertex_of(g: Matrix) -> Vertex:
    return Vertex(hnf_reduce(primitive_rep(g).rep))


NU1 = Vertex(IntMat2.identity())


def nu(n: int) -> Vertex:
    """The vertex of the lattice with basis {n w1, w2}"""

    require_positive(n)
    return Vertex(IntMat2.diag(n, 1))


def hyperdistance(u: Vertex, v: Vertex) -> int:
    """delta1(rep_u * rep_v^-1), computed without leaving the integers"""

    c = content(u.rep @ v.rep.adj())
    return u.det * v.det // (c * c)


def p_adic_distance(u: Vertex, v: Vertex, p: int) -> int:
    require_prime(p)
    return multiplicity(p, hyperdistance(u, v))


def hecke_matrices(p: int) -> List[IntMat2]:
    """The p + 1 index-p sublattice bases of the standard lattice"""

    require_prime(p)
    return [IntMat2.diag(p, 1)] + [IntMat2(1, b, 0, p) for b in range(p)]


def neighbors(v: Vertex, p: int) -> List[Vertex]:
    return sorted({vertex_of(m @ v.rep) for m in hecke_matrices(p)})


def sphere(center: Vertex, n: int) -> List[Vertex]:
    """Vertices at hyperdistance exactly n, one per primitive Hermite form of det n"""

    require_positive(n)
    result = sorted({vertex_of(h @ center.rep) for h in hnf_enumerate(n, primitive_only=True)})
    Logger.debug(f"sphere({center}, {n}): {len(result)} vertices")
    return result


def ball(center: Vertex, radius: int) -> List[Vertex]:
    require_positive(radius, "D")
    result: Set[Vertex] = set()
    for n in range(1, radius + 1):
        result.update(sphere(center, n))
    return sorted(result)


def _relative(u: Vertex, v: Vertex) -> IntMat2:
    # v = h * u as lattices, h primitive with det = hyperdistance(u, v)
    return primitive_rep(v.rep.to_rat() @ u.rep.to_rat().inverse()).rep


def _between(h: IntMat2, d: int, u: Vertex) -> Vertex:
    rows = [(h.a, h.b), (h.c, h.d), (d, 0), (0, d)]
    return vertex_of(lattice_basis(rows) @ u.rep)


def divisor_chain(n: int) -> List[int]:
    """1 = d0 | d1 | ... | n, one prime at a time in ascending prime order"""

    chain = [1]
    for p, e in factorize(n):
        for _ in range(e):
            chain.append(chain[-1] * p)
    return chain


def geodesic(u: Vertex, v: Vertex) -> Geodesic:
    h = _relative(u, v)
    return Geodesic(tuple(_between(h, d, u) for d in divisor_chain(h.det)))


def interval(u: Vertex, v: Vertex) -> List[Vertex]:
    """Every vertex lying on some shortest path from u to v"""

    h = _relative(u, v)
    return sorted({_between(h, d, u) for d in divisors(h.det)})


def induced_edges(vertices: Iterable[Vertex]) -> List[tuple]:
    """Pairs (u, v, p), u before v, at prime hyperdistance p"""

    ordered = sorted(set(vertices))
    edges = []
    for i, u in enumerate(ordered):
        for v in ordered[i + 1:]:
            distance = hyperdistance(u, v)
            factors = factorize(distance)
            if len(factors) == 1 and factors[0][1] == 1:
                edges.append((u, v, distance))
    return edges


def qlattice_compatible(rho: FiniteLevelRho, g: Matrix) -> bool:
    """Whether g * rho stays integral, decided at the level of rho"""

    needed = alpha(g).numerator
    if rho.level % needed:
        raise LevelInsufficientError(f"level insufficient: level {rho.level} cannot decide divisibility by {needed}")
    return all(x % needed == 0 for x in rho.entries)


def graph_document(vertices: Iterable[Vertex], **extra) -> dict:
    """The bp/1 graph shape shared by exports, threads, snakes and invariant trees"""

    ordered = sorted(set(vertices))
    document = {"schema": "bp/1"}
    document.update(extra)
    document["vertices"] = [{"id": v.id, "det": v.det} for v in ordered]
    document["edges"] = [{"u": u.id, "v": v.id, "p": p} for u, v, p in induced_edges(ordered)]
    return document
