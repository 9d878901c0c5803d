"""Gamma0(N) and friends acting on the big picture"""

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, List, Sequence

import numpy as np

from models.Arithmetic import IntMat2, Matrix, PGLClass, as_rat, parse_matrix, primitive_rep
from models.Errors import DomainError, OrbitCapError
from models.Picture import NU1, Vertex, graph_document, interval, nu, sphere, vertex_of
from models.helper.LogHelper import Logger
from models.helper.NumberTheoryHelper import (
    divisors,
    exact_divisors,
    extended_gcd,
    is_exact_divisor,
    require_positive,
)

SNAKE_MODULUS = 24


@dataclass(frozen=True)
class GroupElement:
    """An element of PGL2+(Q), kept as its primitive integral representative"""

    rep: PGLClass

    @classmethod
    def of(cls, m: Matrix) -> "GroupElement":
        return cls(primitive_rep(m))

    @classmethod
    def parse(cls, text: str) -> "GroupElement":
        return cls.of(parse_matrix(text))

    @property
    def matrix(self) -> IntMat2:
        return self.rep.rep

    @property
    def det(self) -> int:
        return self.rep.det

    def inverse(self) -> "GroupElement":
        return GroupElement.of(self.matrix.adj())

    def conjugate_by(self, h: Matrix) -> "GroupElement":
        """h * self * h^-1"""

        h = as_rat(h)
        return GroupElement.of(h @ self.matrix.to_rat() @ h.inverse())

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement.of(self.matrix @ other.matrix)

    def to_text(self) -> str:
        return self.matrix.to_text()

    def __str__(self) -> str:
        return self.to_text()


IDENTITY = GroupElement.of(IntMat2.identity())


@dataclass(frozen=True)
class ThreadGraph:
    N: int
    vertices: tuple

    def to_document(self) -> dict:
        return graph_document(self.vertices, N=self.N, kind="thread")

    def __contains__(self, v: Vertex) -> bool:
        return v in self.vertices

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class SnakeGraph:
    N: int
    vertices: tuple
    envelope: bool = False

    def to_document(self) -> dict:
        return graph_document(self.vertices, N=self.N, kind="snake-envelope" if self.envelope else "snake")

    def __contains__(self, v: Vertex) -> bool:
        return v in self.vertices

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)


def act(g: GroupElement, v: Vertex) -> Vertex:
    """Left action of g on projective classes: v -> v * g^-1, canonicalised"""

    return vertex_of(v.rep @ g.matrix.adj())


def in_gamma0(g: GroupElement, N: int) -> bool:
    require_positive(N)
    m = g.matrix
    return m.det == 1 and m.c % N == 0


def in_gamma0_Ml(g: GroupElement, M: int, l: int) -> bool:
    """Membership in Gamma0(M|l), the conjugate of Gamma0(M/l) by diag(l, 1)"""

    require_positive(M, "M")
    require_positive(l, "l")
    if M % l:
        raise DomainError(f"{l} does not divide {M}")
    return in_gamma0(g.conjugate_by(IntMat2.diag(l, 1)), M // l)


def atkin_lehner_rep(N: int, e: int) -> GroupElement:
    """W_e = [[e a, b], [N c, e d]] with det e; a = c = 1 unless e is 1 or N"""

    require_positive(N)
    if not is_exact_divisor(e, N):
        raise DomainError(f"{e} is not an exact divisor of {N}")
    if e == 1:
        return IDENTITY
    if e == N:
        return GroupElement.of(IntMat2(0, -1, N, 0))

    f = N // e
    d = pow(e, -1, f)
    b = (e * d - 1) // f
    return GroupElement.of(IntMat2(e, b, N, e * d))


def in_gamma0_plus(g: GroupElement, N: int) -> bool:
    require_positive(N)
    for e in exact_divisors(N):
        if in_gamma0(g @ atkin_lehner_rep(N, e).inverse(), N):
            return True
    return False


def in_gamma0_Ml_plus(g: GroupElement, M: int, l: int) -> bool:
    require_positive(M, "M")
    require_positive(l, "l")
    if M % l:
        raise DomainError(f"{l} does not divide {M}")
    return in_gamma0_plus(g.conjugate_by(IntMat2.diag(l, 1)), M // l)


def normalizer_h(N: int) -> int:
    require_positive(N)
    return max(h for h in divisors(SNAKE_MODULUS) if N % (h * h) == 0)


def in_normalizer(g: GroupElement, N: int) -> bool:
    """Membership in Gamma0(N/h | h)+, the normalizer of Gamma0(N)"""

    h = normalizer_h(N)
    return in_gamma0_plus(g.conjugate_by(IntMat2.diag(h, 1)), N // (h * h))


def thread(N: int) -> ThreadGraph:
    require_positive(N)
    return ThreadGraph(N, tuple(sorted(nu(d) for d in divisors(N))))


def _unit_defect(g: int) -> int:
    # gcd of u^-1 - u over the units u mod g
    if g == 1:
        return 1
    return reduce(gcd, (pow(u, -1, g) - u for u in range(1, g) if gcd(u, g) == 1), g)


def gamma0_fixes(v: Vertex, N: int) -> bool:
    """Whether every element of Gamma0(N) fixes v

    v is fixed by gamma exactly when R gamma adj(R) vanishes mod det(R); that
    condition is linear in gamma, and Gamma0(N) spans, modulo det(R), the
    lattice of matrices generated by I, E12, g E21 and e E22.
    """

    require_positive(N)
    R = v.rep
    n = R.det
    if n == 1:
        return True
    g = gcd(N, n)
    e = _unit_defect(g)
    adj = R.adj()
    for X in (IntMat2(0, 1, 0, 0), IntMat2(0, 0, g, 0), IntMat2(0, 0, 0, e)):
        if any(x % n for x in (R @ X @ adj).entries):
            return False
    return True


def _envelope_part(t: Vertex) -> set:
    part = set()
    for d in divisors(SNAKE_MODULUS):
        part.update(sphere(t, d))
    return part


def snake_envelope(N: int, threads_hint: int = 1) -> SnakeGraph:
    """Vertices whose hyperdistance to thread(N) divides 24"""

    centers = thread(N).vertices
    if threads_hint > 1 and len(centers) > 1:
        with ThreadPoolExecutor(max_workers=threads_hint) as executor:
            parts = list(executor.map(_envelope_part, centers))
    else:
        parts = [_envelope_part(t) for t in centers]

    vertices = set().union(*parts)
    Logger.debug(f"snake envelope of level {N}: {len(vertices)} vertices from {len(centers)} thread vertices")
    return SnakeGraph(N, tuple(sorted(vertices)), envelope=True)


def snake(N: int, threads_hint: int = 1) -> SnakeGraph:
    """The classes fixed by Gamma0(N), found inside the snake envelope"""

    vertices = [v for v in snake_envelope(N, threads_hint).vertices if gamma0_fixes(v, N)]
    return SnakeGraph(N, tuple(vertices))


def _gamma0_factor(rng: np.random.Generator, N: int, bound: int) -> IntMat2:
    if bound == 0:
        return IntMat2.identity()

    c = N * int(rng.integers(-bound, bound + 1))
    if c == 0:
        d = int(rng.choice([-1, 1]))
    else:
        while True:
            d = int(rng.integers(-bound * N, bound * N + 1))
            if gcd(c, d) == 1:
                break

    # a d - b c = 1
    x, y, _ = extended_gcd(d, c)
    t = int(rng.integers(-bound, bound + 1))
    return IntMat2(x + t * c, -y + t * d, c, d)


def random_element(N: int, seed: int = None, word_length: int = 1, bound: int = 5) -> GroupElement:
    """A seeded pseudorandom product of word_length elements of Gamma0(N)"""

    require_positive(N)
    require_positive(word_length, "word_length")
    if bound < 0:
        raise DomainError("bound must be non-negative")

    rng = np.random.default_rng(seed)
    word = IntMat2.identity()
    for _ in range(word_length):
        word = word @ _gamma0_factor(rng, N, bound)
    return GroupElement.of(word)


def orbit(gens: Sequence[GroupElement], v: Vertex, cap: int) -> List[Vertex]:
    require_positive(cap, "cap")
    moves = list(gens) + [g.inverse() for g in gens]

    seen = {v}
    queue = deque([v])
    while queue:
        current = queue.popleft()
        for g in moves:
            image = act(g, current)
            if image in seen:
                continue
            seen.add(image)
            if len(seen) > cap:
                raise OrbitCapError(f"orbit exceeds cap of {cap} vertices")
            queue.append(image)

    return sorted(seen)


def invariant_tree(gens: Sequence[GroupElement], cap: int) -> dict:
    """Orbit of nu1 joined by every shortest path between orbit points"""

    points = orbit(gens, NU1, cap)
    vertices = set(points)
    for i, u in enumerate(points):
        for w in points[i + 1:]:
            vertices.update(interval(u, w))
    Logger.debug(f"invariant tree: orbit {len(points)}, tree {len(vertices)} vertices")
    return graph_document(vertices, root=NU1.id, kind="invariant-tree")


def maps_onto(g: GroupElement, vertices: Iterable[Vertex]) -> bool:
    """Whether g permutes the given vertex set"""

    vertices = set(vertices)
    return {act(g, v) for v in vertices} == vertices

