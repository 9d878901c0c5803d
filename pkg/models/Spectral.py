"""Operators of the GL2-system at an invertible fiber: H, sigma_t, Hecke, projections, Gibbs sums"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm, log
from typing import Callable, Dict, Iterable, List, Union

import numpy as np

from models.Arithmetic import IntMat2, Matrix, as_rat, content, hnf_enumerate, hnf_reduce
from models.Congruence import GroupElement, act, snake, thread
from models.Errors import DomainError
from models.Picture import NU1, Vertex, sphere, vertex_of
from models.enums.ProjectionKind import ProjectionKind
from models.enums.SpaceMode import SpaceMode
from models.helper.LogHelper import Logger
from models.helper.NumberTheoryHelper import psi_sieve, require_positive, sigma_sieve


@dataclass(frozen=True)
class LatticeCoset:
    """A point of SL2(Z)\\M2+(Z): a commensurable Q-lattice at the invertible fiber"""

    rep: IntMat2

    def __post_init__(self) -> None:
        if hnf_reduce(self.rep) != self.rep:
            raise DomainError(f"{self.rep.to_text()} is not in Hermite form")

    @property
    def det(self) -> int:
        return self.rep.det

    @property
    def key(self) -> tuple:
        return (self.rep.det, self.rep.d, self.rep.b)

    @property
    def id(self) -> str:
        return self.rep.to_text()

    def __lt__(self, other: "LatticeCoset") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return self.id


Point = Union[Vertex, LatticeCoset]


def coset_of(m: IntMat2) -> LatticeCoset:
    return LatticeCoset(hnf_reduce(m))


def primitivize(c: LatticeCoset) -> Vertex:
    return vertex_of(c.rep)


@dataclass
class StateVector:
    """A finitely supported vector of l2(V) (vertex mode) or l2(Y) (coset mode)"""

    mode: SpaceMode
    amplitudes: Dict[Point, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.amplitudes = {x: complex(a) for x, a in self.amplitudes.items() if a != 0}

    @classmethod
    def delta(cls, x: Point) -> "StateVector":
        mode = SpaceMode.VERTEX if isinstance(x, Vertex) else SpaceMode.COSET
        return cls(mode, {x: 1})

    @classmethod
    def uniform(cls, points: Iterable[Point], mode: SpaceMode = SpaceMode.VERTEX) -> "StateVector":
        return cls(mode, {x: 1 for x in points})

    @property
    def support(self) -> List[Point]:
        return sorted(self.amplitudes)

    def __getitem__(self, x: Point) -> complex:
        return self.amplitudes.get(x, 0j)

    def __len__(self) -> int:
        return len(self.amplitudes)

    def __add__(self, other: "StateVector") -> "StateVector":
        _same_mode(self, other)
        total = dict(self.amplitudes)
        for x, a in other.amplitudes.items():
            total[x] = total.get(x, 0j) + a
        return StateVector(self.mode, total)

    def __sub__(self, other: "StateVector") -> "StateVector":
        return self + other.scale(-1)

    def scale(self, k: complex) -> "StateVector":
        return StateVector(self.mode, {x: k * a for x, a in self.amplitudes.items()})

    def inner(self, other: "StateVector") -> complex:
        """<self, other>, conjugate-linear in self"""

        _same_mode(self, other)
        return sum((self[x].conjugate() * a for x, a in sorted(other.amplitudes.items())), 0j)

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(a) ** 2 for _, a in sorted(self.amplitudes.items()))))

    def is_close(self, other: "StateVector", tolerance: float = 1e-12) -> bool:
        return (self - other).norm() <= tolerance

    def to_document(self) -> dict:
        return {
            "schema": "bp/1",
            "mode": self.mode.to_text,
            "entries": [{"id": x.id, "re": self[x].real, "im": self[x].imag} for x in self.support],
        }


def _same_mode(xi: StateVector, eta: StateVector) -> None:
    if xi.mode != eta.mode:
        raise DomainError(f"cannot combine {xi.mode.to_text} and {eta.mode.to_text} vectors")


def _require_mode(xi: StateVector, mode: SpaceMode) -> None:
    if xi.mode != mode:
        raise DomainError(f"operator needs a {mode.to_text} mode vector, got {xi.mode.to_text}")


@dataclass(frozen=True)
class DoubleCoset:
    """SL2(Z) g SL2(Z) for g in GL2+(Q), named by its elementary divisors r1 | r2"""

    r1: Fraction
    r2: Fraction

    @classmethod
    def of(cls, g: Matrix) -> "DoubleCoset":
        g = as_rat(g)
        if g.det <= 0:
            raise DomainError(f"{g.to_text()} is not in GL2+(Q)")
        scale = lcm(*(x.denominator for x in g.entries))
        r1 = Fraction(content(g.scale(scale).to_int()), scale)
        return cls(r1, g.det / r1)

    @property
    def det(self) -> Fraction:
        return self.r1 * self.r2

    def right_cosets(self) -> List:
        return _right_cosets(self)

    def to_text(self) -> str:
        return f"{self.r1}|{self.r2}"


@lru_cache(maxsize=1024)
def _right_cosets(key: DoubleCoset) -> List:
    # SL2(Z) x, x = r1 * h with h primitive of det r2 / r1
    ratio = key.r2 / key.r1
    return [h.to_rat().scale(key.r1) for h in hnf_enumerate(ratio.numerator, primitive_only=True)]


def _phase(det: Fraction, t: float) -> complex:
    return complex(np.exp(1j * t * log(det)))


@dataclass(frozen=True)
class Kernel:
    """A finitely supported function on SL2(Z)\\GL2+(Q)/SL2(Z)"""

    values: Dict[DoubleCoset, complex]

    @classmethod
    def delta(cls, g: Matrix, value: complex = 1) -> "Kernel":
        return cls({DoubleCoset.of(g): complex(value)})

    def value(self, y, at: IntMat2 = None) -> complex:
        return self.values.get(DoubleCoset.of(y), 0j)

    def candidates(self, h: IntMat2) -> set:
        result = set()
        for key in self.values:
            for x in key.right_cosets():
                g = x @ h
                if g.is_integral():
                    result.add(coset_of(g.to_int()))
        return result

    def evolve(self, t: float) -> "Kernel":
        return Kernel({key: a * _phase(key.det, t) for key, a in self.values.items()})


@dataclass(frozen=True)
class ProductKernel:
    """f1 * f2; at the invertible fiber its value depends on the point it acts at"""

    left: Union[Kernel, "ProductKernel"]
    right: Kernel

    def value(self, y, at: IntMat2) -> complex:
        y = as_rat(y)
        total = 0j
        for key, b in sorted(self.right.values.items(), key=lambda item: (item[0].r1, item[0].r2)):
            for s in key.right_cosets():
                sh = s @ at
                if not sh.is_integral():
                    continue
                a = self.left.value(y @ s.inverse(), at=sh.to_int())
                if a:
                    total += a * b
        return total

    def candidates(self, h: IntMat2) -> set:
        result = set()
        for key in self.right.values:
            for s in key.right_cosets():
                sh = s @ h
                if sh.is_integral():
                    result.update(self.left.candidates(sh.to_int()))
        return result

    def evolve(self, t: float) -> "ProductKernel":
        return ProductKernel(self.left.evolve(t), self.right.evolve(t))


AnyKernel = Union[Kernel, ProductKernel]


def convolve(f1: AnyKernel, f2: Kernel) -> ProductKernel:
    return ProductKernel(f1, f2)


def represent(f: AnyKernel, xi: StateVector) -> StateVector:
    """(pi(f) xi)(g) = sum over h of f(g h^-1) xi(h), on coset-mode vectors"""

    _require_mode(xi, SpaceMode.COSET)
    out: Dict[LatticeCoset, complex] = {}
    for h in xi.support:
        h_inverse = h.rep.to_rat().inverse()
        for g in sorted(f.candidates(h.rep)):
            value = f.value(g.rep.to_rat() @ h_inverse, at=h.rep)
            if value:
                out[g] = out.get(g, 0j) + value * xi[h]
    return StateVector(SpaceMode.COSET, out)


def time_evolve(f: AnyKernel, t: float) -> AnyKernel:
    return f.evolve(t)


def hamiltonian(mode: SpaceMode, x: Point) -> float:
    if mode == SpaceMode.VERTEX and isinstance(x, LatticeCoset):
        x = primitivize(x)
    # delta(nu1, v) is det(rep_v) for a primitive rep
    return log(x.det)


def apply_hamiltonian(xi: StateVector) -> StateVector:
    return StateVector(xi.mode, {x: hamiltonian(xi.mode, x) * a for x, a in xi.amplitudes.items()})


def phase_operator(xi: StateVector, t: float) -> StateVector:
    """e^{itH} xi"""

    return StateVector(xi.mode, {x: a * _phase(Fraction(x.det), t) for x, a in xi.amplitudes.items()})


def hecke_apply(xi: StateVector, N: int) -> StateVector:
    """(T_N xi)(v) = sum of xi(w) over w at hyperdistance N from v"""

    _require_mode(xi, SpaceMode.VERTEX)
    require_positive(N)
    out: Dict[Vertex, complex] = {}
    for w in xi.support:
        for v in sphere(w, N):
            out[v] = out.get(v, 0j) + xi[w]
    return StateVector(SpaceMode.VERTEX, out)


def projection_support(kind: ProjectionKind, N: int, threads_hint: int = 1) -> Callable[[Vertex], bool]:
    require_positive(N)
    if kind == ProjectionKind.SPHERE:
        return lambda v: v.det == N
    if kind == ProjectionKind.THREAD:
        members = set(thread(N).vertices)
    else:
        members = set(snake(N, threads_hint).vertices)
    return lambda v: v in members


def project(xi: StateVector, kind: ProjectionKind, N: int, threads_hint: int = 1) -> StateVector:
    _require_mode(xi, SpaceMode.VERTEX)
    keep = projection_support(kind, N, threads_hint)
    return StateVector(SpaceMode.VERTEX, {v: a for v, a in xi.amplitudes.items() if keep(v)})


def group_unitary(g: GroupElement, xi: StateVector) -> StateVector:
    """U_g delta_v = delta_{g v}"""

    _require_mode(xi, SpaceMode.VERTEX)
    return StateVector(SpaceMode.VERTEX, {act(g, v): a for v, a in xi.amplitudes.items()})


def _class_counts(X: int, mode: SpaceMode) -> np.ndarray:
    # number of classes with det (coset) or hyperdistance to nu1 (vertex) equal to n
    return sigma_sieve(X) if mode == SpaceMode.COSET else psi_sieve(X)


def _check_range(beta: float, X: int) -> None:
    if beta <= 2:
        raise DomainError(f"divergent range: beta must exceed 2, got {beta}")
    require_positive(X, "X")


def partition_function(beta: float, X: int, mode: SpaceMode = SpaceMode.COSET) -> float:
    """Tr e^{-beta H} restricted to classes of det at most X"""

    _check_range(beta, X)
    n = np.arange(1, X + 1, dtype=np.float64)
    weights = _class_counts(X, mode)[1:] * n ** (-beta)
    value = float(np.sum(weights))
    Logger.debug(f"partition function beta={beta} X={X} mode={mode.to_text}: {value}")
    return value


class DeterminantObservable:
    """obs(x) = det x, summed per determinant without enumerating classes"""

    def __call__(self, x: Point) -> float:
        return float(x.det)

    def by_determinant(self, n: np.ndarray) -> np.ndarray:
        return n


def classes(n: int, mode: SpaceMode) -> List[Point]:
    if mode == SpaceMode.COSET:
        return [LatticeCoset(h) for h in hnf_enumerate(n)]
    return sphere(NU1, n)


def gibbs_expectation(obs: Callable[[Point], float], beta: float, X: int, mode: SpaceMode = SpaceMode.COSET) -> float:
    _check_range(beta, X)
    n = np.arange(1, X + 1, dtype=np.float64)
    boltzmann = n ** (-beta)

    if hasattr(obs, "by_determinant"):
        weights = _class_counts(X, mode)[1:] * obs.by_determinant(n) * boltzmann
    else:
        weights = np.array([sum(obs(x) for x in classes(k, mode)) for k in range(1, X + 1)], dtype=np.float64) * boltzmann

    return float(np.sum(weights)) / partition_function(beta, X, mode)
