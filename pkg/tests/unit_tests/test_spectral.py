import sys
from fractions import Fraction
from math import log, pi

import mpmath
import numpy as np
import pytest

sys.path.append('.')
# pylint: disable=import-error
from models.Arithmetic import IntMat2, RatMat2
from models.Congruence import GroupElement, atkin_lehner_rep, random_element, snake, thread
from models.Errors import DomainError
from models.Picture import NU1, Vertex, ball, nu, sphere
from models.Spectral import (
    DeterminantObservable,
    DoubleCoset,
    Kernel,
    LatticeCoset,
    StateVector,
    apply_hamiltonian,
    classes,
    coset_of,
    convolve,
    gibbs_expectation,
    group_unitary,
    hamiltonian,
    hecke_apply,
    partition_function,
    phase_operator,
    primitivize,
    project,
    represent,
    time_evolve,
)
from models.enums.ProjectionKind import ProjectionKind
from models.enums.SpaceMode import SpaceMode
from models.helper.LogHelper import Logger
from models.helper.NumberTheoryHelper import exact_divisors

Logger.configure()

IDENTITY_COSET = coset_of(IntMat2.identity())


def _kernel():
    return Kernel({
        DoubleCoset.of(IntMat2.diag(2, 1)): 1 + 1j,
        DoubleCoset.of(RatMat2(Fraction(1, 2), 0, 0, 3)): 0.5,
        DoubleCoset.of(IntMat2.diag(3, 3)): -0.25j,
    })


def _state():
    return StateVector.uniform([c for n in (1, 2, 3) for c in classes(n, SpaceMode.COSET)], SpaceMode.COSET)


def test_lattice_coset_needs_hermite_form():
    with pytest.raises(DomainError):
        LatticeCoset(IntMat2(1, 0, 1, 1))


def test_coset_and_vertex_maps():
    c = coset_of(IntMat2(2, 0, 0, 4))
    assert c.id == "2,0;0,4"
    assert primitivize(c) == Vertex.parse("1,0;0,2")


def test_double_coset_invariant():
    key = DoubleCoset.of(RatMat2(Fraction(1, 3), 0, 0, 2))
    assert (key.r1, key.r2) == (Fraction(1, 3), Fraction(2))
    assert DoubleCoset.of(IntMat2(2, 1, 7, 4)) == DoubleCoset.of(IntMat2.identity())
    assert len(DoubleCoset.of(IntMat2.diag(2, 1)).right_cosets()) == 3


def test_state_vector_arithmetic():
    xi = StateVector.delta(NU1)
    eta = StateVector.delta(nu(2)).scale(2j)
    total = xi + eta
    assert total.mode == SpaceMode.VERTEX
    assert total[nu(2)] == 2j
    assert total.inner(total) == 5
    assert (total - eta).is_close(xi)
    assert len(total - total) == 0


def test_state_vector_modes_do_not_mix():
    with pytest.raises(DomainError):
        StateVector.delta(NU1) + StateVector.delta(IDENTITY_COSET)


def test_state_vector_document():
    document = StateVector.delta(nu(2)).scale(1j).to_document()
    assert document == {"schema": "bp/1", "mode": "vertex", "entries": [{"id": "2,0;0,1", "re": 0.0, "im": 1.0}]}


def test_represent_delta_kernel():
    result = represent(Kernel.delta(IntMat2.diag(2, 1)), StateVector.delta(IDENTITY_COSET))
    assert [c.id for c in result.support] == ["2,0;0,1", "1,0;0,2", "1,1;0,2"]
    assert all(result[c] == 1 for c in result.support)


def test_represent_needs_coset_mode():
    with pytest.raises(DomainError):
        represent(_kernel(), StateVector.delta(NU1))


@pytest.mark.parametrize('t', [0.5, 1.0, pi])
def test_time_evolution_is_conjugation(t):
    xi = _state()
    for f in (_kernel(), convolve(_kernel(), Kernel.delta(IntMat2.diag(2, 1), 2))):
        lhs = phase_operator(represent(f, phase_operator(xi, -t)), t)
        rhs = represent(time_evolve(f, t), xi)
        assert lhs.is_close(rhs, 1e-12)


def test_convolution_is_composition():
    f1, f2 = _kernel(), Kernel.delta(IntMat2.diag(3, 1), 1 - 1j)
    xi = _state()
    assert represent(convolve(f1, f2), xi).is_close(represent(f1, represent(f2, xi)), 1e-12)


def test_time_evolution_at_zero_is_identity():
    f = _kernel()
    assert time_evolve(f, 0.0).values == f.values


@pytest.mark.parametrize('N', [2, 3, 6, 12])
def test_hamiltonian_on_sphere_projection(N):
    xi = StateVector.uniform(ball(NU1, 12))
    projected = project(xi, ProjectionKind.SPHERE, N)
    assert len(projected) == len(sphere(NU1, N))
    assert apply_hamiltonian(projected).is_close(projected.scale(log(N)), 1e-12)


def test_hamiltonian_primitivizes_cosets_in_vertex_mode():
    c = coset_of(IntMat2(2, 0, 0, 4))
    assert hamiltonian(SpaceMode.COSET, c) == pytest.approx(log(8))
    assert hamiltonian(SpaceMode.VERTEX, c) == pytest.approx(log(2))


def test_hecke_operators_multiply():
    delta = StateVector.delta(NU1)
    assert hecke_apply(hecke_apply(delta, 3), 2).is_close(hecke_apply(delta, 6))
    assert len(hecke_apply(delta, 2)) == 3


def test_hecke_needs_vertex_mode():
    with pytest.raises(DomainError):
        hecke_apply(StateVector.delta(IDENTITY_COSET), 2)


def test_thread_and_snake_projections():
    xi = StateVector.uniform(ball(NU1, 6))
    assert project(xi, ProjectionKind.THREAD, 6).support == list(thread(6).vertices)
    assert project(xi, ProjectionKind.SNAKE, 1).support == [NU1]


def test_group_unitary_is_a_homomorphism():
    g, h = atkin_lehner_rep(6, 2), GroupElement.parse("1,1;0,1")
    xi = StateVector.uniform(ball(NU1, 4))
    assert group_unitary(g, group_unitary(h, xi)).is_close(group_unitary(g @ h, xi))
    assert group_unitary(g, xi).norm() == pytest.approx(xi.norm())


@pytest.mark.parametrize('beta', [3, 4])
def test_partition_function_coset_mode(beta):
    expected = float(mpmath.zeta(beta) * mpmath.zeta(beta - 1))
    assert partition_function(beta, 10000, SpaceMode.COSET) == pytest.approx(expected, rel=1e-3)


@pytest.mark.parametrize('beta', [3, 4])
def test_partition_function_vertex_mode(beta):
    expected = float(mpmath.zeta(beta) * mpmath.zeta(beta - 1) / mpmath.zeta(2 * beta))
    assert partition_function(beta, 10000, SpaceMode.VERTEX) == pytest.approx(expected, rel=1e-3)


def test_partition_function_divergent_range():
    with pytest.raises(DomainError) as exc_info:
        partition_function(2, 100)
    assert str(exc_info.value).startswith("divergent range")


def test_partition_function_matches_enumeration():
    beta, X = 3.5, 12
    for mode in SpaceMode:
        direct = sum(len(classes(n, mode)) * n ** -beta for n in range(1, X + 1))
        assert partition_function(beta, X, mode) == pytest.approx(direct, rel=1e-12)


def test_gibbs_expectation_of_determinant():
    expected = float(mpmath.zeta(2) / mpmath.zeta(4))
    assert gibbs_expectation(DeterminantObservable(), 4, 10000) == pytest.approx(expected, rel=1e-3)


def test_gibbs_expectation_by_enumeration():
    fast = gibbs_expectation(DeterminantObservable(), 3.5, 30, SpaceMode.VERTEX)
    slow = gibbs_expectation(lambda x: float(x.det), 3.5, 30, SpaceMode.VERTEX)
    assert fast == pytest.approx(slow, rel=1e-12)


def _random_state(points, seed):
    rng = np.random.default_rng(seed)
    return StateVector(SpaceMode.VERTEX, {v: complex(rng.normal(), rng.normal()) for v in points})


@pytest.mark.parametrize('N', [2, 3, 4, 6])
def test_hecke_operator_is_symmetric(N):
    points = ball(NU1, 4)
    for seed in range(3):
        xi, eta = _random_state(points, seed), _random_state(points, seed + 10)
        assert hecke_apply(xi, N).inner(eta) == pytest.approx(xi.inner(hecke_apply(eta, N)), rel=1e-9)


@pytest.mark.parametrize('kind', list(ProjectionKind))
@pytest.mark.parametrize('N', [1, 4, 6])
def test_projections_are_idempotent(kind, N):
    xi = _random_state(ball(NU1, 8), N)
    once = project(xi, kind, N)
    assert project(once, kind, N).is_close(once)
    assert (xi - once).inner(once) == 0


@pytest.mark.parametrize('N', range(1, 13))
def test_unitaries_of_gamma0_commute_with_projections(N):
    points = set(ball(NU1, 6)) | set(thread(N).vertices) | set(snake(N).vertices)
    xi = _random_state(sorted(points), N)
    for i in range(10):
        g = random_element(N, seed=500 + 10 * N + i, word_length=2)
        for kind in (ProjectionKind.THREAD, ProjectionKind.SNAKE):
            lhs = group_unitary(g, project(xi, kind, N))
            rhs = project(group_unitary(g, xi), kind, N)
            assert lhs.is_close(rhs)


@pytest.mark.parametrize('N', [6, 10, 12])
def test_atkin_lehner_unitaries_preserve_thread_subspace(N):
    xi = _random_state(ball(NU1, 8), N)
    inside = project(xi, ProjectionKind.THREAD, N)
    for e in exact_divisors(N):
        image = group_unitary(atkin_lehner_rep(N, e), inside)
        assert project(image, ProjectionKind.THREAD, N).is_close(image)
        assert image.norm() == pytest.approx(inside.norm())


@pytest.mark.parametrize('mode', list(SpaceMode))
def test_partition_function_grows_with_cutoff(mode):
    values = [partition_function(3, X, mode) for X in (1, 2, 5, 10, 50, 200)]
    assert values[0] == pytest.approx(1)
    assert all(a < b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize('mode', list(SpaceMode))
def test_gibbs_expectation_of_constant_is_one(mode):
    assert gibbs_expectation(lambda x: 1.0, 3.5, 30, mode) == pytest.approx(1, rel=1e-12)


@pytest.mark.parametrize('mode', list(SpaceMode))
def test_gibbs_expectation_ground_state_limit(mode):
    values = [gibbs_expectation(DeterminantObservable(), beta, 1000, mode) for beta in (4, 8, 16, 60)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[-1] == pytest.approx(1, abs=1e-12)
