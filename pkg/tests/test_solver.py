import dataclasses
import math

import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from gaplab import numerics, solver
from gaplab.conf import conf
from gaplab.errors import DomainError
from gaplab.kernels import ModelParams, weight
from gaplab.solver import Grid, solve_model


def test_grid():
    g = Grid(-1.0, 1.0, 3)
    assert g.h == 0.5
    assert g.nodes.tolist() == [-0.5, 0.0, 0.5]
    assert g.closed_nodes.tolist() == [-1.0, -0.5, 0.0, 0.5, 1.0]
    fine = g.refined()
    assert fine.m == 7
    assert fine.h == 0.25
    assert fine.nodes[fine.center] == 0.0
    with pytest.raises(DomainError):
        Grid(1.0, 1.0, 5)
    with pytest.raises(DomainError):
        Grid(0.0, 1.0, 2)


def test_sturm_count():
    rng = np.random.default_rng(1)
    diag, off = rng.normal(size=12), rng.normal(size=11)
    values = eigh_tridiagonal(diag, off, eigvals_only=True)
    for shift in (-10.0, values[3] + 1e-9, (values[5] + values[6]) / 2, 10.0):
        assert solver.sturm_count(diag, off, shift) == \
            int(np.sum(values < shift))


def test_eig_tridiag_smallest():
    m = 50
    h = 1 / (m + 1)
    diag = np.full(m, 2 / h ** 2)
    off = np.full(m - 1, -1 / h ** 2)
    values, vectors = solver.eig_tridiag_smallest(diag, off, 2)
    exact = [4 / h ** 2 * math.sin(j * math.pi * h / 2) ** 2 for j in (1, 2)]
    assert values == pytest.approx(exact, rel=1e-12)
    assert vectors[:, 0] @ vectors[:, 1] == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DomainError):
        solver.eig_tridiag_smallest(diag, off, 0)


def test_build_normal_form_matrix_checks_span():
    p = ModelParams(3, 1.0, 1.0)
    diag, off = solver.build_normal_form_matrix(p, Grid.spanning(p, 9))
    assert diag.size == 9 and off.size == 8
    with pytest.raises(DomainError):
        solver.build_normal_form_matrix(p, Grid(-1.0, 1.0, 9))


@pytest.mark.parametrize('n, D', [(1, 3.0), (2, 1.0), (5, 2.0), (9, 1.0)])
def test_flat_eigenvalues(n, D):
    report = solve_model(ModelParams(n, 0.0, D))
    assert report.lambda1 == pytest.approx(math.pi ** 2 / D ** 2, rel=1e-9)
    assert report.lambda2 == pytest.approx(4 * math.pi ** 2 / D ** 2,
                                           rel=1e-9)
    assert report.extrapolated
    assert report.method == 'tridiag'


@pytest.mark.parametrize('K', [-1.0, 1.0])
def test_n3_eigenvalues(K):
    D = 1.0
    report = solve_model(ModelParams(3, K, D))
    for i in (1, 2):
        expected = i * i * math.pi ** 2 / D ** 2 - K
        assert report.pair(i).eigenvalue == pytest.approx(expected, rel=1e-9)


def test_eigenfunctions_oriented_and_normalized(curved_report):
    report = curved_report
    p = report.params
    grid = report.grid
    phi1, phi2 = report.pair(1).samples, report.pair(2).samples
    c = grid.center
    assert np.all(phi1 > 0)
    assert np.all(phi2[c + 1:] > 0)
    assert phi1 == pytest.approx(phi1[::-1], abs=1e-6)
    assert phi2 == pytest.approx(-phi2[::-1], abs=1e-6)
    w = weight(p.n, p.K, grid.closed_nodes)
    for phi in (phi1, phi2):
        norm2 = numerics.full_integral(numerics.with_boundary(phi) ** 2 * w,
                                       grid.h)
        assert norm2 == pytest.approx(1.0, rel=1e-12)
    inner = numerics.full_integral(numerics.with_boundary(phi1 * phi2) * w,
                                   grid.h)
    assert inner == pytest.approx(0.0, abs=1e-10)
    assert report.pair(1).parity == 'even'
    assert report.pair(2).parity == 'odd'
    assert not phi1.flags.writeable


def test_n3_eigenfunction_closed_form():
    p = ModelParams(3, 1.0, 1.0)
    report = solve_model(p)
    s = report.grid.nodes
    exact = math.sqrt(2 / p.D) * np.cos(math.pi * s / p.D) / np.cos(s)
    assert report.pair(1).samples == pytest.approx(exact, abs=1e-6)


def test_shooting_matches_tridiag():
    p = ModelParams(4, 1.0, 1.2)
    tridiag = solve_model(p)
    shooting = solve_model(p, method='shooting')
    assert not shooting.extrapolated
    assert shooting.lambda1 == pytest.approx(tridiag.lambda1, rel=1e-8)
    assert shooting.lambda2 == pytest.approx(tridiag.lambda2, rel=1e-8)


def test_both_methods_record_agreement():
    report = solve_model(ModelParams(2, -1.0, 1.0), method='both')
    assert report.agreement is not None
    assert report.agreement < 1e-6
    assert report.method == 'both'


def test_residual_is_small(flat_report):
    assert flat_report.residual < 1e-3


def test_accessors(flat_report):
    r = flat_report
    assert r.gap == r.lambda2 - r.lambda1
    assert r.normalized_gap == pytest.approx(3.0, rel=1e-9)


def test_solve_errors():
    p = ModelParams(2, 1.0, 1.0)
    with pytest.raises(DomainError):
        solve_model(p, method='magic')
    with pytest.raises(DomainError):
        solve_model(p, tol=-1.0)
    with pytest.raises(DomainError):
        solve_model(p, tol=0.0)
    with pytest.raises(DomainError):
        solve_model(p, grid_m=0)
    with pytest.raises(DomainError):
        solver.shoot(p, 1.0, 'even', rtol=0.0)


def test_singular_flag(caplog):
    p = ModelParams(2, 1.0, math.pi - 1e-3)
    report = solve_model(p, grid_m=400)
    assert report.singular
    assert 'conjugate diameter' in caplog.text
    assert report.lambda1 < report.lambda2


def test_lambda2_shift():
    p = ModelParams(2, 0.0, 1.0)
    base = solve_model(p)
    conf.merge({'solver': {'lambda2-shift': 1e-3}})
    shifted = solve_model(p)
    assert shifted.lambda1 == base.lambda1
    assert shifted.lambda2 == pytest.approx(base.lambda2 + 1e-3, abs=1e-12)


def test_reports_are_cached():
    p = ModelParams(5, 1.0, 0.7)
    assert solve_model(p) is solve_model(dataclasses.replace(p))
    solver.clear_cache()
    assert solve_model(p).lambda1 > 0


def test_fine_grid_is_certified():
    # the bisection error grows with the matrix norm, about 4/h²
    report = solve_model(ModelParams(1, 0.0, 1.0), grid_m=50000)
    assert report.grid.m == 100001
    assert report.lambda1 == pytest.approx(math.pi ** 2, abs=1e-3)
    assert report.lambda2 == pytest.approx(4 * math.pi ** 2, abs=4e-3)
