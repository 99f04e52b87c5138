import threading

import numpy as np
import pytest

from qaw.density import f_h_density
from qaw.errors import NoConvergence
from qaw.qcore import q_pochhammer
from qaw.qpoly import q_hermite
from qaw.quad import gauss_nodes, integrate_theta


def test_gauss_nodes_small_orders():
    x, w = gauss_nodes(1)
    assert x.tolist() == [0.0] and w.tolist() == pytest.approx([2.0])
    x, w = gauss_nodes(2)
    assert x == pytest.approx([-1 / np.sqrt(3), 1 / np.sqrt(3)], abs=1e-15)
    assert w == pytest.approx([1.0, 1.0], abs=1e-15)


def test_gauss_nodes_degree_exactness_example():
    x, w = gauss_nodes(5)
    assert np.sum(w * x**8) == pytest.approx(2 / 9, abs=1e-14)


@pytest.mark.parametrize("order", [1, 2, 3, 5, 8, 16, 32, 64])
def test_gauss_nodes_match_numpy(order):
    x, w = gauss_nodes(order)
    xr, wr = np.polynomial.legendre.leggauss(order)
    np.testing.assert_allclose(x, xr, atol=1e-14)
    np.testing.assert_allclose(w, wr, atol=1e-14)


@pytest.mark.parametrize("order", [1, 2, 4, 7, 12, 32])
def test_polynomial_exactness(order):
    x, w = gauss_nodes(order)
    for deg in range(2 * order):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        assert np.sum(w * x**deg) == pytest.approx(exact, abs=1e-13)


def test_nodes_are_cached_and_read_only():
    a = gauss_nodes(24)
    assert gauss_nodes(24)[0] is a[0]
    with pytest.raises(ValueError):
        a[0][0] = 1.0


def test_concurrent_node_requests_agree():
    out = []
    threads = [threading.Thread(target=lambda: out.append(gauss_nodes(48))) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(o[0] is out[0][0] for o in out)


def test_semicircle():
    r = integrate_theta(lambda x: 2 * np.sqrt(1 - x * x) / np.pi)
    assert r.value == pytest.approx(1.0, abs=1e-12)


def test_f_h_normalises():
    assert integrate_theta(lambda x: f_h_density(x, 0.5)).value == pytest.approx(1.0, abs=1e-9)


def test_orthogonality_example():
    r = integrate_theta(lambda x: q_hermite(2, x, 0.5) ** 2 * f_h_density(x, 0.5))
    assert r.value == pytest.approx(0.375, abs=1e-9)


def test_report_fields():
    r = integrate_theta(lambda x: np.exp(x) / np.sqrt(1 - x * x + 1e-3))
    nodes = [n for n, _ in r.refinement_history]
    assert all(b > a for a, b in zip(nodes, nodes[1:]))
    assert r.nodes_used == nodes[-1]
    assert r.err_estimate == abs(r.refinement_history[-1][1] - r.refinement_history[-2][1])
    assert r.err_estimate < 1e-10
    assert float(r) == r.value


def test_no_convergence_raises():
    with pytest.raises(NoConvergence):
        integrate_theta(lambda x: np.sign(x - 0.123456) * np.abs(x - 0.123456) ** -0.9, tol=1e-14, max_nodes=2**10)


def test_independent_of_closed_forms():
    # theta-space quadrature of h_n h_m f_h against (q)_n delta_nm, using
    # numpy's nodes on a fixed fine grid as the second opinion
    xr, wr = np.polynomial.legendre.leggauss(200)
    theta = (xr + 1) * np.pi / 2
    for q in (-0.5, 0.3):
        for n in range(5):
            vals = q_hermite(n, np.cos(theta), q) ** 2 * f_h_density(np.cos(theta), q) * np.sin(theta)
            assert np.pi / 2 * np.sum(wr * vals) == pytest.approx(q_pochhammer(q, n, q), rel=1e-12)


def _refinement_monotone(f, tol):
    # successive differences shrink over the last three steps, down to a
    # floor set by rounding in the panel sums of |f|
    report = integrate_theta(f, tol=tol)
    vals = [v for _, v in report.refinement_history]
    d = np.abs(np.diff(vals))[-3:]
    floor = 64 * np.finfo(float).eps * integrate_theta(lambda x: np.abs(f(x)), tol=1e-6).value
    return all(b < a or b <= floor for a, b in zip(d, d[1:]))


@pytest.mark.parametrize("q", [-0.5, 0.0, 0.3, 0.5, 0.8])
def test_refinement_monotone_on_acceptance_integrands(q):
    from qaw.density import DensitySpec, density_value, g_n

    rng = np.random.default_rng(1)
    for _ in range(10):
        spec = DensitySpec.of(tuple(rng.uniform(-0.7, 0.7, 4)), q)
        assert _refinement_monotone(lambda x: density_value(spec, x, normalized=False), 1e-13)
        for n in (3, 10):
            assert _refinement_monotone(lambda x: q_hermite(n, x, q) * density_value(spec, x), 1e-12)
    p5 = tuple(rng.uniform(-0.7, 0.7, 5))
    assert _refinement_monotone(lambda x: g_n(x, p5, q), 1e-14)
