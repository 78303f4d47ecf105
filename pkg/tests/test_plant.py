import numpy as np
import pytest

from mdrc.errors import InvalidPlant
from mdrc.experiments import example1_plant, pmdc_plant
from mdrc.matlin import matrix_rank
from mdrc.plant import PlantSpec, extend, is_observable, observability_matrix, validate_plant


def test_example1_validates():
    report = validate_plant(example1_plant())
    assert report.ok
    assert report.controllable and report.assumption1 and report.nonzero_channels
    assert report.mismatched


def test_matched_case_still_valid():
    p = example1_plant()
    matched = PlantSpec(p.A, p.b_u, p.b_u, p.C_m, p.c_o)
    report = validate_plant(matched)
    assert not report.mismatched
    assert report.ok


def test_uncontrollable_detected():
    p = PlantSpec(np.eye(2), [[1.0], [0.0]], [[0.0], [1.0]], np.eye(2), [[0.0, 1.0]])
    report = validate_plant(p)
    assert not report.controllable
    assert not report.ok
    with pytest.raises(InvalidPlant):
        extend(p)


def test_assumption1_violation_named():
    p = example1_plant()
    bad = PlantSpec(p.A, p.b_u, p.b_d, p.C_m, [[0.0, 1.0]])
    report = validate_plant(bad)
    assert not report.assumption1
    assert any("Assumption 1" in f for f in report.failures())


def test_validate_is_pure():
    p = example1_plant()
    assert validate_plant(p) == validate_plant(p)


def test_extend_example1_block_placement():
    es = extend(example1_plant())
    np.testing.assert_array_equal(es.A_bar, [[1.0, 0.01, 0.01], [-0.02, 0.99, 0.0], [0.0, 0.0, 1.0]])
    np.testing.assert_array_equal(es.b_u_bar, [[0.0], [0.01], [0.0]])
    np.testing.assert_array_equal(es.E, [[0.0], [0.0], [1.0]])
    np.testing.assert_array_equal(es.C_bar, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])


def test_extend_pmdc_disturbance_column():
    es = extend(pmdc_plant())
    np.testing.assert_array_equal(es.E, [[0.0], [0.0], [1.0]])


def test_extended_output_ignores_disturbance_coordinate():
    p = example1_plant()
    es = extend(p)
    rng = np.random.default_rng(3)
    for _ in range(20):
        x = rng.normal(size=(2, 1))
        np.testing.assert_array_equal(es.C_bar @ np.vstack([x, [[0.0]]]), p.C_m @ x)


def _rank_oracle(m):
    # independent of matlin: singular values
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > 1e-10 * s[0]))


def test_observability_full_and_single_output():
    p = example1_plant()
    es = extend(p)
    assert is_observable(es)
    assert _rank_oracle(observability_matrix(es)) == 3
    es1 = extend(PlantSpec(p.A, p.b_u, p.b_d, [[1.0, 0.0]], p.c_o))
    assert is_observable(es1)
    assert _rank_oracle(observability_matrix(es1)) == 3


def test_unobservable_counterexample():
    # x1 and d never reach x2 when A is diagonal and d enters x1 only
    p = PlantSpec(np.diag([1.0, 0.9]), [[1.0], [1.0]], [[0.01], [0.0]], [[0.0, 1.0]], [[1.0, -1.0]])
    es = extend(p)
    assert not is_observable(es)
    assert _rank_oracle(observability_matrix(es)) < 3


def test_state_extension_is_exact():
    p = example1_plant()
    es = extend(p)
    rng = np.random.default_rng(11)
    n = 200
    u = rng.normal(size=n)
    d = rng.uniform(-2, 2, size=n + 1)
    x = np.array([[0.3], [-0.7]])
    xb = np.vstack([x, [[d[0]]]])
    for k in range(n):
        x = p.A @ x + p.b_u * u[k] + p.b_d * d[k]
        xb = es.A_bar @ xb + es.b_u_bar * u[k] + es.E * (d[k + 1] - d[k])
        assert np.max(np.abs(xb[:2] - x)) <= 1e-12
        assert abs(xb[2, 0] - d[k + 1]) <= 1e-12


def test_rank_helper_agrees_with_svd():
    rng = np.random.default_rng(0)
    for _ in range(50):
        m = rng.normal(size=(6, 3))
        m[:, 2] = m[:, 0] * rng.integers(0, 2)  # sometimes rank deficient
        assert matrix_rank(m) == _rank_oracle(m)
