import json
import math

import numpy as np
import pytest

import framelab as fl


def test_segment_transform_matches_closed_form():
    seg = fl.segment(1, 2048)
    v = fl.mu_hat(seg, [0.5])
    expect = (2 / math.pi) * complex(math.cos(-math.pi / 2), math.sin(-math.pi / 2))
    assert abs(v - expect) < 1e-5
    many = fl.mu_hat(seg, np.array([[0.0], [0.5]]))
    assert many.shape == (2,)
    assert abs(many[0] - 1.0) < 1e-14


def test_measure_arrays_round_trip():
    pts = np.array([[0.0, 0.0], [0.5, 0.25]])
    m = fl.QuadratureMeasure(pts, [0.25, 0.75], "two")
    assert len(m) == 2 and m.dim == 2
    assert np.array_equal(m.points, pts)
    assert m.total_mass == pytest.approx(1.0)
    with pytest.raises(fl.InvalidArgument):
        fl.QuadratureMeasure(pts, [1.0, 0.0])


def test_frame_bounds_on_integer_frequencies():
    seg = fl.segment(1, 512)
    lam = fl.FrequencySet(np.arange(-16, 17, dtype=float).reshape(-1, 1))
    dense = fl.frame_bounds(seg, lam)
    it = fl.frame_bounds(seg, lam, method="iterative_extremal")
    assert dense.A == pytest.approx(1.0, abs=1e-10)
    assert dense.B == pytest.approx(1.0, abs=1e-10)
    assert abs(it.A - dense.A) < 1e-8 and abs(it.B - dense.B) < 1e-8
    assert not dense.aliasing_warning
    with pytest.raises(fl.DimensionMismatch):
        fl.frame_bounds(fl.segment(2, 8), lam)


def test_graph_measure_with_python_callables():
    g = fl.graph(2, [-0.5], [0.5], 100, lambda x: [x[0] ** 2], lambda x: 1 + x[0] ** 2)
    assert g.total_mass == pytest.approx(13 / 12, abs=1e-5)


def test_constructions():
    lat = fl.lattice_frame(1, 2, 1, 2, 1)
    assert lat.generator == "lattice(1/2,1,2,1)"
    assert np.array_equal(lat.freqs, [[-0.5, 0], [0, 0], [0.5, 0]])
    assert len(fl.exotic_onb(16)) == 33
    core = fl.FrequencySet(np.array([[0.0]]))
    r = fl.merge_frames(core, core, fl.FrequencySet(np.array([[1.0], [2.0], [3.0]])),
                        fl.FrequencySet(np.array([[-1.0], [-2.0], [-3.0]])), 3)
    assert len(r.lam) == 6 and r.n_mu == 3
    assert r.lower_bound == pytest.approx(0.5) and r.upper_bound == pytest.approx(8.0)
    with pytest.raises(fl.InvalidArgument):
        fl.merge_frames(core, core, fl.FrequencySet(np.array([[1.0]])), fl.FrequencySet(np.array([[2.0]])), 2)


def test_dimension_diagnostics():
    assert fl.obstruction_check(1, 2, 3) == {"blocked": True, "landau_floor": 1.2}
    assert fl.admissible_gamma_window(1, 2, 3)[0] == 0.5
    lam = fl.FrequencySet(np.array([[0.0, 0.0]]))
    w, used, covered = fl.find_gap_point(lam, 10.0, 0.5, 100000, 3)
    assert w is not None
    assert math.sqrt(10) <= math.hypot(*w.t0) < 5
    assert fl.verify_separation(lam, 10.0, w.T, w.t0)
    atom = fl.window_measure(fl.atom([0.0, 0.0]), lambda x: 1.0)
    assert fl.frame_defect_witness(atom, lam, w).defect == pytest.approx(1.0)
    cp = fl.counting_profile(fl.exotic_onb(16), [4.0, 8.0, 16.0])
    assert list(cp.counts) == [5, 7, 9]


def test_wiener_and_decay():
    seg = fl.segment(2, 512)
    wt = fl.wiener_alpha_test(seg, 1.0, [4.0, 8.0, 16.0, 32.0], 2048, 1)
    assert wt.verdict == "holds_empirically"
    assert wt.profile.rng_algorithm == "mt19937_64/u53/box-muller"
    sph = fl.window_measure(fl.sphere(3, 20000), lambda x: 1.0)
    fit = fl.decay_beta_fit(sph, [2.0, 4.0, 8.0, 16.0], 3)
    assert fit.beta_hat == pytest.approx(2.0, abs=0.2)


def test_experiment_runner(tmp_path):
    assert "exp-obstruction" in fl.experiment_ids()
    cfg = fl.default_config("exp-obstruction")
    assert cfg["schema_version"] == 1
    res = fl.run_experiment("exp-obstruction", tmp_path / "obs")
    assert res["status"] == 0
    result = json.loads((tmp_path / "obs" / "result.json").read_text())
    assert result["config_hash"] == res["config_hash"]
    with pytest.raises(fl.ConfigError):
        fl.run_experiment("exp-obstruction", tmp_path / "bad", {"nope": 1})
