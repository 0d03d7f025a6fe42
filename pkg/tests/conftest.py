import math

import numpy as np
import pytest

import frenetsim as fs

RT13 = math.sqrt(13.0)


@pytest.fixture(scope="session")
def helix_curve():
    # radius 3, pitch 4: speed 5, kappa_1 = 0.12, kappa_2 = 0.16
    return fs.arclength_reparam(fs.helix(3.0, 4.0, t_span=(0.0, 5.0)), 2000)


@pytest.fixture(scope="session")
def helix_frenet(helix_curve):
    return fs.frenet_apparatus(helix_curve)


@pytest.fixture(scope="session")
def circle_frenet():
    cur = fs.arclength_reparam(fs.circle(2.0), 1200)
    return fs.frenet_apparatus(cur)


@pytest.fixture(scope="session")
def spiral_curve():
    return fs.arclength_reparam(fs.log_spiral(-0.1), 2000)


@pytest.fixture(scope="session")
def spiral_frenet(spiral_curve):
    return fs.frenet_apparatus(spiral_curve)


@pytest.fixture(scope="session")
def cubic_frenet():
    # (t, t^2, t^3): nonconstant curvatures, torsion positive
    cur = fs.arclength_reparam(
        fs.custom_poly([[0.0, 1.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0, 1.0]],
                       t_span=(-1.0, 1.0)), 2000)
    return fs.frenet_apparatus(cur)


@pytest.fixture(scope="session")
def selfsim3_spec():
    return fs.SelfSimilarSpec(dimension=3, index=2, kt=-0.05,
                              ktj=(3 / RT13, 2 / RT13))


@pytest.fixture(scope="session")
def selfsim3_curve(selfsim3_spec):
    return fs.arclength_reparam(fs.synthesize_self_similar(selfsim3_spec), 2000)


@pytest.fixture(scope="session")
def selfsim3_frenet(selfsim3_curve):
    return fs.frenet_apparatus(selfsim3_curve)


@pytest.fixture(scope="session")
def selfsim4_spec():
    return fs.SelfSimilarSpec(dimension=4, index=2, kt=0.1,
                              ktj=(0.7, math.sqrt(1 - 0.49), 0.5))


@pytest.fixture(scope="session")
def selfsim4_frenet(selfsim4_spec):
    cur = fs.arclength_reparam(fs.synthesize_self_similar(selfsim4_spec), 2000)
    return fs.frenet_apparatus(cur)


@pytest.fixture(scope="session")
def planar_circle_frenet():
    # radius-2 circle embedded in the z = 0 plane of E^3
    th = np.linspace(0.0, 1.5 * math.pi, 1500)
    pts = np.column_stack([2 * np.cos(th), 2 * np.sin(th), np.zeros_like(th)])
    cur = fs.SampledCurve(3, th, pts, "generic", None)
    return fs.frenet_apparatus(fs.arclength_reparam(cur, 1500))


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    """CSV and JSON inputs shared by the CLI tests."""
    d = tmp_path_factory.mktemp("cli_data")
    t = np.linspace(0.0, 5.0, 400)
    fs.curve_to_csv(fs.builtin_evaluate(fs.helix(3.0, 4.0, t_span=(0.0, 5.0)), t),
                    d / "helix.csv")
    fs.curve_to_csv(fs.builtin_evaluate(fs.helix(6.0, 8.0, t_span=(0.0, 5.0)), t),
                    d / "helix_double.csv")
    fs.curve_to_csv(fs.builtin_evaluate(fs.helix(4.0, 3.0, t_span=(0.0, 5.0)), t),
                    d / "helix_swapped.csv")
    ts = np.linspace(0.0, 1.8, 400)
    fs.curve_to_csv(fs.builtin_evaluate(fs.helix(3.0, 4.0, t_span=(0.0, 1.8)), ts),
                    d / "helix_short.csv")
    tl = np.linspace(0.0, 1.0, 60)
    fs.curve_to_csv(fs.builtin_evaluate(fs.line(3), tl), d / "line.csv")
    (d / "spec3.json").write_text(
        '{"dimension": 3, "index": 2, "kt": -0.05, '
        f'"ktj": [{3 / RT13!r}, {2 / RT13!r}], '
        '"sigma_range": [0.0, 4.0], "samples": 2000}\n')
    (d / "bad_spec.json").write_text(
        '{"dimension": 3, "index": 2, "kt": 0.1, "ktj": [0.0, 1.0]}\n')
    (d / "broken.json").write_text('{"dimension": 3,\n')
    (d / "broken.csv").write_text("t,x1,x2\n0.0,1.0\n")
    return d
