import math
import os

import pytest

import caustic

DATA = os.environ.get("CAUSTIC_TEST_DATA", os.path.join(os.path.dirname(__file__), "..", "data"))


def load(name, n=2048):
    return caustic.sample(caustic.load_curve(os.path.join(DATA, name)), n)


def o3_point(t):
    h = 1 + 0.1 * math.cos(3 * t)
    dh = -0.3 * math.sin(3 * t)
    return (h * math.cos(t) - dh * math.sin(t), h * math.sin(t) + dh * math.cos(t))


def test_curve_builders():
    circle = caustic.support_curve(1.0)
    assert circle.kind == "support_fourier"
    sc = caustic.sample(circle, 256)
    assert abs(sc.rotation_number - 1) < 1e-9
    assert sc.size == 256
    o3 = caustic.support_curve(1.0, [(3, 0.1, 0.0)])
    assert caustic.sample(o3, 512).curvature_at(0.0) == pytest.approx(5.0)
    with pytest.raises(ValueError):
        caustic.support_curve(1.0, [(3, 0.5, 0.0)])
    with pytest.raises(ValueError):
        caustic.sample(circle, 16)
    lim = caustic.param_curve(1.0, [(1, 1.0, 0.0), (2, 1.0, 0.0)], 0.0, [(1, 0.0, 1.0), (2, 0.0, 1.0)])
    assert abs(caustic.sample(lim).rotation_number - 2) < 1e-6
    ring = [(math.cos(2 * math.pi * i / 100), math.sin(2 * math.pi * i / 100)) for i in range(100)]
    assert caustic.polyline_curve(ring).kind == "polyline"


def test_o3_sets():
    sc = load("o3.json")
    w = caustic.wigner_caustic(sc)
    assert w.count("cusp") == 3
    assert w.rotation_number == pytest.approx(0.5, abs=1e-6)
    e = caustic.equidistant(sc, 0.3)
    assert e.count("cusp") == 6
    for ev in e.events:
        assert math.cos(3 * ev.s_a) == pytest.approx(-0.5, abs=1e-6)
        a, b = o3_point(ev.s_a), o3_point(ev.s_a + math.pi)
        x, y = ev.location
        assert x == pytest.approx(0.3 * a[0] + 0.7 * b[0], abs=1e-8)
        assert y == pytest.approx(0.3 * a[1] + 0.7 * b[1], abs=1e-8)
    assert caustic.css(sc).count("cusp") == 3
    assert caustic.equidistant_curvature(sc, 0.0, math.pi, 0.5) == pytest.approx(1.25)
    assert e.to_csv().startswith("branch,s_a,s_b,lambda,x,y,tangent_angle,kappa,event\n")


def test_parity_and_spectrum():
    sc = load("o3.json")
    r = caustic.parity_report(sc, 0.5)
    assert r.count == 3 and r.overall == "pass"
    assert "count=3" in r.summary()
    (fam, lo, hi), = caustic.singular_lambda_spectrum(sc)
    assert lo == pytest.approx(0.1, abs=1e-6)
    assert hi == pytest.approx(0.9, abs=1e-6)
    assert caustic.parity_report(load("ellipse.json"), 0.5).overall == "inconclusive"


def test_loops():
    (s0, s1, rot), = caustic.detect_loops(load("limacon.json"))
    assert s0 == pytest.approx(2 * math.pi / 3, abs=1e-6)
    assert s1 == pytest.approx(4 * math.pi / 3, abs=1e-6)
    assert abs(rot) <= 1


def test_algebra():
    assert caustic.compose_lambda(0.3, 0.25) == pytest.approx(0.4)
    with pytest.raises(ValueError):
        caustic.reconstruction_lambda(0.5)
    a = [(math.cos(t / 10), math.sin(t / 10)) for t in range(63)]
    b = [(0.4 * x, 0.4 * y) for x, y in a]
    assert caustic.hausdorff(a, b) == pytest.approx(0.6)
    sc = load("o3.json", 4096)
    assert caustic.verify_reconstruction(sc, 0.3).passed
    assert caustic.verify_composition(sc, 0.3, 0.25).passed


def test_cli():
    code, out, err = caustic.run_cli(["parity", "--curve", os.path.join(DATA, "o3.json"), "--lambda", "0.5"])
    assert code == 0
    assert "count=3" in out
    code, _, _ = caustic.run_cli(["frobnicate"])
    assert code == 1
