import math

import pytest

import hadamard


def test_version():
    assert hadamard.__version__ == hadamard.version()


def test_space_distance():
    s = hadamard.space("euclidean:3")
    assert s.dimension == 3
    assert s.is_cat0
    assert s.distance([1, 2, 3], [-1, 0, 4]) == pytest.approx(3.0)
    assert s.geodesic_point([0, 0, 0], [2, 0, 0], 0.25) == pytest.approx([0.5, 0, 0])


def test_tree_points():
    t = hadamard.space("tree:star:inf,inf,1")
    assert t.distance({"edge": 0, "offset": 2}, {"edge": 1, "offset": 3}) == pytest.approx(5.0)


def test_circumcenter_right_triangle():
    s = hadamard.space("euclidean:2")
    r = hadamard.circumcenter(s, [[0, 0], [2, 0], [0, 2]])
    assert r["radius"] == pytest.approx(math.sqrt(2))
    assert r["center"] == pytest.approx([1, 1])


def test_jung_simplex_equality():
    for n in range(1, 5):
        s = hadamard.space(f"euclidean:{n}")
        pts = [list(v) for v in hadamard.regular_simplex(n)]
        rep = hadamard.jung_check(s, pts, n)
        assert rep["slack"] == pytest.approx(0.0, abs=1e-9)
        assert rep["ratio"] == pytest.approx(hadamard.jung_bound(n))


def test_constants():
    assert hadamard.k_n(1) == pytest.approx(2 * math.pi / 3, rel=1e-15)
    assert hadamard.gradient_floor(1) == pytest.approx(0.146447, abs=1e-6)
    assert hadamard.s_n(2, 1e-3) / 1e-3 == pytest.approx(1 / hadamard.jung_bound(2), abs=1e-4)


def test_run_command():
    out = hadamard.run("filtering", {"space": "box:100", "inputs": {"family": "hilbert-box", "count": 10}})
    assert all(c["passed"] for c in out["checks"])
    assert out["results"]["distances"] == pytest.approx([math.sqrt(n) for n in range(1, 11)])
    assert "jung" in hadamard.commands()


def test_errors():
    with pytest.raises(ValueError):
        hadamard.space("nowhere:2")
    with pytest.raises(hadamard.UsageError):
        hadamard.run("no-such-command")
    assert issubclass(hadamard.UsageError, hadamard.Error)
