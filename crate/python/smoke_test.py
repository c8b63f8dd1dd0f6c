"""Smoke test for the compiled `hopf_area` extension module.

Build and install first, e.g.

    pip install maturin
    maturin build --release -m crates/py/Cargo.toml
    pip install target/wheels/hopf_area-*.whl
"""

import math
import sys

import hopf_area


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    octant = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for method in hopf_area.METHODS:
        area = hopf_area.signed_area(octant, method)
        assert close(area, math.pi / 2, 1e-12), (method, area)

    square = [(1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0)]
    assert close(hopf_area.SphericalPolygon(square).area(), 2 * math.pi, 1e-12)

    q = hopf_area.canonical_lift((0.0, 0.6, 0.8))
    base = hopf_area.hopf_project(q)
    assert all(close(b, c, 1e-12) for b, c in zip(base, (0.0, 0.6, 0.8)))

    cardioid = hopf_area.sample_curve("cardioid", 10_000)
    hopf = hopf_area.signed_area(cardioid)
    oracle = hopf_area.signed_area(cardioid, "oracle")
    assert close(hopf, oracle, 1e-6), (hopf, oracle)

    eight = hopf_area.total_torsion(hopf_area.sample_curve("figure-eight", 100_000))
    assert close(eight, -0.5423, 1e-3), eight

    try:
        hopf_area.signed_area([(1, 0, 0), (1, 0, 0), (0, 1, 0)], "gauss-bonnet")
    except hopf_area.GeometryError as err:
        assert str(err).startswith("DegenerateVertex"), err
    else:
        raise AssertionError("duplicate vertex should break gauss-bonnet")

    print(f"ok: cardioid area {hopf:.12f}, figure-eight torsion {eight:.6f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
