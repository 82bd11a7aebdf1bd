"""Smoke test for the pytoroidal extension.

Uses an installed `pytoroidal` if importable (e.g. after
`pip install --no-build-isolation ./crates/python`); otherwise loads the
shared library from a cargo build of `toroidal-fock-py`.
"""

import importlib.machinery
import importlib.util
import json
import pathlib
import sys


def load():
    try:
        import pytoroidal

        return pytoroidal
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    builds = [root / "target" / p / "libpytoroidal.so" for p in ("release", "debug")]
    builds = sorted((b for b in builds if b.exists()), key=lambda b: b.stat().st_mtime, reverse=True)
    if builds:
        lib = builds[0]
        loader = importlib.machinery.ExtensionFileLoader("pytoroidal", str(lib))
        spec = importlib.util.spec_from_file_location("pytoroidal", lib, loader=loader)
        module = importlib.util.module_from_spec(spec)
        loader.exec_module(module)
        return module
    sys.exit("pytoroidal not found: build with `cargo build -p toroidal-fock-py --features extension-module`")


def main():
    pt = load()

    assert pt.cartan_matrix("A2") == [[2, -1], [-1, 2]]

    # (1 - z)^1 has coefficients 1, -1, 0, ...
    assert pt.qbinomial_series(1, 4) == ["1", "-1", "0", "0", "0"]
    twisted = pt.qbinomial_series(1, 4, twisted=True)
    assert twisted[:3] == ["1", "-2", "2"], twisted

    assert pt.serre_polynomial(2) == "0"
    assert pt.serre_polynomial(1) != "0"

    # X_1^+(0) on the vacuum is e_{alpha_1}
    out = pt.vertex_mode("A1", 1, 1, 0)
    assert len(out) == 1 and out[0][1] == "1", out
    assert pt.vertex_mode("A1", 1, 1, 1) == []

    report = json.loads(pt.verify("A1", suites="heisenberg,serre-sym", modes=3, degree=3, serre_k=[2]))
    assert report["summary"] == {"pass": 2, "fail": 0, "beyond_paper": 0}, report["summary"]

    for bad in (lambda: pt.cartan_matrix("B2"), lambda: pt.verify("A1", suites="nope"), lambda: pt.vertex_mode("A1", 1, 2, 0)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("pytoroidal smoke test passed")


if __name__ == "__main__":
    main()
