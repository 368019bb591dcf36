"""Smoke test for the `dp4` extension module.

Either install it (`pip install --no-build-isolation ./crates/py` with maturin available)
or build it with `cargo build --release -p dp4-py`; in the latter case the shared library
is picked up from `target/`.
"""

import importlib
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        return importlib.import_module("dp4")
    except ImportError:
        pass
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libdp4.so"
        if lib.exists():
            tmp = Path(tempfile.mkdtemp())
            shutil.copy(lib, tmp / "dp4.so")
            sys.path.insert(0, str(tmp))
            return importlib.import_module("dp4")
    sys.exit("dp4 not found; run `cargo build --release -p dp4-py` first")


def main():
    dp4 = load()

    d = dp4.classify_line("e0", "e0,e1,e4")
    assert d["type"] == "d" and d["normal_bundle"] == "nonfree", d
    assert [p["multiplicity"] for p in d["support_points"]] == [2]

    line = dp4.Line("e2", "e0,e2,e3", field="5")
    assert line.in_y() and line.classify()["type"] == "a"

    for q in (3, 5):
        q3 = 1 + q + q**2 + q**3
        assert dp4.count("q3", q) == q3
        assert dp4.count("dbar", q) == (q + 1) * q3
        assert dp4.count("rank0locus", q) == 2 * (q + 1)
        assert dp4.count("h1y", q) == 1 + 2 * q + 3 * q**2 + 2 * q**3 + q**4

    assert dp4.interpolate([(2, 7), (3, 13), (5, 31)], 2) == [1, 1, 1]
    assert dp4.gaussian_binomial(4, 2, 2) == 35

    P = dp4.PoincarePoly
    h1y = P.blowup(P.projective(4), P.projective(1), 3)
    assert str(h1y) == "1+2t^2+3t^4+2t^6+t^8" and h1y.is_palindromic()
    assert h1y.eval_q(3) == dp4.count("h1y", 3)

    try:
        dp4.count("q3", 2)
    except ValueError:
        pass
    else:
        raise AssertionError("q = 2 accepted for a rank predicate")

    report = dp4.verify("pluecker,lines", seed=1, primes=[3, 5], samples=30)
    assert report["schema"] == "dp4-report/1"
    assert report["summary"]["fail"] == 0, report["summary"]

    print("dp4 smoke test passed:", report["summary"])


if __name__ == "__main__":
    main()
