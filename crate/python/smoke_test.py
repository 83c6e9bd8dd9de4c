"""Smoke test for the extension module.

Build it first:
    cargo build -p paraprod-py --release
    cp target/release/libparaprod_py.so python/paraprod.so
"""
import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import paraprod


def main():
    ts = paraprod.normalize("T*S")
    assert ts == paraprod.normalize("S*T - T^2 - d0{w*u}"), str(ts)
    assert not ts.is_trivial()
    assert paraprod.Expr("S*T - T*S").normalize() == paraprod.normalize("T^2 + d0{w*u}")

    m = paraprod.Expr("M")
    assert str((m ** 2).normalize()) == "S^2 + 2*S*T + d0{w^2}"
    assert paraprod.normalize(m * m - m ** 2).is_zero()

    c = paraprod.classify("S*T", "hardy")
    assert c["verdict"] == "IffGPowerInBMOA" and c["power"] == 2, c
    rows = dict(paraprod.table("bergman"))
    assert len(rows) == 9

    # T_g f = integral of f g' with g = z^2, f = 1
    assert paraprod.evaluate("T", "1", "z^2") == "z^2"

    coeffs = paraprod.series("logE", 5)
    assert coeffs[0] == 1 and abs(coeffs[3] - 1 / 3) < 1e-15

    b = paraprod.bergman("poly(0,0,1)")
    assert abs(b - 1 / math.sqrt(3)) < 1e-9, b
    assert abs(paraprod.hardy("poly(1,1)") - math.sqrt(2)) < 1e-12

    t = paraprod.opnorm("T", "z", trunc=200)
    assert abs(t - 1 / math.sqrt(2)) < 1e-3, t

    try:
        paraprod.Expr("S*(T")
    except ValueError as e:
        print("parse error:", e)
    else:
        raise AssertionError("expected a parse error")
    print("ok")


if __name__ == "__main__":
    main()
