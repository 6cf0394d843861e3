"""Smoke test for the curvemod_py extension.

Build and install first:
    pip install --no-build-isolation -e crates/curvemod-py
"""
import json

import curvemod_py as cm


def main():
    fermat = cm.Form("x^3 + y^3 + z^3")
    assert fermat.degree == 3
    assert sum(phi for phi, _ in fermat.flexes()) == 9
    assert fermat.properness()[2] == ("1/9", "2/3")

    quartic = cm.Form("x^4 + y^4 + z^4")
    assert sum(phi for phi, _ in quartic.flexes()) == 24
    assert quartic.lie_dim() == 0

    cusp = cm.Form("y^2*z - x^3")
    [(point, mu, m, b, g, g_plus)] = cusp.singularities()
    assert (mu, m, b) == (2, 2, 1), point
    assert cusp.geometric_genus() == 0

    factors = cm.Form("x^2*y - y^3").factor()
    assert sorted(f.degree for f, _ in factors) == [1, 1, 1]

    d = cm.Divisor("<-1> + <0> + <1> + <inf>")
    assert d.j() == "1"
    assert d.classify()[:2] == ("Dihedral", 8)
    assert cm.cross_ratio("0", "1", "inf", "2") == "-1"
    assert len(cm.orbit("2")) == 3

    assert cm.harnack_bound(6) == 11
    ok, reason = cm.validate_arrangement('{"root": [[], []], "nonOval": true}', 3)
    assert not ok and reason

    code, out, _ = cm.run(["tables", "harnack", "--max-n", "4"])
    assert code == 0
    assert [r["bound"] for r in json.loads(out)["result"]["rows"]] == [1, 1, 2, 4]

    try:
        cm.Form("x^3 + y^3").flexes()
    except cm.CurvemodError as e:
        assert "line" in str(e)
    else:
        raise AssertionError("expected CurvemodError")

    print("smoke test ok")


if __name__ == "__main__":
    main()
