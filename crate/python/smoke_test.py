"""Smoke test for the fmonoid extension module."""

from fractions import Fraction

import fmonoid as fm


def main():
    assert str(fm.Monomial("x1*x0")) == "x0*x2"
    assert fm.normalize([1, 0]) == fm.Monomial([0, 2])
    assert fm.normalize_by_rewriting([3, 1, 0], "random:7") == fm.normalize([3, 1, 0])
    assert fm.Monomial("x1").lcm(fm.Monomial("x3")) == fm.Monomial("x1*x4")
    assert fm.count("S:4:10") == 2002
    assert len(fm.enumerate("S:3:5")) == fm.count("S:3:5")

    p = fm.Polynomial("x0 + 2*x2")
    q = fm.Polynomial("x1 + 3*x2")
    assert str(p * q) == str(fm.Polynomial("x0*x1 + 3*x0*x2 + 2*x1*x3 + 6*x2^2"))
    assert fm.Polynomial.from_json(p.to_json()) == p

    a, b = fm.basic_equation("2", "3")
    u, v = fm.basic_solution("2", "3")
    assert (a * u - b * v).is_zero()

    sol = fm.reduce(p, q)
    assert sol.verified and sol.recheck()
    x, y = sol.unknowns
    assert (p * x - q * y).is_zero()
    assert fm.Solution.from_json(sol.to_json()).recheck()

    u, v = fm.degree_one_solution(["1", "2", "-1"], ["3", "1", "5"], field="fp:101")
    a = fm.Polynomial("x0 + 2*x1 - x2", field="fp:101")
    b = fm.Polynomial("3*x0 + x1 + 5*x2", field="fp:101")
    assert (a * u - b * v).is_zero()

    us, prod = fm.qk_solution([("1", "2"), ("3", "-1"), ("1/2", "5")])
    for (al, be), ui in zip([("1", "2"), ("3", "-1"), ("1/2", "5")], us):
        lin = fm.Polynomial(f"{al}*x0") + fm.Polynomial(f"{be}*x1")
        assert lin * ui == prod

    ysize, sy, num, den = fm.xm_census(1, 5)
    assert Fraction(sy, ysize) == Fraction(*fm.xm_ratio(1, 5)) < 2
    ysize, sy, num, den = fm.s24_census(9)
    assert (ysize, sy) == (488, 1178)
    assert Fraction(*fm.s24_bound_ratio(45)) < 2 <= Fraction(*fm.s24_bound_ratio(44))

    sols = fm.solve_pair(fm.Polynomial("x0 + 2*x2"), fm.Polynomial("x1 + 3*x2"), "S:4:6", limit=1)
    assert sols and sols[0].verified

    try:
        fm.Polynomial("x1*y0")
    except ValueError as e:
        assert "byte 3" in str(e)
    else:
        raise AssertionError("parse error expected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
