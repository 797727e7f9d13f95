"""Smoke test for the Python bindings.

Build and install first:
    pip install --no-build-isolation ./crates/py
then run:
    python python/smoke_test.py
"""

from fractions import Fraction as F

import nullcone


def main():
    c2 = nullcone.RootDatum("C2")
    rows = [r for r in c2.strata() if r.m > 0]
    assert [r.mu for r in rows] == [(F(3, 2), F(1, 2)), (F(1, 2), F(1, 2)), (F(1, 2), F(0))]
    assert [r.dim_stratum for r in rows] == [8, 6, 4]
    assert all(r.certified for r in rows)
    assert c2.rejected() == [(F(1), F(0))]

    a1 = nullcone.RootDatum("A1")
    (row,) = [r for r in a1.strata() if r.m > 0]
    assert (row.mu, row.lambda_, row.m) == ((F(1, 2),), (F(1),), 2)

    su21 = nullcone.RootDatum.relative("su21")
    assert [(r.mu, r.m) for r in su21.strata() if r.m > 0] == [((F(1),), 1), ((F(1, 2),), 2)]

    k = c2.optimal(["2a+b"])
    assert (k.mu, k.m) == ((F(1, 2), F(0)), 2)
    assert c2.optimal([(1, -1), (0, 2)]).mu == (F(3, 2), F(1, 2))

    assert c2.mu_p("b") == (F(1), F(0))
    assert c2.mu_p("a") == (F(1, 2), F(1, 2))

    ind = c2.induce("")
    assert ind.status == "certified" and ind.stratum.mu == (F(3, 2), F(1, 2))
    flagged = c2.induce("b")
    assert flagged.status == "flagged" and flagged.stratum is None
    assert flagged.fallback[0] == (F(1, 2), F(1, 2))

    adj = nullcone.RootDatum("C2", lattice="adjoint")
    assert [r.m for r in adj.strata() if r.m > 0] == [1, 1, 2]

    point, q2 = nullcone.min_norm_point([(1, -1), (0, 2)])
    assert (point, q2) == ((F(3, 2), F(1, 2)), F(5, 2))
    assert nullcone.torus_semistable([(1,), (-1,)], 1)
    assert not nullcone.torus_semistable([(1,), (2,)], 1)

    try:
        nullcone.RootDatum("Q3")
    except ValueError:
        pass
    else:
        raise AssertionError("unsupported type accepted")

    print("smoke test ok:", rows)


if __name__ == "__main__":
    main()
