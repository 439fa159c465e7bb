"""Smoke test for the pyqbarnes extension.

Build and install first:  pip install --no-build-isolation crates/python
"""
import cmath
import json
from fractions import Fraction

import pyqbarnes as qb


def q_factorial(n, q):
    out = 1.0
    for k in range(1, n + 1):
        out *= (1 - q**k) / (1 - q)
    return out


def plane_partitions(n_max):
    # prod_k (1 - q^k)^(-k) as a power series
    c = [1] + [0] * n_max
    for k in range(1, n_max + 1):
        for _ in range(k):
            for n in range(k, n_max + 1):
                c[n] += c[n - k]
    return c


def main():
    # the first multigamma at an integer is the q-factorial
    assert abs(qb.gq(1, 3, 0.5) - q_factorial(3, 0.5)) < 1e-12
    assert abs(qb.gq(2, 3, 0.5, method="nishizawa") - 1.5) < 1e-12
    assert abs(qb.gq_integer(3, 4, 0.3) - qb.gq(3, 4, 0.3)) < 1e-12

    # G^(d)(z+1) = G^(d-1)(z) G^(d)(z) off the integers
    z, q = 0.4 + 0.3j, 0.2 + 0.5j
    for d in range(1, 4):
        lhs = qb.gq(d, z, q)
        rhs = qb.gq(d - 1, z - 1, q) * qb.gq(d, z - 1, q)
        assert abs(lhs - rhs) < 1e-9 * abs(lhs), (d, lhs, rhs)

    assert [int(c) for c in qb.macmahon_coefficients(10)] == plane_partitions(10)

    terms = {(a, e): Fraction(c) for a, e, c in qb.conifold_series(2, 6)}
    assert terms[(0, 0)] == 1 and terms[(1, 1)] == -1
    assert qb.dt_invariants(1, 5) == [0, 1, -2, 3, -4, 5]

    assert abs(qb.zs3(2, 1) - 2 ** -0.5) < 1e-12
    for k in range(1, 5):
        closed = (k + 2) / (2 * cmath.sin(cmath.pi / (k + 2)) ** 2)
        assert abs(qb.diameter_squared(2, k) - closed) < 1e-9

    assert qb.littlewood_richardson([1, 1], [1], [1]) == 1
    assert qb.littlewood_richardson([3, 2, 1], [2, 1], [2, 1]) == 2
    num, den = qb.macmahon_genus_coefficient(2)
    assert Fraction(int(num), int(den)) == Fraction(1, 120) * Fraction(-1, 12) / 2

    partial, remainder = qb.macmahon_asymptotics(0.1, 4)
    assert abs(remainder) < 1e-9

    report = json.loads(qb.verify("lemma51"))
    assert report["pass"], report

    try:
        qb.gq(1, 1.0, -0.5)
    except ValueError:
        pass
    else:
        raise AssertionError("negative real q accepted")
    print("pyqbarnes smoke test passed")


if __name__ == "__main__":
    main()
