"""Independent reference values frozen into the C++ unit tests.

Run with `python3 tests/oracles/oracles.py`; the printed numbers are the
constants used by the corresponding tests.
"""
from fractions import Fraction as F
import math


def mat_inv2(m):
    (a, b), (c, d) = m
    det = a * d - b * c
    return [[d / det, -b / det], [-c / det, a / det]]


def mul(x, y):
    return [[sum(x[i][k] * y[k][j] for k in range(len(y))) for j in range(len(y[0]))]
            for i in range(len(x))]


def add(x, y):
    return [[x[i][j] + y[i][j] for j in range(len(x[0]))] for i in range(len(x))]


def sigma_rational(a, b):
    bi = mat_inv2(b)
    s11, s12 = bi, mul(bi, a)
    s21, s22 = mul(a, bi), add(mul(mul(a, bi), a), b)
    return [s11[i] + s12[i] for i in range(2)] + [s21[i] + s22[i] for i in range(2)]


def wigner_trapezoid(hbar, n=801):
    # Σ = I, d = 1: W = exp(-(q² + p²)/ħ)/(πħ) on [−10√ħ, 10√ħ]².
    half = 10.0 * math.sqrt(hbar)
    h = 2.0 * half / (n - 1)
    total = 0.0
    for i in range(n):
        q = -half + i * h
        wq = 0.5 if i in (0, n - 1) else 1.0
        for j in range(n):
            p = -half + j * h
            wp = 0.5 if j in (0, n - 1) else 1.0
            total += wq * wp * math.exp(-(q * q + p * p) / hbar)
    return total * h * h / (math.pi * hbar)


def torsional_expectation(q, var):
    # E[2 − cos q1 − cos q2] for q ~ N(q̄, diag var).
    return 2.0 - sum(math.cos(m) * math.exp(-v / 2.0) for m, v in zip(q, var))


if __name__ == "__main__":
    half = F(1, 2)
    a = [[F(1), half], [half, F(1)]]
    print("sigma(A=B=[[1,.5],[.5,1]]) =", [[str(x) for x in row] for row in sigma_rational(a, a)])
    print("trapezoid normalization hbar=0.1:", repr(wigner_trapezoid(0.1)))
    # Paper initial state at ħ = 0.1: position covariance (ħ/2)·B⁻¹.
    bi = mat_inv2([[1.0, 0.5], [0.5, 1.0]])
    var = [0.05 * bi[0][0], 0.05 * bi[1][1]]
    print("E[V] torsional at t=0, hbar=0.1:", repr(torsional_expectation([1.0, 0.0], var)))
