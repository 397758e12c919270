"""Regenerates tests/data/constants_golden.csv with mpmath at 40 digits.

Usage: python3 make_constants_golden.py > ../data/constants_golden.csv
"""
import mpmath as mp

mp.mp.dps = 40
PARTIAL_TERMS = 10000


def fmt(x):
    v = float(x)
    if v == 0:
        return "0"
    s = "%.12g" % v
    return s


def row(gamma, p):
    g = mp.mpf(gamma)
    p = mp.mpf(p)
    q = p / (p - 1)
    s = g + 1
    n = PARTIAL_TERMS
    series = mp.zeta(s)
    lower = (n + 1) ** (1 - s) / (s - 1)
    upper = mp.mpf(n) ** (1 - s) / (s - 1)
    direct = (1 + q * (g - 1)) ** (-1 / q)
    printed = (1 - q * (g - 1)) ** (1 / q)
    return [gamma, p, q, series, lower, upper, direct, printed, series + direct]


print("gamma,p,q,series,series_tail_lower,series_tail_upper,integral_direct,integral_printed,total")
for gamma in ("0.6", "0.75", "0.9"):
    for p in ("2", "3", "4"):
        print(",".join(fmt(x) for x in row(mp.mpf(gamma), mp.mpf(p))))
