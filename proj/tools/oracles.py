#!/usr/bin/env python3
# Reference values frozen in the tests, at 30 digits.
from mpmath import mp, mpf, sqrt, log, power as pw

mp.dps = 30
CT = 4 * sqrt(2)
L = CT * log(2)


def cond0_tc(p):
    return max(mpf(2), pw(2, 4 - 1 / p) * (1 - 1 / p))


def cond0_c(p):
    ip = 1 / p
    return max(mpf(2), pw(3, 1 - ip) * (1 + pw(2, ip)), pw(3, 2 - ip) * ip + pw(2, 1 - ip) * (1 + ip)) + L


def cond_c(p):
    ip = 1 / p
    return max(2 * pw(mpf(3) / 2, 2 - ip) * ip + 2,
               ip + pw(1 + pw(ip + ip * ip, p), ip),
               pw(3, 1 - ip) * (1 + pw(1 + pw(1 - ip, p), ip)),
               9 + 3 * (p - 1) * p * pw(mpf(3) / 2, 1 - ip),
               pw(3, 1 - ip) * (1 + pw(2, ip))) + L


def show(name, value):
    print(f"{name:14s} {mp.nstr(value, 17)}")


show("Ct*ln2", L)
for p in ("1.01", "1.5", "2"):
    show(f"cond0_C({p})", cond0_c(mpf(p)))
    show(f"cond_C({p})", cond_c(mpf(p)))
show("cond0_C(1+)", cond0_c(mpf(1) + mpf("1e-25")))
show("cond_C(1+)", cond_c(mpf(1) + mpf("1e-25")))

grid = [mpf("1.01") + mpf("0.99") * i / 999 for i in range(1000)]
for f in (cond0_tc, cond0_c, cond_c):
    arg = max(grid, key=f)
    print(f"sup {f.__name__:9s} {mp.nstr(f(arg), 17)} at p={mp.nstr(arg, 17)}")

# scalar p = 2, C = 9 / 21, C~ = 4 sqrt 2
show("u_plain(1111)", sqrt(1.5) - 9 + L)
show("u_max(11111)", sqrt(1.5) - 21 + L)
show("u_max(01111)", sqrt(1.5) - mpf("0.25") / sqrt(1.5) - 21 + L)
show("U_u(1111)", sqrt(1.5) + CT / 2)
