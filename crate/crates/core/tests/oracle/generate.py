"""Reference values for tests/oracles.rs, computed with 50-digit mpmath."""
from mpmath import mp, mpf, mpc, pi, cot, exp, log, sqrt, euler, findroot, arg, fabs

mp.dps = 50
I = mpc(0, 1)


def odd_sum(k):
    return sum(mpf(1) / j for j in range(1, k + 1, 2))


def p(n):
    z = mpc(-sqrt(3) / 6)
    for k in range(3, n):
        z += (cot(pi / k) + cot(pi / (k + 1))) / 2 * exp(I * pi * odd_sum(k))
    return z


def q(n):
    z = mpc(0)
    for k in range(2, n + 1):
        z += (cot(pi / (2 * k - 1)) + cot(pi / (2 * k + 1))) / 2 * exp(I * pi * odd_sum(2 * k - 1))
    return z


def f(t, a, b):
    t = mpf(t)
    w = I * pi / 2
    return t ** (2 + w) + (1 + pi * I / 4) * (t ** (1 + w) + (a + b * pi * I / 4) * t ** w)


def show(name, z):
    z = mpc(z)
    print(f"{name}: {mp.nstr(z.real, 20)} {mp.nstr(z.imag, 20)}")


show("P_4", p(4))
show("P_1000", p(1000))
show("Q_2", q(2))
print("|Q_2|:", mp.nstr(fabs(q(2)), 20))
show("Q_500", q(500))
show("f(100,1/4,43/6)", f(100, mpf(1) / 4, mpf(43) / 6))
show("A(1001)", f(mpf(1001) - mpf(1) / 2, mpf(1) / 4, mpf(31) / 6))
print("s:", mp.nstr(2 * pi * sqrt(1 + pi**2 / 16), 20))
beta = 4 / pi
print("1/sqrt(1+beta^2):", mp.nstr(1 / sqrt(1 + beta**2), 20))
print("rotation (pi/2)(gamma+ln2) mod 2pi:", mp.nstr(((pi / 2) * (euler + log(2))) % (2 * pi), 20))

# nearest point of r = e^{4θ/π} to z = 2: stationary points of |S(θ) - 2|²
S = lambda t: exp((beta + I) * t)
g = lambda t: (S(t) - 2) * (beta - I) * exp((beta - I) * t)
best = None
for t0 in [log(2) / beta + 2 * pi * j for j in (-2, -1, 0, 1, 2)]:
    t = findroot(lambda t: mpc(g(t)).real, mpf(t0), tol=mpf(10) ** -40, verify=False)
    d = fabs(S(t) - 2)
    if best is None or d < best[0]:
        best = (d, t)
print("nearest(2):", mp.nstr(best[0], 20), mp.nstr(best[1], 20))
