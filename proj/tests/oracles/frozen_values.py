"""High-precision reference values frozen into the C++ unit tests.

Run with: python3 tests/oracles/frozen_values.py
"""
import mpmath as mp

mp.mp.dps = 50


def gamma(q, z):
    q = mp.mpf(q)
    return 1 - (q ** (mp.mpf(1) / 2 + 1j * z) + q ** (mp.mpf(1) / 2 - 1j * z)) / (q + 1)


def cfun(q, z):
    q = mp.mpf(q)
    return (mp.sqrt(q) / (q + 1)) * (q ** (mp.mpf(1) / 2 + 1j * z) - q ** (-mp.mpf(1) / 2 - 1j * z)) / (
        q ** (1j * z) - q ** (-1j * z))


def delta(p):
    return mp.mpf(1) / p - mp.mpf(1) / 2


def phi_threshold(q, p, a):
    d = delta(p)
    g = gamma(q, 1j * d)
    return (1 - g.real) * mp.sqrt(mp.re(a) ** 2 + mp.tanh(d * mp.log(q)) ** 2 * mp.im(a) ** 2)


print("gamma(q=2, z=0)        =", mp.nstr(gamma(2, 0), 30))
print("c(q=2, z=1)            =", mp.nstr(cfun(2, 1), 30))
print("I_0(1)                 =", mp.nstr(mp.besseli(0, 1), 30))
print("I_3(0.7+0.4i)          =", mp.nstr(mp.besseli(3, mp.mpc(0.7, 0.4)), 30))
g4 = gamma(2, 1j * delta(4)).real
print("gamma(i delta_4), q=2  =", mp.nstr(g4, 30))
print("heat interval q=2 p=4  =", mp.nstr(g4, 20), mp.nstr(2 - g4, 20))
print("Phi_4(i), q=2          =", mp.nstr(phi_threshold(2, 4, 1j), 30))
print("Phi_3(1+2i), q=3       =", mp.nstr(phi_threshold(3, 3, mp.mpc(1, 2)), 30))
# phi special branch q=2 n=1
print("phi_0(1), q=2          =", mp.nstr((mp.mpf(1) / 3 + 1) * mp.mpf(2) ** (-0.5), 30))
# phi via generic branch, q=3, z=0.4+0.2i, n=5
q, z, n = 3, mp.mpc(0.4, 0.2), 5
val = cfun(q, z) * mp.mpf(q) ** ((1j * z - 0.5) * n) + cfun(q, -z) * mp.mpf(q) ** ((-1j * z - 0.5) * n)
print("phi_{0.4+0.2i}(5), q=3 =", mp.nstr(val, 30))
# Plancherel density integral check
for q in (2, 3, 5):
    tau = 2 * mp.pi / mp.log(q)
    dens = lambda s: mp.mpf(q) / (2 * tau * (q + 1)) * abs(cfun(q, s)) ** -2
    print("int density q=%d       =" % q, mp.nstr(mp.quad(dens, [-tau / 2, 0, tau / 2]), 20))
# Heat kernel h_xi(0), q=2, xi = 0.3+0.2i via direct series of radial averaging
def heat0(q, xi, K=80):
    N = K + 2
    prof = [mp.mpf(0)] * N
    prof[0] = mp.mpf(1)
    total = mp.mpc(0)
    fact = mp.mpf(1)
    for k in range(K):
        total += xi ** k / mp.factorial(k) * prof[0]
        new = [mp.mpf(0)] * N
        for d in range(N):
            if d == 0:
                new[0] = prof[1]
            else:
                nxt = prof[d + 1] if d + 1 < N else 0
                new[d] = prof[d - 1] / (q + 1) + q * nxt / (q + 1)
        prof = new
    return mp.e ** (-xi) * total
print("h_{0.3+0.2i}(0), q=2   =", mp.nstr(heat0(2, mp.mpc(0.3, 0.2)), 30))
