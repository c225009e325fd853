"""Independent high-precision evaluations used to freeze expected values in the C++ tests.

Run with: python3 tests/oracles/closed_forms.py
Nothing here imports the C++ library; every value is recomputed from the
closed forms with mpmath at 40 digits and exact integer binomials.
"""
from math import comb

import mpmath as mp

mp.mp.dps = 40


def binom(n, k):
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def f_coeff(nr, mu):
    return (2 * binom(nr + mu, mu) - 4 * mu * binom(mu + nr + 2, nr - 1)
            - mu * (1 + mu) * (2 * binom(mu + nr, nr) + 4 * binom(mu + nr - 2, nr)
                               + binom(mu + nr + 1, nr) - binom(mu + nr + 2, nr - 1)))


def wt(w, wc):
    return mp.sqrt(w * w + wc * wc / 4)


def e0_printed(nr, mu, nz, hbar=1, m=1, w=1, wc=0, a=1):
    return a * a * (hbar * wt(w, wc) * (2 * nr + abs(mu) + 1) + hbar * wc * mu / 2 + hbar * w * (nz + mp.mpf(1) / 2))


def de_eta_printed(nr, mu, eta, hbar=1, m=1, w=1, wc=0):
    return -eta * abs(mu) / (2 * m) - eta * wc / (4 * m * wt(w, wc)) * (2 * nr + abs(mu) + 1)


def de_theta_printed(nr, mu, theta, hbar=1, m=1, w=1, wc=0):
    W = wt(w, wc)
    return -theta * m * W * (W - wc * f_coeff(nr, abs(mu)) / 2) / 2


def level_physical(nr, mu, nz, hbar=1, m=1, w=1, wc=0, a=1):
    return a * a * hbar * (wt(w, wc) * (2 * nr + abs(mu) + 1) - wc * mu / 2 + w * (nz + mp.mpf(1) / 2))


def h_eta_exact(nr, mu, m=1, w=1, wc=0):
    """<H_eta>/hbar on the cylindrical state, from <L_z> = hbar mu and <x^2 + y^2> = hbar (N+1)/(m w~)."""
    return -mp.mpf(mu) / (2 * m) + wc * (2 * nr + abs(mu) + 1) / (4 * m * wt(w, wc))


def h_theta_exact(nr, mu, m=1, w=1, wc=0):
    """<H_theta>/hbar, from <px^2 + py^2> = hbar m w~ (N+1)."""
    W = wt(w, wc)
    return wc * m * W * (2 * nr + abs(mu) + 1) / 4 - m * W * W * mu / 2


def ratio_printed(nr, mu, nz, wc, eta=mp.mpf('0.01'), theta=mp.mpf('0.01')):
    de = de_eta_printed(nr, mu, eta, wc=wc) + de_theta_printed(nr, mu, theta, wc=wc)
    return abs(de / e0_printed(nr, mu, nz, wc=wc))


if __name__ == "__main__":
    print("f(4,0) =", f_coeff(4, 0), " f(4,3) =", f_coeff(4, 3), " f(4,1) =", f_coeff(4, 1), " f(4,2) =", f_coeff(4, 2))
    print("e0(1,0,1) wc=2:", mp.nstr(e0_printed(1, 0, 1, wc=2), 20))
    print("e0(1,0,1) wc=1:", mp.nstr(e0_printed(1, 0, 1, wc=1), 20))
    print("de_eta(0,0) eta=.01 wc=1:", mp.nstr(de_eta_printed(0, 0, mp.mpf('0.01'), wc=1), 20))
    print("de_theta(1,0) theta=.01 wc=2:", mp.nstr(de_theta_printed(1, 0, mp.mpf('0.01'), wc=2), 20))
    print("<H_eta>(0,0,0)/hbar wc=1 (engine sign):", mp.nstr(1 / (4 * wt(1, 1)), 20))
    print("ratio_paper (1,0,1) wc=0.1:", mp.nstr(ratio_printed(1, 0, 1, mp.mpf('0.1')), 20))
    print("level(1,-2,0) m=1.5 w=0.8 wc=1.2 hbar=0.9 a=0.95:",
          mp.nstr(level_physical(1, -2, 0, hbar=mp.mpf('0.9'), m=mp.mpf('1.5'), w=mp.mpf('0.8'),
                                 wc=mp.mpf('1.2'), a=mp.mpf('0.95')), 20))
    print("de_eta(1,-2) |mu| eta=.02 m=1.5 w=.8 wc=1.2:",
          mp.nstr(de_eta_printed(1, -2, mp.mpf('0.02'), m=mp.mpf('1.5'), w=mp.mpf('0.8'), wc=mp.mpf('1.2')), 20))
    print("de_theta(2,1) theta=.03 m=1.5 w=.8 wc=1.2:",
          mp.nstr(de_theta_printed(2, 1, mp.mpf('0.03'), m=mp.mpf('1.5'), w=mp.mpf('0.8'), wc=mp.mpf('1.2')), 20))
    print("h_eta(0,1) wc=0.7:", mp.nstr(h_eta_exact(0, 1, wc=mp.mpf('0.7')), 20))
    print("h_theta(0,1) wc=0.7:", mp.nstr(h_theta_exact(0, 1, wc=mp.mpf('0.7')), 20))
    print("h_eta(1,-1) m=1.3 wc=0.7:", mp.nstr(h_eta_exact(1, -1, m=mp.mpf('1.3'), wc=mp.mpf('0.7')), 20))
    print("h_theta(1,-1) m=1.3 wc=0.7:", mp.nstr(h_theta_exact(1, -1, m=mp.mpf('1.3'), wc=mp.mpf('0.7')), 20))
    print("h_theta(0,0) wc=1:", mp.nstr(h_theta_exact(0, 0, wc=1), 20))
    print("f(10,5) =", f_coeff(10, 5), " f(30,20) =", f_coeff(30, 20))
    r200 = ratio_printed(1, 0, 1, 200)
    r100 = ratio_printed(1, 0, 1, 100)
    print("ratio(200)/ratio(100):", mp.nstr(r200 / r100, 20))

    for q in [(1, 0, 1), (2, 0, 1), (3, 0, 1), (2, 1, 1), (3, 1, 1), (3, 2, 1)]:
        g = lambda wc: ratio_printed(q[0], q[1], q[2], wc)
        pts = [mp.mpf('0.1') * mp.power(100, mp.mpf(k) / 4000) for k in range(4001)]
        k = min(range(len(pts)), key=lambda i: g(pts[i]))
        if 0 < k < len(pts) - 1:
            if g(pts[k]) < mp.mpf('1e-3'):
                # the minimum is the zero crossing of dE1
                wc = mp.findroot(lambda w: de_eta_printed(q[0], q[1], mp.mpf('0.01'), wc=w)
                                 + de_theta_printed(q[0], q[1], mp.mpf('0.01'), wc=w), (pts[k - 1], pts[k + 1]),
                                 solver='anderson')
            else:
                wc = mp.findroot(lambda w: mp.diff(g, w), pts[k])
            print("minimum", q, mp.nstr(wc, 15), mp.nstr(g(wc), 15))
        else:
            print("minimum", q, "boundary", mp.nstr(pts[k], 15))
