"""Independent evaluation of the closed-form regression constants frozen in the C++ tests.

Uses mpmath at 50 digits with scipy's CODATA values; shares no code with the library.
"""
import mpmath as mp
from scipy import constants as sc

mp.mp.dps = 50
e = mp.mpf(sc.e)
kb = mp.mpf(sc.k)
hbar = mp.mpf(sc.h) / (2 * mp.pi)
c0 = mp.mpf(sc.c)
eps0 = mp.mpf(sc.epsilon_0)
mu0 = mp.mpf(sc.mu_0)


def kubo(mu_ev, tau, temp, f):
    x = mu_ev * e / (kb * temp)
    w = 2 * mp.pi * f
    pref = e**2 * kb * temp / (mp.pi * hbar**2)
    return pref * tau / (1 - 1j * w * tau) * (x + 2 * mp.log(1 + mp.exp(-x)))


s = kubo(mp.mpf("0.5"), mp.mpf("1e-12"), mp.mpf(300), mp.mpf("5.5e9"))
print("kubo_0.5eV_1ps_300K_5.5GHz", mp.nstr(s.real, 17), mp.nstr(s.imag, 17))
b = s / mp.mpf("3e-3")
print("bulk_3mm", mp.nstr(b.real, 17), mp.nstr(b.imag, 17))
s0 = kubo(mp.mpf(0), mp.mpf("1e-12"), mp.mpf(300), mp.mpf(0))
print("kubo_mu0_f0", mp.nstr(s0.real, 17))

sig = 2 * mp.pi * mp.mpf("5.5e9") * eps0 * mp.mpf("2.9") * mp.mpf("0.0025")
print("lcp_sigma_eq", mp.nstr(sig, 17))
sig_pm = 2 * mp.pi * mp.mpf("5.5e9") * eps0 * mp.mpf("2.55") * mp.mpf("0.002")
print("pm_sigma_eq", mp.nstr(sig_pm, 17))

dt = mp.mpf("0.99") * mp.mpf("5e-4") / (c0 * mp.sqrt(3))
print("courant_dt_0.5mm_0.99", mp.nstr(dt, 17))

f_patch = c0 / (2 * mp.mpf("0.019") * mp.sqrt(2))
print("patch_19mm_eps2", mp.nstr(f_patch, 17))

# LCP edge update coefficients at delta = 0.5 mm, courant 0.99
eps = eps0 * mp.mpf("2.9")
k = sig * dt / (2 * eps)
ca = (1 - k) / (1 + k)
cb = (dt / (eps * mp.mpf("5e-4"))) / (1 + k)
print("lcp_ca", mp.nstr(ca, 17), "lcp_cb", mp.nstr(cb, 17))

# PEC box 40 x 30 x 20 mm modes (at least two nonzero indices)
a, bb, d = mp.mpf("0.04"), mp.mpf("0.03"), mp.mpf("0.02")
modes = set()
for m in range(4):
    for n in range(4):
        for p in range(4):
            if (m > 0) + (n > 0) + (p > 0) < 2:
                continue
            modes.add(float(c0 / 2 * mp.sqrt((m / a) ** 2 + (n / bb) ** 2 + (p / d) ** 2)))
print("cavity_modes", sorted(modes)[:4])
