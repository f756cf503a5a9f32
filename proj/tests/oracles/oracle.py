"""Independent high-precision oracle for the frozen test constants.

Uses mpmath (arbitrary precision normal CDF, erf, adaptive tanh-sinh
quadrature of the blockage integral) and never imports the C++ code.
Run: python3 tests/oracles/oracle.py
"""
import mpmath as mp

mp.mp.dps = 40

L0, HG, HMAX, MU, SIGMA = mp.mpf("0.02"), mp.mpf(2), mp.mpf(29), mp.mpf(19), mp.mpf(10)
B, SNR0, ALPHA, D0 = mp.mpf("1e8"), mp.mpf(50), mp.mpf("2.3"), mp.mpf(1)


def surv_uniform(h):
    return mp.mpf(1) if h < 0 else (mp.mpf(0) if h >= HMAX else 1 - h / HMAX)


def surv_tgauss(h, mu=MU, sigma=SIGMA):
    if h < 0:
        return mp.mpf(1)
    return (1 - mp.ncdf((h - mu) / sigma)) / mp.ncdf(mu / sigma)


def los_single(surv, ha, ri, lam=L0, hg=HG):
    """exp(-int_0^ri lam * S(h_c(r)) dr) with h_c linear along the sight line."""
    if ri == 0:
        return mp.mpf(1)
    f = lambda r: lam * surv(hg + (ha - hg) * r / ri)
    pts = [0, ri]
    rc = ri * (HMAX - hg) / (ha - hg)
    if surv is surv_uniform and 0 < rc < ri:
        pts = [0, rc, ri]
    return mp.exp(-mp.quad(f, pts))


def capacity(d):
    snr_db = SNR0 - 10 * ALPHA * mp.log10(d / D0)
    return B * mp.log(1 + mp.power(10, snr_db / 10), 2)


def show(name, v):
    print(f"{name:40s} {mp.nstr(v, 17)}")


show("erf(1)", mp.erf(1))
show("erf(0.3)", mp.erf(mp.mpf("0.3")))
show("erf(2.5)", mp.erf(mp.mpf("2.5")))
show("erfc(5)", mp.erfc(5))
show("erfc(-1.5)", mp.erfc(mp.mpf("-1.5")))
show("Phi(-7)", mp.ncdf(-7))
show("tgauss cdf(19)", 1 - surv_tgauss(MU))
show("tgauss cdf(40)", 1 - surv_tgauss(mp.mpf(40)))
show("tgauss survival(120)", surv_tgauss(mp.mpf(120)))

p_u = los_single(surv_uniform, mp.mpf(100), mp.mpf(30))
show("uniform P(h=100, r=30)", p_u)
show("uniform two-hop midpoint h=100", p_u ** 2)
show("uniform kappa(h=100)", -mp.log(p_u) / 30)
show("uniform P(h=20, r=30) [below h_max]", los_single(surv_uniform, mp.mpf(20), mp.mpf(30)))
p_t = los_single(surv_tgauss, mp.mpf(100), mp.mpf(30))
show("tgauss P(h=100, r=30)", p_t)
show("tgauss kappa(h=100)", -mp.log(p_t) / 30)
show("tgauss P(h=10, r=50)", los_single(surv_tgauss, mp.mpf(10), mp.mpf(50)))

show("C(d=1)", capacity(mp.mpf(1)))
d = mp.sqrt(900 + mp.mpf("36.3") ** 2)
show("d at (30,0,36.3)", d)
show("capacity_two_hop(30,0,36.3)", capacity(d) / 2)
d100 = mp.sqrt(900 + 10000)
show("throughput_two_hop(30,0,100) uniform", p_u ** 2 * capacity(d100) / 2)
show("throughput_two_hop(30,0,100) tgauss", p_t ** 2 * capacity(d100) / 2)

kap = -mp.log(p_u) / 30
show("c_sum(P=0.857346, h=100)", -mp.log(mp.mpf("0.857346")) / kap)
hmin = HG + 60 * L0 * (HMAX - HG) ** 2 / (2 * HMAX * -mp.log(mp.mpf("0.7")))
show("min altitude uniform P=0.7 g=60", hmin)


def kappa_t(ha):
    return L0 / (ha - HG) * mp.quad(surv_tgauss, [HG, ha])


hmin_t = mp.findroot(lambda h: -mp.log(mp.mpf("0.7")) / kappa_t(h) - 60, (mp.mpf(20), mp.mpf(200)), solver="anderson")
show("min altitude tgauss P=0.7 g=60", hmin_t)
show("sphere radius c_hop=2B", D0 * (mp.power(10, SNR0 / 10) / 3) ** (1 / ALPHA))


def T(ha):
    p = los_single(surv_uniform, ha, mp.mpf(30))
    return p * p * capacity(mp.sqrt(900 + ha * ha)) / 2


h_opt = mp.findroot(lambda h: mp.diff(T, h), mp.mpf(36))
show("optimal altitude midpoint uniform", h_opt)
show("optimal throughput midpoint uniform", T(h_opt))
