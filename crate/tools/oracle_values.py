"""Regenerates the frozen reference values used by the Rust test suites.

Everything here is evaluated with mpmath at 50 significant digits, so it is
independent of the Rust special-function code paths it checks.
"""
import mpmath as mp

mp.mp.dps = 50


def rgamma_taylor(n=30):
    return mp.taylor(lambda z: mp.rgamma(1 + z), 0, n)


def tau(order, x):
    """2 J_v(x) / H1_v(x) for v >= 0."""
    j = mp.besselj(order, x)
    y = mp.bessely(order, x)
    return 2 * j / (j + 1j * y)


def amplitude(k, a, alpha, theta, m_max=80):
    """Resummed finite-radius amplitude: closed-form flux part + remainder."""
    x = k * a
    alpha = mp.mpf(alpha)
    t_inf = 1 - mp.expjpi(2 * alpha)
    fl = mp.floor(alpha)
    sing = 0
    if t_inf != 0:
        sing = t_inf * mp.expj(-(fl + mp.mpf(1) / 2) * theta) / (2j * mp.sin(theta / 2))
    s = 0
    c = int(mp.ceil(abs(alpha)))
    for m in range(-m_max - c, m_max + c + 1):
        o = m + alpha
        r = tau(o, x) if o >= 0 else mp.expjpi(2 * alpha) * tau(-o, x)
        s += r * mp.expj(m * theta)
    pref = -1 / mp.sqrt(2j * mp.pi * k)
    return pref * (sing + s)


def hard_sigma(k, a, m_max=80):
    x = k * a
    s = 0
    for m in range(-m_max, m_max + 1):
        j = mp.besselj(abs(m), x)
        y = mp.bessely(abs(m), x)
        s += j * j / (j * j + y * y)
    return 4 * s / k


if __name__ == "__main__":
    print("// 1/Gamma(1+z) Taylor coefficients")
    for c in rgamma_taylor():
        print("    %s," % mp.nstr(c, 20, min_fixed=-1, max_fixed=-1))
    pts = [(0, 1), (0.5, 2), (0.37, 5), (1.37, 5), (2.7, 500), (0, 100), (0.3, 1e-6),
           (10.25, 3), (30.6, 12), (150.2, 100), (0.9, 1.999), (0.1, 2.0), (5.5, 0.01),
           (1000.5, 900), (7, 45), (3.3, 60), (-0.3, 1), (-4.6, 7.5), (-12.5, 0.8), (2000, 10),
           (40.123, 0.5), (0, 1e-12), (1, 25.0), (0.75, 333.3)]
    print("// (nu, x, J, Y)")
    for nu, x in pts:
        j = mp.besselj(nu, x)
        y = mp.bessely(nu, x)
        print("    (%r, %r, %s, %s)," % (nu, x, mp.nstr(j, 17), mp.nstr(y, 17)))
    for g in [1, 0.5, 0.3, 0.7, 4.5, -2.5, 20.2, 49.5, -49.7, 1e-5]:
        print("gamma", g, mp.nstr(mp.gamma(g), 20))
    f = amplitude(1, 1, 0.5, mp.pi / 2)
    print("amp(k=1,a=1,alpha=0.5,theta=pi/2) =", mp.nstr(f.real, 17), mp.nstr(f.imag, 17))
    f = amplitude(2, 0.7, -1.3, 2.0)
    print("amp(k=2,a=0.7,alpha=-1.3,theta=2) =", mp.nstr(f.real, 17), mp.nstr(f.imag, 17))
    f = amplitude(1, 1, 0, mp.pi)
    print("amp(k=1,a=1,alpha=0,theta=pi) =", mp.nstr(f.real, 17), mp.nstr(f.imag, 17))
    print("sigma_hard(k=1,a=1) =", mp.nstr(hard_sigma(1, 1), 17))
    print("sigma_hard(k=2,a=3) =", mp.nstr(hard_sigma(2, 3), 17))


def bessel_table(path, n=2000, seed=20261015):
    """Random (nu, x, J, Y) rows for the specfun integration tests."""
    import random

    rng = random.Random(seed)
    rows = []
    for i in range(n):
        r = rng.random()
        if r < 0.1:
            nu = float(rng.randint(-20, 20))
        elif r < 0.2:
            nu = rng.randint(-21, 20) + 0.5
        elif r < 0.3:
            nu = rng.uniform(-200, 200)
        else:
            nu = rng.uniform(-20, 20)
        x = 10 ** rng.uniform(-3, mp.log10(500) if abs(nu) <= 20 else 3)
        nu = float(mp.nstr(nu, 12))
        x = float(mp.nstr(x, 12))
        j = mp.besselj(nu, x)
        y = mp.bessely(nu, x)
        if not (1e-290 < abs(j) < 1e290 and 1e-290 < abs(y) < 1e290):
            continue
        rows.append("%r,%r,%s,%s" % (nu, x, mp.nstr(j, 17, min_fixed=1, max_fixed=0),
                                     mp.nstr(y, 17, min_fixed=1, max_fixed=0)))
    with open(path, "w") as fh:
        fh.write("nu,x,j,y\n")
        fh.write("\n".join(rows) + "\n")
