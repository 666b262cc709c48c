"""Vectorised numpy implementations of the closed-form kernels.

Every argument is a 1-D float64 array of common length ``n``.  The
hyperbolic functions are evaluated with a shared exponential scale removed,
so all intermediate quantities stay O(1) even when ``beta * xi`` is in the
thousands.
"""

import numpy as np

DEGENERACY_RTOL = 1e-9


def _ratio(x, y):
    out = np.zeros(np.broadcast(x, y).shape)
    np.divide(x, y, out=out, where=y > 0)
    return out


def _hyperbolic(j, gamma, jz, dm, b_mean, b_inhom, beta):
    xi = np.sqrt(b_inhom**2 + j**2 + (jz * dm) ** 2)
    eta = np.sqrt(b_mean**2 + (j * gamma) ** 2)
    scale = np.maximum(beta * eta, beta * (jz + xi))
    ep, em = np.exp(beta * eta - scale), np.exp(-beta * eta - scale)
    a = 0.5 * (ep + em)  # cosh(beta eta)
    s_eta = 0.5 * (ep - em)  # sinh(beta eta)
    xp, xm = np.exp(beta * (jz + xi) - scale), np.exp(beta * (jz - xi) - scale)
    c_xi = 0.5 * (xp + xm)  # e^{beta jz} cosh(beta xi)
    s_xi = 0.5 * (xp - xm)  # e^{beta jz} sinh(beta xi)
    e_jz = np.exp(beta * jz - scale)
    e_0 = np.exp(-scale)
    return xi, eta, a, s_eta, c_xi, s_xi, e_jz, e_0, a + c_xi, scale


def xstate(j, gamma, jz, dm, b_mean, b_inhom, beta):
    xi, eta, a, s_eta, c_xi, s_xi, _, _, tot, scale = _hyperbolic(
        j, gamma, jz, dm, b_mean, b_inhom, beta
    )
    den = 2.0 * tot
    rb = _ratio(b_mean, eta)
    ri = _ratio(b_inhom, xi)
    out = np.empty((j.shape[0], 8))
    out[:, 0] = (a - rb * s_eta) / den
    out[:, 1] = (a + rb * s_eta) / den
    out[:, 2] = (c_xi - ri * s_xi) / den
    out[:, 3] = (c_xi + ri * s_xi) / den
    out[:, 4] = -_ratio(j * gamma, eta) * s_eta / den
    out[:, 5] = -_ratio(j, xi) * s_xi / den
    out[:, 6] = -_ratio(jz * dm, xi) * s_xi / den
    out[:, 7] = np.log(den) + scale - 0.5 * beta * jz
    return out


def thermal_lambdas(j, gamma, jz, dm, b_mean, b_inhom, beta):
    xi, eta, a, s_eta, c_xi, s_xi, e_jz, e_0, tot, _ = _hyperbolic(
        j, gamma, jz, dm, b_mean, b_inhom, beta
    )
    rk = _ratio(np.sqrt(j**2 + (jz * dm) ** 2), xi)
    rg = _ratio(j * gamma, eta)
    den = 2.0 * tot
    root_w = np.sqrt(e_jz**2 + (rk * s_xi) ** 2)
    root_m = np.sqrt(e_0**2 + (rg * s_eta) ** 2)
    out = np.empty((j.shape[0], 4))
    out[:, 0] = np.abs(root_w + rk * s_xi) / den
    out[:, 1] = np.abs(root_w - rk * s_xi) / den
    out[:, 2] = np.abs(root_m - rg * s_eta) / den
    out[:, 3] = np.abs(root_m + rg * s_eta) / den
    return out


def ground_concurrence(j, gamma, jz, dm, b_mean, b_inhom):
    xi = np.sqrt(b_inhom**2 + j**2 + (jz * dm) ** 2)
    eta = np.sqrt(b_mean**2 + (j * gamma) ** 2)
    c_sigma = np.abs(_ratio(j * gamma, eta))
    c_psi = _ratio(np.sqrt(j**2 + (jz * dm) ** 2), xi)
    gap = eta - jz - xi  # eps_2 - eps_4
    tol = DEGENERACY_RTOL * np.maximum(1.0, np.abs(-0.5 * jz - xi))
    return np.where(
        np.abs(gap) <= tol,
        0.5 * np.abs(c_sigma - c_psi),
        np.where(gap > 0, c_sigma, c_psi),
    )


def output_lambdas(j, gamma, jz, dm, b_mean, b_inhom, beta, theta, phi):
    xi, eta, a, s_eta, c_xi, s_xi, _, _, tot, _ = _hyperbolic(
        j, gamma, jz, dm, b_mean, b_inhom, beta
    )
    c_in = np.sin(theta)
    rg = _ratio(j * gamma, eta)
    rj = _ratio(j, xi)
    tot2 = tot * tot
    first = np.sqrt(c_in**2 * (a**2 - c_xi**2) ** 2 + 4.0 * a**2 * c_xi**2)
    p = (rg * s_eta) ** 2
    q = (rj * s_xi) ** 2
    modulus = np.hypot(p * np.cos(2.0 * phi) + q, p * np.sin(2.0 * phi))
    out = np.empty((j.shape[0], 4))
    out[:, 0] = np.abs(first + c_in * modulus) / (2.0 * tot2)
    out[:, 1] = np.abs(first - c_in * modulus) / (2.0 * tot2)
    cross = c_in * rg * rj * s_eta * s_xi * np.cos(phi)
    out[:, 2] = np.abs(a * c_xi + cross) / tot2
    out[:, 3] = np.abs(a * c_xi - cross) / tot2
    return out


def avg_fidelity(j, gamma, jz, dm, b_mean, b_inhom, beta):
    xi, _, a, _, c_xi, s_xi, _, _, tot, _ = _hyperbolic(
        j, gamma, jz, dm, b_mean, b_inhom, beta
    )
    rj = _ratio(j, xi)
    return (a**2 + 2.0 * c_xi**2 + (rj * s_xi) ** 2) / (3.0 * tot**2)


def fidelity_parts(j, gamma, jz, dm, b_mean, b_inhom, beta, phi):
    x = xstate(j, gamma, jz, dm, b_mean, b_inhom, beta)
    w = x[:, 2] + x[:, 3]
    out = np.empty((j.shape[0], 2))
    out[:, 0] = w * w
    out[:, 1] = 0.5 - w + 2.0 * (x[:, 4] ** 2 * np.cos(2.0 * phi) + x[:, 5] ** 2)
    return out


def concurrence(lams):
    return np.maximum(0.0, 2.0 * lams.max(axis=1) - lams.sum(axis=1))
