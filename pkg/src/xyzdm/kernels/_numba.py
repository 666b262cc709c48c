"""numba-compiled loop kernels; same contracts as :mod:`._numpy`."""

import math

import numpy as np
from numba import njit

DEGENERACY_RTOL = 1e-9

_opts = dict(cache=True, nogil=True)


@njit(**_opts)
def _ratio(x, y):
    if y > 0.0:
        return x / y
    return 0.0


@njit(**_opts)
def _hyperbolic(j, gamma, jz, dm, b_mean, b_inhom, beta):
    xi = math.sqrt(b_inhom * b_inhom + j * j + (jz * dm) ** 2)
    eta = math.sqrt(b_mean * b_mean + (j * gamma) ** 2)
    scale = max(beta * eta, beta * (jz + xi))
    ep = math.exp(beta * eta - scale)
    em = math.exp(-beta * eta - scale)
    xp = math.exp(beta * (jz + xi) - scale)
    xm = math.exp(beta * (jz - xi) - scale)
    a = 0.5 * (ep + em)
    s_eta = 0.5 * (ep - em)
    c_xi = 0.5 * (xp + xm)
    s_xi = 0.5 * (xp - xm)
    e_jz = math.exp(beta * jz - scale)
    e_0 = math.exp(-scale)
    return xi, eta, a, s_eta, c_xi, s_xi, e_jz, e_0, a + c_xi, scale


@njit(**_opts)
def xstate(j, gamma, jz, dm, b_mean, b_inhom, beta):
    n = j.shape[0]
    out = np.empty((n, 8))
    for i in range(n):
        xi, eta, a, s_eta, c_xi, s_xi, _, _, tot, scale = _hyperbolic(
            j[i], gamma[i], jz[i], dm[i], b_mean[i], b_inhom[i], beta[i]
        )
        den = 2.0 * tot
        rb = _ratio(b_mean[i], eta)
        ri = _ratio(b_inhom[i], xi)
        out[i, 0] = (a - rb * s_eta) / den
        out[i, 1] = (a + rb * s_eta) / den
        out[i, 2] = (c_xi - ri * s_xi) / den
        out[i, 3] = (c_xi + ri * s_xi) / den
        out[i, 4] = -_ratio(j[i] * gamma[i], eta) * s_eta / den
        out[i, 5] = -_ratio(j[i], xi) * s_xi / den
        out[i, 6] = -_ratio(jz[i] * dm[i], xi) * s_xi / den
        out[i, 7] = math.log(den) + scale - 0.5 * beta[i] * jz[i]
    return out


@njit(**_opts)
def thermal_lambdas(j, gamma, jz, dm, b_mean, b_inhom, beta):
    n = j.shape[0]
    out = np.empty((n, 4))
    for i in range(n):
        xi, eta, a, s_eta, c_xi, s_xi, e_jz, e_0, tot, _ = _hyperbolic(
            j[i], gamma[i], jz[i], dm[i], b_mean[i], b_inhom[i], beta[i]
        )
        rk = _ratio(math.sqrt(j[i] ** 2 + (jz[i] * dm[i]) ** 2), xi)
        rg = _ratio(j[i] * gamma[i], eta)
        den = 2.0 * tot
        root_w = math.sqrt(e_jz * e_jz + (rk * s_xi) ** 2)
        root_m = math.sqrt(e_0 * e_0 + (rg * s_eta) ** 2)
        out[i, 0] = abs(root_w + rk * s_xi) / den
        out[i, 1] = abs(root_w - rk * s_xi) / den
        out[i, 2] = abs(root_m - rg * s_eta) / den
        out[i, 3] = abs(root_m + rg * s_eta) / den
    return out


@njit(**_opts)
def ground_concurrence(j, gamma, jz, dm, b_mean, b_inhom):
    n = j.shape[0]
    out = np.empty(n)
    for i in range(n):
        xi = math.sqrt(b_inhom[i] ** 2 + j[i] ** 2 + (jz[i] * dm[i]) ** 2)
        eta = math.sqrt(b_mean[i] ** 2 + (j[i] * gamma[i]) ** 2)
        c_sigma = abs(_ratio(j[i] * gamma[i], eta))
        c_psi = _ratio(math.sqrt(j[i] ** 2 + (jz[i] * dm[i]) ** 2), xi)
        gap = eta - jz[i] - xi
        tol = DEGENERACY_RTOL * max(1.0, abs(-0.5 * jz[i] - xi))
        if abs(gap) <= tol:
            out[i] = 0.5 * abs(c_sigma - c_psi)
        elif gap > 0.0:
            out[i] = c_sigma
        else:
            out[i] = c_psi
    return out


@njit(**_opts)
def output_lambdas(j, gamma, jz, dm, b_mean, b_inhom, beta, theta, phi):
    n = j.shape[0]
    out = np.empty((n, 4))
    for i in range(n):
        xi, eta, a, s_eta, c_xi, s_xi, _, _, tot, _ = _hyperbolic(
            j[i], gamma[i], jz[i], dm[i], b_mean[i], b_inhom[i], beta[i]
        )
        c_in = math.sin(theta[i])
        rg = _ratio(j[i] * gamma[i], eta)
        rj = _ratio(j[i], xi)
        tot2 = tot * tot
        first = math.sqrt(c_in**2 * (a * a - c_xi * c_xi) ** 2 + 4.0 * a * a * c_xi * c_xi)
        p = (rg * s_eta) ** 2
        q = (rj * s_xi) ** 2
        modulus = math.hypot(p * math.cos(2.0 * phi[i]) + q, p * math.sin(2.0 * phi[i]))
        out[i, 0] = abs(first + c_in * modulus) / (2.0 * tot2)
        out[i, 1] = abs(first - c_in * modulus) / (2.0 * tot2)
        cross = c_in * rg * rj * s_eta * s_xi * math.cos(phi[i])
        out[i, 2] = abs(a * c_xi + cross) / tot2
        out[i, 3] = abs(a * c_xi - cross) / tot2
    return out


@njit(**_opts)
def avg_fidelity(j, gamma, jz, dm, b_mean, b_inhom, beta):
    n = j.shape[0]
    out = np.empty(n)
    for i in range(n):
        xi, _, a, _, c_xi, s_xi, _, _, tot, _ = _hyperbolic(
            j[i], gamma[i], jz[i], dm[i], b_mean[i], b_inhom[i], beta[i]
        )
        rj = _ratio(j[i], xi)
        out[i] = (a * a + 2.0 * c_xi * c_xi + (rj * s_xi) ** 2) / (3.0 * tot * tot)
    return out


@njit(**_opts)
def fidelity_parts(j, gamma, jz, dm, b_mean, b_inhom, beta, phi):
    x = xstate(j, gamma, jz, dm, b_mean, b_inhom, beta)
    n = j.shape[0]
    out = np.empty((n, 2))
    for i in range(n):
        w = x[i, 2] + x[i, 3]
        out[i, 0] = w * w
        out[i, 1] = 0.5 - w + 2.0 * (x[i, 4] ** 2 * math.cos(2.0 * phi[i]) + x[i, 5] ** 2)
    return out


@njit(**_opts)
def concurrence(lams):
    n = lams.shape[0]
    out = np.empty(n)
    for i in range(n):
        top = max(max(lams[i, 0], lams[i, 1]), max(lams[i, 2], lams[i, 3]))
        c = 2.0 * top - (lams[i, 0] + lams[i, 1] + lams[i, 2] + lams[i, 3])
        out[i] = c if c > 0.0 else 0.0
    return out
