import numpy as np
from numba import njit

# Status codes returned by the kernel.
OK = 0
SINGULAR = 1


@njit(cache=True)
def lp_sweep_kernel(widths, st1, st2, inv_l1, inv_l2, eta, e1, e2, mu, w):
    """
    Coupled diamond-difference sweep for u_k = p_k Psi_k, k = 1, 2.

    Per (cell, direction) the pair of balance equations
        mu (u_k,out - u_k,in)/dx + (st_k + c_k) u_k - c_j u_j = e_k / 2,
        c_k = eta |mu| / lambda_k,
    with u_k = (u_k,in + u_k,out)/2 is solved exactly as a 2x2 system.

    Returns u1, u2, phi1, phi2 (the integrals of u_k), exit fluxes of both
    components, the count of negative values, a status code and the offending
    (cell, direction, determinant) when the status is SINGULAR.
    """
    n_cells = widths.shape[0]
    n_dirs = mu.shape[0]
    u1 = np.zeros((n_cells, n_dirs))
    u2 = np.zeros((n_cells, n_dirs))
    exit1 = np.zeros(n_dirs)
    exit2 = np.zeros(n_dirs)
    negatives = 0

    for n in range(n_dirs):
        a = abs(mu[n])
        c1 = eta * a * inv_l1
        c2 = eta * a * inv_l2
        in1 = 0.0
        in2 = 0.0
        for step in range(n_cells):
            i = step if mu[n] > 0.0 else n_cells - 1 - step
            streaming = 2.0 * a / widths[i]
            a11 = streaming + st1 + c1
            a22 = streaming + st2 + c2
            det = a11 * a22 - c1 * c2
            if not det > 0.0:
                return (u1, u2, np.zeros(n_cells), np.zeros(n_cells), exit1, exit2,
                        negatives, SINGULAR, i, n, det)
            b1 = 0.5 * e1[i] + streaming * in1
            b2 = 0.5 * e2[i] + streaming * in2
            center1 = (b1 * a22 + c2 * b2) / det
            center2 = (a11 * b2 + c1 * b1) / det
            out1 = 2.0 * center1 - in1
            out2 = 2.0 * center2 - in2
            if center1 < 0.0 or center2 < 0.0 or out1 < 0.0 or out2 < 0.0:
                negatives += 1
            u1[i, n] = center1
            u2[i, n] = center2
            in1 = out1
            in2 = out2
        exit1[n] = in1
        exit2[n] = in2

    phi1 = np.zeros(n_cells)
    phi2 = np.zeros(n_cells)
    for i in range(n_cells):
        s1 = 0.0
        s2 = 0.0
        for n in range(n_dirs):
            s1 += w[n] * u1[i, n]
            s2 += w[n] * u2[i, n]
        phi1[i] = s1
        phi2[i] = s2
    return u1, u2, phi1, phi2, exit1, exit2, negatives, OK, -1, -1, 1.0
