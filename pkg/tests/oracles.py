"""Independent reference computations used by the tests.

Nothing here imports the package's design or dispersion code; each oracle is
written straight from the lattice equations so that agreement is a genuine
cross-check.
"""

import cmath
import math

import numpy as np

S3 = math.sqrt(3.0)


def dynamical_matrix(p, q):
    """2x2 Hermitian matrix of the plane-wave problem for (v, w).

    v[n,m] couples to w[n,m], w[n-1,m+1], w[n+1,m+1]; plane waves carry
    exp(i(p n + sqrt3 q m)).
    """
    f = 1.0 + cmath.exp(1j * (-p + S3 * q)) + cmath.exp(1j * (p + S3 * q))
    return np.array([[3.0, -f], [-f.conjugate(), 3.0]])


def omega_eig(p, q):
    """Sorted (acoustic, optical) frequencies by numeric eigenvalues."""
    lam = np.linalg.eigvalsh(dynamical_matrix(p, q))
    return tuple(math.sqrt(max(x, 0.0)) for x in sorted(lam))


def fd_gradient(f, p, q, h=1e-6):
    return (
        (f(p + h, q) - f(p - h, q)) / (2 * h),
        (f(p, q + h) - f(p, q - h)) / (2 * h),
    )


# Explicit MBC stencils written out atom by atom, (sublattice, i, row, b, c),
# with the per-order symmetric coefficient names.
def explicit_stencil(order, x):
    g = lambda k: x.get(k, 0.0)  # noqa: E731
    rows = [("v", 0, 1, 1.0, g("c00"))]
    for i in (-1, 1):
        rows.append(("w", i, 2, g("b11"), g("c11")))
        if order >= 2:
            rows.append(("v", i, 2, g("b12"), g("c12")))
    if order >= 3:
        for i, wt in ((-2, 1), (0, 2), (2, 1)):
            rows.append(("w", i, 3, wt * g("b23"), wt * g("c23")))
    if order >= 4:
        for i, wt in ((-2, 1), (0, 2), (2, 1)):
            rows.append(("v", i, 3, wt * g("b24"), wt * g("c24")))
    if order >= 5:
        for i in (-1, 1):
            rows.append(("w", i, 4, g("b15"), g("c15")))
        for i in (-3, 3):
            rows.append(("w", i, 4, g("b35"), g("c35")))
    return rows


def naive_residual(order, x, p, q, acoustic=True):
    """Delta = i w sum b A e^{i phi} - sum c A e^{i phi}, by plain loops."""
    wa, wo = omega_eig(p, q)
    w = wa if acoustic else wo
    A1 = 1.0 + 2.0 * math.cos(p) * cmath.exp(1j * S3 * q)
    A2 = 3.0 - w * w
    vel = disp = 0j
    for s, i, row, b, c in explicit_stencil(order, x):
        amp = A1 if s == "v" else A2
        ph = cmath.exp(1j * (p * i + S3 * q * (row - 1)))
        vel += b * amp * ph
        disp += c * amp * ph
    return 1j * w * vel - disp


def naive_reflection(order, x, p, q, acoustic=True):
    return -naive_residual(order, x, p, q, acoustic) / naive_residual(order, x, p, -q, acoustic)


def brute_force_hexagon(N, M):
    """Members by flood fill over the bond graph inside the six half-planes."""
    h = (M + 1) // 2
    parity = ((3 * M + 1) // 2) % 2

    def inside(s, n, m):
        if (n + m) % 2 != parity:
            return False
        if s == "v" and not 1 <= m <= M - 1:
            return False
        if s == "w" and not 2 <= m <= M:
            return False
        return n + m >= h + 1 and m - n <= h - 1 and n - m <= N - h and n + m <= N + h

    nbr = {"v": [(0, 0), (-1, 1), (1, 1)], "w": [(0, 0), (-1, -1), (1, -1)]}
    start = next(("v", n, h) for n in range(N + 1) if inside("v", n, h))
    seen = {start}
    stack = [start]
    while stack:
        s, n, m = stack.pop()
        o = "w" if s == "v" else "v"
        for dn, dm in nbr[s]:
            b = (o, n + dn, m + dm)
            if b not in seen and inside(*b):
                seen.add(b)
                stack.append(b)
    return seen
