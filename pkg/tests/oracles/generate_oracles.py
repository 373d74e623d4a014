"""Generate the frozen reference values used by the test suite.

Run once (``python tests/oracles/generate_oracles.py``); the output
``frozen_values.json`` is checked in and the tests read only that file. All
values come from independent tools (mpmath at raised precision, scipy), never
from lspec itself.
"""

import json
import math
from pathlib import Path

import mpmath as mp
import numpy as np
from scipy import linalg, special

mp.mp.dps = 40
OUT = Path(__file__).with_name("frozen_values.json")


def c2l(z):
    z = mp.mpc(z)
    return [float(z.real), float(z.imag)]


def gamma_values():
    pts = [1, 0.5, 1j, 0.5 + 3j, -2.5 + 0.3j, 7.25 - 4j, 1 + 2j, 30 + 10j, -10.5, 0.1 + 40j, 45.0]
    return [{"z": c2l(p), "gamma": c2l(mp.gamma(mp.mpc(p)))} for p in pts]


def airy_values():
    xs = [-29.5, -12.0, -5.0, -2.0, -1.0, 0.0, 0.5, 1.7, 2.0, 3.0, 3.5, 7.9, 15.0, 29.9]
    c = mp.cbrt(3)
    # A(x) = pi 3^(-1/3) Ai(-x 3^(-1/3))
    return [{"x": x, "A": float(mp.pi / c * mp.airyai(-mp.mpf(x) / c))} for x in xs]


def airy_zeros():
    a, *_ = special.ai_zeros(20)
    c = 3.0 ** (1.0 / 3.0)
    return [float(mp.cbrt(3) * -mp.airyaizero(j)) for j in range(1, 21)], [float(c * -v) for v in a]


def hyp_unit_values():
    cases = []
    # phi-type parameters, margin n + nu = 10
    for z in [0.3, 0.3 + 0.7j, -0.2]:
        z = mp.mpc(z)
        m = 10
        args = [z + 0.5, z + 0.5, z + 1.5, 2 * z + 1, m + z + 1.5]
        cases.append({"args": [c2l(a) for a in args], "value": c2l(mp.hyp3f2(*args, 1))})
    # chi-type parameters, margin z + 1/2
    for nu, z in [(0.5, 1.0), (2.0, 0.5), (3.0, 1.2 + 0.4j), (0.5, 0.3 - 0.2j)]:
        z = mp.mpc(z)
        args = [nu - 1, nu + 1, z + 0.5, z + nu + 0.5, z + nu + 0.5]
        cases.append({"args": [c2l(a) for a in args], "value": c2l(mp.hyp3f2(*args, 1))})
    return cases


def chi_values():
    out = []
    for nu, z in [(1.0, 0.5), (0.5, 1.0), (2.0, 0.7 + 0.3j), (3.0, 1.5)]:
        z = mp.mpc(z)
        pref = (z + 0.5) * mp.gamma(nu) * mp.gamma(nu + 1) / (mp.gamma(z + 0.5) * mp.gamma(z + nu + 0.5) ** 2)
        val = pref * mp.hyp3f2(nu - 1, nu + 1, z + 0.5, z + nu + 0.5, z + nu + 0.5, 1)
        out.append({"nu": nu, "z": c2l(z), "chi": c2l(val)})
    return out


def phi_values():
    out = []
    for n, nu, z in [(10, 1.0, 0.0), (9, 1.0, 0.3), (20, 0.5, 0.2 + 0.4j)]:
        z = mp.mpc(z)
        m = n + nu
        pref = mp.gamma(m + 1) / (mp.gamma(2 * z + 1) * mp.gamma(m + z + 1.5))
        val = pref * mp.hyp3f2(z + 0.5, z + 0.5, z + 1.5, 2 * z + 1, m + z + 1.5, 1)
        out.append({"n": n, "nu": nu, "z": c2l(z), "phi": c2l(val)})
    return out


def lmat(n, nu):
    return mp.matrix([[mp.mpf(1) / (max(i, j) + mp.mpf(nu)) for j in range(n)] for i in range(n)])


def charpoly_values():
    out = []
    for n, nu, z in [(2, 1.0, 2.0), (10, 1.0, 0.37), (30, 1.0, 4.5), (30, 0.5, 0.3 + 0.2j), (25, 2.7, -1.3), (12, -0.5, 0.8 - 0.1j)]:
        L = lmat(n, nu)
        det = mp.det(mp.eye(n) - mp.mpc(z) * L)
        out.append({"n": n, "nu": nu, "z": c2l(z), "det": c2l(det)})
    return out


def spectra():
    out = []
    for n, nu in [(2, 1.0), (20, 1.0), (40, 0.5), (30, 2.7), (25, -0.5), (60, 1.0)]:
        ev = mp.eigsy(lmat(n, nu), eigvals_only=True)
        out.append({"n": n, "nu": nu, "eigs": sorted(float(v) for v in ev)})
    return out


def hilbert_counts():
    n = 500
    i = np.arange(n)
    ev = linalg.eigvalsh(1.0 / (i[:, None] + i[None, :] + 1.0))
    return {"n": n, "counts": {str(x): int(np.sum(ev > math.pi * x)) for x in (0.3, 0.5, 0.7)}}


def main():
    zeros_mp, zeros_scipy = airy_zeros()
    data = {
        "gamma": gamma_values(),
        "airy_A": airy_values(),
        "airy_zeros": zeros_mp,
        "airy_zeros_scipy": zeros_scipy,
        "hyp3f2_unit": hyp_unit_values(),
        "chi": chi_values(),
        "phi": phi_values(),
        "charpoly": charpoly_values(),
        "spectra": spectra(),
        "hilbert_counts_500": hilbert_counts(),
        "zeta3": float(mp.zeta(3)),
        "euler_gamma": float(mp.euler),
    }
    OUT.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
