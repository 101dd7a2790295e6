# Copyright 2026 The AEVQE Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates data/h2/*.txt.

For each bond distance the four lowest STO-3G FCI levels (one alpha and one
beta electron) are computed with pyscf. Coefficients of

    c0 I + c1 ZI + c2 XI + c3 ZZ + c4 XX

are then fitted so that the spectrum of this operator matches the two lowest
levels exactly and the upper two in least squares. Fits are warm-started from
the previous distance to keep the coefficients smooth along the curve.

Requires pyscf, numpy and scipy. Not needed to build or test the project.
"""

import argparse
import pathlib

import numpy as np
from pyscf import ao2mo, fci, gto, scf
from scipy.optimize import least_squares

I2 = np.eye(2)
X = np.array([[0.0, 1.0], [1.0, 0.0]])
Z = np.diag([1.0, -1.0])
LABELS = ["II", "ZI", "XI", "ZZ", "XX"]
BASIS = [np.kron(I2, I2), np.kron(Z, I2), np.kron(X, I2), np.kron(Z, Z), np.kron(X, X)]
WEIGHTS = np.array([1e3, 1e3, 1.0, 1.0])


def fci_levels(d):
    mol = gto.M(atom=f"H 0 0 0; H 0 0 {d}", basis="sto-3g", verbose=0)
    mf = scf.RHF(mol).run()
    h1 = mf.mo_coeff.T @ mf.get_hcore() @ mf.mo_coeff
    eri = ao2mo.kernel(mol, mf.mo_coeff)
    e, _ = fci.direct_spin1.kernel(h1, eri, 2, 2, nroots=4, ecore=mol.energy_nuc())
    return np.sort(np.asarray(e))


def fit(levels, start):
    def residual(c):
        h = sum(ci * b for ci, b in zip(c, BASIS))
        return WEIGHTS * (np.linalg.eigvalsh(h) - levels)

    return least_squares(residual, start, xtol=1e-15, ftol=1e-15, gtol=1e-15).x


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "h2"))
    ap.add_argument("--start", type=float, default=0.3)
    ap.add_argument("--stop", type=float, default=2.5)
    ap.add_argument("--step", type=float, default=0.1)
    args = ap.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    c = np.array([-1.0, 0.4, 0.1, 0.2, 0.1])
    for d in np.round(np.arange(args.start, args.stop + 1e-9, args.step), 2):
        levels = fci_levels(d)
        c = fit(levels, c)
        h = sum(ci * b for ci, b in zip(c, BASIS))
        got = np.linalg.eigvalsh(h)
        with open(out / f"h2_d{d:.2f}.txt", "w") as f:
            f.write(f"# H2 STO-3G, bond distance {d:.2f} angstrom, energies in hartree\n")
            f.write(f"# FCI levels: {' '.join(f'{x:.10f}' for x in levels)}\n")
            f.write(f"# fitted spectrum: {' '.join(f'{x:.10f}' for x in got)}\n")
            for ci, label in zip(c, LABELS):
                f.write(f"{ci:.12f} {label}\n")
        print(f"d={d:.2f} E0 err {abs(got[0] - levels[0]):.1e} E1 err {abs(got[1] - levels[1]):.1e} "
              f"upper err {np.abs(got[2:] - levels[2:]).max():.1e}")


if __name__ == "__main__":
    main()
