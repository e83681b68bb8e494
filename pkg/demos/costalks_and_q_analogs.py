"""Costalk polynomials from the affine Hecke algebra next to Lusztig's q-analogs.

Run: python demos/costalks_and_q_analogs.py [TYPE] [LMAX]
"""

import sys

from satakecheck.affweyl import affine_weyl_group
from satakecheck.klpoly import kl_engine
from satakecheck.qmult import lusztig_q_mult
from satakecheck.rootdata import root_datum


def main(cartan_type="A2", lmax=4):
    d = root_datum(cartan_type)
    G = affine_weyl_group(d)
    eng = kl_engine(d)
    print(f"{'lambda':>8} {'mu':>8} {'l(n_mu)':>8} {'l(n_lam)':>8}  {'P':<14} {'costalk':<16} q-analog")
    for lam in d.dominant_weights(lmax):
        for mu in d.dominant_below(lam):
            n_mu, n_lam = G.double_coset_max(mu), G.double_coset_max(lam)
            p = eng.kl_polynomial(n_mu, n_lam)
            c = eng.costalk_poincare(lam, mu)
            dq = lusztig_q_mult(d, lam, mu)
            mark = "" if c == dq else "  <-- differs"
            print(f"{str(lam):>8} {str(mu):>8} {G.length(n_mu):>8} {G.length(n_lam):>8}  {str(p):<14} {str(c):<16} {dq}{mark}")


if __name__ == "__main__":
    args = sys.argv[1:]
    main(args[0] if args else "A2", int(args[1]) if len(args) > 1 else 4)
