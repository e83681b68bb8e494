"""Graded invariants on every Levi slice for one highest weight.

For each subset I the invariants of L(lam) (x) O(f_I + b) are computed
coset by coset; the certified numerators are printed with their ranks.

Run: python demos/spectral_hilbert_series.py [TYPE] [LAMBDA] [CUTOFF]
"""

import sys

from satakecheck.rootdata import parse_weight, root_datum
from satakecheck.invariants import spectral_module


def main(cartan_type="A2", lam=(1, 1), cutoff=8):
    d = root_datum(cartan_type)
    print(f"{cartan_type} lambda={lam} dim={d.weyl_dimension(lam)} cutoff={cutoff} (halved)")
    for I in d.levi_subsets():
        sm = spectral_module(cartan_type, I, lam, cutoff)
        levi = d.levi(I)
        print(f"\nI={[i + 1 for i in I]}  denominator exponents {list(levi.denominator_exponents)}")
        print(f"  total: {sm.total.status} rank={sm.total.rank} numerator={sm.total.numerator}")
        for chi, s in sm.summaries.items():
            if s.rank:
                label = ",".join(str(x) for x in chi)
                print(f"  coset [{label}]: rank {s.rank}, numerator {s.numerator}")


if __name__ == "__main__":
    args = sys.argv[1:]
    t = args[0] if args else "A2"
    lam = parse_weight(args[1]) if len(args) > 1 else (1, 1)
    main(t, lam, int(args[2]) if len(args) > 2 else 8)
