"""Partial Kostant sections, their characteristic maps and the torsor test.

Run: python demos/partial_kostant_sections.py [TYPE] [SEED]
"""

import sys

from satakecheck.slices import WallPoint, centralizer_dim, geometry, torsor_check
from satakecheck.rootdata import root_datum


def main(cartan_type="C2", seed=42):
    d = root_datum(cartan_type)
    for I in d.levi_subsets():
        g = geometry(cartan_type, I)
        print(f"\nI={[i + 1 for i in I]}  invariant degrees {list(g.levi.invariant_degrees)}")
        for p in g.random_points(3, seed):
            x = g.section(p.values)
            rep = torsor_check(cartan_type, I, p)
            vals = ", ".join(str(v) for v in p.values)
            print(f"  c=({vals}): chi(sigma(c)) exact={g.chi(x) == p.values} "
                  f"torsor={rep.status} det={rep.determinant} centralizer={centralizer_dim(g.a, x)}")
        for b in g.levi.outside_positive[:1]:
            try:
                torsor_check(cartan_type, I, g.wall_point(b, seed))
            except WallPoint as exc:
                print(f"  wall of root {b.simple}: refused ({exc})")


if __name__ == "__main__":
    args = sys.argv[1:]
    main(args[0] if args else "C2", int(args[1]) if len(args) > 1 else 42)
