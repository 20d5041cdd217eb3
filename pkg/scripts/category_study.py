"""Compare Hochschild homology of the Ext-only and chain-level Hom categories.

The category {free, k} over k[y_2] should match hh(k[y_2]) once morphisms are
kept at chain level; the category built from Ext groups alone sees an extra
class in degree 0.
"""

import argparse
import time

from stringtop.bar import ext_category
from stringtop.dga import as_module, trivial_module
from stringtop.hochschild import hh, hh_category
from stringtop.models import polynomial_algebra


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--top", type=int, default=8)
    p.add_argument("--cutoff", type=int, default=1)
    ns = p.parse_args()
    W = (0, ns.top)
    A = polynomial_algebra(2, ns.top + 2)
    mods = [as_module(A), trivial_module(A)]
    print("hh(A)        ", hh(A, window=W).dims_list())
    for chain in (False, True):
        t = time.perf_counter()
        C = ext_category(A, mods, window=W, names=["point", "k"], chain_level=chain)
        r = hh_category(C, cutoff=ns.cutoff, window=W)
        print("%-13s" % ("chain-level" if chain else "Ext only"), r.dims_list(),
              "stable" if r.report.stable else "unstable", "%.1fs" % (time.perf_counter() - t))


if __name__ == "__main__":
    main()
