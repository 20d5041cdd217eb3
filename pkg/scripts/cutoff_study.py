"""How stability reports react to the bar length cutoff.

For each model, print dims and the verdict at increasing cutoffs. Below the
required length the report should say so; at or above it the dims settle.
"""

import argparse

from stringtop.bar import tor
from stringtop.dga import trivial_module
from stringtop.hochschild import hh
from stringtop.models import polynomial_algebra, sphere_model


def row(kind, cutoff, r):
    rep = r.report
    verdict = "certified" if rep.certified else ("stable" if rep.stable else "UNSTABLE")
    print("%-14s cutoff %2d  need %-4s %-10s %s" % (kind, cutoff, rep.required_length, verdict, r.dims_list()))


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-cutoff", type=int, default=8)
    p.add_argument("--window", default="0:8")
    ns = p.parse_args()
    W = tuple(int(x) for x in ns.window.split(":"))
    cases = {
        "tor S3": lambda c: (lambda A: tor(trivial_module(A, "right"), A, trivial_module(A), cutoff=c, window=W))(
            sphere_model(3, W).loop_dga),
        "hh k[y_2]": lambda c: hh(polynomial_algebra(2, max(W[1], 0) + 4), cutoff=c, window=W),
    }
    for name, fn in cases.items():
        for c in range(1, ns.max_cutoff + 1):
            row(name, c, fn(c))


if __name__ == "__main__":
    main()
