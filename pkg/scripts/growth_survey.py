#!/usr/bin/env python3
"""Survey transfer kernels and growth behavior over the catalog.

For every catalog group with G/G' of positive p-rank, print the
transfer-kernel pattern, and for each index-p subgroup the shape of the
upstairs class group stand-in H/H', the growth class, and whether the norm
kernel equals the sigma-augmentation image (the ambiguity identity)."""

from capkit.catalog import load_catalog
from capkit.gmodule import (catalog_relative_data, classify_growth,
                            f_property)
from capkit.pcgroup import capitulation_type


def main():
    for name, G in load_catalog().items():
        A = G.abelianization()[0]
        if A.rank(G.p) < 1:
            continue
        print("%s: p=%d, order %d, G/G' = %s"
              % (name, G.p, G.order, A.invariant_factors))
        if A.ngens == 2:
            codes = ["?" if e.code is None else str(e.code)
                     for e in capitulation_type(G)]
            print("  kernel pattern: (%s)" % ",".join(codes))
        for i, d in enumerate(catalog_relative_data(G), 1):
            print("  H%d: H/H' = %-12s %-12s norm kernel %s A_L^s"
                  % (i, d.A_L.invariant_factors,
                     classify_growth(d).value,
                     "=" if f_property(d) else "!="))


if __name__ == "__main__":
    main()
