"""Regenerate crates/core/data/synthetic_15_loci.csv.

Frequencies are drawn once from a symmetric Dirichlet(1) per locus, floored at
0.005, renormalized and rounded to six decimals. The output is committed; this
script only documents how it was produced.
"""
import numpy as np

SEED = 20240917
N_LOCI = 15
FLOOR = 0.005

rng = np.random.default_rng(SEED)
lines = ["locus,allele,frequency"]
for locus in range(N_LOCI):
    k = int(rng.integers(8, 13))
    p = rng.dirichlet(np.ones(k))
    p = np.maximum(p, FLOOR)
    p = p / p.sum()
    micro = np.round(p * 1e6).astype(np.int64)
    micro[np.argmax(micro)] += 1_000_000 - micro.sum()
    for a, m in enumerate(micro):
        lines.append(f"L{locus + 1:02d},{a + 8},{m / 1e6:.6f}")
print("\n".join(lines))
