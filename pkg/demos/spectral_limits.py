"""
Limits from the block structure of the matrix
==============================================

The long-run expected frequency is read off the strongly connected
classes of the substitution matrix: one Perron vector per closed class,
weighted by how much of the start word each class absorbs.
"""
from fractions import Fraction

from mutadyn import build_substitution_matrix, spectral_report
from mutadyn.fixtures import BLOCK_EXAMPLE, flip_law, tandem_law


def show(v):
    return " ".join(str(x) for x in v)


#%%
# A 6x6 matrix with five classes, three of them closed.
rep = spectral_report(BLOCK_EXAMPLE)
print("blocks:", rep.blocks.blocks)
print("closed:", rep.blocks.maximal_blocks)
for r, ell in zip(rep.right_vectors, rep.left_vectors):
    print("r =", show(r), "   l =", show(ell))
print("sum of l:", show(sum(x) for x in zip(*rep.left_vectors)))

#%%
# Tandem duplication 0 -> 000, 1 -> 111 never mixes the symbols, so 00 and
# 11 are separate closed classes.  From 01 each absorbs half the mass, and
# the convergence conditions fail: the limit is an average over outcomes.
m = build_substitution_matrix(tandem_law(3), 2)
rep = spectral_report(m, ct=[0, 1, 1, 0])
print("s =", rep.s, " limit =", show(rep.limit), " verdict:", rep.conditions.verdict)

#%%
# The flip law (0 -> 1 or 00, 1 -> 0 or 11) is irreducible for 0 < alpha < 1.
# Its single Perron vector is the limit from any start word.
for alpha in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
    m = build_substitution_matrix(flip_law(alpha), 2)
    rep = spectral_report(m, ct=[0, 1, 1, 0])
    spectrum = ", ".join(f"{z.real:.4g}" for z in rep.conditions.eigenvalues)
    print(f"alpha={alpha}: limit {show(rep.limit)}  spectrum [{spectrum}]  "
          f"{rep.conditions.verdict}")
