"""
Substitution matrices and exact expected frequencies
=====================================================

A binary law where 0 becomes 00 or 01 and 1 becomes 11 or 00.  Every
replacement has length two, so the word grows by exactly one symbol per
step and the expected k-tuple frequency follows a product of matrices.
"""
from fractions import Fraction

from mutadyn import (build_substitution_matrix, classify, count_vector,
                     expected_frequency_trajectory, oracle_expected_frequency)
from mutadyn.fixtures import running_law

law = running_law()
print(classify(law).describe())

#%%
# The 2-substitution matrix.  Column v collects where the windows touching
# a mutated symbol of v end up; each column sums to tau + k - 1 = 3.
m2 = build_substitution_matrix(law, 2)
for row in m2.entries:
    print("  ".join(f"{str(x):>6}" for x in row))
print("column sums:", [str(c) for c in m2.column_sums()])

#%%
# Start from 00111.  Its cyclic 2-tuple counts are 00:1 01:1 10:1 11:2.
word = (0, 0, 1, 1, 1)
print("ct =", count_vector(word, 2, 2).tolist())

#%%
# Exact expected frequencies for the first few steps.  The brute-force
# enumeration of every mutation history agrees to the last digit.
for step, length, fr in expected_frequency_trajectory(law, word, 2, 4):
    same = fr == oracle_expected_frequency(law, word, 2, step)
    print(step, length, [str(x) for x in fr], "oracle agrees" if same else "MISMATCH")

#%%
# Further out the numbers settle.  Denominators grow quickly, so show decimals.
for step, _, fr in expected_frequency_trajectory(law, word, 2, 3000):
    if step in (10, 100, 1000, 3000):
        print(step, [f"{float(x):.5f}" for x in fr])
print("limit  ", [f"{float(x):.5f}" for x in (Fraction(24, 55), Fraction(9, 55),
                                               Fraction(9, 55), Fraction(13, 55))])
