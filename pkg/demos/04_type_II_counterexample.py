"""A six-dimensional point of the type-II (r = 3) table that escapes the
classification: Leibniz, not Lie, not split, and 2-filiform of type II.

The point sits on the grid of T_II_r(6, 3) with alpha_1_6 = -2.  The
characteristic sequence is certified symbolically: every 4-minor of R_x
vanishes for a generic x, so no x has a Jordan block longer than 4.
"""
from gradedleibniz.algebra import AlgebraLaw, is_lie, leibniz_check, split_abelian_rank
from gradedleibniz.nilpotent import filiform_profile
from gradedleibniz.reproduce import certify_charseq

rules = [(2, 1, {3: 1}), (3, 1, {4: 1}), (4, 1, {5: 1}),
         (1, 2, {3: -1}), (1, 3, {4: -1}), (1, 4, {5: -1}), (1, 6, {5: -2}),
         (2, 3, {6: 1}), (3, 2, {6: -1}), (2, 4, {5: -1}), (4, 2, {5: -1}),
         (3, 3, {5: 1})]
law = AlgebraLaw.from_rules(6, rules, name="T_II_r(6,3) point")
for line in law.describe():
    print("  ", line)

prof = filiform_profile(law)
print(f"\nLeibniz: {leibniz_check(law).passed}")
print(f"Lie: {is_lie(law)}, split rank: {split_abelian_rank(law)}")
print(f"C(L) = {prof.charseq}, p = {prof.p}, {prof.algebra_type.value}")
print(f"rank R_x <= 3 for symbolic x: {certify_charseq(law, 3)}")
