"""Build a few laws, check the identity, and read off their invariants.

Run: python3 demos/01_laws_and_invariants.py
"""
from gradedleibniz.algebra import AlgebraLaw, is_lie, leibniz_check, lower_central_series
from gradedleibniz.catalog import by_name
from gradedleibniz.nilpotent import characteristic_sequence, filiform_profile


def show(law):
    series = lower_central_series(law)
    cs, witness = characteristic_sequence(law)
    prof = filiform_profile(law)
    print(f"{law.name:>14}: Leibniz={leibniz_check(law).passed!s:5} Lie={is_lie(law)!s:5} "
          f"dims={series.dims} C(L)={cs} type={prof.algebra_type.value}")


# A law typed in by hand: the null-filiform law of dimension 4.
nf4 = AlgebraLaw.from_rules(4, [(1, 1, {2: 1}), (2, 1, {3: 1}), (3, 1, {4: 1})], name="by hand")
show(nf4)

# Catalog laws are addressed by name.
for name in ("NF(4)", "dim4", "mu1", "thmI12(8,1)", "L(7,3)", "F1(5)+C1"):
    show(by_name(name))

# A broken table: the first violating triple is reported.
bad = AlgebraLaw.from_rules(3, [(1, 1, {2: 1}), (1, 2, {3: 1})], name="broken")
i, j, k, residual = leibniz_check(bad, first_only=True).violations[0]
print(f"\nbroken law fails at (e{i}, e{j}, e{k}) with residual {[str(c) for c in residual]}")
