"""The five-dimensional family L(alpha, eps) and its normal forms mu1..mu4.

The family is closed under the basis changes e1' = a1 e1 + a2 e4,
e4' = b2 e4 (b1 must vanish).  The demo shows the induced map on alpha,
normalizes several alphas to mu4, and shows the invariant that tells mu1
from mu2.
"""
from gradedleibniz.catalog import build_L_alpha_eps, build_mu
from gradedleibniz.iso import invariant_vector, verify_isomorphism
from gradedleibniz.reproduce import _lalpha_change, alpha_prime_formula
from gradedleibniz.scalar import ONE, ZERO, as_scalar

print("alpha' for alpha=2, (a1, a2, b2) = (1, 1, 1):", alpha_prime_formula(2, 1, 1, 1))

print("\nCase 1 (1 + alpha^2 != 0): choose a2 = -a1 alpha / (1 + alpha^2), b2 = D / a1")
for text in ("2", "1/2", "-3"):
    a = as_scalar(text)
    a2 = -a / (1 + a * a)
    D = (1 + a2 * a) ** 2 + a2 * a2
    P, ap = _lalpha_change(build_L_alpha_eps(a, 1), ONE, a2, ZERO, D)
    ok = verify_isomorphism(build_L_alpha_eps(a, 1), build_mu(4), P)
    print(f"  alpha={text:>4}: alpha'={ap}, witness verified against mu4: {ok}")

print("\nCase 2 (alpha = i): 1 + alpha'^2 stays 0 under admissible changes")
a = as_scalar("i")
for a1, a2 in ((1, 1), (2, -1), (3, "1/2")):
    a1, a2 = as_scalar(a1), as_scalar(a2)
    D = (a1 + a2 * a) ** 2 + a2 * a2
    P, ap = _lalpha_change(build_L_alpha_eps(a, 1), a1, a2, ZERO, D / a1)
    print(f"  (a1, a2)=({a1}, {a2}): alpha'={ap}, 1+alpha'^2={1 + ap * ap}")

print("\nmu1 vs mu2: entries of the subspace battery that differ")
v1, v2 = invariant_vector(build_mu(1)), invariant_vector(build_mu(2))
for key in v1.differences(v2):
    name = key.split(":", 1)[-1]
    print(f"  {name:>16}: mu1 {v1.battery.get(name)}  mu2 {v2.battery.get(name)}")
