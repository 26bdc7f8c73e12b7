"""Abelian-subgroup bounds of the Heisenberg groups, two independent ways.

The group on (n, p) has p^(2n+1) elements; its largest abelian subgroups
have exactly p^(n+1).  The structural route goes through isotropic
subspaces of the commutator form; the brute-force route only multiplies
group elements.  They must agree wherever both run.
"""

from fractions import Fraction

from pgroupcert import (
    SymplecticForm,
    brute_force_lambda,
    enumerate_group,
    gen_f,
    group_order,
    max_abelian_exponent,
)

print(f"{'(n, p)':>8} {'|G|':>6} {'brute max |A|':>14} {'structural':>11} {'lambda':>7}")
for n, p in [(1, 3), (1, 5), (1, 7), (2, 3)]:
    brute_order, lam = brute_force_lambda(n, p)
    structural = max_abelian_exponent(n, p)
    print(
        f"{(n, p)!s:>8} {group_order(n, p):>6} {brute_order:>14} "
        f"{p**structural:>11} {str(lam):>7}"
    )

print("\nthe commutator law pins the whole structure:")
n, p = 2, 3
form = SymplecticForm.standard(n, p)
f = gen_f(n, p)
elements = enumerate_group(n, p)
sample = [elements[17], elements[101], elements[200]]
for g in sample:
    for h in sample:
        w = form.evaluate(g.eta(), h.eta())
        assert g.commutator(h) == f**w
        print(f"[{g.x}{g.y}{g.z}, {h.x}{h.y}{h.z}] = f^{w}")

print("\nas n grows at r = 1 the abelian fraction (n+1)/(2n+1) falls toward 1/2:")
for n in range(1, 8):
    print(f"  n = {n}: {Fraction(n + 1, 2 * n + 1)}")
