"""The (n, r) landscape of abelian-fraction bounds, and how it dives below any epsilon.

A group where every abelian subgroup has at most |G|^eps elements
witnesses a strong failure of commutativity; the constructions here
produce such groups for every eps > 0 by growing n and r together.
"""

from fractions import Fraction

from pgroupcert import epsilon_witness, lambda_table

rows = lambda_table(8, 8)
by_key = {(row.n, row.r): row for row in rows}

print("bound = abelian_exponent / order_exponent   (r = 1 column uses (n+1)/(2n+1))")
header = "n\\r " + "".join(f"{r:>8}" for r in range(1, 9))
print(header)
for n in range(1, 9):
    cells = []
    for r in range(1, 9):
        row = by_key[(n, r)]
        cells.append(f"{str(row.bound):>8}")
    print(f"{n:>3} " + "".join(cells))

print("\nwitnesses for shrinking epsilon (first (n, r) with bound < eps):")
for eps in [Fraction(2, 3), Fraction(3, 5), Fraction(11, 20), Fraction(53, 100)]:
    hit = epsilon_witness(rows, eps)
    if hit is None:
        print(f"  eps = {eps}: none in range")
    else:
        print(f"  eps = {eps}: (n, r) = ({hit.n}, {hit.r}) with bound {hit.bound}")

print("\nnote: rows with r not dividing 4n use the integer choice k = floor(4n/r) + 2,")
print("which still satisfies the required inequality 4n < r(k-1).")
