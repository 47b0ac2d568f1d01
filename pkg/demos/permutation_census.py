"""Census of all 8! = 40320 three-qubit permutation gates.

Every permutation gate has 162 * eps_1 integer, so the whole group splits
into a small number of entangling classes.  The sweep below finds exactly
21 of them, from the 48 non-entangling gates up to the 144 maximizers at
64/81.
"""

from fractions import Fraction

from epower.cli import permutation_census

table = permutation_census()

print(f"{'162*eps':>8}  {'eps_1':>12}  {'class size':>10}")
for key, count in table.rows:
    print(f"{key:>8}  {float(Fraction(key, 162)):>12.8f}  {count:>10}")
print(f"{'':>8}  {'total':>12}  {table.total:>10}")
print()
print(f"number of classes: {len(table.rows)}")
print(f"group mean eps_1:  {table.mean()} = {float(table.mean()):.6f}")
print(f"group max eps_1:   {Fraction(max(k for k, _ in table.rows), 162)}")
