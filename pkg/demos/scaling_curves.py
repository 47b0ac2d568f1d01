"""How entangling power scales with local dimension and party count.

Three-qudit table: the Haar mean, the attainable maximum, and the ceiling
set by the one-tangle of maximally entangled states.  All three limit to 2
as d grows, i.e. a typical large-dimension gate sends product states close
to maximal entanglement.  The second table tracks mean/bound and
orthogonal/unitary ratios toward 1 in the number of parties.

Pass --plot to also write scaling_curves.png (needs matplotlib).
"""

import sys

from epower import (
    max_tau_one,
    mean_qudit_orthogonal,
    mean_qudit_unitary,
    upper_bound_qudit,
)

D_RANGE = range(2, 17)
N_RANGE = range(2, 9)

print("three-qudit gates (n = 3)")
print(f"{'d':>3}  {'mean U(d^3)':>12}  {'max eps_1':>12}  {'max tau_1':>12}")
rows = []
for d in D_RANGE:
    mu = float(mean_qudit_unitary(3, d))
    ub = float(upper_bound_qudit(3, d))
    cap = float(max_tau_one(d))
    rows.append((d, mu, ub, cap))
    print(f"{d:>3}  {mu:>12.6f}  {ub:>12.6f}  {cap:>12.6f}")

print()
print("n-qudit ratios")
print(f"{'n':>3}  {'d':>3}  {'mean/bound':>12}  {'orth/unitary':>13}")
ratio_rows = []
for d in (2, 4, 16):
    for n in N_RANGE:
        mu = mean_qudit_unitary(n, d)
        r1 = float(mu / upper_bound_qudit(n, d))
        r2 = float(mean_qudit_orthogonal(n, d) / mu)
        ratio_rows.append((n, d, r1, r2))
        print(f"{n:>3}  {d:>3}  {r1:>12.8f}  {r2:>13.8f}")

if "--plot" in sys.argv[1:]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
    ds = [r[0] for r in rows]
    ax1.plot(ds, [r[1] for r in rows], "o-", label="Haar mean")
    ax1.plot(ds, [r[2] for r in rows], "s-", label="maximum")
    ax1.plot(ds, [r[3] for r in rows], "d-", label="max one-tangle")
    ax1.set_xlabel("local dimension d")
    ax1.set_ylabel("eps_1")
    ax1.set_title("three-qudit gates")
    ax1.legend()
    for d in (2, 4, 16):
        pts = [(n, r1) for n, dd, r1, _ in ratio_rows if dd == d]
        ax2.plot([p[0] for p in pts], [p[1] for p in pts], "o-", label=f"d = {d}")
    ax2.set_xlabel("parties n")
    ax2.set_ylabel("mean / bound")
    ax2.set_title("approach to the bound")
    ax2.legend()
    fig.tight_layout()
    fig.savefig("scaling_curves.png", dpi=150)
    print("\nwrote scaling_curves.png")
