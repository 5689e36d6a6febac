"""Walk through the ten-element reference instance.

P has parts P1, P2 (four elements each) and P3 (two elements); P' splits
the same ten elements into P1' and P2'. P3 straddles both parts of P'.

    python3 demos/01_fig5_walkthrough.py
"""

from corresp import (
    Constraint,
    bnb_min_st_cut,
    is_mutual,
    mutual_partner,
    optimal_partner,
    phi_min,
    phi_star,
    phi_star_constrained,
)
from corresp.synthetic import fig5_table


def names(ps, labels):
    return "{" + ", ".join(labels[i] for i in ps) + "}"


t = fig5_table()
rows, cols = t.row_names, t.col_names
print("contingency table (rows P, columns P'):")
for name, row in zip(rows, t.n):
    print(f"  {name:3s} {row.tolist()}")

print("\nbest partner of each part set, unconstrained and with a nontrivial partner:")
for s in ([0], [1], [2], [0, 2], [1, 2], [0, 1]):
    print(f"  S={names(s, rows):10s} partner={names(optimal_partner(s, t), cols):12s}"
          f" phi_min={phi_min(s, t)}  phi_star={phi_star(s, t)}")

# phi_star is symmetric but not submodular: {P1,P3} and {P2,P3} both cost 1,
# while their union (all of P) and intersection ({P3}) cost 0 and 5.
print("\nphi_star(S) + phi_star(T) =", phi_star([0, 2], t) + phi_star([1, 2], t),
      "< phi_star(S|T) + phi_star(S&T) =", phi_star([0, 1, 2], t) + phi_star([2], t))

# forcing P'_i into the partner and P'_j out of it breaks symmetry
print("constrained: P1' in, P2' out ->", phi_star_constrained([0], 0, 1, t),
      "; P2' in, P1' out ->", phi_star_constrained([0], 1, 0, t))

print("\nmutual pairs:")
print("  ({P1},{P1'})", is_mutual([0], [0], t), " ({P2},{P2'})", is_mutual([1], [1], t))
print("  {P1,P2} has a mutual partner:", mutual_partner([0, 1], t) is not None)

print("\nminimum P1-P3 cut under each constraint:")
for c in Constraint:
    r = bnb_min_st_cut(t, 0, 2, c)
    print(f"  {c.value:4s} S={names(r.s_side, rows):10s} S'={names(r.partner, cols):12s}"
          f" value={r.value}")
