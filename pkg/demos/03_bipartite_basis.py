"""Correspondences from the bipartite graph of parts.

With no constraint on either side, every cut of the graph on P and P'
(edge weights from the contingency table) is a correspondence whose cost
equals the cut weight, so ordinary maximum flow gives a basis of
|P| + |P'| - 1 correspondences.

    python3 demos/03_bipartite_basis.py
"""

import numpy as np

from corresp import BipartiteGraph, ContingencyTable, bipartite_basis, phi
from corresp.synthetic import fig5_table, random_table


def show(t, title):
    print(f"{title}: |P|={t.shape[0]}, |P'|={t.shape[1]}")
    g = BipartiteGraph.from_table(t)
    for c in bipartite_basis(t).cuts:
        s = ",".join(t.row_names[i] for i in c.s_side) or "-"
        sp = ",".join(t.col_names[j] for j in c.partner) or "-"
        side = np.concatenate([c.s_side.mask, c.partner.mask])
        assert g.cut_weight(side) == c.value == phi(c.s_side, c.partner, t)
        print(f"  S={s:14s} S'={sp:16s} value={c.value}")
    print()


show(fig5_table(), "reference instance")
rand = random_table(np.random.default_rng(1), max_parts=5, max_parts_prime=4)
show(ContingencyTable(rand.n), "random instance")
