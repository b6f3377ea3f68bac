# From a factorized net to a sequent-calculus proof.
#
# After elimination the net is split by several atomic cuts.  Cut typing
# merges the cuts between each pair of components into a single cut on a
# tensor/par formula, and the typed net sequentializes into a proof tree.

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))
from _model import rain_model

from bpn import (bn_to_bpn, desequentialize, is_isomorphic, normalize,
                 sequentialize, type_cuts, ve_factorize)
from bpn.formulas import format_formula

net = bn_to_bpn(rain_model(), {"D"})
cutnet = ve_factorize(net, ["A", "B", "C"]).to_cutnet()
print("components:", len(cutnet.components),
      "separating cuts:", len(cutnet.separating_cuts))

typed = type_cuts(cutnet)
for cid in typed.separating_cuts:
    labs = [format_formula(typed.net.edges[e].label)
            for e in typed.net.nodes[cid].premises]
    print("typed cut:", labs[0], "against", labs[1])

# The typed net is proper (one cut per adjacent pair), so it reads as a
# sequent proof: one sub-proof per component, joined by cut rules.
tree = sequentialize(typed)
print(tree.render())

# Reading the tree back gives the same net, and eliminating the typed cuts
# restores the original flat net.
back = typed.net.copy()
back.set_conclusions(list(tree.ports))
print("round trip:", is_isomorphic(desequentialize(tree), back))
print("normalizes back:", is_isomorphic(normalize(typed.net), net))
