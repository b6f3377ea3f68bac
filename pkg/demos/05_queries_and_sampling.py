# Posterior queries and forward sampling.

import os
import sys

import numpy as np

sys.path.insert(0, os.path.dirname(__file__))
from _model import rain_model

from bpn import Assignment, bn_to_bpn, forward_sample, query

bn = rain_model()

# Bayes rule on the conclusion marginal: Pr(C | D = t).
net = bn_to_bpn(bn, {"C", "D"})
post = query(net, {"C"}, Assignment({"D": "t"}))
print("Pr(C | D=t) =", post.table)

# Ancestral sampling visits the boxes in polarized topological order; the
# empirical frequency of D=t approaches the exact marginal 0.557.
full = bn_to_bpn(bn, set(bn.names))
rng = np.random.default_rng(0)
n = 5000
hits = sum(forward_sample(full, rng)["D"] == "t" for _ in range(n))
print(f"exact Pr(D=t) = 0.557, sampled = {hits / n:.3f} ({n} draws)")
