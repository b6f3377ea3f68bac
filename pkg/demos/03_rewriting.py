# Cut elimination preserves meaning.
#
# Every rewrite step (including pruning a box cut against a weakening)
# leaves the interpretation unchanged.  Normal forms are reached in at most
# one step per initial node and do not depend on the reduction order.

import os
import sys

import numpy as np

sys.path.insert(0, os.path.dirname(__file__))
from _model import rain_model

from bpn import (bn_to_bpn, check_invariance, find_redexes, interpret_naive,
                 is_isomorphic, normalize)

net = bn_to_bpn(rain_model(), {"D"})
print("Pr(D) before:", interpret_naive(net).factor.table)

# The unqueried sink E is cut against a weakening: pruning removes its box
# entirely, shrinking the net without touching the answer.
trace = []
normal = normalize(net, include_pruning=True, trace=trace)
for r in trace:
    print("step:", r.kind, r.nodes)
print("invariant along the trace:", check_invariance(net, trace))
print("names left:", sorted(normal.names()))
print("Pr(D) after:", interpret_naive(normal).factor.table)

# Confluence: ten random reduction orders all reach the same normal form.
rng = np.random.default_rng(0)
base = normalize(net, include_pruning=True, rng=rng)
same = all(is_isomorphic(normalize(net, include_pruning=True, rng=rng), base)
           for _ in range(10))
print("order-independent:", same)
print("no redexes left:", not find_redexes(base, include_pruning=True))
