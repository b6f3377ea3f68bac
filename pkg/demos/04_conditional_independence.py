# Conditional independence read off the net.
#
# After pruning and normalizing, X and Y are independent given Z exactly
# when deleting the Z-labelled edges disconnects the X-boxes from the
# Y-boxes.  A brute-force check on the joint confirms each verdict.

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))
from _model import rain_model

from bpn import CiQuery, dsep_pipeline

bn = rain_model()

queries = [
    CiQuery({"B"}, {"E"}, {"A", "C", "D"}),   # blocked at C
    CiQuery({"B"}, {"C"}, {"A", "D", "E"}),   # D is a conditioned collider
    CiQuery({"A"}, {"D", "E"}, {"B", "C"}),   # children screen off A
]
for q in queries:
    graphical, oracle = dsep_pipeline(bn, q)
    print(f"{sorted(q.x)} _||_ {sorted(q.y)} | {sorted(q.z)}:",
          "independent" if graphical else "dependent",
          f"(oracle agrees: {graphical == oracle})")
