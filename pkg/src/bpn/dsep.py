"""Conditional independence by disconnection.

Removing every Z-labelled edge from the atomic part of a normal net must
leave no path from an X-box to a Y-box; when it does, X and Y are
conditionally independent given Z.  A brute-force probabilistic oracle over
the joint distribution is provided for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
import numpy as np

from .bn import BayesianNetwork, bn_joint, bn_to_bpn
from .factors import Factor, sum_out, _broadcast_to, _result_vars
from .net import NetError, ProofNet
from .rewrite import NotNormal, find_redexes, normal_form_decompose, normalize


class NotAPartition(NetError):
    pass


@dataclass(frozen=True)
class CiQuery:
    x: frozenset[str]
    y: frozenset[str]
    z: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "x", frozenset(self.x))
        object.__setattr__(self, "y", frozenset(self.y))
        object.__setattr__(self, "z", frozenset(self.z))
        if self.x & self.y or self.x & self.z or self.y & self.z:
            raise NotAPartition("query sets must be pairwise disjoint")


def disconnected(m: ProofNet, q: CiQuery) -> bool:
    """Graphical test on a net normal for both reduction and pruning."""
    if find_redexes(m, include_pruning=True):
        raise NotNormal("net has remaining redexes")
    concl = m.conclusion_names()
    if q.x | q.y | q.z != concl:
        raise NotAPartition(
            f"{sorted(q.x | q.y | q.z)} does not partition {sorted(concl)}")
    at, _ = normal_form_decompose(m)
    mains = at.main_boxes()
    g = nx.Graph()
    g.add_nodes_from(at.nodes)
    for e in at.edges.values():
        if e.target is not None and e.label.name not in q.z:
            g.add_edge(e.source, e.target)
    xb = {mains[n] for n in q.x if n in mains}
    yb = {mains[n] for n in q.y if n in mains}
    for bx in xb:
        reach = nx.node_connected_component(g, bx)
        if reach & yb:
            return False
    return True


def ci_oracle(joint: Factor, q: CiQuery, tol: float = 1e-9) -> bool:
    """Brute-force check of Pr(x,y|z) = Pr(x|z) Pr(y|z) wherever Pr(z) > 0."""
    names = set(joint.names)
    xyz = q.x | q.y | q.z
    pxyz = sum_out(joint, names - xyz)
    pxz = sum_out(joint, names - (q.x | q.z))
    pyz = sum_out(joint, names - (q.y | q.z))
    pz = sum_out(joint, names - q.z)
    rvars = _result_vars([pxyz])
    a = _broadcast_to(pxyz, rvars) * _broadcast_to(pz, rvars)
    b = _broadcast_to(pxz, rvars) * _broadcast_to(pyz, rvars)
    denom = np.square(_broadcast_to(pz, rvars))
    mask = _broadcast_to(pz, rvars) > 0
    diff = np.zeros_like(a)
    np.divide(np.abs(a - b), denom, out=diff, where=mask)
    return bool(np.all(diff <= tol))


def dsep_pipeline(b: BayesianNetwork, q: CiQuery) -> tuple[bool, bool]:
    """Graphical verdict on the translated, pruned, normalized net, plus the
    probabilistic oracle on the joint."""
    net = bn_to_bpn(b, q.x | q.y | q.z)
    m = normalize(net, include_pruning=True)
    return disconnected(m, q), ci_oracle(bn_joint(b), q)
