"""Factor semantics of Bayesian proof-nets.

The meaning of a net is the product of its box CPTs with every
non-conclusion name summed out.  Rooted cut-nets are evaluated bottom-up:
each subtree yields a factor over its boundary names, so intermediate
tables stay within the cut-net's width.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .cutnet import RootedCutNet, SubTree
from .factors import (Assignment, CostCounters, Factor, UnknownName, ZeroMass,
                      normalize as normalize_factor, product_many, restrict, sum_out)
from .formulas import Atom, atoms
from .net import NonAtomic, ProofNet, is_bayesian, polarized_dag
from .bn import NotBayesian
from .rewrite import Redex, reduce_step


@dataclass
class Interpretation:
    factor: Factor
    counters: CostCounters
    max_intermediate: int


def _require_positive_bpn(net: ProofNet) -> None:
    if any(not a.positive for eid in net.conclusions
           for a in atoms(net.edges[eid].label)):
        raise NotBayesian("net has negative conclusion atoms")
    if not is_bayesian(net):
        raise NotBayesian("net is not a Bayesian proof-net")


def interpret_naive(net: ProofNet,
                    counters: Optional[CostCounters] = None) -> Interpretation:
    """Product of all box CPTs, then one global sum-out."""
    _require_positive_bpn(net)
    counters = counters if counters is not None else CostCounters()
    cpts = [b.cpt for b in net.boxes()]
    mains = {net.box_main_name(b.id) for b in net.boxes()}
    joint = product_many(cpts, counters)
    factor = sum_out(joint, mains - net.conclusion_names(), counters)
    return Interpretation(factor, counters, counters.max_live_table)


def _subtree_factor(net: ProofNet, t: SubTree, counters: CostCounters) -> Factor:
    child_factors = [_subtree_factor(net, ch, counters) for ch in t.children]
    local = [net.nodes[n].cpt for n in t.component
             if net.nodes[n].kind == "box"]
    total = t.all_nodes()
    # names visible on the subtree's outward boundary (or the net conclusions)
    keep: set[str] = set()
    for e in net.edges.values():
        if e.source in total and (e.target is None or e.target not in total):
            keep |= {a.name for a in atoms(e.label)}
    prod = product_many(local + child_factors, counters)
    return sum_out(prod, set(prod.names) - keep, counters)


def interpret_rooted(rcn: RootedCutNet,
                     counters: Optional[CostCounters] = None) -> Interpretation:
    _require_positive_bpn(rcn.net)
    counters = counters if counters is not None else CostCounters()
    factor = _subtree_factor(rcn.net, rcn.tree, counters)
    concl = rcn.net.conclusion_names()
    if set(factor.names) - concl:
        factor = sum_out(factor, set(factor.names) - concl, counters)
    return Interpretation(factor, counters, counters.max_live_table)


class ZeroEvidence(ValueError):
    pass


def query(net: ProofNet, targets: Iterable[str], evidence: Assignment,
          counters: Optional[CostCounters] = None) -> Factor:
    """Posterior over the targets given the evidence, by Bayes rule on the
    conclusion marginal."""
    targets = set(targets)
    concl = net.conclusion_names()
    missing = (targets | set(evidence)) - concl
    if missing:
        raise UnknownName(f"names {sorted(missing)} are not conclusions of the net")
    marginal = interpret_naive(net, counters).factor
    sliced = restrict(marginal, evidence, counters)
    numer = sum_out(sliced, set(sliced.names) - targets, counters)
    try:
        return normalize_factor(numer, counters)
    except ZeroMass:
        raise ZeroEvidence("the evidence has zero probability") from None


def forward_sample(net: ProofNet, rng) -> Assignment:
    """Ancestral sampling: visit boxes in polarized topological order, each
    drawing its main variable from the CPT row picked by sampled inputs."""
    if not net.is_atomic():
        raise NonAtomic("sampling requires an atomic net")
    _require_positive_bpn(net)
    if isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(int(rng))
    mains = net.main_boxes()
    a = Assignment()
    for x in polarized_dag(net).topological_names():
        cpt = net.nodes[mains[x]].cpt
        inputs = Assignment({n: a[n] for n in cpt.names if n != x})
        row = restrict(cpt, inputs)
        spec = cpt.spec_of(x)
        probs = row.table / row.table.sum()
        idx = int(rng.choice(spec.size, p=probs))
        a = a.extended(x, spec.values[idx])
    return a


def check_invariance(net: ProofNet, steps: Sequence[Redex], tol: float = 1e-9) -> bool:
    """Replay a reduction trace, comparing the interpretation after every
    step with the initial one."""
    cur = net.copy()
    base = interpret_naive(cur).factor
    for r in steps:
        reduce_step(cur, r)
        if not interpret_naive(cur).factor.allclose(base, tol):
            return False
    return True
