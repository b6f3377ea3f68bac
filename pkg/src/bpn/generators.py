"""Random instances for property tests, demos, and the acceptance suite."""

from __future__ import annotations

import itertools

import numpy as np

from .bn import BayesianNetwork, bn_to_bpn
from .factors import Factor, VarSpec, factor_new
from .formulas import neg, pos
from .net import ProofNet, check_correctness
from . import rewrite


def random_bn(rng, n_min: int = 3, n_max: int = 8, p_edge: float = 0.4,
              max_parents: int = 3) -> BayesianNetwork:
    """Random binary BN with strictly positive CPT rows."""
    n = int(rng.integers(n_min, n_max + 1))
    names = [f"V{i}" for i in range(n)]
    variables = [VarSpec(x) for x in names]
    parents: dict[str, list[str]] = {}
    cpts: dict[str, Factor] = {}
    for i, x in enumerate(names):
        cands = [names[j] for j in range(i) if rng.random() < p_edge]
        ps = cands[:max_parents]
        parents[x] = ps
        rows = rng.random((2 ** len(ps), 2)) + 0.05
        rows /= rows.sum(axis=1, keepdims=True)
        cpts[x] = factor_new([variables[names.index(p)] for p in ps] + [variables[i]],
                             rows.ravel())
    return BayesianNetwork(variables, parents, cpts)


def random_query(rng, b: BayesianNetwork, nonempty: bool = True) -> set[str]:
    q = {x for x in b.names if rng.random() < 0.5}
    if nonempty and not q:
        q = {b.names[int(rng.integers(len(b.names)))]}
    return q


def random_bpn(rng, **kw) -> ProofNet:
    b = random_bn(rng, **kw)
    return bn_to_bpn(b, random_query(rng, b))


def _gensym(net: ProofNet, prefix: str) -> str:
    used = net.names()
    i = 0
    while f"{prefix}{i}" in used:
        i += 1
    return f"{prefix}{i}"


def _expanded_axiom(net: ProofNet, x: str, y: str) -> tuple[int, int]:
    """Eta-expanded axiom on X+ * Y+: returns the tensor and par conclusion
    edges (X+ * Y+) and (X- | Y-)."""
    from .formulas import Par, Tensor
    _, (xp, xn) = net.add_node("ax", conclusion_labels=[pos(x), neg(x)])
    _, (yp, yn) = net.add_node("ax", conclusion_labels=[pos(y), neg(y)])
    _, (te,) = net.add_node("tensor", premises=[xp, yp],
                            conclusion_labels=[Tensor(pos(x), pos(y))])
    _, (pe,) = net.add_node("par", premises=[xn, yn],
                            conclusion_labels=[Par(neg(x), neg(y))])
    return te, pe


def add_tensor_par_gadget(net: ProofNet, rng) -> None:
    """Disconnected piece with a tensor/par redex: a cut between two
    eta-expanded axioms, which reduces away through ax/cut steps."""
    x, y = _gensym(net, "G"), _gensym(net, "H")
    t1, _p1 = _expanded_axiom(net, x, y)
    _t2, p2 = _expanded_axiom(net, x, y)
    net.add_node("cut", premises=[t1, p2])
    net.refresh_conclusions()


def add_one_bot_gadget(net: ProofNet, rng) -> None:
    from .formulas import BOT, ONE
    _, (oe,) = net.add_node("one", conclusion_labels=[ONE])
    _, (be,) = net.add_node("bot", conclusion_labels=[BOT])
    net.add_node("cut", premises=[oe, be])
    net.refresh_conclusions()


def add_cw_gadget(net: ProofNet, rng) -> None:
    """Contraction over two weakenings plus an ax consuming the result."""
    x = _gensym(net, "K")
    _, (w1,) = net.add_node("weakening", conclusion_labels=[neg(x)])
    _, (w2,) = net.add_node("weakening", conclusion_labels=[neg(x)])
    _, (ce,) = net.add_node("contraction", premises=[w1, w2],
                            conclusion_labels=[neg(x)])
    _, (ap, an) = net.add_node("ax", conclusion_labels=[pos(x), neg(x)])
    net.add_node("cut", premises=[ap, ce])
    net.refresh_conclusions()


def random_correct_net(rng, max_nodes: int = 30) -> ProofNet:
    """Correct net with assorted redexes, for termination/confluence tests."""
    net = random_bpn(rng, n_min=2, n_max=4)
    for _ in range(int(rng.integers(0, 4))):
        atomic_edges = [e.id for e in net.edges.values()]
        eid = atomic_edges[int(rng.integers(len(atomic_edges)))]
        rewrite.ax_expand(net, eid)
    if rng.random() < 0.6:
        add_tensor_par_gadget(net, rng)
    if rng.random() < 0.5:
        add_one_bot_gadget(net, rng)
    if rng.random() < 0.5:
        add_cw_gadget(net, rng)
    assert check_correctness(net)
    return net


def random_atomic_net(rng, max_boxes: int = 6) -> ProofNet:
    """Atomic typed correct net that may expose negative conclusions and may
    or may not embed into a positive Bayesian net."""
    n = int(rng.integers(1, max_boxes + 1))
    names = [f"V{i}" for i in range(n)]
    specs = {x: VarSpec(x) for x in names}
    net = ProofNet()
    main_edge: dict[str, int] = {}
    input_edges: dict[str, list[int]] = {x: [] for x in names}
    for i, x in enumerate(names):
        ps = [names[j] for j in range(i) if rng.random() < 0.4][:3]
        rows = rng.random((2 ** len(ps), 2)) + 0.05
        rows /= rows.sum(axis=1, keepdims=True)
        cpt = factor_new([specs[p] for p in ps] + [specs[x]], rows.ravel())
        _, eids = net.add_node("box", conclusion_labels=[neg(p) for p in ps] + [pos(x)],
                               cpt=cpt)
        for p, eid in zip(ps, eids):
            input_edges[p].append(eid)
        main_edge[x] = eids[-1]
    for x in names:
        negs = []
        for eid in input_edges[x]:
            if rng.random() < 0.3:
                continue                       # leave it a negative conclusion
            negs.append(eid)
        choice = rng.random()
        if negs and choice < 0.7:
            merged = negs[0]
            for other in negs[1:]:
                _, (ce,) = net.add_node("contraction", premises=[merged, other],
                                        conclusion_labels=[neg(x)])
                merged = ce
            net.add_node("cut", premises=[main_edge[x], merged])
        elif choice < 0.85 and not negs:
            _, (we,) = net.add_node("weakening", conclusion_labels=[neg(x)])
            net.add_node("cut", premises=[main_edge[x], we])
        # otherwise the main conclusion stays pending
    net.refresh_conclusions()
    return net
