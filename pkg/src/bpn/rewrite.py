"""Cut-elimination and structural rewriting.

Rules: ax/cut, tensor/par, one/bot, contraction/weakening collapse, and the
flag-enabled box/weakening pruning step that deletes an unconsumed box and
caps its inputs with fresh weakenings.  Every step preserves typing,
correctness, and the conclusion list (edge identities at conclusion
positions may be substituted, labels and order are kept).

Each rule consumes a node of a kind no rule ever creates (ax, tensor, one,
contraction, box), so any reduction sequence has at most as many steps as
the initial node count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .formulas import Atom, Bot, One, Par, Tensor, negate
from .net import NetError, ProofNet, check_correctness


class StaleRedex(NetError):
    pass


class NonAtomicEdge(NetError):
    pass


class WouldBreakCorrectness(NetError):
    pass


class NotNormal(NetError):
    pass


@dataclass(frozen=True)
class Redex:
    kind: str                 # ax_cut | tensor_par | one_bot | contraction_weakening | box_weakening
    nodes: tuple[int, ...]    # rule-specific node ids, see find_redexes


def find_redexes(net: ProofNet, include_pruning: bool = False) -> list[Redex]:
    out: list[Redex] = []
    for nid in sorted(net.nodes):
        n = net.nodes[nid]
        if n.kind == "cut":
            e1, e2 = (net.edges[eid] for eid in n.premises)
            k1 = net.nodes[e1.source].kind
            k2 = net.nodes[e2.source].kind
            if k1 == "ax" or k2 == "ax":
                ax_id = e1.source if k1 == "ax" else e2.source
                out.append(Redex("ax_cut", (nid, ax_id)))
            elif {k1, k2} == {"tensor", "par"}:
                t_id = e1.source if k1 == "tensor" else e2.source
                p_id = e1.source if k1 == "par" else e2.source
                out.append(Redex("tensor_par", (nid, t_id, p_id)))
            elif {k1, k2} == {"one", "bot"}:
                o_id = e1.source if k1 == "one" else e2.source
                b_id = e1.source if k1 == "bot" else e2.source
                out.append(Redex("one_bot", (nid, o_id, b_id)))
            elif include_pruning and {k1, k2} == {"box", "weakening"}:
                b_id = e1.source if k1 == "box" else e2.source
                w_id = e1.source if k1 == "weakening" else e2.source
                box_edge = e1 if k1 == "box" else e2
                # only the box's main conclusion can face a weakening
                if isinstance(box_edge.label, Atom) and box_edge.label.positive:
                    out.append(Redex("box_weakening", (nid, b_id, w_id)))
        elif n.kind == "contraction":
            for eid in n.premises:
                src = net.edges[eid].source
                if net.nodes[src].kind == "weakening":
                    out.append(Redex("contraction_weakening", (nid, src)))
    return out


def _splice(net: ProofNet, old_eid: int, new_eid: int) -> None:
    """Delete edge old and put pending edge new in its place (same consumer
    or same conclusion position)."""
    old = net.edges[old_eid]
    new = net.edges[new_eid]
    if new.target is not None:
        raise NetError(f"edge {new_eid} is not pending")
    t = old.target
    del net.edges[old_eid]
    src = net.nodes.get(old.source)
    if src is not None and old_eid in src.conclusions:
        src.conclusions.remove(old_eid)
    new.target = t
    if t is None:
        i = net.conclusions.index(old_eid)
        net.conclusions[i] = new_eid
    else:
        prem = net.nodes[t].premises
        prem[prem.index(old_eid)] = new_eid


def _detach(net: ProofNet, eid: int) -> None:
    """Make an edge pending without touching the conclusion list (the caller
    reconnects it immediately)."""
    e = net.edges[eid]
    if e.target is not None:
        tgt = net.nodes.get(e.target)
        if tgt is not None and eid in tgt.premises:
            tgt.premises.remove(eid)
        e.target = None


def _validate(net: ProofNet, r: Redex) -> None:
    for nid in r.nodes:
        if nid not in net.nodes:
            raise StaleRedex(f"node {nid} no longer exists")
    fresh = find_redexes(net, include_pruning=True)
    if r not in fresh:
        raise StaleRedex(f"{r} does not match the net any more")


def reduce_step(net: ProofNet, r: Redex) -> ProofNet:
    """Apply one rule in place; returns the same net."""
    _validate(net, r)
    if r.kind == "ax_cut":
        cut_id, ax_id = r.nodes
        cut = net.nodes[cut_id]
        e1, e2 = (net.edges[eid] for eid in cut.premises)
        ax_edge = e1 if e1.source == ax_id else e2
        other = e2 if ax_edge is e1 else e1
        if other.source == ax_id:
            raise NetError("both cut premises come from the same ax (cyclic net)")
        ax = net.nodes[ax_id]
        loose_id = next(eid for eid in ax.conclusions if eid != ax_edge.id)
        del net.nodes[cut_id]
        del net.edges[ax_edge.id]
        ax.conclusions.remove(ax_edge.id)
        other.target = None
        del net.nodes[ax_id]
        _splice(net, loose_id, other.id)
    elif r.kind == "tensor_par":
        cut_id, t_id, p_id = r.nodes
        cut = net.nodes[cut_id]
        tnode, pnode = net.nodes[t_id], net.nodes[p_id]
        a1, a2 = tnode.premises
        b1, b2 = pnode.premises
        for eid in cut.premises:
            del net.edges[eid]
        for node in (tnode, pnode):
            node.conclusions.clear()
        del net.nodes[cut_id]
        for eid in (a1, a2, b1, b2):
            net.edges[eid].target = None
        del net.nodes[t_id]
        del net.nodes[p_id]
        net.add_node("cut", premises=[a1, b1])
        net.add_node("cut", premises=[a2, b2])
    elif r.kind == "one_bot":
        cut_id, o_id, b_id = r.nodes
        for eid in net.nodes[cut_id].premises:
            del net.edges[eid]
        for nid in (o_id, b_id):
            net.nodes[nid].conclusions.clear()
        del net.nodes[cut_id]
        del net.nodes[o_id]
        del net.nodes[b_id]
    elif r.kind == "contraction_weakening":
        c_id, w_id = r.nodes
        cnode = net.nodes[c_id]
        w_eid = next(eid for eid in cnode.premises
                     if net.edges[eid].source == w_id)
        keep_eid = next(eid for eid in cnode.premises if eid != w_eid)
        concl_eid = cnode.conclusions[0]
        del net.edges[w_eid]
        del net.nodes[w_id]
        cnode.premises.remove(w_eid)
        net.edges[keep_eid].target = None
        cnode.premises.remove(keep_eid)
        cnode.conclusions.clear()
        del net.nodes[c_id]
        # concl edge still recorded in net.edges with source c (now gone)
        _splice(net, concl_eid, keep_eid)
    elif r.kind == "box_weakening":
        cut_id, box_id, w_id = r.nodes
        cut = net.nodes[cut_id]
        box = net.nodes[box_id]
        main_eid = next(eid for eid in cut.premises
                        if net.edges[eid].source == box_id)
        w_eid = next(eid for eid in cut.premises if eid != main_eid)
        inputs = [eid for eid in box.conclusions if eid != main_eid]
        del net.edges[main_eid]
        del net.edges[w_eid]
        del net.nodes[cut_id]
        del net.nodes[w_id]
        box.conclusions.clear()
        del net.nodes[box_id]
        for eid in inputs:
            lab = net.edges[eid].label
            _, (fresh,) = net.add_node("weakening", conclusion_labels=[lab])
            _splice(net, eid, fresh)
    else:
        raise NetError(f"unknown redex kind {r.kind}")
    return net


def normalize(net: ProofNet, include_pruning: bool = False,
              rng=None, trace: Optional[list[Redex]] = None) -> ProofNet:
    """Reduce a copy of the net to normal form."""
    out = net.copy()
    while True:
        redexes = find_redexes(out, include_pruning)
        if not redexes:
            return out
        r = redexes[rng.integers(len(redexes))] if rng is not None else redexes[0]
        reduce_step(out, r)
        if trace is not None:
            trace.append(r)


def ax_expand(net: ProofNet, eid: int) -> tuple[int, int]:
    """Replace an atomic edge by conclusion-edge -> cut <- ax -> premise-edge,
    in place.  Returns (cut node id, ax node id)."""
    e = net.edges[eid]
    if not isinstance(e.label, Atom):
        raise NonAtomicEdge(f"edge {eid} has compound label {e.label}")
    dual = negate(e.label)
    target = e.target
    if target is None:
        slot = net.conclusions.index(eid)
    else:
        slot = net.nodes[target].premises.index(eid)
    e.target = None
    ax_id, (d1, d2) = net.add_node("ax", conclusion_labels=[dual, e.label])
    if target is None:
        net.conclusions[slot] = d2
    else:
        net.edges[d2].target = target
        net.nodes[target].premises[slot] = d2
    cut_id, _ = net.add_node("cut", premises=[eid, d1])
    return cut_id, ax_id


def tensor_par_expand(net: ProofNet, cut1: int, cut2: int,
                      par_nodes: set[int]) -> tuple[ProofNet, int, int, int]:
    """Merge two parallel cuts into one on a tensor/par pair.

    par_nodes designates the side that receives the par node.  Returns
    (new net, new cut id, tensor id, par id); raises when the merged net
    fails the correctness check.
    """
    out = net.copy()
    ps, ts = [], []
    for cid in (cut1, cut2):
        cut = out.nodes[cid]
        sides = {eid: out.edges[eid].source in par_nodes for eid in cut.premises}
        if sum(sides.values()) != 1:
            raise NetError(f"cut {cid} does not bridge the designated sides")
        ps.append(next(eid for eid, b in sides.items() if b))
        ts.append(next(eid for eid, b in sides.items() if not b))
        for eid in cut.premises:
            out.edges[eid].target = None
        del out.nodes[cid]
    p_id, (pe,) = out.add_node(
        "par", premises=ps,
        conclusion_labels=[Par(out.edges[ps[0]].label, out.edges[ps[1]].label)])
    t_id, (te,) = out.add_node(
        "tensor", premises=ts,
        conclusion_labels=[Tensor(out.edges[ts[0]].label, out.edges[ts[1]].label)])
    new_cut, _ = out.add_node("cut", premises=[te, pe])
    if not check_correctness(out):
        raise WouldBreakCorrectness(
            f"par on this side of cuts {cut1},{cut2} breaks correctness")
    return out, new_cut, t_id, p_id


def normal_form_decompose(net: ProofNet) -> tuple[ProofNet, list]:
    """Split a normal net into its atomic part and the syntax forest of its
    conclusion formulas."""
    if find_redexes(net):
        raise NotNormal("net has remaining redexes")
    from .net import subnet
    atomic_ids = [nid for nid, n in net.nodes.items()
                  if n.kind not in ("tensor", "par", "one", "bot")]
    at = subnet(net, atomic_ids)
    from .formulas import is_atomic
    forest = [net.edges[eid].label for eid in net.conclusions
              if not is_atomic(net.edges[eid].label)]
    return at, forest
