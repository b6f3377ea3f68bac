"""Typed proof-net graphs with probabilistic boxes.

A net is a set of typed nodes joined by formula-labelled edges.  Every edge
is the conclusion of exactly one node and the premise of at most one node;
edges with no consumer are pending and form the net's conclusions.  Boxes
carry a CPT factor over their main (positive) name and input (negative)
names.

Correctness is the switching-acyclicity condition: every cycle must use at
least two premises of a same par node or a same contraction node.  On atomic
nets this is equivalent to acyclicity of the polarity orientation (positive
edges point from producer to consumer, negative edges the other way).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import networkx as nx
from networkx.algorithms import isomorphism as nx_iso

from .factors import Factor, VarSpec, factor_new, is_cpt
from .formulas import (Atom, Bot, Formula, One, Par, Tensor, atoms, format_formula,
                       is_atomic, negate, parse_formula)


class NetError(ValueError):
    pass


class IllTyped(NetError):
    pass


class Incorrect(NetError):
    pass


class NonAtomic(NetError):
    pass


class NotASubnet(NetError):
    pass


class PreconditionViolation(NetError):
    pass


KINDS = ("ax", "cut", "tensor", "par", "one", "bot", "contraction", "weakening", "box")


@dataclass
class Node:
    id: int
    kind: str
    premises: list[int] = field(default_factory=list)
    conclusions: list[int] = field(default_factory=list)
    cpt: Optional[Factor] = None


@dataclass
class Edge:
    id: int
    label: Formula
    source: int
    target: Optional[int] = None


class ProofNet:
    def __init__(self):
        self.nodes: dict[int, Node] = {}
        self.edges: dict[int, Edge] = {}
        self.conclusions: list[int] = []
        self._next_node = 0
        self._next_edge = 0

    # ------------------------------------------------------------------
    # construction

    def add_node(self, kind: str, premises: Sequence[int] = (),
                 conclusion_labels: Sequence[Formula] = (),
                 cpt: Optional[Factor] = None,
                 node_id: Optional[int] = None) -> tuple[int, list[int]]:
        """Add a node consuming existing pending edges and producing new ones.

        Returns the node id and the ids of the fresh conclusion edges.
        """
        if kind not in KINDS:
            raise NetError(f"unknown node kind {kind!r}")
        nid = self._next_node if node_id is None else node_id
        if nid in self.nodes:
            raise NetError(f"node id {nid} already used")
        self._next_node = max(self._next_node, nid + 1)
        for eid in premises:
            e = self.edges[eid]
            if e.target is not None:
                raise NetError(f"edge {eid} already consumed by node {e.target}")
            e.target = nid
        node = Node(nid, kind, list(premises), [], cpt)
        self.nodes[nid] = node
        out = []
        for lab in conclusion_labels:
            eid = self._next_edge
            self._next_edge += 1
            self.edges[eid] = Edge(eid, lab, nid, None)
            node.conclusions.append(eid)
            out.append(eid)
        return nid, out

    def fresh_edge_id(self) -> int:
        eid = self._next_edge
        self._next_edge += 1
        return eid

    def remove_node(self, nid: int) -> None:
        """Remove a node; its premise edges become pending, its conclusion
        edges must have been removed already."""
        node = self.nodes.pop(nid)
        if node.conclusions:
            raise NetError(f"node {nid} still has conclusion edges")
        for eid in node.premises:
            if eid in self.edges:
                self.edges[eid].target = None

    def remove_edge(self, eid: int) -> None:
        e = self.edges.pop(eid)
        src = self.nodes.get(e.source)
        if src is not None and eid in src.conclusions:
            src.conclusions.remove(eid)
        if e.target is not None:
            tgt = self.nodes.get(e.target)
            if tgt is not None and eid in tgt.premises:
                tgt.premises.remove(eid)
        if eid in self.conclusions:
            self.conclusions.remove(eid)

    def pending_edges(self) -> list[int]:
        return sorted(e.id for e in self.edges.values() if e.target is None)

    def set_conclusions(self, order: Optional[Sequence[int]] = None) -> None:
        pending = self.pending_edges()
        if order is None:
            self.conclusions = pending
            return
        if sorted(order) != pending:
            raise NetError("conclusion order must list exactly the pending edges")
        self.conclusions = list(order)

    def refresh_conclusions(self) -> None:
        """Keep the relative order of surviving conclusions, append new
        pending edges in id order."""
        pending = set(self.pending_edges())
        kept = [eid for eid in self.conclusions if eid in pending]
        new = sorted(pending - set(kept))
        self.conclusions = kept + new

    def copy(self) -> "ProofNet":
        out = ProofNet()
        for nid, n in self.nodes.items():
            out.nodes[nid] = Node(nid, n.kind, list(n.premises), list(n.conclusions), n.cpt)
        for eid, e in self.edges.items():
            out.edges[eid] = Edge(eid, e.label, e.source, e.target)
        out.conclusions = list(self.conclusions)
        out._next_node = self._next_node
        out._next_edge = self._next_edge
        return out

    # ------------------------------------------------------------------
    # basic views

    def boxes(self) -> list[Node]:
        return [n for n in self.nodes.values() if n.kind == "box"]

    def box_main_edge(self, nid: int) -> Edge:
        node = self.nodes[nid]
        for eid in node.conclusions:
            lab = self.edges[eid].label
            if isinstance(lab, Atom) and lab.positive:
                return self.edges[eid]
        raise NetError(f"box {nid} has no positive conclusion")

    def box_main_name(self, nid: int) -> str:
        return self.box_main_edge(nid).label.name

    def main_boxes(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for b in self.boxes():
            out[self.box_main_name(b.id)] = b.id
        return out

    def names(self) -> set[str]:
        out: set[str] = set()
        for e in self.edges.values():
            out |= {a.name for a in atoms(e.label)}
        return out

    def conclusion_names(self) -> set[str]:
        out: set[str] = set()
        for eid in self.conclusions:
            out |= {a.name for a in atoms(self.edges[eid].label)}
        return out

    def var_specs(self) -> dict[str, VarSpec]:
        out: dict[str, VarSpec] = {}
        for b in self.boxes():
            for v in b.cpt.vars:
                if v.name in out and out[v.name].values != v.values:
                    raise NetError(f"conflicting value sets for {v.name}")
                out[v.name] = v
        return out

    def is_atomic(self) -> bool:
        return all(is_atomic(e.label) for e in self.edges.values())

    # ------------------------------------------------------------------
    # serialization

    def to_json(self) -> dict:
        nodes = []
        for nid in sorted(self.nodes):
            n = self.nodes[nid]
            entry: dict = {"id": nid, "kind": n.kind}
            if n.cpt is not None:
                entry["cpt"] = {
                    "vars": [{"name": v.name, "values": list(v.values)} for v in n.cpt.vars],
                    "table": n.cpt.table.tolist(),
                }
            nodes.append(entry)
        edges = []
        for eid in sorted(self.edges):
            e = self.edges[eid]
            entry = {"id": eid, "label": format_formula(e.label), "from": e.source}
            if e.target is not None:
                entry["to"] = e.target
            edges.append(entry)
        return {"nodes": nodes, "edges": edges, "conclusions": list(self.conclusions)}

    @staticmethod
    def from_json(data: dict) -> "ProofNet":
        net = ProofNet()
        for nd in data["nodes"]:
            cpt = None
            if "cpt" in nd and nd["cpt"] is not None:
                vs = [VarSpec(v["name"], tuple(v["values"])) for v in nd["cpt"]["vars"]]
                cpt = factor_new(vs, nd["cpt"]["table"])
            net.nodes[nd["id"]] = Node(nd["id"], nd["kind"], [], [], cpt)
        for ed in data["edges"]:
            net.edges[ed["id"]] = Edge(ed["id"], parse_formula(ed["label"]),
                                       ed["from"], ed.get("to"))
        for e in sorted(net.edges.values(), key=lambda e: e.id):
            if e.source in net.nodes:
                net.nodes[e.source].conclusions.append(e.id)
            if e.target is not None and e.target in net.nodes:
                net.nodes[e.target].premises.append(e.id)
        for n in net.nodes.values():
            _order_node_edges(net, n)
        net.conclusions = list(data.get("conclusions", net.pending_edges()))
        net._next_node = max(net.nodes, default=-1) + 1
        net._next_edge = max(net.edges, default=-1) + 1
        return net

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_dot(self) -> str:
        lines = ["digraph net {", "  rankdir=TB;"]
        for nid in sorted(self.nodes):
            n = self.nodes[nid]
            if n.kind == "box":
                lines.append(f'  n{nid} [shape=rect, label="box {self.box_main_name(nid)}"];')
            else:
                lines.append(f'  n{nid} [shape=ellipse, label="{n.kind}"];')
        pend = 0
        for eid in sorted(self.edges):
            e = self.edges[eid]
            lab = format_formula(e.label).replace('"', "'")
            if e.target is None:
                lines.append(f'  p{pend} [shape=none, label=""];')
                lines.append(f'  n{e.source} -> p{pend} [label="{lab}"];')
                pend += 1
            else:
                pos = not (isinstance(e.label, Atom) and not e.label.positive)
                style = "normal" if pos else "inv"
                lines.append(
                    f'  n{e.source} -> n{e.target} [label="{lab}", arrowhead={style}];')
        lines.append("}")
        return "\n".join(lines)


def _order_node_edges(net: ProofNet, n: Node) -> None:
    """Put reconstructed premise/conclusion lists in a canonical order."""
    n.premises.sort()
    n.conclusions.sort()
    if n.kind == "box":
        negs = [eid for eid in n.conclusions
                if isinstance(net.edges[eid].label, Atom) and not net.edges[eid].label.positive]
        poss = [eid for eid in n.conclusions if eid not in negs]
        n.conclusions = negs + poss
    elif n.kind in ("tensor", "par") and len(n.premises) == 2 and n.conclusions:
        lab = net.edges[n.conclusions[0]].label
        if isinstance(lab, (Tensor, Par)):
            a, b = n.premises
            if net.edges[a].label == lab.left and net.edges[b].label == lab.right:
                pass
            elif net.edges[b].label == lab.left and net.edges[a].label == lab.right:
                n.premises = [b, a]


# ----------------------------------------------------------------------
# typing

def check_typed_graph(net: ProofNet) -> list[str]:
    """Diagnostic report of arity, label, and pending-edge violations."""
    bad: list[str] = []
    for eid, e in net.edges.items():
        if e.source not in net.nodes:
            bad.append(f"edge {eid}: source node {e.source} missing")
        elif eid not in net.nodes[e.source].conclusions:
            bad.append(f"edge {eid}: not listed as conclusion of node {e.source}")
        if e.target is not None:
            if e.target not in net.nodes:
                bad.append(f"edge {eid}: target node {e.target} missing")
            elif eid not in net.nodes[e.target].premises:
                bad.append(f"edge {eid}: not listed as premise of node {e.target}")
    concl_owner: dict[int, int] = {}
    for nid, n in net.nodes.items():
        for eid in n.conclusions:
            if eid in concl_owner:
                bad.append(f"edge {eid}: conclusion of nodes {concl_owner[eid]} and {nid}")
            concl_owner[eid] = nid
            if eid not in net.edges:
                bad.append(f"node {nid}: conclusion edge {eid} missing")
        for eid in n.premises:
            if eid not in net.edges:
                bad.append(f"node {nid}: premise edge {eid} missing")
            elif net.edges[eid].target != nid:
                bad.append(f"node {nid}: premise edge {eid} targets {net.edges[eid].target}")
    if bad:
        return bad

    def lab(eid: int) -> Formula:
        return net.edges[eid].label

    for nid, n in net.nodes.items():
        k, p, c = n.kind, n.premises, n.conclusions
        if k == "ax":
            if len(p) != 0 or len(c) != 2:
                bad.append(f"ax {nid}: needs 0 premises and 2 conclusions")
            else:
                l1, l2 = lab(c[0]), lab(c[1])
                ok = (isinstance(l1, Atom) and isinstance(l2, Atom)
                      and l1.name == l2.name and l1.positive != l2.positive)
                if not ok:
                    bad.append(f"ax {nid}: conclusions must be X+ and X-")
        elif k == "cut":
            if len(p) != 2 or len(c) != 0:
                bad.append(f"cut {nid}: needs 2 premises and 0 conclusions")
            elif negate(lab(p[0])) != lab(p[1]):
                bad.append(f"cut {nid}: premises must be dual")
        elif k in ("tensor", "par"):
            cls = Tensor if k == "tensor" else Par
            if len(p) != 2 or len(c) != 1:
                bad.append(f"{k} {nid}: needs 2 premises and 1 conclusion")
            elif lab(c[0]) != cls(lab(p[0]), lab(p[1])):
                bad.append(f"{k} {nid}: conclusion label mismatch")
        elif k == "one":
            if len(p) != 0 or len(c) != 1 or not isinstance(lab(c[0]), One):
                bad.append(f"one {nid}: needs a single conclusion labelled 1")
        elif k == "bot":
            if len(p) != 0 or len(c) != 1 or not isinstance(lab(c[0]), Bot):
                bad.append(f"bot {nid}: needs a single conclusion labelled bot")
        elif k == "contraction":
            labels = [lab(x) for x in p + c]
            ok = (len(p) == 2 and len(c) == 1
                  and all(isinstance(l, Atom) and not l.positive for l in labels)
                  and len({l.name for l in labels}) == 1)
            if not ok:
                bad.append(f"contraction {nid}: needs premises X-, X- and conclusion X-")
        elif k == "weakening":
            ok = (len(p) == 0 and len(c) == 1
                  and isinstance(lab(c[0]), Atom) and not lab(c[0]).positive)
            if not ok:
                bad.append(f"weakening {nid}: needs a single conclusion X-")
        elif k == "box":
            if len(p) != 0:
                bad.append(f"box {nid}: boxes have no premises")
                continue
            labels = [lab(x) for x in c]
            if not all(isinstance(l, Atom) for l in labels):
                bad.append(f"box {nid}: conclusions must be atomic")
                continue
            mains = [l for l in labels if l.positive]
            ins = [l for l in labels if not l.positive]
            if len(mains) != 1:
                bad.append(f"box {nid}: needs exactly one positive conclusion")
                continue
            main = mains[0].name
            in_names = [l.name for l in ins]
            if main in in_names:
                bad.append(f"box {nid}: main name {main} repeated among inputs")
            if len(set(in_names)) != len(in_names):
                bad.append(f"box {nid}: duplicate input names")
            if n.cpt is None:
                bad.append(f"box {nid}: missing CPT")
            else:
                if set(n.cpt.names) != {main, *in_names}:
                    bad.append(f"box {nid}: CPT variables {n.cpt.names} do not match "
                               f"conclusions {{{main}}} + {in_names}")
                elif not is_cpt(n.cpt, main):
                    bad.append(f"box {nid}: CPT rows do not sum to 1 on {main}")
        else:
            bad.append(f"node {nid}: unknown kind {k}")
    pend = set(net.pending_edges())
    if set(net.conclusions) != pend or len(net.conclusions) != len(pend):
        bad.append(f"conclusions {net.conclusions} do not match pending edges {sorted(pend)}")
    return bad


# ----------------------------------------------------------------------
# correctness

class _UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge; returns False when a and b were already joined (a cycle)."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True

    def clone(self) -> "_UnionFind":
        out = _UnionFind(())
        out.parent = dict(self.parent)
        return out


def _switched_premises(net: ProofNet) -> dict[int, list[int]]:
    return {n.id: list(n.premises) for n in net.nodes.values()
            if n.kind in ("par", "contraction")}


def switching_acyclic_oracle(net: ProofNet) -> bool:
    """Exhaustive check over all switchings; exponential, test sizes only."""
    switched = _switched_premises(net)
    sw_ids = list(switched)
    sw_prem = {eid for prems in switched.values() for eid in prems}
    for choice in itertools.product(*(switched[s] for s in sw_ids)) if sw_ids else [()]:
        keep = set(choice)
        uf = _UnionFind(net.nodes)
        cyclic = False
        for e in net.edges.values():
            if e.target is None:
                continue
            if e.id in sw_prem and e.id not in keep:
                continue
            if not uf.union(e.source, e.target):
                cyclic = True
                break
        if cyclic:
            return False
    return True


def _switching_acyclic_fast(net: ProofNet) -> bool:
    """Union-find contraction of switching-invariant connectivity, then
    exhaustive enumeration over the residual switched nodes."""
    switched = _switched_premises(net)
    sw_prem = {eid for prems in switched.values() for eid in prems}
    uf = _UnionFind(net.nodes)
    for e in net.edges.values():
        if e.target is None or e.id in sw_prem:
            continue
        if not uf.union(e.source, e.target):
            return False
    pending = dict(switched)
    changed = True
    while changed:
        changed = False
        for pid in list(pending):
            u1, u2 = (net.edges[eid].source for eid in pending[pid])
            r1, r2, rp = uf.find(u1), uf.find(u2), uf.find(pid)
            if r1 == rp or r2 == rp:
                # some switching closes a cycle through this premise
                return False
            if r1 == r2:
                uf.union(pid, u1)
                del pending[pid]
                changed = True
    resid = list(pending.items())
    if not resid:
        return True
    if len(resid) > 22:
        raise NetError(f"net too entangled for exact switching check ({len(resid)} residual)")
    for bits in itertools.product((0, 1), repeat=len(resid)):
        uf2 = uf.clone()
        ok = True
        for (pid, prems), b in zip(resid, bits):
            if not uf2.union(net.edges[prems[b]].source, pid):
                ok = False
                break
        if not ok:
            return False
    return True


def _polarity_digraph(net: ProofNet) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(net.nodes)
    for e in net.edges.values():
        if e.target is None:
            continue
        if not isinstance(e.label, Atom):
            raise NonAtomic(f"edge {e.id} has compound label")
        if e.label.positive:
            g.add_edge(e.source, e.target)
        else:
            g.add_edge(e.target, e.source)
    return g


def check_correctness(net: ProofNet) -> bool:
    bad = check_typed_graph(net)
    if bad:
        raise IllTyped("; ".join(bad))
    if net.is_atomic():
        return nx.is_directed_acyclic_graph(_polarity_digraph(net))
    return _switching_acyclic_fast(net)


# ----------------------------------------------------------------------
# polarized order

@dataclass
class PolarizedDag:
    box_ids: list[int]
    arcs: set[tuple[int, int]]          # (earlier, later) reachability pairs
    name_of: dict[int, str]

    def name_arcs(self) -> set[tuple[str, str]]:
        return {(self.name_of[a], self.name_of[b]) for a, b in self.arcs}

    def topological_names(self) -> list[str]:
        g = nx.DiGraph()
        g.add_nodes_from(self.box_ids)
        g.add_edges_from(self.arcs)
        return [self.name_of[b] for b in nx.topological_sort(g)]


def polarized_dag(net: ProofNet) -> PolarizedDag:
    if not net.is_atomic():
        raise NonAtomic("polarized order is defined on atomic nets")
    g = _polarity_digraph(net)
    if not nx.is_directed_acyclic_graph(g):
        raise Incorrect("polarity orientation has a cycle")
    box_ids = [b.id for b in net.boxes()]
    name_of = {b: net.box_main_name(b) for b in box_ids}
    arcs: set[tuple[int, int]] = set()
    box_set = set(box_ids)
    for b in box_ids:
        for r in nx.descendants(g, b):
            if r in box_set:
                arcs.add((b, r))
    return PolarizedDag(box_ids, arcs, name_of)


# ----------------------------------------------------------------------
# sub-nets

def subnet(net: ProofNet, node_ids: Iterable[int]) -> ProofNet:
    ids = set(node_ids)
    missing = ids - set(net.nodes)
    if missing:
        raise NotASubnet(f"unknown nodes {sorted(missing)}")
    for nid in ids:
        for eid in net.nodes[nid].premises:
            if net.edges[eid].source not in ids:
                raise NotASubnet(
                    f"node {nid} premise edge {eid} produced outside the sub-net")
    out = ProofNet()
    for nid in ids:
        n = net.nodes[nid]
        out.nodes[nid] = Node(nid, n.kind, list(n.premises), list(n.conclusions), n.cpt)
    for e in net.edges.values():
        if e.source in ids:
            tgt = e.target if e.target in ids else None
            out.edges[e.id] = Edge(e.id, e.label, e.source, tgt)
    for n in out.nodes.values():
        n.premises = [eid for eid in n.premises if eid in out.edges]
    out._next_node = net._next_node
    out._next_edge = net._next_edge
    out.set_conclusions()
    return out


def subnet_conclusion_edges(net: ProofNet, ids: set[int]) -> list[int]:
    """Edges produced inside `ids` and consumed outside (or pending)."""
    out = []
    for e in net.edges.values():
        if e.source in ids and (e.target is None or e.target not in ids):
            out.append(e.id)
    return sorted(out)


def subnet_names(net: ProofNet, ids: set[int]) -> set[str]:
    out: set[str] = set()
    for e in net.edges.values():
        if e.source in ids:
            out |= {a.name for a in atoms(e.label)}
    return out


# ----------------------------------------------------------------------
# Bayesian proof-net recognition

def artifact_closure(net: ProofNet) -> Optional[ProofNet]:
    """Close an atomic net toward a positive one: for each name X with X-
    conclusions and a box introducing X, contract the X- conclusions and cut
    them against an X-path-connected positive X+ conclusion.  Returns None
    when some required X+ conclusion does not exist."""
    if not net.is_atomic():
        raise NonAtomic("closure is defined on atomic nets")
    out = net.copy()
    mains = out.main_boxes()
    neg_names = sorted({out.edges[eid].label.name for eid in out.conclusions
                        if not out.edges[eid].label.positive})
    for x in neg_names:
        if x not in mains:
            continue
        negs = [eid for eid in out.conclusions
                if out.edges[eid].label == Atom(x, False)]
        # connectivity through x-labelled edges only
        g = nx.Graph()
        g.add_nodes_from(out.nodes)
        for e in out.edges.values():
            if e.target is not None and e.label.name == x:
                g.add_edge(e.source, e.target)
        pos_cands = [eid for eid in out.conclusions
                     if out.edges[eid].label == Atom(x, True)
                     and nx.has_path(g, mains[x], out.edges[eid].source)]
        if not pos_cands:
            return None
        pos_eid = pos_cands[0]
        merged = negs[0]
        for other in negs[1:]:
            _, (ce,) = out.add_node("contraction", premises=[merged, other],
                                    conclusion_labels=[Atom(x, False)])
            merged = ce
        out.add_node("cut", premises=[pos_eid, merged])
        out.refresh_conclusions()
    return out


def is_bayesian(net: ProofNet) -> bool:
    bad = check_typed_graph(net)
    if bad:
        raise IllTyped("; ".join(bad))
    if not check_correctness(net):
        return False
    names = [net.box_main_name(b.id) for b in net.boxes()]
    if len(set(names)) != len(names):
        return False
    if all(a.positive for eid in net.conclusions for a in atoms(net.edges[eid].label)):
        return True
    if net.is_atomic():
        at = net
    else:
        from . import rewrite
        at, _ = rewrite.normal_form_decompose(rewrite.normalize(net))
    if all(a.positive for eid in at.conclusions for a in atoms(at.edges[eid].label)):
        return True
    closed = artifact_closure(at)
    return closed is not None and check_correctness(closed)


def jointree_check(net: ProofNet) -> bool:
    """For every name X, the X-labelled edges must form a directed tree
    rooted at the main conclusion of the box introducing X."""
    if not net.is_atomic():
        raise PreconditionViolation("jointree property is about atomic nets")
    if any(not net.edges[eid].label.positive for eid in net.conclusions):
        raise PreconditionViolation("jointree property is about positive nets")
    main_count: dict[str, int] = {}
    for b in net.boxes():
        x = net.box_main_name(b.id)
        main_count[x] = main_count.get(x, 0) + 1
    mains = net.main_boxes()
    for x in net.names():
        if main_count.get(x, 0) != 1:
            return False
        g = nx.MultiDiGraph()
        verts: set = set()
        for e in net.edges.values():
            if e.label.name != x:
                continue
            head = e.target if e.target is not None else ("pend", e.id)
            if not e.label.positive:
                src, head = head, e.source
            else:
                src = e.source
            g.add_edge(src, head)
            verts |= {src, head}
        if mains[x] not in verts:
            return False
        und = nx.Graph(g)
        if not nx.is_connected(und):
            return False
        if g.number_of_edges() != len(verts) - 1:
            return False
        for v in verts:
            want = 0 if v == mains[x] else 1
            if g.in_degree(v) != want:
                return False
    return True


# ----------------------------------------------------------------------
# isomorphism

def _cpt_signature(cpt: Optional[Factor]):
    if cpt is None:
        return None
    return (tuple((v.name, v.values) for v in cpt.vars),
            tuple(round(float(x), 12) for x in cpt.table))


def _iso_graph(net: ProofNet) -> nx.MultiDiGraph:
    g = nx.MultiDiGraph()
    for nid, n in net.nodes.items():
        g.add_node(("n", nid), kind=n.kind, cpt=_cpt_signature(n.cpt))
    for i, eid in enumerate(net.conclusions):
        g.add_node(("c", i), kind=f"conclusion{i}", cpt=None)
    for eid, e in net.edges.items():
        tgt = ("n", e.target) if e.target is not None else None
        if tgt is None:
            pos = net.conclusions.index(eid)
            tgt = ("c", pos)
        g.add_edge(("n", e.source), tgt, label=format_formula(e.label))
    return g


def is_isomorphic(n1: ProofNet, n2: ProofNet) -> bool:
    g1, g2 = _iso_graph(n1), _iso_graph(n2)
    nm = nx_iso.categorical_node_match(["kind", "cpt"], [None, None])
    em = nx_iso.categorical_multiedge_match("label", None)
    return nx.is_isomorphic(g1, g2, node_match=nm, edge_match=em)
