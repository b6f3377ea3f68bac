"""Cut-nets: tree-shaped partitions of a net into sub-nets separated by cuts.

Provides splitting (detaching a sub-net behind fresh cuts), the
variable-elimination factorization, width, merging of parallel cuts into
tensor/par typed cuts, and sequentialization to sequent-calculus proof
trees (with de-sequentialization as the inverse).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import networkx as nx

from .formulas import Atom, Formula, format_formula, negate
from .net import (NetError, NotASubnet, PreconditionViolation, ProofNet,
                  check_correctness, is_bayesian, subnet, subnet_conclusion_edges,
                  subnet_names)
from . import rewrite


class SkeletonNotTree(NetError):
    pass


class NotProper(NetError):
    pass


class NotCorrect(NetError):
    pass


class BadOrder(NetError):
    pass


class NotSequentializable(NetError):
    pass


# ----------------------------------------------------------------------
# cut-nets

@dataclass
class CutNet:
    net: ProofNet
    components: list[frozenset[int]]
    separating_cuts: list[int]

    def cut_endpoints(self, cut_id: int) -> tuple[int, int]:
        """Indices of the two components bridged by a separating cut."""
        cut = self.net.nodes[cut_id]
        idx = []
        for eid in cut.premises:
            src = self.net.edges[eid].source
            idx.append(next(i for i, comp in enumerate(self.components) if src in comp))
        return idx[0], idx[1]

    def skeleton(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.components)))
        for cid in self.separating_cuts:
            i, j = self.cut_endpoints(cid)
            g.add_edge(i, j)
        return g

    def component_names(self, i: int) -> set[str]:
        return subnet_names(self.net, set(self.components[i]))

    def validate(self) -> None:
        seen: set[int] = set()
        for comp in self.components:
            if comp & seen:
                raise NotASubnet("components overlap")
            seen |= comp
        cuts = set(self.separating_cuts)
        if cuts & seen:
            raise NotASubnet("a separating cut is listed inside a component")
        if seen | cuts != set(self.net.nodes):
            raise NotASubnet("partition does not cover the net")
        for comp in self.components:
            subnet(self.net, comp)   # raises NotASubnet on dangling premises
        for cid in self.separating_cuts:
            if self.net.nodes[cid].kind != "cut":
                raise NotASubnet(f"node {cid} is not a cut")
            i, j = self.cut_endpoints(cid)
            if i == j:
                raise NotASubnet(f"cut {cid} does not separate two components")
        g = self.skeleton()
        if len(self.components) > 1 or self.separating_cuts:
            if not nx.is_tree(g):
                raise SkeletonNotTree("component skeleton is not a tree")

    def cuts_between(self, i: int, j: int) -> list[int]:
        return [c for c in self.separating_cuts
                if set(self.cut_endpoints(c)) == {i, j}]

    def is_proper(self) -> bool:
        pairs = [frozenset(self.cut_endpoints(c)) for c in self.separating_cuts]
        return len(pairs) == len(set(pairs))

    def rooted(self, root: int = 0) -> "RootedCutNet":
        g = self.skeleton()
        cuts_by_pair: dict[frozenset, list[int]] = {}
        for c in self.separating_cuts:
            cuts_by_pair.setdefault(frozenset(self.cut_endpoints(c)), []).append(c)

        def build(i: int, parent: Optional[int], up: list[int]) -> SubTree:
            kids = [build(j, i, cuts_by_pair[frozenset((i, j))])
                    for j in sorted(g.neighbors(i)) if j != parent]
            return SubTree(self.components[i], kids, up)

        return RootedCutNet(self.net, build(root, None, []))


@dataclass
class SubTree:
    component: frozenset[int]
    children: list["SubTree"]
    cuts_up: list[int]      # separating cuts joining this subtree to its parent

    def all_nodes(self) -> set[int]:
        out = set(self.component)
        for ch in self.children:
            out |= ch.all_nodes()
            out |= set(ch.cuts_up)
        return out


@dataclass
class RootedCutNet:
    net: ProofNet
    tree: SubTree

    def subtrees(self) -> list[SubTree]:
        out: list[SubTree] = []
        stack = [self.tree]
        while stack:
            t = stack.pop()
            out.append(t)
            stack.extend(t.children)
        return out

    def to_cutnet(self) -> CutNet:
        comps, cuts = [], []
        for t in self.subtrees():
            comps.append(t.component)
            cuts.extend(t.cuts_up)
        return CutNet(self.net, comps, cuts)


def partition_to_cutnet(net: ProofNet, parts: Sequence[Iterable[int]]) -> CutNet:
    comps = [frozenset(p) for p in parts]
    covered = set().union(*comps) if comps else set()
    seps = []
    for nid, n in net.nodes.items():
        if nid in covered:
            continue
        if n.kind != "cut":
            raise NotASubnet(f"node {nid} is not covered and is not a cut")
        seps.append(nid)
    c = CutNet(net, comps, seps)
    c.validate()
    return c


def width(c: CutNet) -> int:
    return max(len(c.component_names(i)) - 1 for i in range(len(c.components)))


# ----------------------------------------------------------------------
# splitting

def split(net: ProofNet, r: Iterable[int]) -> CutNet:
    """Detach the premise-closed node set r behind cuts: every edge leaving
    r is ax-expanded (or an already-bridging cut is reused)."""
    ids = set(r)
    sub = subnet(net, ids)
    if not sub.is_atomic():
        raise NotASubnet("splitting requires an atomic sub-net")
    out = net.copy()
    boundary = [e.id for e in out.edges.values()
                if e.source in ids and e.target is not None and e.target not in ids]
    seps: list[int] = []
    for eid in sorted(boundary):
        e = out.edges[eid]
        tn = out.nodes[e.target]
        if tn.kind == "cut":
            other = next(p for p in tn.premises if p != eid)
            if out.edges[other].source not in ids and e.target not in seps:
                seps.append(e.target)
                continue
        cut_id, _ = rewrite.ax_expand(out, eid)
        seps.append(cut_id)
    rest = set(out.nodes) - ids - set(seps)
    comps = [frozenset(ids)] + ([frozenset(rest)] if rest else [])
    c = CutNet(out, comps, seps)
    c.validate()
    return c


# ----------------------------------------------------------------------
# variable elimination

def ve_factorize(net: ProofNet, order: Sequence[str]) -> RootedCutNet:
    """Iterated splitting that mirrors variable elimination: at step X the
    nodes touching X-labelled edges (plus already-formed components hanging
    off them) are detached behind fresh cuts."""
    if not net.is_atomic():
        raise PreconditionViolation("factorization requires an atomic net")
    if any(not net.edges[eid].label.positive for eid in net.conclusions):
        raise PreconditionViolation("factorization requires positive conclusions")
    if not is_bayesian(net):
        raise PreconditionViolation("factorization requires a Bayesian proof-net")
    internal = net.names() - net.conclusion_names()
    if len(set(order)) != len(order) or not set(order) <= internal:
        raise BadOrder(f"order {list(order)} is not a duplicate-free subset "
                       f"of the internal names {sorted(internal)}")
    out = net.copy()
    root: set[int] = set(out.nodes)
    subtrees: list[SubTree] = []
    for x in order:
        seed: set[int] = set()
        for e in out.edges.values():
            if isinstance(e.label, Atom) and e.label.name == x:
                for n in (e.source, e.target):
                    if n is not None and n in root:
                        seed.add(n)
        absorbed: list[SubTree] = []
        changed = True
        while changed:
            changed = False
            for st in subtrees:
                if st in absorbed:
                    continue
                endpoints = set()
                touches = False
                for cid in st.cuts_up:
                    for eid in out.nodes[cid].premises:
                        e = out.edges[eid]
                        if e.source in root:
                            endpoints.add(e.source)
                        if e.label.name == x:
                            touches = True
                if touches or (endpoints & seed):
                    absorbed.append(st)
                    seed |= endpoints
                    changed = True
            stack = list(seed)
            while stack:
                n = stack.pop()
                for eid in out.nodes[n].premises:
                    s = out.edges[eid].source
                    if s in root and s not in seed:
                        seed.add(s)
                        stack.append(s)
                        changed = True
            # a cut against a weakening rides along with its producer, so
            # fully-consumed names never strand a lone weakening in the root
            for e in list(out.edges.values()):
                if e.source in seed and e.target in root and e.target not in seed:
                    tn = out.nodes[e.target]
                    if tn.kind != "cut":
                        continue
                    other = next(p for p in tn.premises if p != e.id)
                    src = out.edges[other].source
                    if src in root and src not in seed \
                            and out.nodes[src].kind == "weakening":
                        seed.add(e.target)
                        seed.add(src)
                        changed = True
        if not seed:
            continue                   # name already absorbed by earlier steps
        boundary = sorted(e.id for e in out.edges.values()
                          if e.source in seed and e.target is not None
                          and e.target in root and e.target not in seed)
        if not boundary and root - seed:
            continue           # isolated piece: summing at the root is exact
        # always expand: the fresh ax is a premise-free root-side endpoint, so
        # later premise closures never drag extra structure across the cut
        cuts_new: list[int] = []
        for eid in boundary:
            cut_id, ax_id = rewrite.ax_expand(out, eid)
            root.add(ax_id)
            cuts_new.append(cut_id)
        new = SubTree(frozenset(seed), absorbed, cuts_new)
        root -= seed
        subtrees = [st for st in subtrees if st not in absorbed] + [new]
    if root:
        top = SubTree(frozenset(root), subtrees, [])
    else:
        if len(subtrees) != 1:
            raise NetError("elimination left dangling components")
        top = subtrees[0]
        top.cuts_up = []
    rcn = RootedCutNet(out, top)
    rcn.to_cutnet().validate()
    return rcn


# ----------------------------------------------------------------------
# cut typing

def type_cuts(c: CutNet, root: int = 0) -> CutNet:
    """Merge parallel cuts pairwise until at most one cut joins each
    adjacent component pair; the par node goes to the side closer to the
    root, with the opposite orientation (and then other cut pairs) as
    fallback when the correctness check rejects the merge."""
    c.validate()
    net = c.net.copy()
    comps = [set(comp) for comp in c.components]
    skel = c.skeleton()
    depth = nx.single_source_shortest_path_length(skel, root) if comps else {0: 0}
    cuts_by_pair: dict[frozenset, list[int]] = {}
    for cid in c.separating_cuts:
        cuts_by_pair.setdefault(frozenset(c.cut_endpoints(cid)), []).append(cid)
    all_cuts: list[int] = []
    for pair, cuts in sorted(cuts_by_pair.items(), key=lambda kv: sorted(kv[0])):
        i, j = sorted(pair)
        par_comp = i if depth[i] <= depth[j] else j
        other_comp = j if par_comp == i else i
        cuts = sorted(cuts)
        while len(cuts) > 1:
            merged = None
            candidates = [(a, b) for ai, a in enumerate(cuts)
                          for b in cuts[ai + 1:]]
            for c1, c2 in candidates:
                for side, far in ((par_comp, other_comp), (other_comp, par_comp)):
                    try:
                        new_net, new_cut, t_id, p_id = rewrite.tensor_par_expand(
                            net, c1, c2, comps[side])
                    except rewrite.WouldBreakCorrectness:
                        continue
                    net = new_net
                    comps[side].add(p_id)
                    comps[far].add(t_id)
                    cuts = [x for x in cuts if x not in (c1, c2)] + [new_cut]
                    merged = new_cut
                    break
                if merged is not None:
                    break
            if merged is None:
                raise NetError(f"could not merge cuts between components {i},{j}")
        all_cuts.extend(cuts)
    out = CutNet(net, [frozenset(comp) for comp in comps], all_cuts)
    out.validate()
    return out


# ----------------------------------------------------------------------
# proof trees

@dataclass
class ProofTree:
    rule: str
    sequent: list[Formula]
    premises: list["ProofTree"] = field(default_factory=list)
    args: tuple = ()
    cpt: object = None
    name: Optional[str] = None
    ports: Optional[list[int]] = None     # set on the root by sequentialize

    def render(self, indent: int = 0) -> str:
        seq = ", ".join(format_formula(f) for f in self.sequent)
        lines = ["  " * indent + f"{self.rule}: |- {seq}"]
        for p in self.premises:
            lines.append(p.render(indent + 1))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"rule": self.rule,
                "sequent": [format_formula(f) for f in self.sequent],
                "args": list(self.args),
                "premises": [p.to_json() for p in self.premises]}


def _without(xs: list, i: int) -> list:
    return xs[:i] + xs[i + 1:]


def check_proof_tree(pt: ProofTree) -> None:
    """Validate every rule instance bottom-up; raises NetError on mismatch."""
    for p in pt.premises:
        check_proof_tree(p)
    r, seq = pt.rule, pt.sequent
    def bad(msg):
        raise NetError(f"ill-formed {r} rule: {msg}")
    if r == "ax":
        if pt.premises or len(seq) != 2:
            bad("needs 0 premises, 2 conclusions")
        a, b = seq
        if negate(a) != b:
            bad("conclusions not dual")
    elif r == "one":
        if pt.premises or [str(f) for f in seq] != ["1"]:
            bad("must conclude exactly 1")
    elif r == "box":
        if pt.premises or pt.cpt is None:
            bad("needs a CPT and 0 premises")
        mains = [f for f in seq if isinstance(f, Atom) and f.positive]
        if len(mains) != 1 or not all(isinstance(f, Atom) for f in seq):
            bad("sequent must be Y1-..Yk-,X+")
    elif r == "bot":
        (p,) = pt.premises
        if seq != p.sequent + [negate_one()]:
            bad("must append bot")
    elif r == "w":
        prev = pt.premises[0].sequent if pt.premises else []
        if len(pt.premises) > 1 or len(seq) != len(prev) + 1 or seq[:-1] != prev:
            bad("must append a negative atom")
        f = seq[-1]
        if not (isinstance(f, Atom) and not f.positive):
            bad("weakened formula must be a negative atom")
    elif r == "c":
        (p,) = pt.premises
        i, j = pt.args
        f = p.sequent[i]
        if p.sequent[j] != f or not (isinstance(f, Atom) and not f.positive):
            bad("contracted formulas must be equal negative atoms")
        if seq != _without(p.sequent, j):
            bad("conclusion mismatch")
    elif r == "par":
        (p,) = pt.premises
        i, j = pt.args
        from .formulas import Par
        want = list(p.sequent)
        want[i] = Par(p.sequent[i], p.sequent[j])
        if seq != _without(want, j):
            bad("conclusion mismatch")
    elif r == "tensor":
        l, rr = pt.premises
        i, j = pt.args
        from .formulas import Tensor
        want = list(l.sequent)
        want[i] = Tensor(l.sequent[i], rr.sequent[j])
        if seq != want + _without(rr.sequent, j):
            bad("conclusion mismatch")
    elif r == "cut":
        l, rr = pt.premises
        i, j = pt.args
        if negate(l.sequent[i]) != rr.sequent[j]:
            bad("cut formulas not dual")
        if seq != _without(l.sequent, i) + _without(rr.sequent, j):
            bad("conclusion mismatch")
    elif r == "mix":
        l, rr = pt.premises
        if seq != l.sequent + rr.sequent:
            bad("conclusion mismatch")
    else:
        bad("unknown rule")


def negate_one():
    from .formulas import BOT
    return BOT


def _ports_of(net: ProofNet, ids: set[int]) -> list[int]:
    return subnet_conclusion_edges(net, ids)


def _components_of(net: ProofNet, ids: set[int]) -> list[set[int]]:
    g = nx.Graph()
    g.add_nodes_from(ids)
    for e in net.edges.values():
        if e.source in ids and e.target in ids:
            g.add_edge(e.source, e.target)
    return [set(comp) for comp in nx.connected_components(g)]


def _seq_subnet(net: ProofNet, ids: set[int]) -> tuple[ProofTree, list[int]]:
    comps = _components_of(net, ids)
    if len(comps) > 1:
        comps.sort(key=min)
        lone = [comp for comp in comps
                if len(comp) == 1 and net.nodes[next(iter(comp))].kind in ("weakening", "bot")]
        rest = [comp for comp in comps if comp not in lone]
        if not rest:
            raise NotSequentializable("only weakening/bot components remain")
        tree, ports = _seq_subnet(net, rest[0])
        for comp in rest[1:]:
            t2, p2 = _seq_subnet(net, comp)
            tree = ProofTree("mix", tree.sequent + t2.sequent, [tree, t2])
            ports = ports + p2
        for comp in lone:
            nid = next(iter(comp))
            n = net.nodes[nid]
            eid = n.conclusions[0]
            lab = net.edges[eid].label
            rule = "w" if n.kind == "weakening" else "bot"
            tree = ProofTree(rule, tree.sequent + [lab], [tree],
                             name=lab.name if rule == "w" else None)
            ports = ports + [eid]
        return tree, ports
    ids = comps[0] if comps else ids
    if len(ids) == 1:
        nid = next(iter(ids))
        n = net.nodes[nid]
        ports = list(n.conclusions)
        seq = [net.edges[eid].label for eid in ports]
        if n.kind == "ax":
            return ProofTree("ax", seq, name=seq[0].name), ports
        if n.kind == "box":
            pt = ProofTree("box", seq)
            pt.cpt = n.cpt
            return pt, ports
        if n.kind == "one":
            return ProofTree("one", seq), ports
        if n.kind == "weakening":
            # nullary weakening: X- is derivable from nothing
            return ProofTree("w", seq, name=seq[0].name), ports
        raise NotSequentializable(f"lone {n.kind} node is not derivable")
    ports = _ports_of(net, ids)
    port_set = set(ports)
    # peel terminal par / bot / c / w
    for kind in ("par", "bot", "contraction", "weakening"):
        for nid in sorted(ids):
            n = net.nodes[nid]
            if n.kind != kind or not n.conclusions or n.conclusions[0] not in port_set:
                continue
            ce = n.conclusions[0]
            sub_ids = ids - {nid}
            sub, sub_ports = _seq_subnet(net, sub_ids)
            if kind == "par":
                p1, p2 = n.premises
                i, j = sub_ports.index(p1), sub_ports.index(p2)
                from .formulas import Par
                new_seq = list(sub.sequent)
                new_seq[i] = net.edges[ce].label
                new_ports = list(sub_ports)
                new_ports[i] = ce
                return (ProofTree("par", _without(new_seq, j), [sub], args=(i, j)),
                        _without(new_ports, j))
            if kind == "contraction":
                p1, p2 = n.premises
                i, j = sub_ports.index(p1), sub_ports.index(p2)
                if i > j:
                    i, j = j, i
                new_seq = list(sub.sequent)
                new_ports = list(sub_ports)
                new_ports[i] = ce
                return (ProofTree("c", _without(new_seq, j), [sub], args=(i, j),
                                  name=net.edges[ce].label.name),
                        _without(new_ports, j))
            # bot and weakening append their conclusion at the end
            rule = "bot" if kind == "bot" else "w"
            lab = net.edges[ce].label
            return (ProofTree(rule, sub.sequent + [lab], [sub],
                              name=lab.name if rule == "w" else None),
                    sub_ports + [ce])
    # splitting tensor or cut
    for nid in sorted(ids):
        n = net.nodes[nid]
        if n.kind == "cut":
            pass
        elif n.kind == "tensor" and n.conclusions and n.conclusions[0] in port_set:
            pass
        else:
            continue
        e1, e2 = n.premises
        rest = ids - {nid}
        comps2 = _components_of(net, rest)
        if len(comps2) != 2:
            continue
        s1, s2 = net.edges[e1].source, net.edges[e2].source
        compL = next(comp for comp in comps2 if s1 in comp)
        compR = next(comp for comp in comps2 if s2 in comp)
        if compL is compR:
            continue
        l, l_ports = _seq_subnet(net, compL)
        r, r_ports = _seq_subnet(net, compR)
        i, j = l_ports.index(e1), r_ports.index(e2)
        if n.kind == "tensor":
            new_seq = list(l.sequent)
            new_seq[i] = net.edges[n.conclusions[0]].label
            new_ports = list(l_ports)
            new_ports[i] = n.conclusions[0]
            return (ProofTree("tensor", new_seq + _without(r.sequent, j),
                              [l, r], args=(i, j)),
                    new_ports + _without(r_ports, j))
        return (ProofTree("cut", _without(l.sequent, i) + _without(r.sequent, j),
                          [l, r], args=(i, j)),
                _without(l_ports, i) + _without(r_ports, j))
    raise NotSequentializable("no terminal rule and no splitting tensor/cut found")


def sequentialize(c: CutNet) -> ProofTree:
    c.validate()
    if not c.is_proper():
        raise NotProper("more than one cut between some component pair")
    if not check_correctness(c.net):
        raise NotCorrect("cut-net's net fails the correctness check")
    rcn = c.rooted(0)

    def walk(t: SubTree) -> tuple[ProofTree, list[int]]:
        tree, ports = _seq_subnet(c.net, set(t.component))
        for ch in t.children:
            ctree, cports = walk(ch)
            (cut_id,) = ch.cuts_up
            cut = c.net.nodes[cut_id]
            mine = next(eid for eid in cut.premises if eid in ports)
            theirs = next(eid for eid in cut.premises if eid in cports)
            i, j = ports.index(mine), cports.index(theirs)
            tree = ProofTree("cut",
                             _without(tree.sequent, i) + _without(ctree.sequent, j),
                             [tree, ctree], args=(i, j))
            ports = _without(ports, i) + _without(cports, j)
        return tree, ports

    tree, ports = walk(rcn.tree)
    tree.ports = ports
    check_proof_tree(tree)
    return tree


def desequentialize(pt: ProofTree) -> ProofNet:
    net = ProofNet()

    def build(t: ProofTree) -> list[int]:
        r = t.rule
        if r in ("ax", "one", "box"):
            kind = {"ax": "ax", "one": "one", "box": "box"}[r]
            _, eids = net.add_node(kind, conclusion_labels=list(t.sequent),
                                   cpt=t.cpt if r == "box" else None)
            return eids
        if r == "mix":
            return build(t.premises[0]) + build(t.premises[1])
        if r in ("bot", "w"):
            ports = build(t.premises[0]) if t.premises else []
            kind = "bot" if r == "bot" else "weakening"
            _, (eid,) = net.add_node(kind, conclusion_labels=[t.sequent[-1]])
            return ports + [eid]
        if r == "c":
            ports = build(t.premises[0])
            i, j = t.args
            _, (eid,) = net.add_node("contraction", premises=[ports[i], ports[j]],
                                     conclusion_labels=[t.premises[0].sequent[i]])
            ports = list(ports)
            ports[i] = eid
            return _without(ports, j)
        if r == "par":
            ports = build(t.premises[0])
            i, j = t.args
            from .formulas import Par
            lab = Par(t.premises[0].sequent[i], t.premises[0].sequent[j])
            _, (eid,) = net.add_node("par", premises=[ports[i], ports[j]],
                                     conclusion_labels=[lab])
            ports = list(ports)
            ports[i] = eid
            return _without(ports, j)
        if r == "tensor":
            pl = build(t.premises[0])
            pr = build(t.premises[1])
            i, j = t.args
            from .formulas import Tensor
            lab = Tensor(t.premises[0].sequent[i], t.premises[1].sequent[j])
            _, (eid,) = net.add_node("tensor", premises=[pl[i], pr[j]],
                                     conclusion_labels=[lab])
            pl = list(pl)
            pl[i] = eid
            return pl + _without(pr, j)
        if r == "cut":
            pl = build(t.premises[0])
            pr = build(t.premises[1])
            i, j = t.args
            net.add_node("cut", premises=[pl[i], pr[j]])
            return _without(pl, i) + _without(pr, j)
        raise NetError(f"unknown rule {r}")

    ports = build(pt)
    net.set_conclusions(ports)
    return net
