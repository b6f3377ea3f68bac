"""Bayesian networks and the two translations to and from proof-nets.

A network is a DAG over named finite variables with one CPT per variable.
The translation to a net builds one box per variable, wires each consumer
through a cut (merging multiple consumers with a balanced contraction
tree), and weakens unqueried sinks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import networkx as nx

from .factors import (CostCounters, Factor, UnknownName, VarSpec, factor_new,
                      is_cpt, product_many)
from .formulas import Atom, neg, pos
from .net import (NetError, ProofNet, check_typed_graph, is_bayesian,
                  polarized_dag)


class BNError(ValueError):
    pass


class NotBayesian(NetError):
    pass


@dataclass
class BayesianNetwork:
    variables: list[VarSpec]
    parents: dict[str, list[str]]
    cpts: dict[str, Factor]

    def __post_init__(self):
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise BNError("duplicate variable names")
        self._spec = {v.name: v for v in self.variables}
        for x in names:
            ps = self.parents.get(x, [])
            if any(p not in self._spec for p in ps):
                raise BNError(f"unknown parent of {x}")
            cpt = self.cpts.get(x)
            if cpt is None:
                raise BNError(f"missing CPT for {x}")
            if set(cpt.names) != {x, *ps}:
                raise BNError(f"CPT of {x} is over {cpt.names}, expected {ps} + [{x}]")
            if not is_cpt(cpt, x):
                raise BNError(f"CPT rows of {x} do not sum to 1")
        if not nx.is_directed_acyclic_graph(self.dag()):
            raise BNError("parent relation has a cycle")

    def dag(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(v.name for v in self.variables)
        for x, ps in self.parents.items():
            for p in ps:
                g.add_edge(p, x)
        return g

    def spec(self, name: str) -> VarSpec:
        try:
            return self._spec[name]
        except KeyError:
            raise UnknownName(f"no variable {name}") from None

    @property
    def names(self) -> list[str]:
        return [v.name for v in self.variables]

    def children(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {v.name: [] for v in self.variables}
        for x in sorted(self.parents):
            for p in self.parents[x]:
                out[p].append(x)
        return out

    def same_model(self, other: "BayesianNetwork", tol: float = 1e-9) -> bool:
        if set(self.names) != set(other.names):
            return False
        for x in self.names:
            if self.spec(x).values != other.spec(x).values:
                return False
            if set(self.parents.get(x, [])) != set(other.parents.get(x, [])):
                return False
            if not self.cpts[x].allclose(other.cpts[x], tol):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "variables": [{"name": v.name, "values": list(v.values)}
                          for v in self.variables],
            "cpts": [{"child": x, "parents": list(self.parents.get(x, [])),
                      "table": self.cpts[x].table.tolist()}
                     for x in self.names],
        }

    @staticmethod
    def from_json(data: dict) -> "BayesianNetwork":
        variables = [VarSpec(v["name"], tuple(v["values"])) for v in data["variables"]]
        spec = {v.name: v for v in variables}
        parents: dict[str, list[str]] = {}
        cpts: dict[str, Factor] = {}
        for entry in data["cpts"]:
            x = entry["child"]
            ps = list(entry["parents"])
            if x not in spec or any(p not in spec for p in ps):
                raise BNError(f"CPT of {x} names unknown variables")
            parents[x] = ps
            cpts[x] = factor_new([spec[p] for p in ps] + [spec[x]], entry["table"])
        return BayesianNetwork(variables, parents, cpts)


def bn_joint(b: BayesianNetwork, counters: Optional[CostCounters] = None) -> Factor:
    return product_many([b.cpts[x] for x in b.names], counters)


def _contract_tree(net: ProofNet, edges: list[int], name: str) -> int:
    """Balanced binary contraction tree over pending negative edges."""
    while len(edges) > 1:
        nxt = []
        for i in range(0, len(edges) - 1, 2):
            _, (ce,) = net.add_node("contraction", premises=[edges[i], edges[i + 1]],
                                    conclusion_labels=[neg(name)])
            nxt.append(ce)
        if len(edges) % 2:
            nxt.append(edges[-1])
        edges = nxt
    return edges[0]


def bn_to_bpn(b: BayesianNetwork, query: Iterable[str]) -> ProofNet:
    query = set(query)
    unknown = query - set(b.names)
    if unknown:
        raise UnknownName(f"query names {sorted(unknown)} are not variables")
    net = ProofNet()
    main_edge: dict[str, int] = {}
    input_edge: dict[str, dict[str, int]] = {}
    for x in b.names:
        ps = b.parents.get(x, [])
        labels = [neg(p) for p in ps] + [pos(x)]
        _, eids = net.add_node("box", conclusion_labels=labels, cpt=b.cpts[x])
        input_edge[x] = dict(zip(ps, eids))
        main_edge[x] = eids[-1]
    conclusion_of: dict[str, int] = {}
    kids = b.children()
    for x in b.names:
        consumers = [input_edge[c][x] for c in kids[x]]
        queried = x in query
        if queried and consumers:
            _, (ax_pos, ax_neg) = net.add_node("ax", conclusion_labels=[pos(x), neg(x)])
            consumers.append(ax_neg)
            conclusion_of[x] = ax_pos
        elif queried:
            conclusion_of[x] = main_edge[x]
        if consumers:
            combined = _contract_tree(net, consumers, x)
            net.add_node("cut", premises=[main_edge[x], combined])
        elif not queried:
            _, (we,) = net.add_node("weakening", conclusion_labels=[neg(x)])
            net.add_node("cut", premises=[main_edge[x], we])
    net.set_conclusions([conclusion_of[x] for x in sorted(query)])
    return net


def bpn_to_bn(net: ProofNet) -> BayesianNetwork:
    if not is_bayesian(net):
        raise NotBayesian("input is not a Bayesian proof-net")
    from .rewrite import normal_form_decompose, normalize
    at, _ = normal_form_decompose(normalize(net))
    variables: list[VarSpec] = []
    parents: dict[str, list[str]] = {}
    cpts: dict[str, Factor] = {}
    for bx in sorted(at.boxes(), key=lambda n: at.box_main_name(n.id)):
        x = at.box_main_name(bx.id)
        variables.append(bx.cpt.spec_of(x))
        parents[x] = [v.name for v in bx.cpt.vars if v.name != x]
        cpts[x] = bx.cpt
    b = BayesianNetwork(variables, parents, cpts)
    # the polarized order must be consistent with the recovered DAG
    pdag = polarized_dag(at)
    order = {n: i for i, n in enumerate(pdag.topological_names())}
    for x, ps in parents.items():
        for p in ps:
            if p in order and order[p] >= order[x]:
                raise NotBayesian("polarized order contradicts box inputs")
    return b
