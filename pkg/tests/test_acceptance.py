"""End-to-end acceptance criteria.

Each test prints one pass/fail line.  Tolerances and instance counts are
pinned; random draws use fixed seeds.
"""

import itertools

import numpy as np

from bpn import (Assignment, CiQuery, VarSpec, bn_to_bpn, check_correctness,
                 desequentialize, dsep_pipeline, factor_new, find_redexes,
                 forward_sample, interpret_naive, interpret_rooted,
                 is_bayesian, is_isomorphic, jointree_check, normalize,
                 reduce_step, sequentialize, split, sum_out, type_cuts,
                 ve_factorize, width)
from bpn.bn import bn_joint
from bpn.cutnet import check_proof_tree
from bpn.formulas import Atom, BOT, ONE, Par, Tensor, pos
from bpn.generators import (random_atomic_net, random_bn, random_bpn,
                            random_correct_net, random_query)
from bpn.net import polarized_dag, switching_acyclic_oracle

from conftest import rain_bn

TOL = 1e-9


def _report(num: int, label: str, ok: bool) -> None:
    print(f"criterion {num} ({label}): {'PASS' if ok else 'FAIL'}")
    assert ok


def test_c01_master_oracle():
    rng = np.random.default_rng(1)
    ok = True
    for _ in range(500):
        b = random_bn(rng)
        q = random_query(rng, b)
        net = bn_to_bpn(b, q)
        got = interpret_naive(net).factor
        want = sum_out(bn_joint(b), set(b.names) - q)
        if not got.allclose(want, TOL):
            ok = False
            break
    _report(1, "master oracle equivalence, 500 nets", ok)


def test_c02_factorized_equals_naive():
    rng = np.random.default_rng(2)
    cases = [bn_to_bpn(rain_bn(), {"D"})]
    for _ in range(6):
        b = random_bn(rng, n_min=3, n_max=5)
        cases.append(bn_to_bpn(b, random_query(rng, b)))
    ok = True
    for net in cases:
        base = interpret_naive(net).factor
        internal = sorted(net.names() - net.conclusion_names())
        for order in itertools.permutations(internal):
            c = ve_factorize(net, list(order)).to_cutnet()
            for root in range(len(c.components)):
                got = interpret_rooted(c.rooted(root)).factor
                if not got.allclose(base, TOL):
                    ok = False
    _report(2, "every rooting of every order = naive", ok)


def test_c03_running_example_costs():
    net = bn_to_bpn(rain_bn(), {"D"})
    naive = interpret_naive(net)
    rcn = ve_factorize(net, ["A", "B", "C"])
    rooted = interpret_rooted(rcn)
    c = rcn.to_cutnet()
    from bpn import partition_to_cutnet
    whole = partition_to_cutnet(net, [set(net.nodes)])
    ok = (naive.max_intermediate == 2 ** 5
          and rooted.max_intermediate == 2 ** 3
          and width(c) == 2
          and width(whole) == 4
          and np.allclose(rooted.factor.table, naive.factor.table, atol=TOL))
    _report(3, "running example 2^5 / 2^3, widths 4 / 2", ok)


def test_c04_cost_bound():
    rng = np.random.default_rng(4)
    ok = True
    for _ in range(100):
        b = random_bn(rng)
        net = bn_to_bpn(b, random_query(rng, b))
        order = sorted(net.names() - net.conclusion_names())
        rng.shuffle(order)
        rcn = ve_factorize(net, order)
        w = width(rcn.to_cutnet())
        out = interpret_rooted(rcn)
        if out.counters.total > 16 * len(net.nodes) * 2 ** w:
            ok = False
            break
    _report(4, "total counter <= 16 n 2^w on 100 cut-nets", ok)


def test_c05_rewriting():
    rng = np.random.default_rng(5)
    ok = True
    # termination bound, confluence over 200 orders, normal shape
    for _ in range(50):
        net = random_correct_net(rng)
        first = None
        for _ in range(200):
            cur = net.copy()
            steps = 0
            while True:
                rs = find_redexes(cur)
                if not rs:
                    break
                reduce_step(cur, rs[int(rng.integers(len(rs)))])
                steps += 1
            if steps > len(net.nodes):
                ok = False
            if not _normal_shape(cur):
                ok = False
            if first is None:
                first = cur
            elif not is_isomorphic(cur, first):
                ok = False
            if not ok:
                break
        if not ok:
            break
    # semantic invariance at every step, pruning included
    for _ in range(50):
        if not ok:
            break
        net = random_bpn(rng, n_min=3, n_max=6)
        base = interpret_naive(net).factor
        cur = net.copy()
        steps = 0
        while True:
            rs = find_redexes(cur, include_pruning=True)
            if not rs:
                break
            reduce_step(cur, rs[int(rng.integers(len(rs)))])
            steps += 1
            if not interpret_naive(cur).factor.allclose(base, TOL):
                ok = False
                break
        if steps > len(net.nodes):
            ok = False
    _report(5, "termination, confluence, normal shape, invariance", ok)


def _normal_shape(m) -> bool:
    for n in m.nodes.values():
        if n.kind != "cut":
            continue
        labs = [m.edges[e].label for e in n.premises]
        if any(isinstance(l, (Tensor, Par)) or l in (ONE, BOT) for l in labs):
            return False
        epos = next((e for e in n.premises if m.edges[e].label.positive), None)
        if epos is None or m.nodes[m.edges[epos].source].kind != "box":
            return False
    return True


def _closed_subset(net, rng):
    """Random premise-closed node set, neither empty nor the whole net."""
    ids = {int(rng.choice(sorted(net.nodes)))}
    stack = list(ids)
    while stack:
        n = stack.pop()
        for eid in net.nodes[n].premises:
            s = net.edges[eid].source
            if s not in ids:
                ids.add(s)
                stack.append(s)
    if ids == set(net.nodes):
        return None
    crossing = any(e.source in ids and e.target is not None
                   and e.target not in ids for e in net.edges.values())
    return ids if crossing else None


def test_c06_cut_typing_round_trip():
    rng = np.random.default_rng(6)
    ok = True
    done = 0
    while done < 100:
        net = random_bpn(rng)
        ids = _closed_subset(net, rng)
        if ids is None:
            continue
        c = split(net, ids)
        typed = type_cuts(c)
        done += 1
        if not typed.is_proper():
            ok = False
        if not check_correctness(typed.net):
            ok = False
        if not is_isomorphic(normalize(typed.net), net):
            ok = False
        if not ok:
            break
    _report(6, "type_cuts proper, correct, round trip on 100 splittings", ok)


def test_c07_sequentialization_round_trip():
    rng = np.random.default_rng(7)
    ok = True
    for _ in range(100):
        b = random_bn(rng, n_min=3, n_max=6)
        net = bn_to_bpn(b, random_query(rng, b))
        order = sorted(net.names() - net.conclusion_names())
        rng.shuffle(order)
        typed = type_cuts(ve_factorize(net, order).to_cutnet())
        pt = sequentialize(typed)
        try:
            check_proof_tree(pt)
        except Exception:
            ok = False
        deseq = desequentialize(pt)
        want = typed.net.copy()
        want.set_conclusions(list(pt.ports))
        if not is_isomorphic(deseq, want):
            ok = False
        if not ok:
            break
    _report(7, "sequentialize / desequentialize identity on 100 nets", ok)


def test_c08_dsep_soundness():
    rng = np.random.default_rng(8)
    ok = True
    for _ in range(500):
        b = random_bn(rng, n_min=3, n_max=6)
        while True:
            x, y, z = set(), set(), set()
            for n in b.names:
                (x, y, z)[int(rng.integers(3))].add(n)
            if x and y:
                break
        graphical, oracle = dsep_pipeline(b, CiQuery(x, y, z))
        if graphical and not oracle:
            ok = False
            break
    _report(8, "no unsound d-separation verdict in 500 instances", ok)


def _embeddable_oracle(net) -> bool:
    """Explicit search for an embedding into a positive net: contract the
    negative conclusions of each name, cut them against a pending positive
    conclusion of that name (a fresh single-conclusion box when the net has
    no box for it), and accept when some choice of targets leaves a
    switching-acyclic net with pairwise distinct main names."""
    mains = [net.box_main_name(b.id) for b in net.boxes()]
    if len(set(mains)) != len(mains):
        return False
    neg_names = sorted({net.edges[eid].label.name for eid in net.conclusions
                        if not net.edges[eid].label.positive})
    if not neg_names:
        return switching_acyclic_oracle(net)
    choice_sets = []
    for x in neg_names:
        if x in mains:
            cands = [eid for eid in net.conclusions
                     if net.edges[eid].label == Atom(x, True)]
            if not cands:
                return False
            choice_sets.append([(x, eid) for eid in cands])
        else:
            choice_sets.append([(x, None)])
    for combo in itertools.product(*choice_sets):
        out = net.copy()
        for x, target in combo:
            negs = [eid for eid in out.conclusions
                    if out.edges[eid].label == Atom(x, False)]
            merged = negs[0]
            for other in negs[1:]:
                _, (ce,) = out.add_node("contraction", premises=[merged, other],
                                        conclusion_labels=[Atom(x, False)])
                merged = ce
            if target is None:
                cpt = factor_new([VarSpec(x)], [0.5, 0.5])
                _, (target,) = out.add_node("box", conclusion_labels=[pos(x)],
                                            cpt=cpt)
            out.add_node("cut", premises=[target, merged])
            out.refresh_conclusions()
        if any(not out.edges[eid].label.positive for eid in out.conclusions):
            continue
        if switching_acyclic_oracle(out):
            return True
    return False


def test_c09_jointree_and_artifact():
    rng = np.random.default_rng(9)
    ok = True
    import networkx as nx
    for _ in range(200):
        net = random_bpn(rng)
        mains = [net.box_main_name(b.id) for b in net.boxes()]
        if len(set(mains)) != len(mains):
            ok = False
        if not nx.is_directed_acyclic_graph(
                nx.DiGraph(polarized_dag(net).name_arcs())):
            ok = False
        if not jointree_check(net):
            ok = False
        if not ok:
            break
    for _ in range(150):
        net = random_atomic_net(rng, max_boxes=12)
        if is_bayesian(net) != _embeddable_oracle(net):
            ok = False
            break
    _report(9, "jointree on 200 bpns; artifact = embeddability on 150 nets", ok)


def test_c10_sampler_consistency():
    net = bn_to_bpn(rain_bn(), {"D"})
    exact = {}
    b = rain_bn()
    joint = bn_joint(b)
    for x in b.names:
        exact[x] = sum_out(joint, set(b.names) - {x}).value(
            Assignment({x: "t"}))
    rng = np.random.default_rng(10)
    n = 10 ** 5
    counts = {x: 0 for x in b.names}
    for _ in range(n):
        a = forward_sample(net, rng)
        for x in b.names:
            counts[x] += a[x] == "t"
    ok = True
    for x in b.names:
        p = exact[x]
        sigma = (p * (1 - p) / n) ** 0.5
        if abs(counts[x] / n - p) > 3 * sigma:
            ok = False
    _report(10, "100k forward samples within 3 sigma per variable", ok)
