import numpy as np
import pytest

from bpn import (ProofNet, Redex, ax_expand, check_correctness, find_redexes,
                 is_isomorphic, normal_form_decompose, normalize, reduce_step,
                 tensor_par_expand)
from bpn.formulas import BOT, ONE, Par, Tensor, neg, pos
from bpn.generators import (add_cw_gadget, add_one_bot_gadget,
                            add_tensor_par_gadget, random_bpn,
                            random_correct_net)
from bpn.rewrite import NonAtomicEdge, NotNormal, StaleRedex


def test_normal_bpn_has_no_plain_redexes(rain_net):
    assert find_redexes(rain_net) == []
    pruning = find_redexes(rain_net, include_pruning=True)
    assert {r.kind for r in pruning} <= {"box_weakening"}
    # the E-box is cut against a weakening, so pruning finds it
    assert len(pruning) == 1


def test_ax_cut_step():
    net = ProofNet()
    _, (xp1, xn1) = net.add_node("ax", conclusion_labels=[pos("X"), neg("X")])
    _, (xp2, xn2) = net.add_node("ax", conclusion_labels=[pos("X"), neg("X")])
    net.add_node("cut", premises=[xp1, xn2])
    net.refresh_conclusions()
    (r,) = find_redexes(net)
    assert r.kind == "ax_cut"
    reduce_step(net, r)
    assert len(net.nodes) == 1
    assert not find_redexes(net)
    assert check_correctness(net)


def test_tensor_par_step_makes_two_cuts(rng):
    net = ProofNet()
    add_tensor_par_gadget(net, rng)
    rs = [r for r in find_redexes(net) if r.kind == "tensor_par"]
    assert len(rs) == 1
    cuts_before = sum(1 for n in net.nodes.values() if n.kind == "cut")
    reduce_step(net, rs[0])
    cuts_after = sum(1 for n in net.nodes.values() if n.kind == "cut")
    assert cuts_after == cuts_before + 1
    assert check_correctness(net)
    out = normalize(net)
    assert not find_redexes(out)


def test_one_bot_step(rng):
    net = ProofNet()
    add_one_bot_gadget(net, rng)
    (r,) = find_redexes(net)
    assert r.kind == "one_bot"
    reduce_step(net, r)
    assert not net.nodes


def test_contraction_weakening_step(rng):
    net = ProofNet()
    add_cw_gadget(net, rng)
    rs = [r for r in find_redexes(net) if r.kind == "contraction_weakening"]
    assert len(rs) == 2            # both weakening premises qualify
    reduce_step(net, rs[0])
    assert check_correctness(net)
    out = normalize(net)
    # collapses to the lone weakening carrying the pending X- conclusion
    assert [n.kind for n in out.nodes.values()] == ["weakening"]


def test_box_weakening_prunes_inputs(rain_net):
    (r,) = find_redexes(rain_net, include_pruning=True)
    assert r.kind == "box_weakening"
    before_w = sum(1 for n in rain_net.nodes.values() if n.kind == "weakening")
    reduce_step(rain_net, r)
    after_w = sum(1 for n in rain_net.nodes.values() if n.kind == "weakening")
    # the E-box (one input C-) is replaced by one fresh weakening on C-
    assert after_w == before_w
    assert check_correctness(rain_net)
    assert "E" not in rain_net.names()


def test_stale_redex(rng):
    net = ProofNet()
    add_one_bot_gadget(net, rng)
    (r,) = find_redexes(net)
    reduce_step(net, r)
    with pytest.raises(StaleRedex):
        reduce_step(net, r)


def test_steps_preserve_correctness_and_conclusions(rng):
    for _ in range(20):
        net = random_correct_net(rng)
        concl = [net.edges[e].label for e in net.conclusions]
        while True:
            rs = find_redexes(net, include_pruning=True)
            if not rs:
                break
            reduce_step(net, rs[int(rng.integers(len(rs)))])
            assert check_correctness(net)
            assert [net.edges[e].label for e in net.conclusions] == concl


def test_normalize_idempotent(rng):
    net = random_correct_net(rng)
    m = normalize(net)
    assert is_isomorphic(normalize(m), m)


def test_normalize_termination_bound(rng):
    for _ in range(20):
        net = random_correct_net(rng)
        trace = []
        normalize(net, include_pruning=True, rng=rng, trace=trace)
        assert len(trace) <= len(net.nodes)


def test_normalize_confluence_small(rng):
    for _ in range(10):
        net = random_correct_net(rng)
        base = normalize(net)
        for _ in range(10):
            assert is_isomorphic(normalize(net, rng=rng), base)


def test_ax_expand_inverse(rng):
    for _ in range(10):
        net = random_bpn(rng)
        eids = sorted(net.edges)
        eid = eids[int(rng.integers(len(eids)))]
        expanded = net.copy()
        cut_id, ax_id = ax_expand(expanded, eid)
        rs = [r for r in find_redexes(expanded)
              if r.kind == "ax_cut" and cut_id in r.nodes]
        assert rs
        reduce_step(expanded, rs[0])
        assert is_isomorphic(expanded, net)


def test_ax_expand_compound_rejected(rng):
    net = ProofNet()
    add_tensor_par_gadget(net, rng)
    eid = next(e.id for e in net.edges.values()
               if isinstance(e.label, Tensor))
    with pytest.raises(NonAtomicEdge):
        ax_expand(net, eid)


def test_tensor_par_expand_inverse(rain_net):
    # expand the two cuts of the running example that share no component,
    # then reduce back
    from bpn.cutnet import split, type_cuts, ve_factorize
    rcn = ve_factorize(rain_net, ["A", "B", "C"])
    c = rcn.to_cutnet()
    typed = type_cuts(c)
    out = normalize(typed.net)
    assert is_isomorphic(out, rain_net)


def test_normal_form_decompose_atomic(rain_net):
    m = normalize(rain_net)
    at, forest = normal_form_decompose(m)
    assert at.is_atomic()
    assert forest == []


def test_normal_form_decompose_compound(rng):
    net = ProofNet()
    _, (xp, xn) = net.add_node("ax", conclusion_labels=[pos("X"), neg("X")])
    _, (yp, yn) = net.add_node("ax", conclusion_labels=[pos("Y"), neg("Y")])
    net.add_node("tensor", premises=[xp, yp],
                 conclusion_labels=[Tensor(pos("X"), pos("Y"))])
    net.refresh_conclusions()
    at, forest = normal_form_decompose(net)
    assert at.is_atomic()
    assert len(forest) == 1
    labels = {at.edges[e].label for e in at.conclusions}
    assert {pos("X"), pos("Y")} <= labels


def test_normal_form_decompose_requires_normal(rng):
    net = ProofNet()
    add_one_bot_gadget(net, rng)
    with pytest.raises(NotNormal):
        normal_form_decompose(net)


def test_normal_shape(rng):
    # in a reduced net every cut has atomic premises, positive one from a box
    for _ in range(20):
        net = random_correct_net(rng)
        m = normalize(net)
        for n in m.nodes.values():
            if n.kind != "cut":
                continue
            labs = [m.edges[e].label for e in n.premises]
            assert all(not isinstance(l, (Tensor, Par)) and l not in (ONE, BOT)
                       for l in labs)
            epos = next(e for e in n.premises if m.edges[e].label.positive)
            assert m.nodes[m.edges[epos].source].kind == "box"
