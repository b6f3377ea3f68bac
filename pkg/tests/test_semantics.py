import numpy as np
import pytest

from bpn import (Assignment, BayesianNetwork, CostCounters, VarSpec,
                 bn_to_bpn, check_invariance, factor_new, forward_sample,
                 interpret_naive, interpret_rooted, normalize, query, sum_out,
                 ve_factorize, width)
from bpn.bn import NotBayesian, bn_joint
from bpn.factors import UnknownName, restrict
from bpn.generators import random_bn, random_query
from bpn.net import ProofNet
from bpn.formulas import neg
from bpn.rewrite import find_redexes
from bpn.semantics import ZeroEvidence


def test_naive_running_example(rain_net):
    out = interpret_naive(rain_net)
    assert out.factor.names == ("D",)
    assert np.allclose(out.factor.table, [0.557, 0.443], atol=1e-12)
    assert out.max_intermediate == 32


def test_rooted_running_example(rain_net):
    naive = interpret_naive(rain_net)
    rcn = ve_factorize(rain_net, ["A", "B", "C"])
    out = interpret_rooted(rcn)
    assert out.factor.allclose(naive.factor, 1e-12)
    assert out.max_intermediate == 8


def test_rooted_within_width_budget(rng):
    # every intermediate table fits in 2^(w+1) entries
    for _ in range(20):
        b = random_bn(rng, n_min=3, n_max=7)
        net = bn_to_bpn(b, random_query(rng, b))
        order = sorted(net.names() - net.conclusion_names())
        rng.shuffle(order)
        rcn = ve_factorize(net, order)
        w = width(rcn.to_cutnet())
        out = interpret_rooted(rcn)
        assert out.max_intermediate <= 2 ** (w + 1)
        assert out.factor.allclose(interpret_naive(net).factor, 1e-9)


def test_rooted_counter_bound(rain_net):
    rcn = ve_factorize(rain_net, ["A", "B", "C"])
    out = interpret_rooted(rcn)
    n = len(rain_net.nodes)
    w = width(rcn.to_cutnet())
    assert out.counters.total <= 16 * n * 2 ** w


def test_requires_bayesian():
    net = ProofNet()
    net.add_node("weakening", conclusion_labels=[neg("X")])
    net.refresh_conclusions()
    with pytest.raises(NotBayesian):
        interpret_naive(net)


def test_query_matches_sliced_joint(rain):
    net = bn_to_bpn(rain, {"C", "D"})
    post = query(net, {"C"}, Assignment({"D": "t"}))
    joint = bn_joint(rain)
    sliced = restrict(joint, Assignment({"D": "t"}))
    want = sum_out(sliced, set(sliced.names) - {"C"})
    want = factor_new(want.vars, want.table / want.table.sum())
    assert post.allclose(want, 1e-12)


def test_query_no_evidence_is_marginal(rain):
    net = bn_to_bpn(rain, {"D"})
    post = query(net, {"D"}, Assignment())
    assert np.allclose(post.table, [0.557, 0.443], atol=1e-12)


def test_query_zero_evidence():
    b = BayesianNetwork([VarSpec("X")], {"X": []},
                        {"X": factor_new([VarSpec("X")], [1.0, 0.0])})
    net = bn_to_bpn(b, {"X"})
    with pytest.raises(ZeroEvidence):
        query(net, {"X"}, Assignment({"X": "f"}))


def test_query_unknown_name(rain_net):
    with pytest.raises(UnknownName):
        query(rain_net, {"Q"}, Assignment())
    with pytest.raises(UnknownName):
        # B is a name of the net but not a conclusion
        query(rain_net, {"D"}, Assignment({"B": "t"}))


def test_forward_sample_deterministic(rain_net):
    a = forward_sample(rain_net, 7)
    b = forward_sample(rain_net, 7)
    assert a == b
    assert a.names() == set("ABCDE")
    assert all(v in ("t", "f") for _, v in a.items())


def test_forward_sample_frequency(rain_net, rng):
    n = 2000
    hits = sum(forward_sample(rain_net, rng)["D"] == "t" for _ in range(n))
    # 4 sigma around Pr(D=t) = 0.557
    sigma = (0.557 * 0.443 / n) ** 0.5
    assert abs(hits / n - 0.557) <= 4 * sigma


def test_invariance_along_pruning(rain_net):
    trace = []
    normalize(rain_net, include_pruning=True, trace=trace)
    assert trace
    assert check_invariance(rain_net, trace)


def test_invariance_random(rng):
    for _ in range(10):
        b = random_bn(rng, n_min=3, n_max=6)
        net = bn_to_bpn(b, random_query(rng, b))
        trace = []
        normalize(net, include_pruning=True, rng=rng, trace=trace)
        assert check_invariance(net, trace)
