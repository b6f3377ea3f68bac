# Exact inference on a five-variable network, naively and factorized.
#
# A -> B, A -> C, B -> D, C -> D, C -> E.  We ask for Pr(D).

from bpn import (BayesianNetwork, VarSpec, bn_to_bpn, factor_new,
                 interpret_naive, interpret_rooted, ve_factorize, width)

vs = {x: VarSpec(x) for x in "ABCDE"}
bn = BayesianNetwork(
    list(vs.values()),
    {"A": [], "B": ["A"], "C": ["A"], "D": ["B", "C"], "E": ["C"]},
    {
        "A": factor_new([vs["A"]], [0.3, 0.7]),
        "B": factor_new([vs["A"], vs["B"]], [0.8, 0.2, 0.4, 0.6]),
        "C": factor_new([vs["A"], vs["C"]], [0.3, 0.7, 0.6, 0.4]),
        "D": factor_new([vs["B"], vs["C"], vs["D"]],
                        [0.9, 0.1, 0.5, 0.5, 0.2, 0.8, 0.7, 0.3]),
        "E": factor_new([vs["C"], vs["E"]], [0.25, 0.75, 0.65, 0.35]),
    })

# The network becomes a net of probabilistic boxes joined by cuts; the
# conclusion is the queried name.
net = bn_to_bpn(bn, {"D"})
print("nodes:", len(net.nodes), "conclusion:", sorted(net.conclusion_names()))

# Naive evaluation multiplies all five tables before summing: the joint has
# 2^5 entries.
naive = interpret_naive(net)
print("Pr(D) =", naive.factor.table, " largest table:", naive.max_intermediate)

# Eliminating A, B, C splits the net into three components whose boundaries
# carry at most two names each, so no table exceeds 2^3 entries.
rcn = ve_factorize(net, ["A", "B", "C"])
rooted = interpret_rooted(rcn)
print("width:", width(rcn.to_cutnet()), " largest table:", rooted.max_intermediate)
print("same answer:", rooted.factor.allclose(naive.factor, 1e-12))
