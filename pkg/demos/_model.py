"""Shared five-variable example model for the demo scripts."""

from bpn import BayesianNetwork, VarSpec, factor_new


def rain_model() -> BayesianNetwork:
    vs = {x: VarSpec(x) for x in "ABCDE"}
    return BayesianNetwork(
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
