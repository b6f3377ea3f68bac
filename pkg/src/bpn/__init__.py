"""Exact Bayesian inference on multiplicative proof-nets with boxes."""

from .factors import (Assignment, CostCounters, Factor, VarSpec, factor_new,
                      normalize as normalize_factor, product, product_many,
                      project, restrict, sum_out, unit_factor)
from .formulas import (Atom, Bot, Formula, One, Par, Tensor, atoms,
                       format_formula, neg, negate, parse_formula, pos)
from .net import (ProofNet, artifact_closure, check_correctness,
                  check_typed_graph, is_bayesian, is_isomorphic, jointree_check,
                  polarized_dag, subnet)
from .rewrite import (Redex, ax_expand, find_redexes, normal_form_decompose,
                      normalize, reduce_step, tensor_par_expand)
from .cutnet import (CutNet, ProofTree, RootedCutNet, desequentialize,
                     partition_to_cutnet, sequentialize, split, type_cuts,
                     ve_factorize, width)
from .semantics import (Interpretation, check_invariance, forward_sample,
                        interpret_naive, interpret_rooted, query)
from .bn import BayesianNetwork, bn_joint, bn_to_bpn, bpn_to_bn
from .dsep import CiQuery, ci_oracle, disconnected, dsep_pipeline

__version__ = "0.1.0"
