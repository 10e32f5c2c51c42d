"""Support varieties over Frobenius kernels of classical groups.

Exact-arithmetic descriptors for the supports of simple modules and blocks
over higher Frobenius kernels, a symbolic divided-power engine verifying the
splitting identity behind them, and an exhaustive SL2 matrix oracle that
cross-checks every descriptor pointwise over small prime fields.
"""

from .dpalg import DPTensor, split_diff, verify_split_identity
from .ffield import Field, PolyMatrix, field_of
from .linkage import (BlockClass, block_class, digit_depth, enumerate_classes,
                      lattice_index, pairing_depth, same_block)
from .oracle import (ModuleRep, NilpotentTuple, coefficient_action,
                     enumerate_tuples, is_free, one_param_action, run_sweep,
                     sl2_induced, sl2_simple, sum_action, support_points,
                     verify_block, verify_equal, verify_simple)
from .rootsys import (GateReport, GroupSpec, Root, RootSystem, Weight,
                      WeylElement, build_root_system, dot_action, gate_check,
                      pairing, parse_group, restricted_weights, weight_digits,
                      weyl_orbit)
from .varieties import (G1Variety, SimpleRegistry, TupleVariety, block_variety,
                        complexity_upper, contains_point, full_cone,
                        induced_variety, levi_conjugate, load_registry,
                        orbit_closure, orbit_dim, p_divisible_roots,
                        simple_variety, zero_variety)

__version__ = "0.1.0"
