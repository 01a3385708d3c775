"""Integer convex quadratic and linear bilevel programs: exact enumeration,
the relaxed-follower approximation with gap certificates, and benchmarks."""
from .errors import *  # noqa: F401,F403
from .model import (BilevelSolution, FollowerResponse, LinBilevelInstance, QuadBilevelInstance,
                    Sense, Status, validate)
from .oracles import (Direction, LexSpec, minimize_iqp, minimize_iqp_lex, solve_binary_linear,
                      solve_ilp, solve_lp)
from .proximity import (ProximityBounds, cook_prox_bound, ellipsoid_linear_max, ew_prox_bound,
                        flatness_bound, measure_prox_bruteforce, prox_bound_quad, prox_diagonal,
                        prox_linear_term_bound)
from .foresight import (ApproxResult, GapCertificate, certify_ex_ante, certify_linear_case,
                        compose_apx_bound, relaxed_foresight_lin, relaxed_foresight_quad)
from .exact import ExactConfig, solve_exact_lin, solve_exact_quad
from .instances import (GenConfig, SsiInstance, example_relaxation, example_tie, gen_lin, gen_quad,
                        gen_testbed, read_instance, reduce_ssi, write_instance)

__version__ = "0.1.0"
