"""Width, breadth and Local Lemma tools for subshifts over Z^d and free groups."""
__version__ = "0.1.0"

from .errors import *  # noqa: E402,F401,F403
from .groups import Group  # noqa: E402
from .patterns import (Pattern, Window, WindowConfiguration, left_shift,  # noqa: E402
                       merge, occurs, restriction_set, right_shift, weight)
from .covers import (BreadthCertificate, CylinderFamily, family_breadth,  # noqa: E402
                     family_width, is_window_cover, rho, sigma, window_set_width)
from .lll import (FiniteInstance, WindowInstance, Witness, brute_force_count,  # noqa: E402
                  canonical_witness, check_correctness, counting_lower_bound,
                  neighbor_bound_audit, neighbors)
from .sampler import (SamplerConfig, folner_entropy_estimate, sample,  # noqa: E402
                      verify_avoidance)
from .constructor import (AugmentationPlan, assemble_augmented_cover,  # noqa: E402
                          build_left_family, build_right_family, freeness_patterns,
                          orbit_escape_check, period_check)
from .sofic import (PseudoAction, approx_coloring_count, cyclic_approximation,  # noqa: E402
                    permutation_approximation, proper_set, transfer_patterns,
                    vertex_lll_count_bound)
