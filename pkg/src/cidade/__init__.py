"""Exact graded homological algebra over complete intersections.

Polynomial rings over finite fields (and QQ), Gröbner bases for ideals and
submodules, minimal free resolutions, Tor and Ext by degreewise linear
algebra, CI operators, mapping-cone resolutions and a vanishing checker that
compares Tor/Ext over R = S/(f_1..f_c) with Tor/Ext over hypersurface sections.
"""

from .errors import *  # noqa: F401,F403
from .fields import GF, QQ, Field, FieldEmbedding, extension
from .poly import PolyRing, Polynomial, exact_divide, parse_matrix, parse_polynomial
from .groebner import (HilbertSeries, IdealMembership, buchberger, express_in_ideal, hilbert_series,
                       ideal_gb, is_regular_sequence, normal_form)
from .rings import QuotientRing, RingTower
from .modules import GradedMatrix, PresentedModule, syzygies
from .complexes import (ChainComplex, FreeResolution, FunctorComplex, homology_dims, minimize,
                        reduce_mod, resolve, verify_complex)
from .eisenbud import (check_cone, ci_operators, cone_resolution, homotopy_invariance_check,
                       lift_complex, perturbed_lift, verify_linearity)
from .vanishing import (VERSION, dade_check, dade_check_ext, dade_check_tor, ext, les_check,
                        sample_sections, tor, vanishing_window)
from .problem import ProblemFile, parse_problem, parse_problem_text

__version__ = VERSION
