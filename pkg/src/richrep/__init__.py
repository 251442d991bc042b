"""richrep: verification toolkit for repetitions in palindromically rich
ternary words centred on the word tau(g(f^w(0)))."""

__version__ = "0.1.0"

from .words import Occurrence, ParikhVector, Word, complete_returns, parikh, sister
from .repetition import (RepetitionReport, SuffixRuns, exponent, find_even_power,
                         is_power_free, max_exponent_factor, smallest_period,
                         suffix_extension_ok)
from .palindromes import (Eertree, RichnessChecker, count_distinct_palindromes,
                          has_unioccurrent_palindromic_suffix, is_middle_class,
                          is_poor, is_rich)
from .morphisms import (Morphism, Transducer, f, fhat, fixed_point_prefix, g,
                        image_length, incidence_matrix, phi, psi, tau, taubar,
                        tilde_tau, transduce, x_prefix, y_prefix, z_prefix)
from .engine import ConfigError, SearchConfig, SearchResult, longest_word
from .predicates import (ImagePredicate, NoFactorFrom, NoPoorFactor, PowerFree,
                         Rich)
from .presets import preset, verify_forbidden_family, verify_return_tree
from .complexity import PrefixOracle, StabilizationError
from .stretch import (StretchItem, Workspace, ce_limit, inner_sequence,
                      is_unstretchable, left_stretch, outer_power_closed_form,
                      outer_sequence, right_stretch, scan_prefix_repetitions,
                      verify_bound)
