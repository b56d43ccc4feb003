"""Exact geometry and dynamics of shift spaces under the density
pseudometrics: configurations, sofic shifts, path constructions, simplicial
complex translations, cellular automaton classification, and Markov measure
bounds."""

__version__ = "0.1.0"

from .configs import (Alphabet, BINARY, Configuration, format_config,
                      hamming, parse_config, periodic_config, shift, window)
from .shifts import (ShiftPresentation, SftSpec, compile_sft, contains_config,
                     disjoint_union, even_shift, full_shift, golden_mean,
                     intersect, language, language_equal, language_subset,
                     mixing_distance, mixing_sft_inside, positive_entropy,
                     shannon_cover, transitive_components,
                     find_unbordered_synchronizing)
from .metrics import (d_besicovitch, d_cantor, d_weyl, density_estimate,
                      distance_to_shift, nearest_periodic,
                      unique_approximation_search, weyl_estimate)
from .paths import (block_path_prefix, block_path_source, block_path_window,
                    embed_point, intersperse, intersperse_path_prefix,
                    intersperse_path_source, intersperse_path_window,
                    sample_block_path)
from .homotopy import (AbstractComplex, BarycentricPoint, average,
                       complex_coordinates, embed_complex, extract_complex,
                       inverse_weighted_average, project)
from .automata import (CellularAutomaton, apply_ca, ca_pseudometric,
                       check_on_subshift, classify_full_shift, elementary_ca,
                       isometric_ca_precondition, isometry_decomposition,
                       minimal_neighborhood)
from .measures import (MarkovMeasure, bernoulli_prefix,
                       binomial_growth_threshold, cylinder,
                       cylinder_decay_bound, hamming_ball_count,
                       parry_measure, verify_binomial_bound)
