"""Compressive sensing with LDPC-code sensing matrices.

Core pieces: bit-packed GF(2) code algebra (:mod:`ldpc_cs.gf2`), sensing
matrices built from BPSK codeword images (:mod:`ldpc_cs.sensing`),
exhaustive greedy recovery (:mod:`ldpc_cs.greedy`), belief-propagation
decoders for the interference channel (:mod:`ldpc_cs.bp`), decoder-driven
pursuit (:mod:`ldpc_cs.reconstruct`), closed-form asymptotics
(:mod:`ldpc_cs.analysis`) and a Monte-Carlo harness
(:mod:`ldpc_cs.experiments`).  The HTTP facade lives in
:mod:`ldpc_cs.service` and the CLI in :mod:`ldpc_cs.cli`.
"""

__version__ = "0.1.0"

from .gf2 import (DistanceSpectrum, LinearCode, ParityCheckMatrix,
                  distance_spectrum, encode, expurgate_first_coordinate,
                  gen_column_regular, gen_ensemble_e, gen_peg,
                  generator_from_parity, girth, systematic_form)
from .sensing import (CoherenceReport, SensingMatrix, build_sensing_matrix,
                      coherence, column_correlation, exact_rip_constant,
                      find_indistinguishable_binary_pair, gershgorin_rip_bound)
from .analysis import (binary_entropy, bernoulli_union_bound, ensemble_exponent,
                       exponent_curve, measurement_bound, prop3_rate_bound,
                       rate_function)
from .greedy import (CorrelationOracle, ExhaustiveOracle, ReconResult,
                     SparseSignal, least_squares, omp, resid, sp)
from .bp import (ChannelPriors, DecodeOutcome, TannerGraph, biased_list_bp,
                 bp_decode, interference_priors, mbbp, mmpc, rbp_decode)
from .reconstruct import bp_omp, bp_sp, mbbp_omp, mmpc_omp
from .experiments import (BernoulliMatrix, ExperimentConfig, SummaryRow,
                          cutoff_density, emit_results, gen_bernoulli_matrix,
                          gen_signal, measure, results_csv, run_trials)

__all__ = [name for name in dir() if not name.startswith("_")]
