"""Self-testing certificates for connected graph states."""

from .bounds import BoundInputs, delta_generic, delta_refined, delta_special
from .certificates import Certificate, MeasurementSetting, make_certificate, verify_certificate
from .dense import StateVector, build_graph_state
from .devices import (
    QuantumBoxSet,
    compute_epsilon,
    embedded_experiment,
    honest_experiment,
    rotated_experiment,
    skewed_experiment,
)
from .extraction import anticommutator_residuals, apply_isometry, compute_junk, equivalence_distances
from .graph import Graph, find_odd_induced_cycle, is_connected, parse_graph
from .lhv import LHVProvider, bipartite_completeness_check, lhv_expectation, nonbipartite_violation
from .pauli import PauliString, multiply, product_over_set, stabilizer_generator
from .stabilizer import StabilizerGroup

__version__ = "0.1.0"
