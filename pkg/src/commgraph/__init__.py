"""Commuting graphs of matrix rings and matrix groups over Z_m."""
from .errors import (CommGraphError, GuardExceeded, NotAVertex, OutOfScope,
                     PreconditionError, ShapeMismatch, WitnessCheckFailed)
from .graph import (ComponentReport, GraphView, bfs_distance, build_graph,
                    components, diameter, export_graph, neighbors, parse_csv)
from .kernels import BACKEND
from .modulus import (CoprimeSplit, Prime, PrimePower, check_units_lemma,
                      classify, factorize)
from .witness import (NeighborWitness, PathWitness, coprime_neighbor,
                      field_isolated_component, p_matrix, path3,
                      prime_power_neighbor, verify_lower_bound, verify_path)
from .zmod import (DomainKind, DomainSpec, ModMatrix, Residue, center_of,
                   centralizer, commutes, decode, determinant, encode,
                   identity, is_central, is_invertible, mat_add, mat_mul,
                   mat_sub, scalar_mul,
                   parse_matrix, scalar, to_text, transpose, unit, zero)

__version__ = "0.1.0"
