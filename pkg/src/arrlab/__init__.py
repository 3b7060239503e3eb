"""Exact analysis of projective line arrangements: multiplicity strata,
m-graphs, resonance-condition witnesses and Aomoto cohomology."""
from .aomoto import (OSAlgebra, aomoto_complex, aomoto_h1, build_os, eigenspace_dimension,
                     lower_bound_sweep, resonance_membership)
from .arrangement import (Incidence, PointRecord, attach_star, concur, disjoint_union, euler_characteristic_complement,
                          general_lines, generate_generic_plus_nodes, m_reduce, near_pencil,
                          pencil, stratum, stratum_div, stratum_geq, validate)
from .cyclo import CycRat, cyclotomic_polynomial, zeta_power
from .esv import (EsvVerdict, Witness, WeightVector, check_condition_a, check_condition_b,
                  esv_report, esv_verdict, find_witness, quick_a_doubleprime, remark3_shortcut,
                  theorem2_cover, weight_vector)
from .exceptions import (ArrangementError, ArrangementFileError, BudgetExceeded,
                         ConstructionError, DegenerateInputError, NotApplicableError,
                         ReductionError)
from .fileformat import dumps_arrangement, loads_arrangement, parse_arrangement
from .geometry import ProjLine, ProjPoint, compute_incidence, intersect
from .mgraph import build_mgraph, classify, complexity, efficiency, export_dot

__version__ = "0.1.0"
