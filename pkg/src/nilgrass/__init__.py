"""Exact computation of nilpotent fixed loci in Grassmannians.

The library constructs the linear shuffle systems attached to a
nilpotent matrix, combines them with the Pluecker quadrics, and
extracts dimension and degree of the cut-out locus through exact
Groebner bases and Hilbert series.  Lattice models for rectangular
block structure and the n = 8 non-radical example are included, along
with a CLI that reproduces the bundled classification tables.
"""

from .combinat import (Partition, PluckerIndex, complement_partition, conjugate,
                       dominance_leq, mu_max, partitions_of, sign_interleave,
                       subset_rank, subset_unrank, subsets)
from .grassmann import (NilpotentMatrix, ShuffleIdeal, ShuffleSystem, antidiag_B,
                        duality_map, hodge_star, jordan_matrix,
                        onepart_shuffle_basis, plucker_quadrics, plucker_vector,
                        shuffle_equations, shuffle_ideal)
from .groebner import (BudgetExceeded, GroebnerBasis, buchberger,
                       eliminate_linear, hilbert_data, member,
                       min_generators_deg2, normal_form)
from .pipeline import AnalysisRecord, analyze, dual_check, run_table, shuffle_rank
from .polyring import (DEGREVLEX, LEX, MonomialOrder, Poly, PolyMatrix, PolyRing,
                       coefficient_matrix, parse_polynomial, plucker_ring,
                       wedge_power)
from .qq import QQ
from .schubert import (BlockMatrix, RectangularContext, assemble_block_matrix,
                       ball_strata, grassfixed_dim, lattice_subspace, orbit_point,
                       schubert_dim, verify_containment)

__version__ = "0.1.0"
