"""Orthogonal genuinely entangled state families and their nonlocality checks.

The lattice layer builds recursive circulant set families over Z_d**N and the
modified families obtained by rehoming two constant tuples.  The states layer
attaches phase states to each set.  Triviality of orthogonality-preserving
measurements on every all-but-one cut is decided twice: combinatorially
(verifier) and by an exact linear-algebra oracle (oracle).  Party and cut
indices are 0-based throughout.
"""

from .errors import (FamilyFormatError, InadmissibleXiError,
                     InternalConsistencyError, QnonlocError, ResourceLimitError)
from .lattice import (EXTRA_LABEL, CirculantMatrix, ModifiedFamily, ReferenceSizes,
                      RowSelection, SetFamily, TupleSet, build_index_family,
                      build_modified_family, choose_xi, construction_size,
                      cyclic_distance, diagonal_home, element_order,
                      reference_sizes, residue_class, select_rows,
                      verify_partition, verify_permutation_invariance,
                      verify_shift_relation)
from .oracle import (ConstraintSystem, NullspaceResult, OracleReport,
                     TrivialityVerdict, assemble_constraints, hermitian_nullspace,
                     oracle_overall, oracle_verify, triviality_verdict)
from .serialize import (cut_report_to_json, dumps_canonical, family_from_json,
                        family_to_json, load_family, oracle_report_to_json,
                        save_family, states_to_json)
from .states import (Bipartition, DenseState, GramReport, PhaseStateSet,
                     build_state_set, family_states, genuine_entanglement_check,
                     gram_check, iter_bipartitions, schmidt_rank,
                     symbolic_orthogonality)
from .tables import SizeTable, all_comparison_tables, comparison_table, diagonal_table
from .verifier import (BlockCover, BlockDecomposition, Condition, CutReport,
                       LabelVerdict, block_decompose, check_connectivity,
                       check_pair_covering, classify_block_triviality,
                       find_block_cover, overall_verdict,
                       verify_strongest_nonlocality)

__version__ = "0.1.0"
