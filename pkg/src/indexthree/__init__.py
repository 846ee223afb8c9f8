"""Index 3 current graphs, triangular embeddings of K_n - K_l, and the
handle surgery that turns them into genus embeddings of K_n and minimum
triangulations."""

from .embedding import (Deficit, EmbeddingError, EmbeddingSummary, RotationSystem, format_rotation,
                        genus_Kn, mt_valid, parse_rotation, triangular_genus)
from .currents import (CurrentGraph, CurrentGraphError, LadderSpec, PrincipleReport,
                       current_graph_from_logs, format_current_graph, parse_current_graph)
from .surgery import (SurgeryError, SurgeryOutcome, amalgamate, complete_c4, complete_k2, complete_k3,
                      complete_k13, complete_k14, construction1, construction2, construction3, lemma_k5,
                      lemma_k6, lemma_k8, subdivide_face, subtract_handles)
from .families import FamilyError, FamilyParams, bose_ladder, build, derived, sporadic
from .catalog import catalog, catalog_entries, write_catalog
from .search import Skeleton, SearchReport, search

__version__ = "0.1.0"
