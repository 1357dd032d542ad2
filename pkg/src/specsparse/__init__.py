"""Spectral sparsification of graphs for proxy drawing, with shape-based quality."""
from .graph_core import (Graph, GraphFormatError, connected_components, induced_by_edges,
                         laplacian, load_edge_list, read_edge_list, relative_density)
from .spectral import (EpsilonReport, ResistanceTable, Spectrum, commute_distance,
                       effective_resistance, eigendecompose, pseudoinverse, spectral_epsilon)
from .sparsify import Sparsification, sample_re, sample_sss, select_dss, sparsify
from .layout import Drawing, layout_fr, layout_multilevel
from .shape import ShapeGraph, emst, gabriel, rng
from .metrics import QualityReport, jaccard_quality, quality_ratio

__version__ = "0.1.0"
