"""Web-traces of n-multiwebs on planar bipartite graphs with matrix connections.

Exact arithmetic throughout: traces by the coloring formula, block Kasteleyn
determinants, SL_3 skein reduction on the annulus, and annulus/pants
statistics.
"""
from .algebra import (LaurentPoly, Matrix, MultiPoly, coefficient, det_fraction_free,
                      product_over_char_roots)
from .connection import (Connection, gauge_transform, identity_connection, is_flat,
                         monodromy, random_sl)
from .document import GraphDocument, load, loads, save, dumps
from .kasteleyn import assemble, det_tilde, trace_via_det, verify_main
from .multiweb import (Multiweb, count_colorings, enumerate_multiwebs, height_coloring,
                       partition_function, sample_multiweb, tensor_trace_oracle, trace)
from .surface import EmbeddedGraph, GraphError, Surface

__all__ = [
    "LaurentPoly", "Matrix", "MultiPoly", "coefficient", "det_fraction_free",
    "product_over_char_roots", "Connection", "gauge_transform", "identity_connection",
    "is_flat", "monodromy", "random_sl", "GraphDocument", "load", "loads", "save", "dumps",
    "assemble", "det_tilde", "trace_via_det", "verify_main", "Multiweb", "count_colorings",
    "enumerate_multiwebs", "height_coloring", "partition_function", "sample_multiweb",
    "tensor_trace_oracle", "trace", "EmbeddedGraph", "GraphError", "Surface",
]
