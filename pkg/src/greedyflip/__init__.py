"""Greedy flip enumeration of subword complexes on finite Coxeter groups."""

from .backend import BACKEND
from .coxeter import (
    CoxeterSystem,
    Element,
    build_system,
    demazure,
    element_from_word,
    longest_element,
    multicluster_word,
    sorting_word,
)
from .enumeration import (
    count_facets,
    enumerate_bfs,
    enumerate_facets,
    enumerate_greedy,
    enumerate_inductive,
    euler_characteristic,
    flip_graph,
    greedy_tree,
)
from .errors import (
    CapExceeded,
    EmptyComplex,
    InvalidMatrix,
    NotAFacet,
    NotFlippable,
    NotTypeA,
    OrbitBoundExceeded,
)
from .subword import (
    Facet,
    Instance,
    contains,
    facet_from_positions,
    negative_greedy,
    negative_greedy_index,
    positive_greedy,
    positive_greedy_index,
    reverse_instance,
)

__version__ = "0.1.0"
