"""Root lattices, trivial lattices, Mordell-Weil lookup and height pairings."""

from .config import KodairaConfiguration, TrivialLattice, root_symbol, trivial_lattice
from .gram import GramLattice, short_vectors
from .height import (
    Section,
    SectionIncidence,
    contribution,
    height_pairing,
    required_dot,
    required_dot_o,
)
from .roots import RootSum, cartan
from .table import MWEntry, MWLookup, mw_lookup, mw_table

__all__ = [
    "GramLattice",
    "KodairaConfiguration",
    "MWEntry",
    "MWLookup",
    "RootSum",
    "Section",
    "SectionIncidence",
    "TrivialLattice",
    "cartan",
    "contribution",
    "height_pairing",
    "mw_lookup",
    "mw_table",
    "required_dot",
    "required_dot_o",
    "root_symbol",
    "short_vectors",
    "trivial_lattice",
]
