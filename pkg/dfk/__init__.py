"""
dfk - Finite domains, information frames and CF-approximation spaces.

Builds the constructions between the three categories (states, induced
domains, the functors D, F, C and E, approximable mappings and CF-approximable
relations) and checks the equivalences between them exhaustively on small
instances.
"""

from .config import Config
from .core import EquivalenceVerifier
from .errors import DFKError
from .frames import InformationFrame, classify_frame, validate_frame
from .functors import C_on_object, E_on_object, F_on_object, delta, eta, gamma, tau
from .generators import GenBounds, enum_cf_spaces, enum_frames, enum_posets, shrink
from .morphisms import ApproximableMapping, CFRelation, validate_cf_relation, validate_mapping
from .order import FinitePoset, MonotoneMap, validate_poset, way_below
from .rough import CFSpace, GASpace, validate_cf_space
from .states import enumerate_states, induced_domain
from .structure_io import dump, load, parse, serialize

__version__ = "0.1.0"
__all__ = [
    "Config", "EquivalenceVerifier", "DFKError",
    "FinitePoset", "MonotoneMap", "validate_poset", "way_below",
    "InformationFrame", "validate_frame", "classify_frame", "enumerate_states", "induced_domain",
    "GASpace", "CFSpace", "validate_cf_space",
    "ApproximableMapping", "CFRelation", "validate_mapping", "validate_cf_relation",
    "F_on_object", "C_on_object", "E_on_object", "eta", "tau", "delta", "gamma",
    "GenBounds", "enum_frames", "enum_posets", "enum_cf_spaces", "shrink",
    "parse", "serialize", "load", "dump",
]
