"""
centra: centralizer dimension and structure invariants of finite permutation groups.

The package computes the c-dimension (longest chain of centralizers), the
subgroup-chain length, radicals, the layer and the generalized Fitting
subgroup of permutation groups small enough to enumerate, and verifies the
bounds relating them on a corpus of groups.
"""

from .cdim import CdimResult, CentralizerLattice, cdim, centralizer_lattice, subgroup_chain_length
from .config import Caps, active_caps, use_caps
from .corpus import CorpusEntry, corpus_by_name, corpus_default, load_group
from .exceptions import (
    CapExceededError,
    CentraError,
    DegreeMismatchError,
    GroupFormatError,
    InvalidParameterError,
    MalformedResultError,
    NotAComponentError,
    NotAHomomorphismError,
    NotAPrimeError,
    NotAPrimePowerError,
    NotInGroupError,
    NotNormalError,
    NotSimpleError,
    SteinitzFormatError,
    TrivialGroupError,
    UnrecognizedFactorError,
)
from .layer import ComponentSet, components, generalized_fitting, layer
from .permcore import GroupHandle, Homomorphism, SubgroupRef, group_from_generators, quotient
from .report import CheckReport, Status, SuiteResult
from .simplerec import SimpleFactorId, composition_factors, identify_simple, lambda_invariant
from .steinitz import SteinitzNumber

__version__ = "0.1.0"
__all__ = [
    "CapExceededError",
    "Caps",
    "CdimResult",
    "CentraError",
    "CentralizerLattice",
    "CheckReport",
    "ComponentSet",
    "CorpusEntry",
    "DegreeMismatchError",
    "GroupFormatError",
    "GroupHandle",
    "Homomorphism",
    "InvalidParameterError",
    "MalformedResultError",
    "NotAComponentError",
    "NotAHomomorphismError",
    "NotAPrimeError",
    "NotAPrimePowerError",
    "NotInGroupError",
    "NotNormalError",
    "NotSimpleError",
    "SimpleFactorId",
    "SteinitzFormatError",
    "SteinitzNumber",
    "Status",
    "SubgroupRef",
    "SuiteResult",
    "TrivialGroupError",
    "UnrecognizedFactorError",
    "active_caps",
    "cdim",
    "centralizer_lattice",
    "components",
    "composition_factors",
    "corpus_by_name",
    "corpus_default",
    "generalized_fitting",
    "group_from_generators",
    "identify_simple",
    "lambda_invariant",
    "layer",
    "load_group",
    "quotient",
    "subgroup_chain_length",
    "use_caps",
]
