"""Simulate Majorana braiding and many-body rotations on a parity-encoded register.

The most used entry points are re-exported here; submodules hold the rest.
"""

from ._backend import backend_name
from .catalog import catalog_program, entry_names, get_entry, verify_entry
from .core import (
    FockSpace,
    MajoranaProgram,
    MajoranaStep,
    braid,
    braid_word_program,
    build_fock,
    compose,
    majorana_matrix,
    manybody_rotation,
    pair_rotation,
    run_program,
)
from .encoding import Encoding, encoding_for, equal_up_to_phase, restrict_to_logical, trace_fidelity
from .errors import (
    BadParams,
    CapExceeded,
    DimensionMismatch,
    EmptySupport,
    EqualIndices,
    IndexOutOfRange,
    MajoranaError,
    NonCommutingGenerators,
    NotCodeSpacePreserving,
    OddCardinality,
    OddMajoranaCount,
    UnknownGate,
)
from .search import (
    GroupEnumeration,
    NotFound,
    check_diagonal_impossibility,
    enumerate_group,
    orbit_states,
    search_word,
)
from .synthesis import (
    DiagonalTarget,
    synth_cn_not,
    synth_cn_swap,
    synth_cn_z,
    synth_controlled_unitary,
    synth_diagonal,
)

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "catalog_program",
    "entry_names",
    "get_entry",
    "verify_entry",
    "FockSpace",
    "MajoranaProgram",
    "MajoranaStep",
    "braid",
    "braid_word_program",
    "build_fock",
    "compose",
    "majorana_matrix",
    "manybody_rotation",
    "pair_rotation",
    "run_program",
    "Encoding",
    "encoding_for",
    "equal_up_to_phase",
    "restrict_to_logical",
    "trace_fidelity",
    "BadParams",
    "CapExceeded",
    "DimensionMismatch",
    "EmptySupport",
    "EqualIndices",
    "IndexOutOfRange",
    "MajoranaError",
    "NonCommutingGenerators",
    "NotCodeSpacePreserving",
    "OddCardinality",
    "OddMajoranaCount",
    "UnknownGate",
    "GroupEnumeration",
    "NotFound",
    "check_diagonal_impossibility",
    "enumerate_group",
    "orbit_states",
    "search_word",
    "DiagonalTarget",
    "synth_cn_not",
    "synth_cn_swap",
    "synth_cn_z",
    "synth_controlled_unitary",
    "synth_diagonal",
    "__version__",
]
