"""bentcyc: bent Boolean functions from cyclotomic mappings over GF(2^(2m)).

Layers: exact GF(2^e) arithmetic (fields), truth-table oracles with exact
Walsh transforms (boolfun), coset partitions and mapping materialization
(cyclotomic), the bent constructions with predicates and duals
(constructions), polynomial-form conversions (polyform), and a CLI (cli).
Hot kernels live in a compiled extension with a pure-Python fallback
(_kernels.ACTIVE tells which one is running).
"""

from ._kernels import ACTIVE as kernel_backend
from .boolfun import (
    Anf,
    BooleanFunction,
    EAInvariants,
    WalshSpectrum,
    kloosterman,
    kloosterman_table,
    mu_character_sum,
)
from .cyclotomic import AddCycSpec, AddCycSpecGeneral, MultCycSpec
from .fields import FieldCtx, FieldSpec, make_field, parse_field_spec

__version__ = "0.1.0"

__all__ = [
    "Anf",
    "AddCycSpec",
    "AddCycSpecGeneral",
    "BooleanFunction",
    "EAInvariants",
    "FieldCtx",
    "FieldSpec",
    "MultCycSpec",
    "WalshSpectrum",
    "kernel_backend",
    "kloosterman",
    "kloosterman_table",
    "make_field",
    "mu_character_sum",
    "parse_field_spec",
    "__version__",
]
