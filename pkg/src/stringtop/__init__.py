"""Exact derived invariants of string topology models.

Chain complexes over ℚ or 𝔽_p, dg algebras/modules/categories, bar
constructions for tor and ext, Hochschild (co)homology with Connes' B and
cup/bracket, open-closed TQFT data with cobordism evaluation, and small
sphere models.  Everything is exact; truncated computations carry a
StabilityReport.
"""

from .corefield import QQ, Field, Mod
from .complexes import AxiomViolation, ChainComplex, homology
from .dga import DGAlgebra, DGCategory, DGModule, as_module, free_module, trivial_module, validate_dga
from .bar import DerivedResult, StabilityReport, ext, ext_algebra, ext_category, tor
from .hochschild import connes_b, cup, gerstenhaber, hh, hh_category, hhc, hochschild_complex
from .models import fiber_module, loop_bimodule, loop_homology_oracle, sphere_model
from .tqft import eval_cobordism, parse_cobordism, verify_open_closed

__version__ = "0.1.0"

__all__ = [
    "QQ", "Field", "Mod", "AxiomViolation", "ChainComplex", "homology", "DGAlgebra", "DGCategory",
    "DGModule", "as_module", "free_module", "trivial_module", "validate_dga", "DerivedResult",
    "StabilityReport", "ext", "ext_algebra", "ext_category", "tor", "connes_b", "cup", "gerstenhaber",
    "hh", "hh_category", "hhc", "hochschild_complex", "fiber_module", "loop_bimodule",
    "loop_homology_oracle", "sphere_model", "eval_cobordism", "parse_cobordism", "verify_open_closed",
]
