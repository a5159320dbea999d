"""hallmorph: exact Hall algebras of morphism categories over finite fields.

The package computes, with no floating point anywhere, the localized Hall
algebra of two-term complexes of projectives over a simply-laced acyclic
quiver, its bialgebra structure and integration maps, the quantum cluster
character as both a pipeline and a closed formula, the derived-Hall variant,
and an independent Berenstein-Zelevinsky mutation oracle for cross-checks.
"""

from .derived import DerivedContext, DHElement, dh_element_over, dh_product, phi_embed
from .hall import C2Object, HallContext, MHElement, MHTensorElement
from .qca import QuantumSeed, compare_with_psi, enumerate_variables, initial_seed
from .quiver import (
    ExchangeData,
    FramedSeed,
    ValuedQuiver,
    check_form_lemmas,
    euler_form,
    exchange_data,
    frame_principal,
    load_config,
    sym_form,
)
from .repcat import (
    IsoClass,
    ModuleCategory,
    Representation,
    ZERO_CLASS,
    build_catalog,
)
from .scalar import Scalar
from .suites import SUITES, SuiteConfig, corrupt_lambda, run_suite
from .torus import TorusContext, TorusElt, TorusTensorElt

__version__ = "0.1.0"

__all__ = [
    "C2Object",
    "DHElement",
    "DerivedContext",
    "ExchangeData",
    "FramedSeed",
    "HallContext",
    "IsoClass",
    "MHElement",
    "MHTensorElement",
    "ModuleCategory",
    "QuantumSeed",
    "Representation",
    "SUITES",
    "Scalar",
    "SuiteConfig",
    "TorusContext",
    "TorusElt",
    "TorusTensorElt",
    "ValuedQuiver",
    "ZERO_CLASS",
    "build_catalog",
    "check_form_lemmas",
    "compare_with_psi",
    "corrupt_lambda",
    "dh_element_over",
    "dh_product",
    "enumerate_variables",
    "euler_form",
    "exchange_data",
    "frame_principal",
    "initial_seed",
    "load_config",
    "phi_embed",
    "run_suite",
    "sym_form",
]
