from .base import EvtClass, RadiusLaw
from .catalog import DiracLaw, PowerLaw, TruncRecipExpLaw, WeibullLaw
from .composite import ScaledLaw, ShiftedLaw
from .domains import predict_beta, section_domain
from .factory import LawFactory, make_law, parse_law_spec
from .tabulated import TabulatedLaw

__all__ = [
    "EvtClass",
    "RadiusLaw",
    "DiracLaw",
    "PowerLaw",
    "TruncRecipExpLaw",
    "WeibullLaw",
    "ScaledLaw",
    "ShiftedLaw",
    "TabulatedLaw",
    "predict_beta",
    "section_domain",
    "LawFactory",
    "make_law",
    "parse_law_spec",
]
