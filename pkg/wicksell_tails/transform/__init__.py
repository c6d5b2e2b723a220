from .io import load_section_law, save_section_law
from .moments import inverse_moment, moment, quadratic_tail_constant
from .oracles import (
    CdfDecomposition,
    GFactorLaw,
    decomposed_cdf_oracle,
    gfactor_quantile,
    gfactor_sample,
    mixture_cdf_oracle,
)
from .section import (
    TableIntegrator,
    WicksellIntegrator,
    build_grid,
    codimension,
    iterate_section,
    section_cdf,
    section_pdf,
    tabulate_section_law,
)
from .section_law import SectionLaw

__all__ = [
    "load_section_law",
    "save_section_law",
    "inverse_moment",
    "moment",
    "quadratic_tail_constant",
    "CdfDecomposition",
    "GFactorLaw",
    "decomposed_cdf_oracle",
    "gfactor_quantile",
    "gfactor_sample",
    "mixture_cdf_oracle",
    "TableIntegrator",
    "WicksellIntegrator",
    "build_grid",
    "codimension",
    "iterate_section",
    "section_cdf",
    "section_pdf",
    "tabulate_section_law",
    "SectionLaw",
]
