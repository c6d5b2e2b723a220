__version__ = "0.1.0"

import logging

from .backend import SectionTableBackend
from .config.settings import GridSpec, QuadratureConfig, SamplingConfig, VerifyConfig
from .config.storage import RedisConfig, StorageConfig
from .config.storage_type import StorageTypes
from .laws import EvtClass, RadiusLaw, make_law, parse_law_spec
from .transform import (
    SectionLaw,
    decomposed_cdf_oracle,
    iterate_section,
    mixture_cdf_oracle,
    moment,
    section_cdf,
    section_pdf,
    tabulate_section_law,
)

logging.getLogger(__name__).addHandler(logging.NullHandler())
