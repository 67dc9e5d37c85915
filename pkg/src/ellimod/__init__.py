"""Finite descriptions of moduli of G-bundles and G-Higgs bundles over an elliptic curve."""
from .errors import (
    ConsistencyError,
    EllimodError,
    EnumerationRefused,
    InputError,
    InvalidDegreeError,
)
from .group import (
    Degree,
    GroupDatum,
    build_group,
    fundamental_group,
    jordan_holder_levi,
    parse_degree,
    parse_group,
    stable_exists,
)
from .moduli import CoefficientSpace, describe_moduli, dimension_report, hitchin_report, report_json
from .rootdata import CartanType, build_root_datum
from .weyl import LeviDatum, enumerate_weyl, levi_and_wc, omega_c

__version__ = "0.1.0"

__all__ = [
    "CartanType",
    "CoefficientSpace",
    "ConsistencyError",
    "Degree",
    "EllimodError",
    "EnumerationRefused",
    "GroupDatum",
    "InputError",
    "InvalidDegreeError",
    "LeviDatum",
    "build_group",
    "build_root_datum",
    "describe_moduli",
    "dimension_report",
    "enumerate_weyl",
    "fundamental_group",
    "hitchin_report",
    "jordan_holder_levi",
    "levi_and_wc",
    "omega_c",
    "parse_degree",
    "parse_group",
    "report_json",
    "stable_exists",
]
