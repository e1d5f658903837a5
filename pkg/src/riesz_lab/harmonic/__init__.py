from .bessel import bessel_j1, jinc
from .functions import Exponential, FunctionSpec, Indicator, Synthesis, function_from_dict
from .gram import (
    GramMatrix,
    energy_quadratic_form,
    function_norm_sq,
    gram_matrix,
    moment_vector,
)
from .quadrature import quadrature_oracle
from .system import ExponentialSystem, synthesize
from .transforms import disk_ft, indicator_ft_1d, indicator_ft_disk, mollifier_ft
from .weights import PiecewiseConstantWeight, PowerWeight, WeightSpec, parse_weight, weight_from_dict

__all__ = [
    "bessel_j1",
    "jinc",
    "Exponential",
    "FunctionSpec",
    "Indicator",
    "Synthesis",
    "function_from_dict",
    "GramMatrix",
    "energy_quadratic_form",
    "function_norm_sq",
    "gram_matrix",
    "moment_vector",
    "quadrature_oracle",
    "ExponentialSystem",
    "synthesize",
    "disk_ft",
    "indicator_ft_1d",
    "indicator_ft_disk",
    "mollifier_ft",
    "PiecewiseConstantWeight",
    "PowerWeight",
    "WeightSpec",
    "parse_weight",
    "weight_from_dict",
]
