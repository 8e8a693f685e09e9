"""Exact generalized differentiation of convex piecewise linear functions.

The modules build on each other in this order: ``exactla`` (rational linear
algebra), ``lp`` (exact simplex), ``cones`` (cone representations and
conversions), ``cpwl`` (functions, activity, subgradients), ``graphgeo``
(first-order cones on the subdifferential graph), ``secondorder`` (limiting
normal cones and second-order subdifferentials), ``closedforms`` (special
cases), ``oracle`` (brute-force checks), ``cli``.
"""

from .cpwl import CpwlFunction, activity, decompose_subgradient, evaluate, subdifferential
from .errors import ArtifactError, CapabilityError, ContractError, DomainError, MathError, NotASubgradientError, QualificationError
from .graphgeo import GraphPoint, graph_point, precoderivative, prenormal_cone_graph
from .secondorder import aiqc, limiting_normal_cone, second_order_domain, second_order_value, value_upper_estimate

__version__ = "0.1.0"

__all__ = [
    "ArtifactError",
    "CapabilityError",
    "ContractError",
    "CpwlFunction",
    "DomainError",
    "GraphPoint",
    "MathError",
    "NotASubgradientError",
    "QualificationError",
    "activity",
    "aiqc",
    "decompose_subgradient",
    "evaluate",
    "graph_point",
    "limiting_normal_cone",
    "precoderivative",
    "prenormal_cone_graph",
    "second_order_domain",
    "second_order_value",
    "subdifferential",
    "value_upper_estimate",
]
