"""Exact invariant Hermitian geometry of compact complex surfaces: cohomologies,
harmonic forms, curvature, Chern-Ricci flow and geometric formality."""

from .catalog import SURFACES, AlgebraSpec, ingest_spec_file, ingest_spec_text, load_surface, validate
from .curvature import (
    RicciForm,
    chern_connection,
    chern_ricci_form,
    curvature_tensor,
    gauduchon_connection,
    levi_civita,
)
from .flow import FlowSolution, OutOfInterval, Surd, metric_at, solve_flow
from .formality import FormalityVerdict, is_preserved, table1, verdict, verdict_along_flow
from .forms import Form, Operator, exterior_d
from .harmonic import (
    KINDS,
    aeppli_lambda_system,
    betti_numbers,
    cohomology_dims,
    harmonic_basis,
    harmonic_representative,
    harmonic_spaces,
    kernel_characterization,
)
from .hodge import InvalidMetric, Metric, get_model, hodge_star, parse_metric
from .scalars import Scalar, parse_scalar

__version__ = "0.1.0"

__all__ = [
    "AlgebraSpec",
    "FlowSolution",
    "Form",
    "FormalityVerdict",
    "InvalidMetric",
    "KINDS",
    "Metric",
    "Operator",
    "OutOfInterval",
    "RicciForm",
    "SURFACES",
    "Scalar",
    "Surd",
    "aeppli_lambda_system",
    "betti_numbers",
    "chern_connection",
    "chern_ricci_form",
    "cohomology_dims",
    "curvature_tensor",
    "exterior_d",
    "gauduchon_connection",
    "get_model",
    "harmonic_basis",
    "harmonic_representative",
    "harmonic_spaces",
    "hodge_star",
    "ingest_spec_file",
    "ingest_spec_text",
    "is_preserved",
    "kernel_characterization",
    "levi_civita",
    "load_surface",
    "metric_at",
    "parse_metric",
    "parse_scalar",
    "solve_flow",
    "table1",
    "validate",
    "verdict",
    "verdict_along_flow",
]
