"""Average kissing number bounds for ball packings."""

from ._core import (
    Certificate,
    RhoGeometry,
    SweepResult,
    __version__,
    actual_cap_area,
    area_bound,
    aux_cap_radius,
    certify,
    contact_graph,
    coverage_fraction,
    degree_factor,
    density,
    fcc_fragment,
    g_profile,
    max_density,
    min_pair_coverage,
    pair_sum,
    parse_certificate,
    sweep_rho,
)

__all__ = [
    "Certificate",
    "RhoGeometry",
    "SweepResult",
    "__version__",
    "actual_cap_area",
    "area_bound",
    "aux_cap_radius",
    "certify",
    "contact_graph",
    "coverage_fraction",
    "degree_factor",
    "density",
    "fcc_fragment",
    "g_profile",
    "max_density",
    "min_pair_coverage",
    "pair_sum",
    "parse_certificate",
    "sweep_rho",
]
