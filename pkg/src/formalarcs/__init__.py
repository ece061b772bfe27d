"""Exact truncated power series, Weierstrass preparation and certified curve selection."""
from .curvesel import Arc, Certificate, Report, curve_select, verify_certificate
from .document import CertificateDocument, parse_document, serialize
from .elimination import IdealPresentation, project_chain, resultant_with_cofactors
from .errors import FormalArcsError, InputError, MathematicalFailure
from .field import QQ, Field
from .jets import ArcFamily, arc_curve_select, jet_equations, make_arc_point
from .parser import parse_script
from .puiseux import puiseux_lift
from .series import LinearChange, Ring, TruncatedSeries, apply_linear_change, substitute
from .weierstrass import WeierstrassFactorization, regularize, wdivide, wprepare

__all__ = [
    "Arc", "ArcFamily", "Certificate", "CertificateDocument", "Field", "FormalArcsError",
    "IdealPresentation", "InputError", "LinearChange", "MathematicalFailure", "QQ", "Report",
    "Ring", "TruncatedSeries", "WeierstrassFactorization", "apply_linear_change",
    "arc_curve_select", "curve_select", "jet_equations", "make_arc_point", "parse_document",
    "parse_script", "project_chain", "puiseux_lift", "regularize", "resultant_with_cofactors",
    "serialize", "substitute", "verify_certificate", "wdivide", "wprepare",
]
