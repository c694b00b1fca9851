"""Singular fibers, collisions and flat models of elliptic threefolds."""
from .collision import (
    CollisionInput,
    CollisionOutcome,
    ModelExistence,
    ResolutionTree,
    Smoothness,
    Verdict,
    blowup_count,
    classify_collision,
    collide,
    equidimensional_verdict,
    log_extremal_verdict,
    miranda_model_smoothness,
    resolve,
)
from .errors import EllflatError
from .kodaira import (
    FiberType,
    JBehavior,
    JKind,
    Kind,
    classify_from_monodromy,
    classify_from_orders,
    coefficient_a,
    euler_characteristic,
    j_behavior_of,
    lambda_coefficient,
    monodromy_of,
    pole_order,
)
from .logsurface import (
    MarkedComponent,
    QDivisor,
    Surface,
    delta_of_contraction,
    is_log_extremal,
    lambda_of,
    mmp_drive,
    projective_plane,
)
from .monodromy import SL2Matrix, blowup_monodromy, compose, order_of
from .polynomial import BivariatePoly, parse_poly
from .weierstrass import (
    analyze,
    blow_up_chart,
    collision_report,
    discriminant,
    j_invariant,
    multiplicity_at_origin,
    snc_at_origin,
    vanishing_order,
)

__version__ = "0.1.0"
