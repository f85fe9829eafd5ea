"""Linearly ordered coarse spaces at desk scale.

Entourage algebra on finite ordered grounds, order-compatibility checks,
convexification, two-colour asymptotic-dimension certificates, end-based
selectors, and an exact treatment of a locally convex structure without an
interval base.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BalleanError,
    ConfigError,
    EmptySetError,
    GroundMismatchError,
    NoEndError,
    NotMemberError,
    NotSubsetError,
    OutOfRangeError,
    PreconditionViolated,
    UnknownPointError,
)
from .ground import Interval, OrderedGround  # noqa: E402
from .relations import Entourage, omega_components  # noqa: E402
from .intervalsets import RationalIntervalSet, strict_upper_set, interval_ball_escape_witness  # noqa: E402
from .structures import (  # noqa: E402
    Bornology,
    GeneratorFamily,
    PhiSpec,
    discrete_from_bornology,
    entourage_from_phi,
    exp_related,
    is_bounded,
    is_large,
    metric_family,
    phi_admissible,
    phi_family,
    restrict,
)

__all__ = [
    "BalleanError",
    "Bornology",
    "ConfigError",
    "EmptySetError",
    "Entourage",
    "GeneratorFamily",
    "GroundMismatchError",
    "Interval",
    "NoEndError",
    "NotMemberError",
    "NotSubsetError",
    "OrderedGround",
    "OutOfRangeError",
    "PhiSpec",
    "PreconditionViolated",
    "RationalIntervalSet",
    "UnknownPointError",
    "discrete_from_bornology",
    "entourage_from_phi",
    "exp_related",
    "interval_ball_escape_witness",
    "is_bounded",
    "is_large",
    "metric_family",
    "omega_components",
    "phi_admissible",
    "phi_family",
    "restrict",
    "strict_upper_set",
]
