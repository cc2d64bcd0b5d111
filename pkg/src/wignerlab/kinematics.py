"""Thomas-Wigner rotation kinematics for composed Lorentz boosts.

Two non-collinear pure boosts compose into a pure boost times a spatial
rotation; this module computes that rotation angle by two closed forms
and by an independent 4x4 matrix route (compose, then factor the product
back into boost x rotation).

Conventions: c = 1, speeds are dimensionless fractions of the speed of
light, the boosting angle ``phi`` between the two boost directions lies
in [0, pi], and the returned rotation angle ``delta`` is the unsigned
magnitude in [0, pi].  Signed/axis information is only available from
the matrix route.

All angle functions accept scalars or numpy arrays (broadcast like
ufuncs) and are pure, so they are safe to call concurrently.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

__all__ = [
    "MINKOWSKI_METRIC",
    "BoostComposition",
    "argmax_boost_angle",
    "boost_matrix",
    "compose_boosts",
    "equal_speed_ultra_threshold",
    "lorentz_defect",
    "lorentz_gamma",
    "rotation_axis",
    "speed_factor_d",
    "standard_boost_vectors",
    "ultra_phi_interval",
    "ultra_relativistic_condition",
    "wigner_angle_cos_form",
    "wigner_angle_matrix_form",
    "wigner_angle_tan_form",
]

#: Metric tensor diag(+,-,-,-); every Lorentz matrix L satisfies L^T eta L = eta.
MINKOWSKI_METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
MINKOWSKI_METRIC.flags.writeable = False


def _check_speed(u, name: str = "speed") -> None:
    u = np.asarray(u)
    if np.any(u < 0.0) or np.any(u >= 1.0):
        raise ValueError(f"{name} must satisfy 0 <= {name} < 1 (units of c), got {u}")


def _check_phi(phi) -> None:
    phi = np.asarray(phi)
    if np.any(phi < 0.0) or np.any(phi > np.pi):
        raise ValueError(f"boosting angle must lie in [0, pi], got {phi}")


def lorentz_gamma(u):
    """Lorentz factor gamma = 1/sqrt(1 - u^2) for a speed u in units of c."""
    _check_speed(u)
    g = 1.0 / np.sqrt(1.0 - np.square(u))
    if np.ndim(g) == 0:
        return float(g)
    return g


def _gamma_minus_one(u):
    """gamma - 1 evaluated without cancellation for small speeds."""
    g = lorentz_gamma(u)
    return np.square(u) * g * g / (g + 1.0)


def speed_factor_d(u, v):
    """Speed factor D = sqrt((gamma_u+1)(gamma_v+1)/((gamma_u-1)(gamma_v-1))).

    D >= 1 captures the entire speed dependence of the rotation angle,
    with D -> 1 only in the light-speed limit.  Degenerate speeds
    (u = 0 or v = 0) make the rotation vanish identically; that limit is
    reported as +inf rather than an error.
    """
    _check_speed(u, "u")
    _check_speed(v, "v")
    gu, gv = lorentz_gamma(u), lorentz_gamma(v)
    num = (gu + 1.0) * (gv + 1.0)
    den = _gamma_minus_one(u) * _gamma_minus_one(v)
    with np.errstate(divide="ignore"):
        d = np.sqrt(num / den)
    if np.ndim(d) == 0:
        return float(d)
    return d


def wigner_angle_cos_form(u, v, phi):
    """Rotation angle from the cosine-form composition formula.

    The standard closed form gives cos(delta) as a quotient of gamma
    factors; rearranging it to the equivalent half-angle expression

        sin(delta/2) = gamma_u gamma_v u v sin(phi) / sqrt(2 N),
        N = (gamma_u+1)(gamma_v+1)(gamma_u gamma_v (1 + u v cos phi) + 1),

    removes the catastrophic cancellation of evaluating arccos near 1,
    which otherwise costs ~8 digits for small rotation angles.  The two
    expressions are algebraically identical.

    Returns delta in [0, pi]; exactly 0 for u = 0, v = 0, phi = 0 or
    phi = pi (the float value of pi is treated as exactly collinear).
    """
    _check_speed(u, "u")
    _check_speed(v, "v")
    _check_phi(phi)
    gu, gv = lorentz_gamma(u), lorentz_gamma(v)
    w = gu * gv * (1.0 + u * np.asarray(v) * np.cos(phi))
    den = (gu + 1.0) * (gv + 1.0) * (w + 1.0)
    sin_half = gu * gv * u * np.asarray(v) * np.sin(phi) / np.sqrt(2.0 * den)
    delta = 2.0 * np.arcsin(np.clip(sin_half, 0.0, 1.0))
    delta = np.where((np.asarray(phi) == 0.0) | (np.asarray(phi) == np.pi), 0.0, delta)
    if np.ndim(delta) == 0:
        return float(delta)
    return delta


def wigner_angle_tan_form(u, v, phi):
    """Rotation angle from the tangent half-angle form.

    tan(delta/2) = sin(phi) / (cos(phi) + D), evaluated with the
    two-argument arctangent so that cos(phi) + D ~ 0 (deep
    ultra-relativistic regime, phi near pi) needs no special casing.
    Degenerate speeds give D = +inf and hence delta = 0.

    Returns delta in [0, pi]; exactly 0 for phi = 0 or phi = pi.
    """
    _check_phi(phi)
    d = speed_factor_d(u, v)
    delta = 2.0 * np.arctan2(np.sin(phi), np.cos(phi) + d)
    delta = np.where((np.asarray(phi) == 0.0) | (np.asarray(phi) == np.pi), 0.0, delta)
    delta = np.clip(delta, 0.0, np.pi)
    if np.ndim(delta) == 0:
        return float(delta)
    return delta


def argmax_boost_angle(u, v):
    """Boosting angle phi* = arccos(-1/D) that maximizes the rotation angle.

    The maximum is unique because delta(phi) is globally concave, and
    phi* > pi/2 always (approaching pi/2 in the slow-speed limit
    D -> inf).  For u = 0 or v = 0 the rotation vanishes for every phi,
    so no maximum exists; that degenerate case raises ValueError.
    """
    _check_speed(u, "u")
    _check_speed(v, "v")
    if np.any(np.asarray(u) == 0.0) or np.any(np.asarray(v) == 0.0):
        raise ValueError("no rotation: delta vanishes identically when u = 0 or v = 0")
    phi_star = np.arccos(-1.0 / speed_factor_d(u, v))
    if np.ndim(phi_star) == 0:
        return float(phi_star)
    return phi_star


def ultra_relativistic_condition(u, v, phi):
    """True iff the rotation angle reaches delta >= pi/2 for this geometry.

    Evaluated as the branch-safe inequality sin(phi) - cos(phi) >= D.
    Squaring it gives the equivalent-looking 1 - sin(2 phi) >= D^2, but
    the squared form also admits the spurious branch
    sin(phi) - cos(phi) <= -D (phi < pi/4), so it must not be applied
    blindly; the unsquared form is used here.
    """
    _check_phi(phi)
    cond = np.sin(phi) - np.cos(phi) >= speed_factor_d(u, v)
    if np.ndim(cond) == 0:
        return bool(cond)
    return cond


def equal_speed_ultra_threshold(phi: float) -> float:
    """Least equal speed u = v at which delta >= pi/2 for a given phi.

    Solves D(u, u) = sin(phi) - cos(phi).  A sub-luminal solution exists
    only for phi in (pi/2, pi), where sin(phi) - cos(phi) > 1; outside
    that range (e.g. perpendicular boosts, phi = pi/2) the threshold is
    reachable only in the light-speed limit and ValueError is raised.
    """
    _check_phi(phi)
    target = math.sin(phi) - math.cos(phi)
    if target <= 1.0:
        raise ValueError(
            "delta >= pi/2 is not reachable sub-luminally for phi <= pi/2"
        )
    gamma = (target + 1.0) / (target - 1.0)
    return math.sqrt(1.0 - 1.0 / (gamma * gamma))


def ultra_phi_interval(u: float, v: float) -> tuple[float, float] | None:
    """Boosting-angle interval [phi_lo, phi_hi] on which delta >= pi/2.

    Solves sin(phi) - cos(phi) = D, i.e. sqrt(2) sin(phi - pi/4) = D.
    Returns None when D > sqrt(2) (the ultra-relativistic regime is out
    of reach for these speeds); a degenerate interval [3pi/4, 3pi/4]
    when D = sqrt(2) exactly.
    """
    d = speed_factor_d(u, v)
    if d > math.sqrt(2.0):
        return None
    a = math.asin(d / math.sqrt(2.0))
    return (math.pi / 4.0 + a, 5.0 * math.pi / 4.0 - a)


def boost_matrix(velocity) -> np.ndarray:
    """Pure Lorentz boost (4x4, symmetric) for a 3-velocity in units of c."""
    beta = np.asarray(velocity, dtype=float).reshape(3)
    b2 = float(beta @ beta)
    if b2 >= 1.0:
        raise ValueError(f"velocity must be sub-luminal, got |v| = {math.sqrt(b2)}")
    if b2 == 0.0:
        return np.eye(4)
    g = 1.0 / math.sqrt(1.0 - b2)
    mat = np.eye(4)
    mat[0, 0] = g
    mat[0, 1:] = mat[1:, 0] = -g * beta
    mat[1:, 1:] += (g - 1.0) / b2 * np.outer(beta, beta)
    return mat


class BoostComposition(NamedTuple):
    """Factorization of a composed boost: product = boost @ rotation."""

    boost: np.ndarray      # pure boost, 4x4 symmetric
    rotation: np.ndarray   # 1 (+) 3x3 spatial rotation, 4x4
    angle: float           # rotation angle in [0, pi]


def compose_boosts(first, second) -> BoostComposition:
    """Compose two pure boosts and factor the product as boost x rotation.

    ``first`` is applied first: the product matrix is
    B(second) @ B(first).  The factorization is the unique one with the
    rotation fixing the time axis: the pure-boost factor shares the
    product's first column (R e0 = e0 implies B e0 = L e0), so its
    velocity is read off as w = -L[1:, 0] / L[0, 0] and the rotation is
    R = B(w)^-1 L, polished to the nearest exact orthogonal matrix (the
    raw solve carries the product's gamma^2-amplified rounding, which
    would otherwise break the metric invariant at high speeds).  The
    angle comes from atan2 of the antisymmetric part against the trace;
    the trace alone loses half the significant digits near the identity.

    Collinear inputs give the identity rotation and angle 0.  Exchanging
    the arguments keeps the angle and reverses the rotation axis.
    """
    lam = boost_matrix(second) @ boost_matrix(first)
    w = -lam[1:, 0] / lam[0, 0]
    boost = boost_matrix(w)
    raw = np.linalg.solve(boost, lam)
    u_svd, _, vt_svd = np.linalg.svd(raw[1:, 1:])
    spatial = u_svd @ vt_svd
    if np.linalg.det(spatial) < 0.0:  # never hit for proper compositions
        spatial = u_svd @ np.diag([1.0, 1.0, -1.0]) @ vt_svd
    rotation = np.eye(4)
    rotation[1:, 1:] = spatial
    antisym = np.array(
        [
            spatial[2, 1] - spatial[1, 2],
            spatial[0, 2] - spatial[2, 0],
            spatial[1, 0] - spatial[0, 1],
        ]
    )
    sin_angle = float(np.linalg.norm(antisym)) / 2.0
    cos_angle = (float(np.trace(spatial)) - 1.0) / 2.0
    angle = math.atan2(sin_angle, cos_angle)
    return BoostComposition(boost, rotation, angle)


def rotation_axis(rotation: np.ndarray) -> np.ndarray:
    """Unit rotation axis of a 4x4 (or 3x3) rotation matrix.

    Extracted from the antisymmetric part; returns the zero vector when
    the rotation is too close to the identity for the axis to be defined
    (angle below ~1e-12).
    """
    r3 = rotation[1:, 1:] if rotation.shape == (4, 4) else rotation
    vec = np.array(
        [r3[2, 1] - r3[1, 2], r3[0, 2] - r3[2, 0], r3[1, 0] - r3[0, 1]]
    )
    norm = float(np.linalg.norm(vec))
    if norm < 1e-12:
        return np.zeros(3)
    return vec / norm


def standard_boost_vectors(u: float, v: float, phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Velocity vectors realizing the standard geometry.

    The particle boost u points along +z and the observer boost v lies
    in the x-z plane at angle phi from the z axis, so the induced
    rotation is about the y axis.
    """
    _check_speed(u, "u")
    _check_speed(v, "v")
    _check_phi(phi)
    return (
        np.array([0.0, 0.0, float(u)]),
        float(v) * np.array([math.sin(phi), 0.0, math.cos(phi)]),
    )


def wigner_angle_matrix_form(u: float, v: float, phi: float) -> float:
    """Rotation angle via explicit 4x4 composition in the standard geometry.

    Independent of both closed forms: builds the two boost matrices,
    multiplies them and extracts the rotation angle of the product's
    rotation factor.
    """
    u_vec, v_vec = standard_boost_vectors(u, v, phi)
    return compose_boosts(u_vec, v_vec).angle


def lorentz_defect(mat: np.ndarray) -> float:
    """Max-abs deviation of L^T eta L from eta (0 for an exact Lorentz matrix)."""
    return float(np.abs(mat.T @ MINKOWSKI_METRIC @ mat - MINKOWSKI_METRIC).max())
