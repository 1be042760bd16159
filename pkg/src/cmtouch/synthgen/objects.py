"""Object geometry: signed distance fields for props and glyph objects.

Props are four parametric solids (sphere, cylinder, cube, ellipsoid) in six
sizes, each rigid or soft. Glyph objects are ten fixed-size rigid compounds
with deliberately asymmetric silhouettes so orientation leaves a signature in
both touch and vision. All SDFs are vectorized over [N,3] world points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OBJECT_Z = 0.045  # object frame origin height above the workspace plane

SHAPE_NAMES = ("sphere", "cylinder", "cube", "ellipsoid")
SIZE_SCALES = tuple(0.020 + 0.007 * i for i in range(6))
RIGIDITY_NAMES = ("rigid", "soft")
SOFT_FORCE_SCALE = 0.4

GLYPH_NAMES = (
    "slab", "block", "bottle", "tin", "arc",
    "jug", "column", "cup", "elbow", "cross",
)


@dataclass(frozen=True)
class ObjectSpec:
    """Placed object: what it is plus its pose in the workspace."""

    dataset_kind: str  # "props" | "ycb-like"
    class_id: int
    shape_id: int      # prop shape or glyph id
    size_id: int
    rigidity_id: int   # 0=rigid, 1=soft
    offset_x: float
    offset_y: float
    yaw: float
    tilt: float

    @property
    def is_soft(self) -> bool:
        return self.rigidity_id == 1

    @property
    def center(self) -> np.ndarray:
        return np.array([self.offset_x, self.offset_y, OBJECT_Z])


def _sd_sphere(p, r):
    return np.linalg.norm(p, axis=-1) - r


def _sd_box(p, half):
    q = np.abs(p) - np.asarray(half)
    outside = np.linalg.norm(np.maximum(q, 0.0), axis=-1)
    inside = np.minimum(q.max(axis=-1), 0.0)
    return outside + inside


def _sd_cylinder(p, r, h):
    dxy = np.hypot(p[..., 0], p[..., 1]) - r
    dz = np.abs(p[..., 2]) - h
    d = np.stack([dxy, dz], axis=-1)
    outside = np.linalg.norm(np.maximum(d, 0.0), axis=-1)
    inside = np.minimum(d.max(axis=-1), 0.0)
    return outside + inside


def _sd_ellipsoid(p, radii):
    # standard scaled-space approximation; exact enough for contact forces
    radii = np.asarray(radii)
    k0 = np.linalg.norm(p / radii, axis=-1)
    k1 = np.linalg.norm(p / (radii * radii), axis=-1)
    return np.where(k1 > 0, k0 * (k0 - 1.0) / np.maximum(k1, 1e-12), -radii.min())


def _shift(p, dx=0.0, dy=0.0, dz=0.0):
    return p - np.array([dx, dy, dz])


def _rot_z(p, angle):
    c, s = np.cos(angle), np.sin(angle)
    q = p.copy()
    q[..., 0] = c * p[..., 0] + s * p[..., 1]
    q[..., 1] = -s * p[..., 0] + c * p[..., 1]
    return q


def _prop_sdf(shape_id: int, size_id: int, p: np.ndarray) -> np.ndarray:
    s = SIZE_SCALES[size_id]
    if shape_id == 0:
        return _sd_sphere(p, s)
    if shape_id == 1:
        return _sd_cylinder(p, 0.80 * s, 1.15 * s)
    if shape_id == 2:
        return _sd_box(p, (0.85 * s, 0.85 * s, 0.85 * s))
    return _sd_ellipsoid(p, (1.25 * s, 0.80 * s, 0.55 * s))


def _glyph_sdf(glyph_id: int, p: np.ndarray) -> np.ndarray:
    if glyph_id == 0:    # slab: thin tall box
        return _sd_box(p, (0.024, 0.050, 0.015))
    if glyph_id == 1:    # block
        return _sd_box(p, (0.030, 0.030, 0.022))
    if glyph_id == 2:    # bottle: body + neck
        body = _sd_cylinder(p, 0.022, 0.035)
        neck = _sd_cylinder(_shift(p, dz=0.045), 0.010, 0.018)
        return np.minimum(body, neck)
    if glyph_id == 3:    # tin: squat cylinder
        return _sd_cylinder(p, 0.030, 0.012)
    if glyph_id == 4:    # arc: beads along a bent spine
        d = _sd_sphere(_shift(p, dx=-0.032, dy=-0.008), 0.014)
        for dx, dy in ((-0.016, 0.004), (0.0, 0.012), (0.016, 0.004), (0.032, -0.008)):
            d = np.minimum(d, _sd_sphere(_shift(p, dx=dx, dy=dy), 0.014))
        return d
    if glyph_id == 5:    # jug: body + side handle
        body = _sd_cylinder(p, 0.030, 0.038)
        handle = _sd_box(_shift(p, dx=0.040), (0.007, 0.014, 0.020))
        return np.minimum(body, handle)
    if glyph_id == 6:    # column
        return _sd_cylinder(p, 0.018, 0.055)
    if glyph_id == 7:    # cup: body + stub handle
        body = _sd_cylinder(p, 0.026, 0.026)
        handle = _sd_box(_shift(p, dx=0.034), (0.007, 0.012, 0.009))
        return np.minimum(body, handle)
    if glyph_id == 8:    # elbow: two bars in an L
        bar1 = _sd_box(p, (0.014, 0.042, 0.014))
        bar2 = _sd_box(_shift(p, dx=0.026, dy=0.030), (0.036, 0.012, 0.012))
        return np.minimum(bar1, bar2)
    if glyph_id == 9:    # cross
        return np.minimum(
            _sd_box(p, (0.046, 0.009, 0.007)),
            _sd_box(p, (0.009, 0.046, 0.007)),
        )
    raise ValueError(f"glyph id {glyph_id} out of range")


def object_sdf(spec: ObjectSpec, points: np.ndarray) -> np.ndarray:
    """Signed distance from world points [...,3] to the placed object surface."""
    p = np.asarray(points, dtype=np.float64) - spec.center
    # undo yaw (about z), then tilt (about x): object was tilted first, then yawed
    cy, sy = np.cos(spec.yaw), np.sin(spec.yaw)
    ct, st = np.cos(spec.tilt), np.sin(spec.tilt)
    x = cy * p[..., 0] + sy * p[..., 1]
    y = -sy * p[..., 0] + cy * p[..., 1]
    z = p[..., 2]
    y, z = ct * y + st * z, -st * y + ct * z
    q = np.stack([x, y, z], axis=-1)
    if spec.dataset_kind == "props":
        return _prop_sdf(spec.shape_id, spec.size_id, q)
    return _glyph_sdf(spec.shape_id, q)


def object_bound(spec: ObjectSpec) -> float:
    """Loose bounding radius around the object center."""
    if spec.dataset_kind == "props":
        return 1.3 * SIZE_SCALES[spec.size_id] + 0.005
    return 0.075
