"""Fingertip touch model.

Each fingertip carries a 4x4 taxel patch facing the object. Taxel forces come
from penetration depth into the object SDF: channel 0 is the normal force,
channels 1-2 are tangential components driven by the sliding velocity. Soft
objects attenuate every channel by a fixed compliance factor. The reduced
15-vector is the per-fingertip absolute sum over the patch, finger-major
(f0 normal, f0 tang-u, f0 tang-w, f1 normal, ...).
"""

from __future__ import annotations

import numpy as np

from .hand import fingertip_velocities
from .objects import SOFT_FORCE_SCALE, object_sdf
from .scene import SceneState

TAXEL_GRID = 4
TAXEL_PITCH = 0.0035
NORMAL_GAIN = 600.0
TANGENTIAL_GAIN = 150.0
_GRAD_EPS = 1e-4

_OFFSETS = (np.arange(TAXEL_GRID) - (TAXEL_GRID - 1) / 2.0) * TAXEL_PITCH


def _patch_frame(direction: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal (u, w) spanning the plane perpendicular to `direction`."""
    d = direction / max(np.linalg.norm(direction), 1e-9)
    up = np.array([0.0, 0.0, 1.0]) if abs(d[2]) < 0.95 else np.array([1.0, 0.0, 0.0])
    u = np.cross(d, up)
    u /= max(np.linalg.norm(u), 1e-9)
    w = np.cross(d, u)
    return u, w


def sense_touch(scene: SceneState) -> tuple[np.ndarray, np.ndarray]:
    """Raw taxel grid [5,4,4,3] and reduced force vector [15].

    The reduction sums absolute values over the spatial grid, so reduced
    forces are always non-negative.
    """
    raw = np.zeros((5, TAXEL_GRID, TAXEL_GRID, 3))
    spec = scene.object_spec
    if spec is not None:
        center = spec.center
        tip_vel = fingertip_velocities(scene.joint_pos, scene.joint_vel)
        scale = SOFT_FORCE_SCALE if spec.is_soft else 1.0
        for f in range(5):
            tip = scene.fingertips[f]
            to_center = center - tip
            if np.linalg.norm(to_center) < 1e-9:
                to_center = np.array([0.0, 0.0, -1.0])
            u, w = _patch_frame(to_center)
            pts = (tip[None, None, :]
                   + _OFFSETS[:, None, None] * u[None, None, :]
                   + _OFFSETS[None, :, None] * w[None, None, :])
            sdf = object_sdf(spec, pts)
            pen = np.maximum(0.0, -sdf)
            if not pen.any():
                continue
            # outward surface normal from SDF central differences
            grad = np.empty(pts.shape)
            for axis in range(3):
                dp = np.zeros(3)
                dp[axis] = _GRAD_EPS
                grad[..., axis] = (object_sdf(spec, pts + dp) - object_sdf(spec, pts - dp)) / (2 * _GRAD_EPS)
            norms = np.linalg.norm(grad, axis=-1, keepdims=True)
            n_hat = grad / np.maximum(norms, 1e-9)
            v = tip_vel[f]
            v_tang = v[None, None, :] - (n_hat @ v)[..., None] * n_hat
            raw[f, :, :, 0] = scale * NORMAL_GAIN * pen
            raw[f, :, :, 1] = scale * TANGENTIAL_GAIN * pen * (v_tang @ u)
            raw[f, :, :, 2] = scale * TANGENTIAL_GAIN * pen * (v_tang @ w)
    reduced = reduce_raw(raw)
    return raw, reduced


def reduce_raw(raw: np.ndarray) -> np.ndarray:
    """Collapse a [5,4,4,3] taxel grid to the 15-vector of absolute sums."""
    return np.abs(raw).sum(axis=(1, 2)).reshape(15).astype(np.float32)
