"""Scene construction: object placement plus hand state."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..dataio import (
    DATASET_KINDS,
    N_POSE_CLASSES,
    N_PROP_CLASSES,
    N_YCB_CLASSES,
    decode_prop_class,
)
from ..errors import ValidationError
from ..seeding import rng_from_seed, split64
from . import hand
from .objects import ObjectSpec

N_YAW_BINS = 12
N_TILT_BINS = 5
TILT_MAX = 0.5
PROPS_TILT_MAX = 0.35

_SCENE_TAG = 0x5CE


@dataclass(frozen=True)
class SceneState:
    """Immutable world snapshot: the placed object and the hand configuration.

    `make_scene` always fills every field; a scene without an object or hand
    (both None) is a test hook for background-only rendering.
    """

    object_spec: Optional[ObjectSpec]
    joint_pos: Optional[np.ndarray]   # [24] radians
    joint_vel: Optional[np.ndarray]   # [24] rad/s
    fingertips: Optional[np.ndarray]  # [5,3] meters, from forward kinematics

    def __post_init__(self):
        for name in ("joint_pos", "joint_vel", "fingertips"):
            value = getattr(self, name)
            if value is None:
                continue
            arr = np.asarray(value, dtype=np.float64).copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def empty_scene() -> SceneState:
    """Scene with no object and no hand (background-only render)."""
    return SceneState(object_spec=None, joint_pos=None, joint_vel=None, fingertips=None)


def decode_pose_class(pose_class: int) -> tuple[int, int]:
    """pose_class = 12*tilt_bin + yaw_bin."""
    tilt_bin, yaw_bin = divmod(pose_class, N_YAW_BINS)
    return yaw_bin, tilt_bin


def make_scene(dataset_kind: str, class_id: int, pose_class: int, seed: int) -> SceneState:
    """Deterministic scene for (class, pose, seed).

    Props draw their pose entirely from the seeded stream (pose_class must be
    0); glyph objects decode pose_class into a yaw/tilt bin and jitter within
    the bin.
    """
    if dataset_kind not in DATASET_KINDS:
        raise ValueError(f"unknown dataset kind {dataset_kind!r}")
    rng = rng_from_seed(split64(seed, _SCENE_TAG, class_id, pose_class))
    if dataset_kind == "props":
        if not 0 <= class_id < N_PROP_CLASSES:
            raise ValueError(f"props class_id {class_id} out of range")
        if pose_class != 0:
            raise ValueError("pose_class must be 0 for props")
        shape_id, size_id, rigidity_id = decode_prop_class(class_id)
        yaw = rng.uniform(0.0, 2.0 * np.pi)
        tilt = rng.uniform(0.0, PROPS_TILT_MAX)
        ox, oy = rng.uniform(-0.012, 0.012, size=2)
    else:
        if not 0 <= class_id < N_YCB_CLASSES:
            raise ValueError(f"ycb-like class_id {class_id} out of range")
        if not 0 <= pose_class < N_POSE_CLASSES:
            raise ValueError(f"pose_class {pose_class} out of range")
        shape_id, size_id, rigidity_id = class_id, 0, 0
        yaw_bin, tilt_bin = decode_pose_class(pose_class)
        yaw = (yaw_bin + rng.uniform(0.25, 0.75)) * (2.0 * np.pi / N_YAW_BINS)
        tilt = (tilt_bin + rng.uniform(0.25, 0.75)) * (TILT_MAX / N_TILT_BINS)
        ox, oy = rng.uniform(-0.008, 0.008, size=2)

    spec = ObjectSpec(
        dataset_kind=dataset_kind, class_id=class_id, shape_id=shape_id,
        size_id=size_id, rigidity_id=rigidity_id,
        offset_x=float(ox), offset_y=float(oy), yaw=float(yaw), tilt=float(tilt),
    )

    q = np.zeros(hand.N_JOINTS)
    q[list(hand.FLEX_JOINTS)] = 0.15
    q = hand.clamp_joints(q + rng.uniform(-0.02, 0.02, size=hand.N_JOINTS))
    return SceneState(
        object_spec=spec,
        joint_pos=q,
        joint_vel=np.zeros(hand.N_JOINTS),
        fingertips=hand.fingertip_positions(q),
    )


def step_hand(scene: SceneState, action: np.ndarray, dt: float = hand.CONTROL_DT) -> SceneState:
    """Integrate one velocity-control step: q += dt * (coupling @ action), clamped."""
    a = np.asarray(action, dtype=np.float64)
    if a.shape != (hand.N_ACTUATORS,):
        raise ValueError(f"action shape {a.shape} != ({hand.N_ACTUATORS},)")
    q_new = hand.clamp_joints(scene.joint_pos + dt * (hand.COUPLING @ a))
    vel = (q_new - scene.joint_pos) / dt
    return SceneState(
        object_spec=scene.object_spec,
        joint_pos=q_new,
        joint_vel=vel,
        fingertips=hand.fingertip_positions(q_new),
    )


@dataclass(frozen=True)
class GeneratorConfig:
    """Everything that determines a dataset; two equal configs give identical trees."""

    dataset_kind: str
    episodes_per_class: int
    root_seed: int
    class_filter: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.dataset_kind not in DATASET_KINDS:
            raise ValidationError("dataset_kind", f"unknown kind {self.dataset_kind!r}")
        if self.episodes_per_class < 1:
            raise ValidationError("episodes_per_class", "must be >= 1")
        if self.class_filter is not None:
            object.__setattr__(self, "class_filter", tuple(sorted(set(self.class_filter))))
            n = N_PROP_CLASSES if self.dataset_kind == "props" else N_YCB_CLASSES
            for cid in self.class_filter:
                if not 0 <= cid < n:
                    raise ValidationError("class_filter", f"class id {cid} out of range")

    def class_ids(self) -> tuple[int, ...]:
        if self.class_filter is not None:
            return self.class_filter
        n = N_PROP_CLASSES if self.dataset_kind == "props" else N_YCB_CLASSES
        return tuple(range(n))

    def to_dict(self) -> dict:
        return {
            "dataset_kind": self.dataset_kind,
            "episodes_per_class": self.episodes_per_class,
            "root_seed": self.root_seed,
            "class_filter": list(self.class_filter) if self.class_filter is not None else None,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "GeneratorConfig":
        unknown = set(doc) - {"dataset_kind", "episodes_per_class", "root_seed", "class_filter"}
        if unknown:
            raise ValidationError("generator_config", f"unknown keys {sorted(unknown)}")
        return cls(
            dataset_kind=doc["dataset_kind"],
            episodes_per_class=int(doc["episodes_per_class"]),
            root_seed=int(doc["root_seed"]),
            class_filter=tuple(doc["class_filter"]) if doc.get("class_filter") is not None else None,
        )

    def config_hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]
