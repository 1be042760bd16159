"""Deterministic procedural generator of paired vision/touch episodes."""

from .episodes import class_descriptor, generate_dataset, generate_episode, plan_dataset
from .hand import COUPLING, CONTROL_DT, JOINT_LIMITS, fingertip_positions
from .objects import GLYPH_NAMES, ObjectSpec, SHAPE_NAMES, SOFT_FORCE_SCALE, object_sdf
from .policy import scripted_policy
from .rendering import render
from .scene import (
    GeneratorConfig,
    SceneState,
    decode_pose_class,
    empty_scene,
    make_scene,
    step_hand,
)
from .sensing import reduce_raw, sense_touch

__all__ = [
    "COUPLING", "CONTROL_DT", "JOINT_LIMITS", "GLYPH_NAMES", "SHAPE_NAMES",
    "SOFT_FORCE_SCALE", "GeneratorConfig", "ObjectSpec", "SceneState",
    "class_descriptor", "decode_pose_class", "empty_scene",
    "fingertip_positions", "generate_dataset", "generate_episode",
    "make_scene", "object_sdf", "plan_dataset", "reduce_raw", "render",
    "scripted_policy", "sense_touch", "step_hand",
]
