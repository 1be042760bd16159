"""Blind scripted exploration policy.

The controller cycles through close / hold / open / reposition phases so the
fingertips repeatedly wrap around whatever sits under the palm. It reads only
joint positions (proprioception) and never the rendered frames, so no visual
information can leak into the motor trace. Per-cycle wrist and abduction
targets come from a splittable seed, making the whole command sequence a pure
function of (scene, step, rng state, wander_seed).
"""

from __future__ import annotations

import numpy as np

from ..seeding import rng_from_seed, split64
from . import hand
from .scene import SceneState

CYCLE_LEN = 50
_CLOSE_END = 32    # phases [0, 32): drive toward the closed grasp
_OPEN_END = 42     # phases [32, 42): release
FLEX_CLOSED = 1.08
FLEX_OPEN = 0.12
_KP = 6.0
_NOISE = 0.08
_WANDER_TAG = 0x7A11D


def _cycle_targets(wander_seed: int, cycle_idx: int) -> np.ndarray:
    """Per-cycle wrist/abduction/thumb-rotation set-points (cycle 0 is centered)."""
    q_tgt = np.zeros(hand.N_JOINTS)
    if cycle_idx > 0:
        rng = rng_from_seed(split64(wander_seed, _WANDER_TAG, cycle_idx))
        q_tgt[list(hand.WRIST_JOINTS)] = rng.uniform(-0.42, 0.42, size=2)
        q_tgt[list(hand.ABD_JOINTS)] = rng.uniform(-0.20, 0.20, size=5)
        q_tgt[hand.TH_ROT_JOINT] = rng.uniform(-0.5, 0.5)
    return q_tgt


def scripted_policy(
    state: SceneState,
    step: int,
    rng: np.random.Generator,
    wander_seed: int = 0,
) -> np.ndarray:
    """20-dim velocity command in [-1, 1], from proprioception only."""
    phase = step % CYCLE_LEN
    q_tgt = _cycle_targets(wander_seed, step // CYCLE_LEN)
    flex_target = FLEX_CLOSED if phase < _CLOSE_END else FLEX_OPEN
    q_tgt[list(hand.FLEX_JOINTS)] = flex_target
    q_tgt[hand.LF_PALM_JOINT] = 0.4 if phase < _CLOSE_END else 0.05

    err = q_tgt - state.joint_pos
    # proportional control per actuator, fed back from its primary joint
    action = _KP * err[hand.ACTUATOR_JOINT]
    action = action + rng.uniform(-_NOISE, _NOISE, size=hand.N_ACTUATORS)
    return np.clip(action, -1.0, 1.0)
