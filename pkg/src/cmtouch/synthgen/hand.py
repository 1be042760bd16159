"""Kinematic surrogate of a five-fingered, 24-joint hand driven by 20 actuators.

The hand hangs palm-down over the workspace. Four distal joint pairs (one per
non-thumb finger) are coupled to a single actuator each, which is how 20
velocity commands drive 24 joints. Fingertip positions come from a smooth
analytic curl model rather than a full linkage: each fingertip sweeps from a
wide, high "open" pose to a point near the palm axis as its flexion sum grows.
This keeps stepping cheap and exactly reproducible while preserving what the
pipeline needs: joint-limited velocity control and contact-seeking geometry.
"""

from __future__ import annotations

import numpy as np

N_JOINTS = 24
N_ACTUATORS = 20
CONTROL_DT = 1.0 / 30.0

# Joint layout (index: name):
#   0-1   wrist a/b (translate the palm over the workspace)
#   2-5   index:  abd, flex1, flex2, flex3
#   6-9   middle: abd, flex1, flex2, flex3
#   10-13 ring:   abd, flex1, flex2, flex3
#   14-18 little: palm, abd, flex1, flex2, flex3
#   19-23 thumb:  rot, abd, flex1, flex2, flex3
FLEX_JOINTS = (3, 4, 5, 7, 8, 9, 11, 12, 13, 16, 17, 18, 21, 22, 23)
ABD_JOINTS = (2, 6, 10, 15, 20)
WRIST_JOINTS = (0, 1)
LF_PALM_JOINT = 14
TH_ROT_JOINT = 19

JOINT_LIMITS = np.zeros((N_JOINTS, 2))
JOINT_LIMITS[0] = JOINT_LIMITS[1] = (-0.6, 0.6)
for _j in ABD_JOINTS:
    JOINT_LIMITS[_j] = (-0.35, 0.35)
for _j in FLEX_JOINTS:
    JOINT_LIMITS[_j] = (0.0, 1.571)
JOINT_LIMITS[LF_PALM_JOINT] = (0.0, 0.7)
JOINT_LIMITS[TH_ROT_JOINT] = (-1.0, 1.0)
JOINT_LIMITS.setflags(write=False)


def _build_coupling() -> np.ndarray:
    """24x20 actuator-to-joint map; coupled distal pairs move together."""
    c = np.zeros((N_JOINTS, N_ACTUATORS))
    pairs = {  # actuator -> joints it drives
        0: (0,), 1: (1,),
        2: (2,), 3: (3,), 4: (4, 5),          # index (flex2+flex3 coupled)
        5: (6,), 6: (7,), 7: (8, 9),          # middle
        8: (10,), 9: (11,), 10: (12, 13),     # ring
        11: (14,), 12: (15,), 13: (16,), 14: (17, 18),  # little
        15: (19,), 16: (20,), 17: (21,), 18: (22,), 19: (23,),  # thumb
    }
    for act, joints in pairs.items():
        for j in joints:
            c[j, act] = 1.0
    c.setflags(write=False)
    return c


COUPLING = _build_coupling()

# Per-actuator feedback joint (used by the scripted controller): the first
# joint each actuator drives.
ACTUATOR_JOINT = np.array([int(np.argmax(COUPLING[:, a])) for a in range(N_ACTUATORS)])
ACTUATOR_JOINT.setflags(write=False)

# Fingertip sweep geometry (meters).
PALM_Z = 0.105
PALM_GAIN = 0.05
FINGER_AZIMUTH = np.array([-0.80, -0.27, 0.27, 0.80, np.pi])  # index..little, thumb
TIP_R_FAR = 0.085
TIP_R_NEAR = np.array([0.0045, 0.0035, 0.0045, 0.0060, 0.0050])
TIP_Z_FAR = 0.105
TIP_Z_NEAR = np.array([0.040, 0.038, 0.040, 0.042, 0.041])
CURL_MAX = 3.2

_FINGER_FLEX = (  # flexion joints summed into each finger's curl
    (3, 4, 5), (7, 8, 9), (11, 12, 13), (16, 17, 18), (21, 22, 23),
)
_FINGER_ABD = (2, 6, 10, 15, 20)


def fingertip_positions(joint_pos: np.ndarray) -> np.ndarray:
    """Forward kinematics: [5,3] fingertip points (index, middle, ring, little, thumb)."""
    q = np.asarray(joint_pos, dtype=np.float64)
    palm = np.array([PALM_GAIN * np.sin(q[0]), PALM_GAIN * np.sin(q[1])])
    curls = np.array([q[list(fj)].sum() for fj in _FINGER_FLEX])
    curls[3] += 0.6 * q[LF_PALM_JOINT]
    az = FINGER_AZIMUTH + 0.6 * q[list(_FINGER_ABD)]
    az = az.copy()
    az[4] += 0.5 * q[TH_ROT_JOINT]
    u = np.clip(curls / CURL_MAX, 0.0, 1.0)
    sweep = np.sin(u * (np.pi / 2.0))
    radial = TIP_R_FAR - (TIP_R_FAR - TIP_R_NEAR) * sweep
    z = TIP_Z_FAR - (TIP_Z_FAR - TIP_Z_NEAR) * sweep
    tips = np.empty((5, 3))
    tips[:, 0] = palm[0] + radial * np.cos(az)
    tips[:, 1] = palm[1] + radial * np.sin(az)
    tips[:, 2] = z
    return tips


def fingertip_velocities(joint_pos: np.ndarray, joint_vel: np.ndarray, h: float = 1e-4) -> np.ndarray:
    """Tip velocities [5,3] from a central-difference directional derivative of the FK."""
    q = np.asarray(joint_pos, dtype=np.float64)
    qd = np.asarray(joint_vel, dtype=np.float64)
    return (fingertip_positions(q + h * qd) - fingertip_positions(q - h * qd)) / (2.0 * h)


def clamp_joints(joint_pos: np.ndarray) -> np.ndarray:
    return np.clip(joint_pos, JOINT_LIMITS[:, 0], JOINT_LIMITS[:, 1])
