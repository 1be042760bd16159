"""Episode rollout and dataset generation.

An episode is a pure function of (dataset kind, class id, pose class,
episode seed): scene setup, then 200 steps of policy -> hand step -> touch
sensing -> rendering. Datasets fan this out over classes and a per-episode
seed derived with the splittable hash, so any sharding or ordering produces
byte-identical file trees.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from ..dataio import (
    ACTION_DIM,
    DATASET_KINDS,
    EPISODE_LEN,
    DatasetManifest,
    Episode,
    ManifestEntry,
    decode_prop_class,
    write_episode,
    write_manifest,
)
from ..seeding import rng_from_seed, split64
from .objects import GLYPH_NAMES, RIGIDITY_NAMES, SHAPE_NAMES
from .policy import scripted_policy
from .scene import GeneratorConfig, make_scene, step_hand
from .sensing import sense_touch
from .rendering import render

_SCENE_SEED_TAG = 1
_WANDER_SEED_TAG = 2
_NOISE_SEED_TAG = 3

N_POSES = 60


def generate_episode(dataset_kind: str, class_id: int, pose_class: int, episode_seed: int) -> Episode:
    """Roll one 200-step episode; bit-deterministic in its arguments."""
    scene = make_scene(dataset_kind, class_id, pose_class, split64(episode_seed, _SCENE_SEED_TAG))
    wander_seed = split64(episode_seed, _WANDER_SEED_TAG)
    rng = rng_from_seed(split64(episode_seed, _NOISE_SEED_TAG))

    vision = np.empty((EPISODE_LEN, 64, 64, 3), dtype=np.uint8)
    touch = np.empty((EPISODE_LEN, 15), dtype=np.float32)
    proprio = np.empty((EPISODE_LEN, 48), dtype=np.float32)
    action = np.empty((EPISODE_LEN, ACTION_DIM), dtype=np.float32)

    for t in range(EPISODE_LEN):
        a = scripted_policy(scene, t, rng, wander_seed)
        scene = step_hand(scene, a)
        _, reduced = sense_touch(scene)
        vision[t] = render(scene)
        touch[t] = reduced
        proprio[t, :24] = scene.joint_pos
        proprio[t, 24:] = scene.joint_vel
        action[t] = a.astype(np.float32)

    spec = scene.object_spec
    return Episode(
        vision=vision, touch=touch, proprio=proprio, action=action,
        object_class=class_id, pose_class=pose_class,
        shape_id=spec.shape_id, size_id=spec.size_id, rigidity_id=spec.rigidity_id,
        dataset_id=DATASET_KINDS[dataset_kind], episode_seed=episode_seed,
    )


def class_descriptor(dataset_kind: str, class_id: int) -> dict:
    if dataset_kind == "props":
        shape, size, rigidity = decode_prop_class(class_id)
        return {
            "id": class_id,
            "name": f"{SHAPE_NAMES[shape]}-s{size}-{RIGIDITY_NAMES[rigidity]}",
            "shape_id": shape, "size_id": size, "rigidity_id": rigidity,
        }
    return {"id": class_id, "name": f"glyph{class_id:02d}-{GLYPH_NAMES[class_id]}"}


def plan_dataset(cfg: GeneratorConfig) -> list[tuple[str, int, int, int]]:
    """Deterministic build plan: (relative path, class_id, pose_class, episode_seed)."""
    plan = []
    for class_id in cfg.class_ids():
        for idx in range(cfg.episodes_per_class):
            seed = split64(cfg.root_seed, class_id, idx)
            pose = idx % N_POSES if cfg.dataset_kind == "ycb-like" else 0
            rel = f"episodes/c{class_id:03d}_e{idx:04d}.cmte"
            plan.append((rel, class_id, pose, seed))
    seeds = [p[3] for p in plan]
    if len(set(seeds)) != len(seeds):
        raise RuntimeError("derived episode seeds collided; choose another root seed")
    return plan


def _write_one(out_dir: str, dataset_kind: str, item: tuple[str, int, int, int]) -> str:
    rel, class_id, pose, seed = item
    ep = generate_episode(dataset_kind, class_id, pose, seed)
    path = Path(out_dir) / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    write_episode(ep, path)
    return rel


def _write_one_star(args) -> str:
    return _write_one(*args)


def generate_dataset(cfg: GeneratorConfig, out_dir: str | Path, jobs: int = 1) -> DatasetManifest:
    """Write every episode file plus manifest.json under out_dir."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    plan = plan_dataset(cfg)

    if jobs <= 1:
        for item in plan:
            _write_one(str(out_dir), cfg.dataset_kind, item)
    else:
        work = [(str(out_dir), cfg.dataset_kind, item) for item in plan]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            list(pool.map(_write_one_star, work, chunksize=4))

    manifest = DatasetManifest(
        name=f"{cfg.dataset_kind}-{cfg.config_hash()}",
        dataset_kind=cfg.dataset_kind,
        generator_config_hash=cfg.config_hash(),
        root_seed=cfg.root_seed,
        classes=[class_descriptor(cfg.dataset_kind, cid) for cid in cfg.class_ids()],
        episodes=[ManifestEntry(path=rel, object_class=cid, pose_class=pose, episode_seed=seed)
                  for rel, cid, pose, seed in plan],
    )
    write_manifest(manifest, out_dir)
    return manifest
