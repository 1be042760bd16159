"""Episode and manifest serialization (CMTE-v1).

One episode file holds a 200-step hand/object interaction: an RGB frame
sequence, fingertip force vectors, joint positions/velocities and the issued
velocity commands, plus the class/pose labels. The layout is fixed-size and
little-endian so serialization is a bijection on valid episodes:

    header  (24 B): magic "CMTE" | version u32=1 | T u32 | H u32 | W u32 | C u32
    labels  (44 B): touch_dim u32 | proprio_dim u32 | action_dim u32 |
                    object_class u32 | pose_class u32 | shape_id u32 |
                    size_id u32 | rigidity_id u32 | dataset_id u32 |
                    episode_seed u64
    payload: vision T*H*W*C u8 | touch T*touch_dim f32 |
             proprio T*proprio_dim f32 | action T*action_dim f32

A dataset is a directory of episode files plus a `manifest.json` index.
Readers reject anything that is not byte-for-byte a valid CMTE-v1 file of
the expected dimensions; there is no streaming, compression or migration.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import (
    ConsistencyError,
    FormatError,
    UnsupportedVersionError,
    ValidationError,
)

MAGIC = b"CMTE"
FORMAT_VERSION = 1

EPISODE_LEN = 200
IMAGE_HW = 64
IMAGE_CHANNELS = 3
TOUCH_DIM = 15
PROPRIO_DIM = 48
ACTION_DIM = 20

DATASET_PROPS = 0
DATASET_YCB = 1
DATASET_KINDS = {"props": DATASET_PROPS, "ycb-like": DATASET_YCB}

N_PROP_CLASSES = 48
N_YCB_CLASSES = 10
N_POSE_CLASSES = 60

_HEADER = struct.Struct("<4s5I")
_LABELS = struct.Struct("<9IQ")

HEADER_BYTES = _HEADER.size + _LABELS.size  # 68

_VISION_BYTES = EPISODE_LEN * IMAGE_HW * IMAGE_HW * IMAGE_CHANNELS
_TOUCH_BYTES = EPISODE_LEN * TOUCH_DIM * 4
_PROPRIO_BYTES = EPISODE_LEN * PROPRIO_DIM * 4
_ACTION_BYTES = EPISODE_LEN * ACTION_DIM * 4

EPISODE_FILE_BYTES = HEADER_BYTES + _VISION_BYTES + _TOUCH_BYTES + _PROPRIO_BYTES + _ACTION_BYTES


def decode_prop_class(object_class: int) -> tuple[int, int, int]:
    """Split a props class id into (shape_id, size_id, rigidity_id).

    The canonical encoding is object_class = shape*12 + size*2 + rigidity
    with shape in [0,3], size in [0,5], rigidity in {0=rigid, 1=soft}.
    """
    shape, rem = divmod(object_class, 12)
    size, rigidity = divmod(rem, 2)
    return shape, size, rigidity


def encode_prop_class(shape_id: int, size_id: int, rigidity_id: int) -> int:
    return shape_id * 12 + size_id * 2 + rigidity_id


@dataclass(frozen=True)
class Episode:
    """One 200-step trajectory with labels. Arrays are immutable after construction."""

    vision: np.ndarray   # [T, 64, 64, 3] uint8
    touch: np.ndarray    # [T, 15] float32, non-negative
    proprio: np.ndarray  # [T, 48] float32
    action: np.ndarray   # [T, 20] float32
    object_class: int
    pose_class: int
    shape_id: int
    size_id: int
    rigidity_id: int
    dataset_id: int
    episode_seed: int

    def __post_init__(self):
        for name in ("vision", "touch", "proprio", "action"):
            arr = getattr(self, name)
            if arr.flags.writeable:
                arr = arr.copy()
                arr.setflags(write=False)
                object.__setattr__(self, name, arr)

    def validate(self) -> None:
        """Raise ValidationError naming the first field that breaks an invariant."""
        _expect_array(self.vision, "vision", (EPISODE_LEN, IMAGE_HW, IMAGE_HW, IMAGE_CHANNELS), np.uint8)
        _expect_array(self.touch, "touch", (EPISODE_LEN, TOUCH_DIM), np.float32)
        _expect_array(self.proprio, "proprio", (EPISODE_LEN, PROPRIO_DIM), np.float32)
        _expect_array(self.action, "action", (EPISODE_LEN, ACTION_DIM), np.float32)
        for name in ("touch", "proprio", "action"):
            if not np.isfinite(getattr(self, name)).all():
                raise ValidationError(name, "contains NaN or Inf")
        if (self.touch < 0).any():
            raise ValidationError("touch", "negative force component")
        if not 0 <= self.episode_seed < 2**64:
            raise ValidationError("episode_seed", "must fit in u64")
        if self.dataset_id == DATASET_PROPS:
            if not 0 <= self.object_class < N_PROP_CLASSES:
                raise ValidationError("object_class", f"props class must be in [0,{N_PROP_CLASSES - 1}]")
            if self.pose_class != 0:
                raise ValidationError("pose_class", "must be 0 for props episodes")
            shape, size, rigidity = decode_prop_class(self.object_class)
            if (self.shape_id, self.size_id, self.rigidity_id) != (shape, size, rigidity):
                raise ValidationError("shape_id", "shape/size/rigidity do not match the props class encoding")
        elif self.dataset_id == DATASET_YCB:
            if not 0 <= self.object_class < N_YCB_CLASSES:
                raise ValidationError("object_class", f"ycb-like class must be in [0,{N_YCB_CLASSES - 1}]")
            if not 0 <= self.pose_class < N_POSE_CLASSES:
                raise ValidationError("pose_class", f"must be in [0,{N_POSE_CLASSES - 1}]")
            if self.shape_id != self.object_class or self.size_id != 0 or self.rigidity_id != 0:
                raise ValidationError("shape_id", "ycb-like episodes use shape_id=object_class, size_id=0, rigidity_id=0")
        else:
            raise ValidationError("dataset_id", "must be 0 (props) or 1 (ycb-like)")


def _expect_array(arr: np.ndarray, name: str, shape: tuple, dtype) -> None:
    if not isinstance(arr, np.ndarray):
        raise ValidationError(name, "not an ndarray")
    if arr.shape != shape:
        raise ValidationError(name, f"shape {arr.shape} != {shape}")
    if arr.dtype != np.dtype(dtype):
        raise ValidationError(name, f"dtype {arr.dtype} != {np.dtype(dtype)}")


def episode_to_bytes(ep: Episode) -> bytes:
    """Serialize a validated episode; byte content is a pure function of the episode."""
    ep.validate()
    parts = [
        _HEADER.pack(MAGIC, FORMAT_VERSION, EPISODE_LEN, IMAGE_HW, IMAGE_HW, IMAGE_CHANNELS),
        _LABELS.pack(
            TOUCH_DIM, PROPRIO_DIM, ACTION_DIM,
            ep.object_class, ep.pose_class, ep.shape_id, ep.size_id,
            ep.rigidity_id, ep.dataset_id, ep.episode_seed,
        ),
        np.ascontiguousarray(ep.vision, dtype="<u1").tobytes(),
        np.ascontiguousarray(ep.touch, dtype="<f4").tobytes(),
        np.ascontiguousarray(ep.proprio, dtype="<f4").tobytes(),
        np.ascontiguousarray(ep.action, dtype="<f4").tobytes(),
    ]
    return b"".join(parts)


def write_episode(ep: Episode, path: str | Path) -> None:
    Path(path).write_bytes(episode_to_bytes(ep))


def episode_from_bytes(blob: bytes) -> Episode:
    """Parse a CMTE-v1 byte string; rejects anything malformed or truncated."""
    if len(blob) < _HEADER.size:
        raise FormatError(f"file too short for header ({len(blob)} bytes)")
    magic, version, t, h, w, c = _HEADER.unpack_from(blob, 0)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(f"version {version} not supported (expected {FORMAT_VERSION})")
    if (t, h, w, c) != (EPISODE_LEN, IMAGE_HW, IMAGE_HW, IMAGE_CHANNELS):
        raise FormatError(f"unexpected dimensions T={t} H={h} W={w} C={c}")
    if len(blob) < HEADER_BYTES:
        raise FormatError("file truncated inside the label block")
    (touch_dim, proprio_dim, action_dim, object_class, pose_class,
     shape_id, size_id, rigidity_id, dataset_id, episode_seed) = _LABELS.unpack_from(blob, _HEADER.size)
    if (touch_dim, proprio_dim, action_dim) != (TOUCH_DIM, PROPRIO_DIM, ACTION_DIM):
        raise FormatError(f"unexpected payload dims touch={touch_dim} proprio={proprio_dim} action={action_dim}")
    if len(blob) != EPISODE_FILE_BYTES:
        raise FormatError(f"file size {len(blob)} != expected {EPISODE_FILE_BYTES}")

    off = HEADER_BYTES
    vision = np.frombuffer(blob, dtype="<u1", count=_VISION_BYTES, offset=off)
    vision = vision.reshape(EPISODE_LEN, IMAGE_HW, IMAGE_HW, IMAGE_CHANNELS)
    off += _VISION_BYTES
    touch = np.frombuffer(blob, dtype="<f4", count=EPISODE_LEN * TOUCH_DIM, offset=off)
    touch = touch.reshape(EPISODE_LEN, TOUCH_DIM)
    off += _TOUCH_BYTES
    proprio = np.frombuffer(blob, dtype="<f4", count=EPISODE_LEN * PROPRIO_DIM, offset=off)
    proprio = proprio.reshape(EPISODE_LEN, PROPRIO_DIM)
    off += _PROPRIO_BYTES
    action = np.frombuffer(blob, dtype="<f4", count=EPISODE_LEN * ACTION_DIM, offset=off)
    action = action.reshape(EPISODE_LEN, ACTION_DIM)

    ep = Episode(
        vision=vision, touch=touch, proprio=proprio, action=action,
        object_class=object_class, pose_class=pose_class, shape_id=shape_id,
        size_id=size_id, rigidity_id=rigidity_id, dataset_id=dataset_id,
        episode_seed=episode_seed,
    )
    ep.validate()
    return ep


def read_episode(path: str | Path) -> Episode:
    return episode_from_bytes(Path(path).read_bytes())


MANIFEST_VERSION = 1
MANIFEST_NAME = "manifest.json"

_MANIFEST_KEYS = {
    "name", "dataset_kind", "format_version", "generator_config_hash",
    "root_seed", "classes", "episodes",
}
_ENTRY_KEYS = {"path", "object_class", "pose_class", "episode_seed"}


@dataclass(frozen=True)
class ManifestEntry:
    path: str  # relative to the manifest directory, forward slashes
    object_class: int
    pose_class: int
    episode_seed: int


@dataclass
class DatasetManifest:
    """Index of a dataset directory: class descriptors plus one entry per episode file."""

    name: str
    dataset_kind: str  # "props" | "ycb-like"
    generator_config_hash: str
    root_seed: int
    classes: list[dict] = field(default_factory=list)
    episodes: list[ManifestEntry] = field(default_factory=list)
    format_version: int = MANIFEST_VERSION

    def validate(self) -> None:
        if self.dataset_kind not in DATASET_KINDS:
            raise ValidationError("dataset_kind", f"unknown kind {self.dataset_kind!r}")
        seeds = [e.episode_seed for e in self.episodes]
        if len(set(seeds)) != len(seeds):
            raise ValidationError("episodes", "episode_seed values are not unique")

    def class_ids(self) -> list[int]:
        return sorted({e.object_class for e in self.episodes})

    def to_json(self) -> str:
        doc = {
            "name": self.name,
            "dataset_kind": self.dataset_kind,
            "format_version": self.format_version,
            "generator_config_hash": self.generator_config_hash,
            "root_seed": self.root_seed,
            "classes": self.classes,
            "episodes": [
                {"path": e.path, "object_class": e.object_class,
                 "pose_class": e.pose_class, "episode_seed": e.episode_seed}
                for e in self.episodes
            ],
        }
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "DatasetManifest":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"manifest is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise FormatError("manifest root must be a JSON object")
        unknown = set(doc) - _MANIFEST_KEYS
        if unknown:
            raise FormatError(f"manifest has unknown keys: {sorted(unknown)}")
        missing = _MANIFEST_KEYS - set(doc)
        if missing:
            raise FormatError(f"manifest is missing keys: {sorted(missing)}")
        if doc["format_version"] != MANIFEST_VERSION:
            raise UnsupportedVersionError(f"manifest version {doc['format_version']} not supported")
        entries = []
        for raw in doc["episodes"]:
            if set(raw) != _ENTRY_KEYS:
                raise FormatError(f"bad episode entry keys: {sorted(raw)}")
            entries.append(ManifestEntry(
                path=raw["path"], object_class=int(raw["object_class"]),
                pose_class=int(raw["pose_class"]), episode_seed=int(raw["episode_seed"]),
            ))
        m = cls(
            name=doc["name"], dataset_kind=doc["dataset_kind"],
            generator_config_hash=doc["generator_config_hash"],
            root_seed=int(doc["root_seed"]), classes=list(doc["classes"]),
            episodes=entries, format_version=int(doc["format_version"]),
        )
        m.validate()
        return m


def write_manifest(manifest: DatasetManifest, root_dir: str | Path) -> Path:
    manifest.validate()
    path = Path(root_dir) / MANIFEST_NAME
    path.write_text(manifest.to_json())
    return path


class EpisodeAccessor:
    """Lazy episode resolver for a manifest.

    Episodes are read on demand; on first access each file's header labels
    are checked against the manifest entry. A small LRU cache keeps recently
    used episodes in memory. Safe for concurrent reads.
    """

    def __init__(self, manifest: DatasetManifest, root_dir: str | Path, cache_size: int = 64):
        self.manifest = manifest
        self.root_dir = Path(root_dir)
        self._cache_size = cache_size
        self._cache: dict[int, Episode] = {}

    def __len__(self) -> int:
        return len(self.manifest.episodes)

    def path_of(self, index: int) -> Path:
        return self.root_dir / self.manifest.episodes[index].path

    def __getitem__(self, index: int) -> Episode:
        cached = self._cache.get(index)
        if cached is not None:
            return cached
        entry = self.manifest.episodes[index]
        path = self.path_of(index)
        if not path.is_file():
            raise FileNotFoundError(f"episode file missing: {path}")
        ep = read_episode(path)
        for attr in ("object_class", "pose_class", "episode_seed"):
            if getattr(ep, attr) != getattr(entry, attr):
                raise ConsistencyError(
                    f"{path}: header {attr}={getattr(ep, attr)} "
                    f"disagrees with manifest {attr}={getattr(entry, attr)}"
                )
        if len(self._cache) >= self._cache_size:
            self._cache.pop(next(iter(self._cache)))
        self._cache[index] = ep
        return ep


def load_dataset(manifest_path: str | Path, cache_size: int = 64) -> tuple[DatasetManifest, EpisodeAccessor]:
    """Load a manifest and return it with a lazy episode accessor."""
    manifest_path = Path(manifest_path)
    if manifest_path.is_dir():
        manifest_path = manifest_path / MANIFEST_NAME
    if not manifest_path.is_file():
        raise FileNotFoundError(f"manifest missing: {manifest_path}")
    manifest = DatasetManifest.from_json(manifest_path.read_text())
    return manifest, EpisodeAccessor(manifest, manifest_path.parent, cache_size=cache_size)


def filter_manifest(manifest: DatasetManifest, class_ids: set[int], suffix: str) -> DatasetManifest:
    """Manifest restricted to a set of object classes (same file tree)."""
    return replace(
        manifest,
        name=f"{manifest.name}-{suffix}",
        classes=[c for c in manifest.classes if c["id"] in class_ids],
        episodes=[e for e in manifest.episodes if e.object_class in class_ids],
    )
