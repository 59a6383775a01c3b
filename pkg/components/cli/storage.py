import json
from pathlib import Path

import msgpack
import numpy as np

from components.models.branches import Branch
from config.defaults import ARCHIVE_CODEC

ARCHIVE_FORMAT_VERSION = 1


class StorageCodec:
    SUPPORTED_CODECS = {"json", "msgpack"}

    def __init__(self, kind: str = ARCHIVE_CODEC):
        kind = (kind or "msgpack").lower()
        if kind not in self.SUPPORTED_CODECS:
            raise ValueError(f"codec must be one of {self.SUPPORTED_CODECS}")
        self.kind = kind

    @property
    def suffix(self) -> str:
        return ".msgpack" if self.kind == "msgpack" else ".json"

    def dumps(self, obj: dict) -> bytes:
        if self.kind == "msgpack":
            return msgpack.dumps(obj, use_bin_type=True)
        elif self.kind == "json":
            return json.dumps(obj, ensure_ascii=False, sort_keys=True).encode("utf-8")
        raise ValueError(f"Unknown codec: {self.kind}")

    def loads(self, data: bytes) -> dict:
        if self.kind == "msgpack":
            return msgpack.loads(data, raw=False)
        elif self.kind == "json":
            return json.loads(data.decode("utf-8"))
        raise ValueError(f"Unknown codec: {self.kind}")


def branch_archive(branch: Branch) -> dict:
    """Full discretized states along a branch."""
    grid_n = branch.points[0].state.grid.n if branch.points else 0
    return {
        "version": ARCHIVE_FORMAT_VERSION,
        "branch_id": branch.id,
        "param": branch.param,
        "provenance": branch.label,
        "grid_nodes": grid_n,
        "points": [
            {
                "value": point.value,
                "stability_index": point.stability_index,
                "event_flag": point.event_flag,
                "data": [float(x) for x in point.state.data],
            }
            for point in branch.points
        ],
    }


def write_archive(
    path: Path, branch: Branch, codec: StorageCodec | None = None
) -> Path:
    codec = codec or StorageCodec()
    path = path.with_suffix(codec.suffix)
    path.write_bytes(codec.dumps(branch_archive(branch)))
    return path


def read_archive(path: Path) -> dict:
    path = Path(path)
    codec = StorageCodec("json" if path.suffix == ".json" else "msgpack")
    archive = codec.loads(path.read_bytes())
    for point in archive["points"]:
        point["data"] = np.asarray(point["data"], dtype=float)
    return archive
