"""Versioned binary container for named float arrays plus JSON metadata.

Layout: ``MAGIC`` | uint32 format version | uint64 header size | JSON header |
array payload. The header lists every array (dtype, shape, offset) and a
SHA-256 of the payload. Writing is deterministic, so identical inputs give
identical bytes.
"""

__docformat__ = "google"

import hashlib
import json
import struct
from pathlib import Path

import numpy as np

MAGIC = b"DNAC"
FORMAT_VERSION = 1
_PREFIX = struct.Struct("<4sIQ")


def write_container(path, kind: str, meta: dict, arrays: dict):
    entries = []
    chunks = []
    offset = 0
    for name, array in arrays.items():
        data = np.ascontiguousarray(array, dtype="<f8")
        payload = data.tobytes()
        entries.append(
            {"name": name, "shape": list(data.shape), "offset": offset, "nbytes": len(payload)}
        )
        chunks.append(payload)
        offset += len(payload)

    body = b"".join(chunks)
    header = json.dumps(
        {
            "kind": kind,
            "meta": meta,
            "arrays": entries,
            "sha256": hashlib.sha256(body).hexdigest(),
        },
        sort_keys=True,
    ).encode("utf-8")

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(_PREFIX.pack(MAGIC, FORMAT_VERSION, len(header)) + header + body)


def read_container(path, kind: str):
    """Read a container written by :func:`write_container`.

    Returns:
    tuple: (meta dict, dict of name -> read-only float64 array).

    Raises:
    ValueError: wrong magic, kind or version, truncated or corrupt payload.
    """
    path = Path(path)
    raw = path.read_bytes()
    if len(raw) < _PREFIX.size:
        raise ValueError(f"{path} is truncated")

    magic, version, header_size = _PREFIX.unpack_from(raw)
    if magic != MAGIC:
        raise ValueError(f"{path} is not a dna_ensembles container")
    if version != FORMAT_VERSION:
        raise ValueError(
            f"{path} has format version {version}, expected {FORMAT_VERSION}"
        )

    header_end = _PREFIX.size + header_size
    if len(raw) < header_end:
        raise ValueError(f"{path} is truncated")
    try:
        header = json.loads(raw[_PREFIX.size : header_end].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ValueError(f"{path} has a corrupt header") from exc

    if header.get("kind") != kind:
        raise ValueError(f"{path} holds a {header.get('kind')!r}, expected {kind!r}")

    body = raw[header_end:]
    expected = sum(entry["nbytes"] for entry in header["arrays"])
    if len(body) != expected:
        raise ValueError(f"{path} is truncated: {len(body)} of {expected} payload bytes")
    if hashlib.sha256(body).hexdigest() != header["sha256"]:
        raise ValueError(f"{path} is corrupt: payload checksum mismatch")

    arrays = {}
    for entry in header["arrays"]:
        start = entry["offset"]
        data = np.frombuffer(body[start : start + entry["nbytes"]], dtype="<f8")
        arrays[entry["name"]] = data.reshape(entry["shape"]).astype(np.float64)
        arrays[entry["name"]].setflags(write=False)
    return header["meta"], arrays
