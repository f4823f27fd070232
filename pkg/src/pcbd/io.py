"""File formats for designs and run manifests.

CSV has a header ``block,attr1,...,attrK`` and one row per pair holding the
1-based block number and the difference-matrix entries. JSON carries the same
matrix plus the block sizes, class descriptor and full provenance.
"""

from __future__ import annotations

import csv
import datetime as _dt
import io as _io
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .claims import OptimalityClaim
from .design import BlockedDesign, BlockLayout, DesignClassDescriptor, Provenance
from .errors import LayoutError, ShapeError

FORMAT_TAG = "pcbd-design"
FORMAT_VERSION = 1


def design_to_csv(d: BlockedDesign) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["block"] + [f"attr{j + 1}" for j in range(d.k)])
    for b, r in enumerate(d.layout.ranges(), start=1):
        for i in r:
            w.writerow([b] + [int(x) for x in d.f[i]])
    return buf.getvalue()


def design_from_csv(text: str) -> BlockedDesign:
    rows = list(csv.reader(_io.StringIO(text)))
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows or rows[0][0].strip().lower() != "block":
        raise ShapeError("CSV design must start with a 'block,attr1,...' header")
    k = len(rows[0]) - 1
    blocks, f = [], []
    for line, r in enumerate(rows[1:], start=2):
        if len(r) != k + 1:
            raise ShapeError(f"CSV line {line} has {len(r)} fields, expected {k + 1}")
        blocks.append(int(r[0]))
        f.append([int(x) for x in r[1:]])
    sizes: list[int] = []
    seen: list[int] = []
    for b in blocks:
        if seen and b == seen[-1]:
            sizes[-1] += 1
        elif b in seen:
            raise LayoutError(f"rows of block {b} are not contiguous")
        else:
            seen.append(b)
            sizes.append(1)
    return BlockedDesign(np.array(f, dtype=np.int64).reshape(len(f), k), BlockLayout(tuple(sizes)))


def design_to_dict(d: BlockedDesign) -> dict[str, Any]:
    return {
        "format": FORMAT_TAG,
        "version": FORMAT_VERSION,
        "N": d.n,
        "K": d.k,
        "block_sizes": list(d.layout.sizes),
        "f": d.f.tolist(),
        "class": d.class_desc.as_dict(),
        "provenance": d.provenance.as_dict(),
    }


def design_from_dict(data: dict[str, Any]) -> BlockedDesign:
    if data.get("format") != FORMAT_TAG:
        raise ShapeError(f"not a {FORMAT_TAG} document")
    f = np.array(data["f"], dtype=np.int64)
    layout = BlockLayout(tuple(data["block_sizes"]))
    cls = data.get("class")
    desc = None
    if cls is not None:
        desc = DesignClassDescriptor(cls["N"], cls["K"], tuple(cls["block_sizes"]), dict(cls.get("tags", {})))
    prov_data = data.get("provenance") or {}
    claim = prov_data.get("claim")
    prov = Provenance(
        prov_data.get("method"),
        dict(prov_data.get("params", {})),
        None if claim is None else OptimalityClaim.from_dict(claim),
        tuple(prov_data.get("notes", ())),
    )
    return BlockedDesign(f, layout, desc, prov)


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def design_to_json(d: BlockedDesign) -> str:
    return dumps(design_to_dict(d))


def load_design(path: str | Path) -> BlockedDesign:
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return design_from_dict(json.loads(text))
    return design_from_csv(text)


def timestamp() -> str:
    """UTC ISO time, or the SOURCE_DATE_EPOCH time when that variable is set."""
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        when = _dt.datetime.fromtimestamp(int(epoch), tz=_dt.timezone.utc)
    else:
        when = _dt.datetime.now(tz=_dt.timezone.utc).replace(microsecond=0)
    return when.isoformat().replace("+00:00", "Z")


@dataclass(frozen=True)
class RunManifest:
    subcommand: str
    parameters: dict[str, Any]
    inputs: list[str] = field(default_factory=list)
    outputs: list[str] = field(default_factory=list)
    version: str = ""
    timestamp: str = ""

    def as_dict(self) -> dict[str, Any]:
        return {
            "subcommand": self.subcommand,
            "parameters": self.parameters,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "version": self.version,
            "timestamp": self.timestamp,
        }


def manifest_path(output: str | Path) -> Path:
    p = Path(output)
    return p.with_name(p.name + ".manifest.json")


def write_with_manifest(output: str | Path, text: str, manifest: RunManifest) -> Path:
    out = Path(output)
    out.write_text(text, encoding="utf-8")
    side = manifest_path(out)
    side.write_text(dumps(manifest.as_dict()), encoding="utf-8")
    return side
