from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Optional, Union

import pandas as pd

from binary_slab.transport.flux import FLOAT_FORMAT, FluxField, write_tagged_csv
from binary_slab.utils.logger import logger
from binary_slab.utils.serializer import Serializer

PathLike = Union[str, Path]

_serializer = Serializer()


def sidecar_path(path: PathLike) -> Path:
    path = Path(path)
    return path.with_name(f"{path.stem}.meta.json")


def write_sidecar(path: PathLike, metadata: Mapping[str, Any]) -> Path:
    """Write `<name>.meta.json` next to the data file at `path`."""
    target = sidecar_path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(_serializer.dumps(dict(metadata)), encoding="utf-8")
    return target


def write_flux(
    path: PathLike, field: FluxField, metadata: Mapping[str, Any]
) -> Path:
    """Flux CSV plus a sidecar with the model tag and numerical knobs."""
    written = field.to_csv(path)
    write_sidecar(written, {"model_tag": field.model_tag, **metadata})
    logger.debug(f"Wrote {field.model_tag} flux to {written}")
    return written


def write_frame(
    path: PathLike,
    frame: pd.DataFrame,
    metadata: Mapping[str, Any],
    tags: Optional[Mapping[str, Any]] = None,
) -> Path:
    """A plain or tagged CSV plus its sidecar."""
    path = Path(path)
    if tags:
        write_tagged_csv(path, frame, dict(tags))
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as handle:
            frame.to_csv(
                handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n"
            )
    write_sidecar(path, metadata)
    logger.info(f"Wrote {path}")
    return path


def write_table(
    path: PathLike, rows: Iterable[Dict[str, Any]], metadata: Mapping[str, Any]
) -> Path:
    """Table rows already rounded to printed precision, written as text."""
    frame = pd.DataFrame(list(rows))
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        frame.to_csv(handle, index=False, lineterminator="\n")
    write_sidecar(path, metadata)
    logger.info(f"Wrote table {path}")
    return path


def write_summary(path: PathLike, lines: Iterable[str]) -> Path:
    """Human-readable run summary; the only output carrying wall times."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
