import json
from pathlib import Path

import numpy as np
import pandas as pd

from binary_slab.report.writers import (
    sidecar_path,
    write_flux,
    write_frame,
    write_summary,
    write_table,
)
from binary_slab.transport.flux import FluxField


def test_sidecar_path():
    assert sidecar_path("out/B_M20_lp.csv") == Path("out/B_M20_lp.meta.json")


def test_write_flux(tmp_path):
    field = FluxField(
        x=np.array([-0.5, 0.5]),
        scalar_flux=np.array([0.1, 0.1]),
        model_tag="atomic-mix",
    )
    path = write_flux(
        tmp_path / "nested" / "am.csv", field, {"dx_max": np.float64(0.1)}
    )

    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines == [
        "# model_tag=atomic-mix",
        "x,scalar_flux",
        "-0.5,0.10000000000000001",
        "0.5,0.10000000000000001",
    ]
    sidecar_text = (tmp_path / "nested" / "am.meta.json").read_text(encoding="utf-8")
    sidecar = json.loads(sidecar_text)
    assert sidecar == {"dx_max": 0.1, "model_tag": "atomic-mix"}


def test_write_frame_untagged(tmp_path):
    frame = pd.DataFrame({"M": [20, 40], "gap": [0.5, 0.25]})
    path = write_frame(tmp_path / "convergence.csv", frame, {"set": "B"})
    raw = path.read_bytes()
    assert raw == b"M,gap\n20,0.5\n40,0.25\n"
    assert json.loads((tmp_path / "convergence.meta.json").read_text()) == {"set": "B"}


def test_write_table(tmp_path):
    rows = [{"set": "B", "phi_lp": 0.0639}, {"set": "B", "phi_lp": 0.0677}]
    path = write_table(tmp_path / "table2.csv", rows, {"problems": {}})
    assert path.read_text(encoding="utf-8").splitlines() == [
        "set,phi_lp",
        "B,0.0639",
        "B,0.0677",
    ]


def test_write_summary(tmp_path):
    path = write_summary(tmp_path / "summary.txt", ["a", "b"])
    assert path.read_text(encoding="utf-8") == "a\nb\n"
