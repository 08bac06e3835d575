# Copyright 2026 The JointDamage Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import os
import subprocess

import numpy as np
import pytest

import jointdamage as jd


def band_mesh():
    spec = {"grid_nx": 20, "grid_ny": 3, "cell_size": 25,
            "patches": [{"x0": 0, "y0": 0, "x1": 20, "y1": 3}]}
    return jd.generate_plane_mesh(json.dumps(spec))


def test_band_jdi_is_one_hundred_percent():
    mesh, gt, area = band_mesh()
    assert area == 37500.0
    damage = jd.classify_damage(mesh, 230)
    assert len(damage) == mesh.num_faces == 120
    report = json.loads(jd.compute_jdi(damage))
    assert report["damage_area"] == pytest.approx(37500.0, rel=1e-12)
    assert report["jdi"] == pytest.approx(100.0, rel=1e-12)
    m = jd.metrics_3d(damage, gt, mesh)
    assert m["recall"] == 1.0 and m["error"] == 0.0


def test_mesh_arrays_and_ply_round_trip():
    positions = np.array([[0, 0, 0], [30, 0, 0], [0, 25, 0]], dtype=np.float32)
    colors = np.full((3, 3), 255, dtype=np.uint8)
    faces = np.array([[0, 1, 2]], dtype=np.uint32)
    mesh = jd.TriMesh(positions, colors, faces)
    assert jd.face_area(mesh, 0) == 375.0
    for binary in (True, False):
        back = jd.parse_ply(jd.write_ply(mesh, binary=binary))
        assert back == mesh
        np.testing.assert_array_equal(back.positions, positions)
    assert json.loads(jd.compute_jdi(jd.classify_damage(mesh, 230)))["jdi"] == 1.0


def test_structured_errors():
    with pytest.raises(jd.Error) as info:
        jd.parse_ply(b"ply\nformat ascii 1.0\nend_header\n")
    assert info.value.code == "malformed_header"
    colorless = jd.TriMesh(np.zeros((3, 3), np.float32), None, np.array([[0, 1, 2]], np.uint32))
    with pytest.raises(jd.Error) as info:
        jd.classify_damage(colorless)
    assert info.value.code == "colorless_mesh"
    with pytest.raises(ValueError):
        jd.generate_plane_mesh("{not json")


def test_sweep_rows_sorted():
    spec = {"grid_nx": 40, "grid_ny": 4, "patches": [{"x0": 10, "y0": 0, "x1": 40, "y1": 2}],
            "gradient": {"axis": 0, "start": 150, "end": 255}}
    mesh, gt, _ = jd.generate_plane_mesh(json.dumps(spec))
    rows = jd.threshold_sweep(mesh, gt, [250, 190])
    assert [r["threshold"] for r in rows] == [190, 250]
    assert rows[0]["recall"] > rows[1]["recall"]


def test_masks_and_augmentation():
    pred, gt, expected = jd.generate_mask_pair(json.dumps(
        {"width": 32, "height": 32, "gt": {"x": 0, "y": 0, "w": 10, "h": 10},
         "pred": {"x": 5, "y": 0, "w": 10, "h": 10}}))
    m = jd.metrics_2d(pred.astype(np.uint8), gt.astype(np.uint8))
    assert m["recall"] == 0.5 and m["error"] == 0.5 and m == expected
    rng = np.random.default_rng(0)
    images = [rng.integers(0, 256, (6, 8, 3), dtype=np.uint8) for _ in range(4)]
    out = jd.augment_batch(images, seed=3, ops_per_image=5)
    assert len(out) == 24
    again = jd.augment_batch(images, seed=3, ops_per_image=5)
    assert all(np.array_equal(a, b) for a, b in zip(out, again))
    flat = np.full((5, 5, 3), 77, np.uint8)
    np.testing.assert_array_equal(jd.gaussian_blur(flat, 1.0), flat)
    assert sum(jd.gaussian_kernel(0.25)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.skipif("JOINTDAMAGE_CLI" not in os.environ, reason="CLI not built")
def test_cli_agrees_with_module(tmp_path):
    mesh, _, _ = band_mesh()
    path = tmp_path / "band.ply"
    path.write_bytes(jd.write_ply(mesh))
    out = subprocess.run([os.environ["JOINTDAMAGE_CLI"], "quantify", str(path)],
                         capture_output=True, check=True, text=True).stdout
    assert json.loads(out)["jdi"] == json.loads(jd.compute_jdi(jd.classify_damage(mesh)))["jdi"]
