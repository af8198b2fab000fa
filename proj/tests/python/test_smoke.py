# Copyright (c) 2026 snnaccel Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os
import subprocess

import pytest

import snnaccel


def test_param_counts():
    assert snnaccel.conv_param_count(128, 128, 4, 3) * 4 == snnaccel.conv_param_count(128, 128, 1, 3)
    assert snnaccel.default_param_count() == 702336
    assert snnaccel.default_param_count(groups=1) == 2692992


def test_quantization():
    bits, exponent = snnaccel.compute_scale(1000.0, 8)
    assert (bits, exponent) == (8, -3)
    assert snnaccel.quantize([0.3, -1.0, 5.0], 8, 7) == [38, -128, 127]
    assert snnaccel.fake_quantize([0.3], 8) == [77 / 256]
    with pytest.raises(snnaccel.Error):
        snnaccel.compute_scale(0.0, 8)


def test_model_and_engines_agree():
    model = snnaccel.make_random_model(7)
    assert snnaccel.model_param_count(model) == 702336
    images = snnaccel.random_images(2, 8)
    assert len(images) == 2 * 3072
    labels = snnaccel.infer(model, images)
    sim = snnaccel.simulate(model, images)
    assert sim["labels"] == labels
    assert sim["trace_causal"]
    assert sim["total_cycles"] == sim["latency_cycles"] + sim["ii_cycles"]
    assert sim["fps"] == pytest.approx(1e8 / sim["ii_cycles"])


def test_cifar_parser():
    record = bytes([9]) + bytes(range(256)) * 12
    parsed = snnaccel.parse_cifar10(record * 3)
    assert [label for label, _ in parsed] == [9, 9, 9]
    assert parsed[0][1] == record[1:]
    with pytest.raises(snnaccel.Error):
        snnaccel.parse_cifar10(record[:-1])


def test_run_cli():
    code, out, _ = snnaccel.run_cli(["param-count"])
    assert code == 0
    assert "total = 702336" in out
    code, _, err = snnaccel.run_cli(["no-such-command"])
    assert code == 2


def test_tool_binary():
    tool = os.environ.get("SNNACCEL_TOOL")
    if not tool:
        pytest.skip("SNNACCEL_TOOL not set")
    done = subprocess.run([tool, "report"], capture_output=True, text=True, check=True)
    assert done.stdout.startswith("# snnaccel-report v1")
    assert "[pipeline]" in done.stdout
