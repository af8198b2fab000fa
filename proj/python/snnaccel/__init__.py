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

"""Single-timestep spiking ResNet: reference engine and accelerator model."""

from ._snnaccel import (
    Error,
    compute_scale,
    conv_param_count,
    default_param_count,
    fake_quantize,
    infer,
    make_random_model,
    model_param_count,
    parse_cifar10,
    quantize,
    random_images,
    run_cli,
    simulate,
)

__all__ = [
    "Error",
    "compute_scale",
    "conv_param_count",
    "default_param_count",
    "fake_quantize",
    "infer",
    "make_random_model",
    "model_param_count",
    "parse_cifar10",
    "quantize",
    "random_images",
    "run_cli",
    "simulate",
]
