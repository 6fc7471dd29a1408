# Copyright 2026 The mplc Authors
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

"""Multi-plane light conversion: mode-basis gates, wavefront matching, crosstalk and process tomography."""

from ._core import (
    Design,
    GridSpec,
    InvalidInput,
    IoError,
    ModeBasis,
    PhaseReference,
    WfmConfig,
    backpropagate,
    cx_gate,
    design_converter,
    gate_from_json,
    gell_mann_basis,
    genetic_align,
    grid_for_waist,
    h_gate,
    inner_product,
    lg_mode,
    load_design,
    mub_states,
    num_threads,
    parse_config,
    process_from_kraus,
    propagate,
    run_design,
    run_evaluate,
    run_export_masks,
    run_sweep,
    run_tomo,
    set_num_threads,
    x_gate,
)

__version__ = "0.1.0"
