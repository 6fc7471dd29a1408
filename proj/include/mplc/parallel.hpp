// Copyright 2026 The mplc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace mplc {

/// Worker count used by data-parallel loops. Defaults to $MPLC_THREADS or 1.
int num_threads();
void set_num_threads(int threads);

/// Runs body(i) for i in [0, count). Each index is visited exactly once;
/// callers must not depend on visiting order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace mplc
