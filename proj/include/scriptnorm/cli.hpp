// Copyright 2026 The scriptnorm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace scriptnorm {

// Parses argv, runs the selected subcommand, and returns the process exit
// code: 0 on success (including --help), 1 on a usage error, 2 on a data
// or I/O error. Never throws.
int dispatch(int argc, const char* const* argv);

}  // namespace scriptnorm
