// Copyright 2026 The dioexp Authors
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

#ifndef DIOEXP_RUN_IO_HPP_
#define DIOEXP_RUN_IO_HPP_

#include <string>

#include "dioexp/construction.hpp"

namespace dioexp {

inline constexpr const char* kRunSchema = "dioexp.run/1";

// JSON document with the full contents of a run.
// Integers and rationals are stored as decimal strings, so a write/read/write
// cycle reproduces the same bytes.
std::string RunToJson(const ConstructionRun& run);
ConstructionRun RunFromJson(const std::string& text);

void WriteRunFile(const std::string& path, const ConstructionRun& run);
ConstructionRun ReadRunFile(const std::string& path);

}  // namespace dioexp

#endif  // DIOEXP_RUN_IO_HPP_
