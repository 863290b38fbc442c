// Copyright 2026 The codecity Authors
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

#include <string>
#include <string_view>

#include "codecity/code_agent.hpp"

namespace codecity {

inline constexpr std::string_view kStructureSchema = "codecity-structure/1";

/// Canonical `codecity-structure/1` document: sorted object keys, sorted
/// sibling arrays, two-space indentation, trailing newline. Equal snapshots
/// produce identical bytes.
std::string emit_snapshot_document(const StructuralSnapshot& snapshot);

/// Parses and validates a `codecity-structure/1` document. Throws kSchema
/// on any violation.
StructuralSnapshot parse_structure_document(std::string_view text);

/// Equality of everything but the analysis timestamp.
bool same_structure(const StructuralSnapshot& a, const StructuralSnapshot& b);

}  // namespace codecity
