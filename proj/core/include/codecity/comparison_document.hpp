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
#include <vector>

#include "codecity/comparison.hpp"
#include "codecity/layout.hpp"

namespace codecity {

/// JSON text of a CommitRef.
std::string emit_commit_ref(const CommitRef& ref);

std::string emit_model_document(const ComparisonModel& model);
std::string emit_layout_document(const CityLayout& layout);

/// `{"model": ..., "layout": ..., "warnings": [...]}` as served by the
/// comparison endpoint.
std::string emit_comparison_response(const ComparisonModel& model, const CityLayout& layout,
                                     const std::vector<std::string>& warnings);

}  // namespace codecity
