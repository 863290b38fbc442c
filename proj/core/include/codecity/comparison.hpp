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

#include <compare>
#include <functional>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codecity/code_agent.hpp"
#include "codecity/model.hpp"
#include "codecity/trace.hpp"

namespace codecity {

enum class ChangeStatus { kAdded, kDeleted, kModified, kUnchanged };
enum class Origin { kStatic, kDynamic, kBoth };
enum class EntityKind { kPackage, kClass, kMethod };

std::string_view to_string(ChangeStatus status) noexcept;
std::string_view to_string(Origin origin) noexcept;
std::string_view to_string(EntityKind kind) noexcept;

/// Separates a class fqn from a method signature in method entity keys.
inline constexpr char kMethodSeparator = '#';

struct EntityKey {
  EntityKind kind;
  std::string fqn;

  friend auto operator<=>(const EntityKey&, const EntityKey&) = default;
};

struct EntityMetrics {
  LocMetrics loc;
  std::int64_t methodCount = 0;

  friend bool operator==(const EntityMetrics&, const EntityMetrics&) = default;
};

struct ComparedEntity {
  std::string fqn;
  std::string name;
  EntityKind kind = EntityKind::kPackage;
  ChangeStatus status = ChangeStatus::kUnchanged;
  Origin origin = Origin::kStatic;
  std::optional<EntityMetrics> baseMetrics;
  std::optional<EntityMetrics> targetMetrics;
  std::optional<std::int64_t> baseInstances;
  std::optional<std::int64_t> targetInstances;
  std::optional<std::int64_t> baseCalls;  // methods only
  std::optional<std::int64_t> targetCalls;
  std::vector<ComparedEntity> children;  // packages, then classes, then methods; by fqn

  friend bool operator==(const ComparedEntity&, const ComparedEntity&) = default;
};

struct ComparedEdge {
  EdgeKey key;
  ChangeStatus status = ChangeStatus::kUnchanged;
  std::optional<std::int64_t> baseCount;
  std::optional<std::int64_t> targetCount;

  friend bool operator==(const ComparedEdge&, const ComparedEdge&) = default;
};

struct ComparisonModel {
  CommitRef base;
  CommitRef target;
  std::optional<std::int64_t> baseWindow;
  std::optional<std::int64_t> targetWindow;
  std::vector<ComparedEntity> entities;  // roots
  std::vector<ComparedEdge> edges;       // by key

  friend bool operator==(const ComparisonModel&, const ComparisonModel&) = default;
};

struct FilterMode {
  bool includeStatic = true;
  bool includeDynamic = true;
  bool diffOnly = false;

  /// Throws kInvalidMode when both data sets are excluded.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Structural comparison

/// added/deleted by presence; otherwise modified iff kind, supertype,
/// interface set, method signature set or code lines differ. Throws
/// kContractViolation when both sides are absent.
ChangeStatus classify_class(const ClassUnit* base, const ClassUnit* target);

/// Method counterpart of classify_class: modified iff modifiers or code
/// lines differ.
ChangeStatus classify_method(const MethodDecl* base, const MethodDecl* target);

struct StructuralEntry {
  ChangeStatus status = ChangeStatus::kUnchanged;
  std::string name;
  std::optional<EntityKey> parent;
  std::optional<EntityMetrics> baseMetrics;
  std::optional<EntityMetrics> targetMetrics;
};

using StructuralDiff = std::map<EntityKey, StructuralEntry>;

/// Keyed by package path, class fqn, and `classFqn#signature` for methods.
/// Packages present on both sides are modified iff a descendant is not
/// unchanged. Throws kContractViolation when the applications differ.
StructuralDiff diff_structures(const StructuralSnapshot& base, const StructuralSnapshot& target);

// ---------------------------------------------------------------------------
// Runtime comparison

template <typename T>
struct SidePair {
  std::optional<T> base;
  std::optional<T> target;

  friend bool operator==(const SidePair&, const SidePair&) = default;
};

struct RuntimeDiff {
  std::map<EdgeKey, ComparedEdge> edges;
  std::map<std::string, SidePair<std::int64_t>> classInstances;
  std::map<MethodKey, SidePair<std::int64_t>> methodCalls;
};

/// Edges present on one side only are added/deleted; present on both they
/// are unchanged whatever the counts. Throws kContractViolation when both
/// sides are absent.
RuntimeDiff diff_runtime(const RuntimeSnapshot* base, const RuntimeSnapshot* target);

// ---------------------------------------------------------------------------
// Merge and filter

struct ComparisonInputs {
  CommitRef base;
  CommitRef target;
  std::optional<std::int64_t> baseWindow;
  std::optional<std::int64_t> targetWindow;
};

/// Unites static and runtime entities into one tree. Classes known only
/// from runtime data get origin dynamic and hang under the package path
/// implied by their fqn; package statuses are rolled up last.
ComparisonModel merge_comparison(const StructuralDiff& structure, const RuntimeDiff* runtime,
                                 const ComparisonInputs& inputs);

/// Drops entities (and edges) excluded by `mode`; with diffOnly, keeps
/// changed entities plus their ancestor chain. Throws kInvalidMode.
ComparisonModel apply_filter(const ComparisonModel& model, const FilterMode& mode);

/// Depth-first visit over every entity of the model.
void for_each_entity(const ComparisonModel& model,
                     const std::function<void(const ComparedEntity&)>& visit);

}  // namespace codecity
