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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codecity/error.hpp"

namespace codecity {

/// True for exactly 40 lowercase hex characters.
bool is_commit_hash(std::string_view text) noexcept;

/// True for a Java-style identifier (letters, digits, '_' and '$', not
/// starting with a digit).
bool is_identifier(std::string_view text) noexcept;

/// Identifies one analyzed revision of an application.
struct CommitRef {
  std::string application;
  std::string branch;
  std::string commit;
  std::optional<std::string> parentCommit;

  /// Throws kInvalidArgument when an invariant does not hold.
  void validate() const;

  friend bool operator==(const CommitRef&, const CommitRef&) = default;
};

/// Throws kInvalidArgument unless `name` is usable as an application name:
/// non-empty, no '/', no whitespace, not "." or "..".
void validate_application_name(std::string_view name);

struct LocMetrics {
  std::int64_t codeLines = 0;
  std::int64_t commentLines = 0;
  std::int64_t blankLines = 0;

  [[nodiscard]] std::int64_t total() const noexcept {
    return codeLines + commentLines + blankLines;
  }

  friend bool operator==(const LocMetrics&, const LocMetrics&) = default;
};

struct MethodDecl {
  std::string name;
  std::vector<std::string> paramTypes;
  std::string returnType;
  std::vector<std::string> modifiers;  // kept sorted and unique
  LocMetrics loc;

  friend bool operator==(const MethodDecl&, const MethodDecl&) = default;
};

/// Name used for constructors in MethodDecl::name.
inline constexpr std::string_view kConstructorName = "<init>";

enum class ClassKind { kClass, kAbstract, kInterface, kEnum };

std::string_view to_string(ClassKind kind) noexcept;
/// Throws kInvalidArgument for an unknown spelling.
ClassKind class_kind_from_string(std::string_view text);

struct ClassUnit {
  std::string name;
  std::string fqn;
  ClassKind kind = ClassKind::kClass;
  std::optional<std::string> superClass;
  std::vector<std::string> interfaces;
  std::vector<MethodDecl> methods;
  std::vector<ClassUnit> nestedClasses;
  std::string filePath;
  LocMetrics loc;

  friend bool operator==(const ClassUnit&, const ClassUnit&) = default;
};

struct PackageNode {
  std::string name;
  std::vector<PackageNode> subpackages;
  std::vector<ClassUnit> classes;

  friend bool operator==(const PackageNode&, const PackageNode&) = default;
};

/// Dot-joins package path, enclosing type names and `name`. An empty
/// package path contributes nothing. Throws kInvalidIdentifier when `name`
/// or any component is not an identifier.
std::string make_fqn(std::string_view packagePath,
                     const std::vector<std::string>& enclosing,
                     std::string_view name);

/// `name(p1,p2,...):returnType` with all whitespace removed.
std::string signature_of(const MethodDecl& method);

/// Visits every class (nested classes included) in depth-first order.
void for_each_class(const ClassUnit& root,
                    const std::function<void(const ClassUnit&)>& visit);
void for_each_class(const PackageNode& root,
                    const std::function<void(const ClassUnit&)>& visit);

}  // namespace codecity
