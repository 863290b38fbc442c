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
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "codecity/model.hpp"

namespace codecity {

struct FileWarning {
  std::string path;
  std::string reason;

  friend auto operator<=>(const FileWarning&, const FileWarning&) = default;
};

struct FileMetrics {
  std::string path;
  LocMetrics loc;

  friend bool operator==(const FileMetrics&, const FileMetrics&) = default;
};

/// The parsed form of one source file.
struct CompilationUnit {
  std::string path;
  std::string packagePath;
  std::vector<std::string> imports;  // as written, "static " prefix kept
  std::vector<ClassUnit> topLevelTypes;
  std::set<std::string> unresolvedTypeNames;
  LocMetrics loc;
  std::vector<FileWarning> warnings;
};

/// Full package/class/method tree plus metrics for one commit.
struct StructuralSnapshot {
  CommitRef commitRef;
  std::vector<PackageNode> rootPackages;
  std::vector<FileMetrics> files;
  std::vector<FileWarning> warnings;
  std::int64_t analyzedAtMs = 0;

  friend bool operator==(const StructuralSnapshot&, const StructuralSnapshot&) = default;
};

// ---------------------------------------------------------------------------
// Source discovery

/// Repo-relative paths under `rootDir` matching any of `includeGlobs`
/// (default `**/*.java`), sorted lexicographically. Symlinks are not
/// followed. Entries that cannot be read are appended to `warnings` when
/// given. Throws kIo when the root itself is unreadable.
std::vector<std::string> scan_source_tree(
    const std::filesystem::path& rootDir,
    const std::vector<std::string>& includeGlobs = {},
    std::vector<FileWarning>* warnings = nullptr);

/// Glob match over '/'-separated paths: `*` and `?` stay within one
/// segment, `**/` spans zero or more segments.
bool glob_match(std::string_view pattern, std::string_view path);

// ---------------------------------------------------------------------------
// Parsing and metrics

/// Extracts package, imports, type declarations and method declarations.
/// Never throws on malformed input: unsupported constructs are recorded in
/// `warnings` and the declared type names that could be recognized are
/// still emitted.
CompilationUnit parse_compilation_unit(std::string_view fileText,
                                       std::string_view path);

/// Classifies physical lines `firstLine..lastLine` (1-based, inclusive).
/// Throws kRange when the range is empty or outside the text.
LocMetrics compute_loc(std::string_view fileText, std::int64_t firstLine,
                       std::int64_t lastLine);

/// compute_loc over the whole text; an empty text yields all zeros.
LocMetrics compute_file_loc(std::string_view fileText);

/// Number of physical lines; a trailing newline does not open a new line.
std::int64_t count_lines(std::string_view fileText) noexcept;

// ---------------------------------------------------------------------------
// Snapshot assembly

/// Rewrites superClass/interfaces of every type to fully-qualified names
/// where possible: single-type imports first, then types of the same
/// package (and enclosing types), then wildcard imports when exactly one
/// imported package declares the name. Names that stay unresolved are kept
/// verbatim and collected in unresolvedTypeNames.
void resolve_type_names(std::vector<CompilationUnit>& units);

/// Merges the units into one package tree. Throws kSnapshotConflict naming
/// both paths when two units declare the same fqn.
StructuralSnapshot build_snapshot(std::vector<CompilationUnit> units,
                                  const CommitRef& commitRef,
                                  std::int64_t analyzedAtMs);

/// Sorts every sibling list: packages by name, classes by fqn, methods by
/// signature, interfaces, files and warnings.
void canonicalize_snapshot(StructuralSnapshot& snapshot);

/// Scan + parse + build for a directory.
StructuralSnapshot analyze_source_tree(const std::filesystem::path& rootDir,
                                       const CommitRef& commitRef,
                                       std::int64_t analyzedAtMs,
                                       const std::vector<std::string>& includeGlobs = {});

// ---------------------------------------------------------------------------
// Changed-path lists

enum class ChangeKind { kAdded, kModified, kDeleted };

struct ChangedPath {
  std::string path;
  ChangeKind kind;

  friend bool operator==(const ChangedPath&, const ChangedPath&) = default;
};

/// Parses `git diff --name-status` output restricted to A/M/D lines.
/// Throws kParse with the 1-based line number on a malformed line.
std::vector<ChangedPath> read_changed_paths(std::string_view nameStatusText);

}  // namespace codecity
