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

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>

#include <fmt/core.h>

#include "codecity/code_agent.hpp"

namespace fs = std::filesystem;

namespace codecity {
namespace {

bool glob_match_at(std::string_view pat, std::string_view path) {
  while (!pat.empty()) {
    if (pat.substr(0, 3) == "**/") {
      std::string_view rest = pat.substr(3);
      if (glob_match_at(rest, path)) return true;
      for (std::size_t i = 0; i < path.size(); ++i) {
        if (path[i] == '/' && glob_match_at(rest, path.substr(i + 1))) return true;
      }
      return false;
    }
    if (pat == "**") return true;
    const char p = pat.front();
    if (p == '*') {
      std::string_view rest = pat.substr(1);
      for (std::size_t i = 0; i <= path.size(); ++i) {
        if (glob_match_at(rest, path.substr(i))) return true;
        if (i < path.size() && path[i] == '/') break;
      }
      return false;
    }
    if (path.empty()) return false;
    if (p == '?') {
      if (path.front() == '/') return false;
    } else if (p != path.front()) {
      return false;
    }
    pat.remove_prefix(1);
    path.remove_prefix(1);
  }
  return path.empty();
}

std::optional<std::string> read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return std::move(buf).str();
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view path) {
  return glob_match_at(pattern, path);
}

std::vector<std::string> scan_source_tree(const fs::path& rootDir,
                                          const std::vector<std::string>& includeGlobs,
                                          std::vector<FileWarning>* warnings) {
  static const std::vector<std::string> kDefaultGlobs{"**/*.java"};
  const auto& globs = includeGlobs.empty() ? kDefaultGlobs : includeGlobs;

  std::error_code ec;
  if (!fs::is_directory(rootDir, ec)) {
    throw Error(ErrorCode::kIo, fmt::format("source root '{}' is not a readable directory",
                                            rootDir.string()));
  }
  fs::directory_iterator probe(rootDir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo,
                fmt::format("cannot read source root '{}': {}", rootDir.string(), ec.message()));
  }

  std::vector<std::string> paths;
  std::vector<fs::path> pending{rootDir};
  while (!pending.empty()) {
    const fs::path dir = std::move(pending.back());
    pending.pop_back();
    fs::directory_iterator it(dir, ec);
    if (ec) {
      if (warnings != nullptr) {
        warnings->push_back({fs::relative(dir, rootDir).generic_string(),
                             "directory could not be read: " + ec.message()});
      }
      ec.clear();
      continue;
    }
    for (; it != fs::directory_iterator(); it.increment(ec)) {
      if (ec) break;
      const auto status = it->symlink_status(ec);
      if (ec) {
        ec.clear();
        continue;
      }
      if (fs::is_directory(status)) {
        pending.push_back(it->path());
        continue;
      }
      if (!fs::is_regular_file(status)) continue;
      std::string rel = it->path().lexically_relative(rootDir).generic_string();
      if (std::any_of(globs.begin(), globs.end(),
                      [&](const std::string& g) { return glob_match(g, rel); })) {
        paths.push_back(std::move(rel));
      }
    }
    ec.clear();
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

StructuralSnapshot analyze_source_tree(const fs::path& rootDir, const CommitRef& commitRef,
                                       std::int64_t analyzedAtMs,
                                       const std::vector<std::string>& includeGlobs) {
  std::vector<FileWarning> scan_warnings;
  const auto paths = scan_source_tree(rootDir, includeGlobs, &scan_warnings);

  std::vector<CompilationUnit> units;
  units.reserve(paths.size());
  for (const auto& rel : paths) {
    auto text = read_file(rootDir / rel);
    if (!text) {
      scan_warnings.push_back({rel, "file could not be read"});
      continue;
    }
    units.push_back(parse_compilation_unit(*text, rel));
  }
  StructuralSnapshot snapshot = build_snapshot(std::move(units), commitRef, analyzedAtMs);
  snapshot.warnings.insert(snapshot.warnings.end(), scan_warnings.begin(), scan_warnings.end());
  std::sort(snapshot.warnings.begin(), snapshot.warnings.end());
  return snapshot;
}

std::vector<ChangedPath> read_changed_paths(std::string_view text) {
  std::vector<ChangedPath> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    const auto tab = line.find('\t');
    if (tab != 1 || tab + 1 >= line.size()) {
      throw Error(ErrorCode::kParse,
                  fmt::format("line {}: expected '<A|M|D>\\t<path>'", line_no));
    }
    ChangeKind kind;
    switch (line.front()) {
      case 'A': kind = ChangeKind::kAdded; break;
      case 'M': kind = ChangeKind::kModified; break;
      case 'D': kind = ChangeKind::kDeleted; break;
      default:
        throw Error(ErrorCode::kParse,
                    fmt::format("line {}: unknown change kind '{}'", line_no, line.front()));
    }
    std::string_view path = line.substr(tab + 1);
    if (path.find('\t') != std::string_view::npos) {
      throw Error(ErrorCode::kParse, fmt::format("line {}: unexpected extra field", line_no));
    }
    out.push_back({std::string(path), kind});
  }
  return out;
}

}  // namespace codecity
