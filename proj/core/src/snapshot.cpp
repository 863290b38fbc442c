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
#include <map>
#include <set>
#include <unordered_set>

#include <fmt/core.h>

#include "codecity/code_agent.hpp"

namespace codecity {
namespace {

class TypeResolver {
 public:
  explicit TypeResolver(const std::vector<CompilationUnit>& units) {
    for (const auto& unit : units) {
      for (const auto& top : unit.topLevelTypes) {
        for_each_class(top, [&](const ClassUnit& c) { known_.insert(c.fqn); });
      }
    }
  }

  void resolve_unit(CompilationUnit& unit) const {
    std::map<std::string, std::string, std::less<>> single;
    std::vector<std::string> wildcard;
    for (const auto& imp : unit.imports) {
      if (imp.starts_with("static ")) continue;
      if (imp.ends_with(".*")) {
        wildcard.push_back(imp.substr(0, imp.size() - 2));
      } else {
        single.emplace(imp.substr(imp.rfind('.') + 1), imp);
      }
    }
    Scope scope{unit, single, wildcard, {}};
    for (auto& top : unit.topLevelTypes) {
      resolve_class(top, scope);
    }
  }

 private:
  struct Scope {
    CompilationUnit& unit;
    const std::map<std::string, std::string, std::less<>>& single;
    const std::vector<std::string>& wildcard;
    std::vector<std::string> enclosing;  // fqns, outermost first
  };

  void resolve_class(ClassUnit& cls, Scope& scope) const {
    if (cls.superClass) {
      *cls.superClass = resolve(*cls.superClass, scope);
    }
    for (auto& iface : cls.interfaces) {
      iface = resolve(iface, scope);
    }
    scope.enclosing.push_back(cls.fqn);
    for (auto& nested : cls.nestedClasses) {
      resolve_class(nested, scope);
    }
    scope.enclosing.pop_back();
  }

  std::string resolve(const std::string& name, Scope& scope) const {
    const auto dot = name.find('.');
    const std::string head = name.substr(0, dot);
    const std::string tail = dot == std::string::npos ? "" : name.substr(dot);

    if (dot != std::string::npos && known_.contains(name)) {
      return name;
    }
    if (auto base = resolve_simple(head, scope)) {
      return *base + tail;
    }
    scope.unit.unresolvedTypeNames.insert(name);
    return name;
  }

  std::optional<std::string> resolve_simple(const std::string& name, const Scope& scope) const {
    for (auto it = scope.enclosing.rbegin(); it != scope.enclosing.rend(); ++it) {
      std::string candidate = *it + "." + name;
      if (known_.contains(candidate)) return candidate;
    }
    if (auto it = scope.single.find(name); it != scope.single.end()) {
      return it->second;
    }
    const std::string& pkg = scope.unit.packagePath;
    std::string same_package = pkg.empty() ? name : pkg + "." + name;
    if (known_.contains(same_package)) return same_package;

    std::optional<std::string> found;
    for (const auto& prefix : scope.wildcard) {
      std::string candidate = prefix + "." + name;
      if (known_.contains(candidate)) {
        if (found && *found != candidate) return std::nullopt;  // ambiguous
        found = std::move(candidate);
      }
    }
    return found;
  }

  std::unordered_set<std::string> known_;
};

void canonicalize(ClassUnit& cls) {
  std::sort(cls.interfaces.begin(), cls.interfaces.end());
  std::sort(cls.methods.begin(), cls.methods.end(),
            [](const MethodDecl& a, const MethodDecl& b) { return signature_of(a) < signature_of(b); });
  for (auto& nested : cls.nestedClasses) canonicalize(nested);
  std::sort(cls.nestedClasses.begin(), cls.nestedClasses.end(),
            [](const ClassUnit& a, const ClassUnit& b) { return a.fqn < b.fqn; });
}

void canonicalize(PackageNode& pkg) {
  for (auto& cls : pkg.classes) canonicalize(cls);
  std::sort(pkg.classes.begin(), pkg.classes.end(),
            [](const ClassUnit& a, const ClassUnit& b) { return a.fqn < b.fqn; });
  for (auto& sub : pkg.subpackages) canonicalize(sub);
  std::sort(pkg.subpackages.begin(), pkg.subpackages.end(),
            [](const PackageNode& a, const PackageNode& b) { return a.name < b.name; });
}

// Drops repeated signatures, which the owning class cannot legally declare.
void drop_duplicate_methods(ClassUnit& cls, std::vector<FileWarning>& warnings) {
  std::set<std::string> seen;
  std::erase_if(cls.methods, [&](const MethodDecl& m) {
    auto sig = signature_of(m);
    if (seen.insert(sig).second) return false;
    warnings.push_back({cls.filePath, fmt::format("duplicate method {} in {}", sig, cls.fqn)});
    return true;
  });
  for (auto& nested : cls.nestedClasses) drop_duplicate_methods(nested, warnings);
}

PackageNode& package_for(std::vector<PackageNode>& roots, const std::string& packagePath) {
  std::vector<PackageNode>* level = &roots;
  PackageNode* node = nullptr;
  std::size_t begin = 0;
  while (true) {
    const auto dot = packagePath.find('.', begin);
    std::string segment = packagePath.substr(begin, dot - begin);
    auto it = std::find_if(level->begin(), level->end(),
                           [&](const PackageNode& p) { return p.name == segment; });
    if (it == level->end()) {
      level->push_back(PackageNode{segment, {}, {}});
      it = level->end() - 1;
    }
    node = &*it;
    level = &node->subpackages;
    if (dot == std::string::npos) break;
    begin = dot + 1;
  }
  return *node;
}

}  // namespace

void resolve_type_names(std::vector<CompilationUnit>& units) {
  TypeResolver resolver(units);
  for (auto& unit : units) {
    unit.unresolvedTypeNames.clear();
    resolver.resolve_unit(unit);
  }
}

StructuralSnapshot build_snapshot(std::vector<CompilationUnit> units, const CommitRef& commitRef,
                                  std::int64_t analyzedAtMs) {
  commitRef.validate();

  std::map<std::string, std::string> owner_path;
  for (const auto& unit : units) {
    for (const auto& top : unit.topLevelTypes) {
      for_each_class(top, [&](const ClassUnit& c) {
        auto [it, inserted] = owner_path.emplace(c.fqn, unit.path);
        if (!inserted) {
          throw Error(ErrorCode::kSnapshotConflict,
                      fmt::format("type {} declared in both {} and {}", c.fqn, it->second,
                                  unit.path));
        }
      });
    }
  }

  resolve_type_names(units);

  StructuralSnapshot snapshot;
  snapshot.commitRef = commitRef;
  snapshot.analyzedAtMs = analyzedAtMs;
  for (auto& unit : units) {
    snapshot.files.push_back({unit.path, unit.loc});
    snapshot.warnings.insert(snapshot.warnings.end(), unit.warnings.begin(), unit.warnings.end());
    if (unit.topLevelTypes.empty()) continue;
    // The default package has no name of its own; it is the root node "".
    PackageNode& pkg = package_for(snapshot.rootPackages, unit.packagePath);
    for (auto& cls : unit.topLevelTypes) {
      drop_duplicate_methods(cls, snapshot.warnings);
      pkg.classes.push_back(std::move(cls));
    }
  }
  canonicalize_snapshot(snapshot);
  return snapshot;
}

void canonicalize_snapshot(StructuralSnapshot& snapshot) {
  for (auto& root : snapshot.rootPackages) canonicalize(root);
  std::sort(snapshot.rootPackages.begin(), snapshot.rootPackages.end(),
            [](const PackageNode& a, const PackageNode& b) { return a.name < b.name; });
  std::sort(snapshot.files.begin(), snapshot.files.end(),
            [](const FileMetrics& a, const FileMetrics& b) { return a.path < b.path; });
  std::sort(snapshot.warnings.begin(), snapshot.warnings.end());
}

}  // namespace codecity
