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

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <fmt/core.h>

#include "codecity/code_agent.hpp"
#include "codecity/trace.hpp"
#include "test_support.hpp"

namespace codecity::testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// A top-level class placed in a package.
struct PlacedClass {
  std::string packagePath;
  ClassUnit cls;
};

/// Builds the package tree directly from placed classes; does not go
/// through build_snapshot.
inline StructuralSnapshot snapshot_of(const CommitRef& ref, const std::vector<PlacedClass>& placed,
                                      std::int64_t analyzedAtMs = 0) {
  StructuralSnapshot s;
  s.commitRef = ref;
  s.analyzedAtMs = analyzedAtMs;
  for (const auto& p : placed) {
    std::vector<PackageNode>* level = &s.rootPackages;
    PackageNode* node = nullptr;
    std::string rest = p.packagePath;
    while (true) {
      const auto dot = rest.find('.');
      const std::string part = rest.substr(0, dot);
      auto it = std::find_if(level->begin(), level->end(),
                             [&](const PackageNode& n) { return n.name == part; });
      if (it == level->end()) {
        level->push_back(PackageNode{part, {}, {}});
        it = std::prev(level->end());
      }
      node = &*it;
      level = &node->subpackages;
      if (dot == std::string::npos) break;
      rest = rest.substr(dot + 1);
    }
    node->classes.push_back(p.cls);
    s.files.push_back(FileMetrics{p.cls.filePath, p.cls.loc});
  }
  canonicalize_snapshot(s);
  return s;
}

inline MethodDecl random_method(Rng& rng) {
  static const std::vector<std::string> names{"f", "g", "run", "get", "apply", "<init>"};
  static const std::vector<std::string> types{"int", "String", "long", "List<String>"};
  static const std::vector<std::string> mods{"public", "static", "final", "private"};
  MethodDecl m;
  m.name = names[pick(rng, names.size())];
  const std::size_t params = pick(rng, 3);
  for (std::size_t i = 0; i < params; ++i) m.paramTypes.push_back(types[pick(rng, types.size())]);
  m.returnType = m.name == "<init>" ? "void" : types[pick(rng, types.size())];
  for (const auto& mod : mods) {
    if (chance(rng, 0.3)) m.modifiers.push_back(mod);
  }
  m.loc = LocMetrics{1 + static_cast<std::int64_t>(pick(rng, 6)), static_cast<std::int64_t>(pick(rng, 2)), 0};
  return m;
}

inline void add_unique_methods(Rng& rng, ClassUnit& c, std::size_t count) {
  std::set<std::string> seen;
  for (const auto& m : c.methods) seen.insert(signature_of(m));
  for (std::size_t i = 0; i < count; ++i) {
    MethodDecl m = random_method(rng);
    if (seen.insert(signature_of(m)).second) c.methods.push_back(std::move(m));
  }
}

inline ClassUnit random_class(Rng& rng, const std::string& packagePath, const std::string& name,
                              std::size_t maxMethods) {
  static const std::vector<std::string> supers{"", "", "Base", "a.Root", "java.lang.Thread"};
  static const std::vector<std::string> ifaces{"Runnable", "a.Marker", "Comparable<T>"};
  ClassUnit c;
  c.name = name;
  c.fqn = packagePath + "." + name;
  c.kind = static_cast<ClassKind>(pick(rng, 4));
  if (const auto& s = supers[pick(rng, supers.size())]; !s.empty()) c.superClass = s;
  for (const auto& i : ifaces) {
    if (chance(rng, 0.25)) c.interfaces.push_back(i);
  }
  add_unique_methods(rng, c, pick(rng, maxMethods + 1));
  std::string dir = packagePath;
  std::replace(dir.begin(), dir.end(), '.', '/');
  c.filePath = dir + "/" + name + ".java";
  c.loc = LocMetrics{3 + static_cast<std::int64_t>(pick(rng, 60)),
                     static_cast<std::int64_t>(pick(rng, 10)),
                     static_cast<std::int64_t>(pick(rng, 10))};
  return c;
}

inline const std::vector<std::string>& package_pool() {
  static const std::vector<std::string> pool{"a", "a.b", "a.b.c", "d", "d.e", "f"};
  return pool;
}

/// Up to `maxClasses` classes (nested ones included) with up to
/// `maxMethods` methods each.
inline std::vector<PlacedClass> random_classes(Rng& rng, std::size_t maxClasses, std::size_t maxMethods) {
  std::vector<PlacedClass> out;
  const std::size_t n = 1 + pick(rng, maxClasses);
  std::size_t made = 0;
  for (std::size_t i = 0; made < n; ++i) {
    const std::string& pkg = package_pool()[pick(rng, package_pool().size())];
    PlacedClass p{pkg, random_class(rng, pkg, fmt::format("C{}", i), maxMethods)};
    ++made;
    if (made < n && chance(rng, 0.15)) {
      ClassUnit inner = random_class(rng, pkg, "Inner", maxMethods);
      inner.fqn = p.cls.fqn + ".Inner";
      inner.filePath = p.cls.filePath;
      p.cls.nestedClasses.push_back(std::move(inner));
      ++made;
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// Applies random deletions, additions and edits of every kind the
/// comparison distinguishes.
inline std::vector<PlacedClass> mutate_classes(Rng& rng, std::vector<PlacedClass> classes,
                                               std::size_t maxMethods) {
  std::vector<PlacedClass> out;
  auto edit = [&](ClassUnit& c) {
    switch (pick(rng, 8)) {
      case 0: c.kind = static_cast<ClassKind>((static_cast<int>(c.kind) + 1) % 4); break;
      case 1: c.superClass = c.superClass ? std::nullopt : std::optional<std::string>("Other"); break;
      case 2: c.interfaces.push_back("Extra"); break;
      case 3: add_unique_methods(rng, c, 1 + pick(rng, 2)); break;
      case 4:
        if (!c.methods.empty()) c.methods.erase(c.methods.begin() + static_cast<long>(pick(rng, c.methods.size())));
        break;
      case 5:
        if (!c.methods.empty()) c.methods[pick(rng, c.methods.size())].loc.codeLines += 1;
        break;
      case 6:
        if (!c.methods.empty()) {
          auto& mods = c.methods[pick(rng, c.methods.size())].modifiers;
          if (mods.empty()) mods.push_back("synchronized");
          else mods.pop_back();
        }
        break;
      default: c.loc.codeLines += 1 + static_cast<std::int64_t>(pick(rng, 3)); break;
    }
    // Comment-only churn must never count as a change.
    if (chance(rng, 0.3)) c.loc.commentLines += 1;
  };
  for (auto& p : classes) {
    const double roll = std::uniform_real_distribution<double>(0, 1)(rng);
    if (roll < 0.1) continue;
    if (roll < 0.35) edit(p.cls);
    for (auto& n : p.cls.nestedClasses) {
      if (chance(rng, 0.3)) edit(n);
    }
    if (!p.cls.nestedClasses.empty() && chance(rng, 0.1)) p.cls.nestedClasses.clear();
    out.push_back(std::move(p));
  }
  const std::size_t added = pick(rng, 4);
  static const std::vector<std::string> newPackages{"a", "a.z", "x", "x.y"};
  for (std::size_t i = 0; i < added; ++i) {
    const std::string& pkg = newPackages[pick(rng, newPackages.size())];
    out.push_back({pkg, random_class(rng, pkg, fmt::format("N{}", i), maxMethods)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spans

inline SpanRecord make_span(std::uint64_t trace, std::uint64_t span, std::optional<std::uint64_t> parent,
                            std::int64_t startNs, std::int64_t endNs, std::string cls, std::string method,
                            std::optional<std::string> instance = std::nullopt,
                            std::string application = "app", std::string commit = hash_of(1)) {
  SpanRecord s;
  s.traceId = trace_id_of(trace);
  s.spanId = span_id_of(span);
  if (parent) s.parentSpanId = span_id_of(*parent);
  s.startNs = startNs;
  s.endNs = endNs;
  s.attrs = SpanAttrs{std::move(cls), std::move(method), std::move(instance)};
  s.application = std::move(application);
  s.commit = std::move(commit);
  return s;
}

/// Random forests: each trace is a tree of spans whose parent is an
/// earlier span of the same trace. Start times spread over `windows`
/// windows, with some spans pinned to window boundaries.
inline std::vector<SpanRecord> random_spans(Rng& rng, std::size_t count, std::int64_t windows,
                                            std::uint64_t idBase = 0) {
  static const std::vector<std::string> classes{"p.A", "p.B", "q.C", "q.D", "r.E"};
  static const std::vector<std::string> methods{"f", "g", "h"};
  std::vector<SpanRecord> out;
  out.reserve(count);
  std::uint64_t trace = idBase;
  std::size_t inTrace = 0;
  std::size_t traceStart = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (inTrace == 0 || chance(rng, 0.05)) {
      ++trace;
      inTrace = 0;
      traceStart = out.size();
    }
    std::optional<std::uint64_t> parent;
    if (inTrace > 0 && chance(rng, 0.9)) {
      parent = idBase + 1 + traceStart + pick(rng, inTrace);
    }
    std::int64_t start = 0;
    const std::int64_t w = static_cast<std::int64_t>(pick(rng, static_cast<std::size_t>(windows)));
    switch (pick(rng, 4)) {
      case 0: start = w * kWindowNs; break;
      case 1: start = w * kWindowNs + kWindowNs - 1; break;
      default: start = w * kWindowNs + static_cast<std::int64_t>(pick(rng, static_cast<std::size_t>(kWindowNs)));
    }
    std::optional<std::string> instance;
    const std::string& cls = classes[pick(rng, classes.size())];
    if (cls != "r.E" && chance(rng, 0.7)) instance = fmt::format("i{}", pick(rng, 6));
    out.push_back(make_span(trace, idBase + 1 + out.size(), parent, start,
                            start + static_cast<std::int64_t>(pick(rng, 1000)), cls,
                            methods[pick(rng, methods.size())], instance));
    ++inTrace;
  }
  return out;
}

}  // namespace codecity::testing
