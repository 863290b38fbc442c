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

#include "codecity/comparison.hpp"

#include <algorithm>
#include <set>

#include <fmt/core.h>

namespace codecity {
namespace {

struct FlatItem {
  std::string name;
  std::optional<EntityKey> parent;
  const ClassUnit* cls = nullptr;
  const MethodDecl* method = nullptr;
};

using FlatMap = std::map<EntityKey, FlatItem>;

std::string method_fqn(const std::string& classFqn, std::string_view member) {
  std::string out = classFqn;
  out.push_back(kMethodSeparator);
  out.append(member);
  return out;
}

void flatten_class(const ClassUnit& cls, const std::optional<EntityKey>& parent, FlatMap& out) {
  EntityKey key{EntityKind::kClass, cls.fqn};
  out[key] = FlatItem{cls.name, parent, &cls, nullptr};
  for (const auto& m : cls.methods) {
    std::string sig = signature_of(m);
    EntityKey method_key{EntityKind::kMethod, method_fqn(cls.fqn, sig)};
    out[std::move(method_key)] = FlatItem{std::move(sig), key, nullptr, &m};
  }
  for (const auto& nested : cls.nestedClasses) flatten_class(nested, key, out);
}

void flatten_package(const PackageNode& pkg, const std::string& prefix,
                     const std::optional<EntityKey>& parent, FlatMap& out) {
  // The unnamed root holds default-package classes and has no entity.
  if (pkg.name.empty() && prefix.empty()) {
    for (const auto& cls : pkg.classes) flatten_class(cls, std::nullopt, out);
    for (const auto& sub : pkg.subpackages) flatten_package(sub, "", std::nullopt, out);
    return;
  }
  const std::string path = prefix.empty() ? pkg.name : prefix + "." + pkg.name;
  EntityKey key{EntityKind::kPackage, path};
  out[key] = FlatItem{pkg.name, parent, nullptr, nullptr};
  for (const auto& cls : pkg.classes) flatten_class(cls, key, out);
  for (const auto& sub : pkg.subpackages) flatten_package(sub, path, key, out);
}

FlatMap flatten(const StructuralSnapshot& s) {
  FlatMap out;
  for (const auto& root : s.rootPackages) flatten_package(root, "", std::nullopt, out);
  return out;
}

EntityMetrics class_metrics(const ClassUnit& c) {
  return EntityMetrics{c.loc, static_cast<std::int64_t>(c.methods.size())};
}

ChangeStatus presence_status(bool in_base, bool in_target) {
  if (in_base && in_target) return ChangeStatus::kUnchanged;
  return in_target ? ChangeStatus::kAdded : ChangeStatus::kDeleted;
}

int kind_rank(EntityKind k) {
  switch (k) {
    case EntityKind::kPackage: return 0;
    case EntityKind::kClass: return 1;
    case EntityKind::kMethod: return 2;
  }
  return 3;
}

bool entity_before(const ComparedEntity& a, const ComparedEntity& b) {
  return std::make_pair(kind_rank(a.kind), std::string_view(a.fqn)) <
         std::make_pair(kind_rank(b.kind), std::string_view(b.fqn));
}

std::string method_simple_name(std::string_view signature) {
  return std::string(signature.substr(0, signature.find('(')));
}

}  // namespace

std::string_view to_string(ChangeStatus status) noexcept {
  switch (status) {
    case ChangeStatus::kAdded: return "added";
    case ChangeStatus::kDeleted: return "deleted";
    case ChangeStatus::kModified: return "modified";
    case ChangeStatus::kUnchanged: return "unchanged";
  }
  return "unchanged";
}

std::string_view to_string(Origin origin) noexcept {
  switch (origin) {
    case Origin::kStatic: return "static";
    case Origin::kDynamic: return "dynamic";
    case Origin::kBoth: return "both";
  }
  return "static";
}

std::string_view to_string(EntityKind kind) noexcept {
  switch (kind) {
    case EntityKind::kPackage: return "package";
    case EntityKind::kClass: return "class";
    case EntityKind::kMethod: return "method";
  }
  return "package";
}

void FilterMode::validate() const {
  if (!includeStatic && !includeDynamic) {
    throw Error(ErrorCode::kInvalidMode, "filter excludes both static and dynamic data");
  }
}

ChangeStatus classify_class(const ClassUnit* base, const ClassUnit* target) {
  if (base == nullptr && target == nullptr) {
    throw Error(ErrorCode::kContractViolation, "classify_class needs at least one side");
  }
  if (base == nullptr || target == nullptr) return presence_status(base != nullptr, target != nullptr);

  auto interface_set = [](const ClassUnit& c) {
    return std::set<std::string>(c.interfaces.begin(), c.interfaces.end());
  };
  auto signature_set = [](const ClassUnit& c) {
    std::set<std::string> out;
    for (const auto& m : c.methods) out.insert(signature_of(m));
    return out;
  };
  const bool modified = base->kind != target->kind || base->superClass != target->superClass ||
                        interface_set(*base) != interface_set(*target) ||
                        signature_set(*base) != signature_set(*target) ||
                        base->loc.codeLines != target->loc.codeLines;
  return modified ? ChangeStatus::kModified : ChangeStatus::kUnchanged;
}

ChangeStatus classify_method(const MethodDecl* base, const MethodDecl* target) {
  if (base == nullptr && target == nullptr) {
    throw Error(ErrorCode::kContractViolation, "classify_method needs at least one side");
  }
  if (base == nullptr || target == nullptr) return presence_status(base != nullptr, target != nullptr);
  auto modifier_set = [](const MethodDecl& m) {
    return std::set<std::string>(m.modifiers.begin(), m.modifiers.end());
  };
  const bool modified = modifier_set(*base) != modifier_set(*target) ||
                        base->loc.codeLines != target->loc.codeLines;
  return modified ? ChangeStatus::kModified : ChangeStatus::kUnchanged;
}

StructuralDiff diff_structures(const StructuralSnapshot& base, const StructuralSnapshot& target) {
  if (base.commitRef.application != target.commitRef.application) {
    throw Error(ErrorCode::kContractViolation,
                fmt::format("cannot compare snapshots of '{}' and '{}'",
                            base.commitRef.application, target.commitRef.application));
  }
  const FlatMap lhs = flatten(base);
  const FlatMap rhs = flatten(target);

  StructuralDiff diff;
  auto add_side = [&](const FlatMap& side) {
    for (const auto& [key, item] : side) {
      auto& entry = diff[key];
      entry.name = item.name;
      if (!entry.parent) entry.parent = item.parent;
    }
  };
  add_side(rhs);
  add_side(lhs);

  std::vector<const EntityKey*> packages;
  for (auto& [key, entry] : diff) {
    auto b = lhs.find(key);
    auto t = rhs.find(key);
    const FlatItem* bi = b == lhs.end() ? nullptr : &b->second;
    const FlatItem* ti = t == rhs.end() ? nullptr : &t->second;
    switch (key.kind) {
      case EntityKind::kClass:
        entry.status = classify_class(bi ? bi->cls : nullptr, ti ? ti->cls : nullptr);
        if (bi) entry.baseMetrics = class_metrics(*bi->cls);
        if (ti) entry.targetMetrics = class_metrics(*ti->cls);
        break;
      case EntityKind::kMethod:
        entry.status = classify_method(bi ? bi->method : nullptr, ti ? ti->method : nullptr);
        if (bi) entry.baseMetrics = EntityMetrics{bi->method->loc, 0};
        if (ti) entry.targetMetrics = EntityMetrics{ti->method->loc, 0};
        break;
      case EntityKind::kPackage:
        entry.status = presence_status(bi != nullptr, ti != nullptr);
        packages.push_back(&key);
        break;
    }
  }

  // A package is modified when any descendant, at any depth, changed.
  std::set<EntityKey> dirty;
  for (const auto& [key, entry] : diff) {
    if (entry.status == ChangeStatus::kUnchanged) continue;
    for (auto parent = entry.parent; parent && dirty.insert(*parent).second;
         parent = diff.at(*parent).parent) {
    }
  }
  for (const EntityKey* key : packages) {
    auto& entry = diff[*key];
    if (entry.status == ChangeStatus::kUnchanged && dirty.count(*key)) {
      entry.status = ChangeStatus::kModified;
    }
  }
  return diff;
}

RuntimeDiff diff_runtime(const RuntimeSnapshot* base, const RuntimeSnapshot* target) {
  if (base == nullptr && target == nullptr) {
    throw Error(ErrorCode::kContractViolation, "diff_runtime needs at least one side");
  }
  RuntimeDiff diff;
  if (base != nullptr) {
    for (const auto& [key, count] : base->edges) {
      auto& edge = diff.edges[key];
      edge.key = key;
      edge.baseCount = count;
    }
    for (const auto& [cls, n] : base->classInstances) diff.classInstances[cls].base = n;
    for (const auto& [key, n] : base->methodCalls) diff.methodCalls[key].base = n;
  }
  if (target != nullptr) {
    for (const auto& [key, count] : target->edges) {
      auto& edge = diff.edges[key];
      edge.key = key;
      edge.targetCount = count;
    }
    for (const auto& [cls, n] : target->classInstances) diff.classInstances[cls].target = n;
    for (const auto& [key, n] : target->methodCalls) diff.methodCalls[key].target = n;
  }
  for (auto& [key, edge] : diff.edges) {
    edge.status = presence_status(edge.baseCount.has_value(), edge.targetCount.has_value());
  }
  return diff;
}

namespace {

struct MergeNode {
  ComparedEntity entity;
  std::optional<EntityKey> parent;
  bool structural = false;
  bool staticBase = false;
  bool staticTarget = false;
  bool runtimeBase = false;
  bool runtimeTarget = false;
};

class ModelBuilder {
 public:
  void add_structural(const StructuralDiff& diff) {
    for (const auto& [key, entry] : diff) {
      MergeNode node;
      node.entity.fqn = key.fqn;
      node.entity.name = entry.name;
      node.entity.kind = key.kind;
      node.entity.status = entry.status;
      node.entity.origin = Origin::kStatic;
      node.entity.baseMetrics = entry.baseMetrics;
      node.entity.targetMetrics = entry.targetMetrics;
      node.parent = entry.parent;
      node.structural = true;
      node.staticBase = entry.status != ChangeStatus::kAdded;
      node.staticTarget = entry.status != ChangeStatus::kDeleted;
      nodes_.emplace(key, std::move(node));
    }
  }

  void add_runtime(const RuntimeDiff& diff) {
    for (const auto& [cls, counts] : diff.classInstances) {
      EntityKey key{EntityKind::kClass, cls};
      MergeNode& node = ensure_dynamic(key);
      node.entity.baseInstances = counts.base;
      node.entity.targetInstances = counts.target;
      mark_runtime(key, counts.base.has_value(), counts.target.has_value());
    }
    std::map<EntityKey, std::vector<EntityKey>> methods_by_class;
    for (const auto& [key, node] : nodes_) {
      if (key.kind == EntityKind::kMethod && node.parent) {
        methods_by_class[*node.parent].push_back(key);
      }
    }
    for (const auto& [mk, calls] : diff.methodCalls) {
      EntityKey cls_key{EntityKind::kClass, mk.className};
      ensure_dynamic(cls_key);
      std::vector<EntityKey> matches;
      for (const auto& method_key : methods_by_class[cls_key]) {
        if (method_simple_name(nodes_.at(method_key).entity.name) == mk.method) {
          matches.push_back(method_key);
        }
      }
      if (matches.empty()) {
        EntityKey key{EntityKind::kMethod, method_fqn(mk.className, mk.method)};
        MergeNode& node = nodes_[key];
        node.entity.fqn = key.fqn;
        node.entity.name = mk.method;
        node.entity.kind = EntityKind::kMethod;
        node.parent = cls_key;
        matches.push_back(key);
      }
      for (const auto& key : matches) {
        MergeNode& node = nodes_.at(key);
        node.entity.baseCalls = calls.base;
        node.entity.targetCalls = calls.target;
        mark_runtime(key, calls.base.has_value(), calls.target.has_value());
      }
    }
  }

  ComparisonModel build(const ComparisonInputs& inputs, const RuntimeDiff* runtime) {
    settle_origins_and_statuses();

    std::map<EntityKey, std::vector<EntityKey>> children;
    std::vector<EntityKey> roots;
    for (const auto& [key, node] : nodes_) {
      if (node.parent) {
        children[*node.parent].push_back(key);
      } else {
        roots.push_back(key);
      }
    }
    ComparisonModel model;
    model.base = inputs.base;
    model.target = inputs.target;
    model.baseWindow = inputs.baseWindow;
    model.targetWindow = inputs.targetWindow;
    for (const auto& key : roots) model.entities.push_back(assemble(key, children));
    std::sort(model.entities.begin(), model.entities.end(), entity_before);
    if (runtime != nullptr) {
      for (const auto& [key, edge] : runtime->edges) model.edges.push_back(edge);
    }
    return model;
  }

 private:
  // Returns the node for `key`, creating it (and any missing ancestors) as
  // a runtime-only entity.
  MergeNode& ensure_dynamic(const EntityKey& key) {
    auto it = nodes_.find(key);
    if (it != nodes_.end()) return it->second;

    MergeNode node;
    node.entity.fqn = key.fqn;
    node.entity.kind = key.kind;
    const auto dot = key.fqn.rfind('.');
    node.entity.name = dot == std::string::npos ? key.fqn : key.fqn.substr(dot + 1);
    if (dot != std::string::npos) {
      const std::string prefix = key.fqn.substr(0, dot);
      EntityKey enclosing{EntityKind::kClass, prefix};
      if (key.kind == EntityKind::kClass && nodes_.contains(enclosing)) {
        node.parent = enclosing;
      } else {
        EntityKey pkg{EntityKind::kPackage, prefix};
        ensure_dynamic(pkg);
        node.parent = pkg;
      }
    }
    return nodes_.emplace(key, std::move(node)).first->second;
  }

  void mark_runtime(const EntityKey& key, bool base, bool target) {
    std::optional<EntityKey> cursor = key;
    while (cursor) {
      MergeNode& node = nodes_.at(*cursor);
      node.runtimeBase = node.runtimeBase || base;
      node.runtimeTarget = node.runtimeTarget || target;
      cursor = node.parent;
    }
  }

  void settle_origins_and_statuses() {
    for (auto& [key, node] : nodes_) {
      const bool runtime = node.runtimeBase || node.runtimeTarget;
      node.entity.origin = !node.structural ? Origin::kDynamic
                           : runtime        ? Origin::kBoth
                                            : Origin::kStatic;
      if (key.kind == EntityKind::kPackage) {
        node.entity.status = presence_status(node.staticBase || node.runtimeBase,
                                             node.staticTarget || node.runtimeTarget);
      } else if (!node.structural) {
        node.entity.status = presence_status(node.runtimeBase, node.runtimeTarget);
      }
    }
    // A package is modified when any descendant, at any depth, changed.
    std::set<EntityKey> dirty;
    for (const auto& [key, node] : nodes_) {
      if (node.entity.status == ChangeStatus::kUnchanged) continue;
      for (auto parent = node.parent; parent && dirty.insert(*parent).second;
           parent = nodes_.at(*parent).parent) {
      }
    }
    for (auto& [key, node] : nodes_) {
      if (key.kind == EntityKind::kPackage && node.entity.status == ChangeStatus::kUnchanged &&
          dirty.count(key)) {
        node.entity.status = ChangeStatus::kModified;
      }
    }
  }

  ComparedEntity assemble(const EntityKey& key,
                          const std::map<EntityKey, std::vector<EntityKey>>& children) const {
    ComparedEntity entity = nodes_.at(key).entity;
    if (auto it = children.find(key); it != children.end()) {
      for (const auto& child : it->second) entity.children.push_back(assemble(child, children));
      std::sort(entity.children.begin(), entity.children.end(), entity_before);
    }
    return entity;
  }

  std::map<EntityKey, MergeNode> nodes_;
};

std::optional<ComparedEntity> filter_entity(const ComparedEntity& e, const FilterMode& mode) {
  if (!mode.includeStatic && e.origin == Origin::kStatic) return std::nullopt;
  if (!mode.includeDynamic && e.origin == Origin::kDynamic) return std::nullopt;

  ComparedEntity out = e;
  out.children.clear();
  if (!mode.includeDynamic) {
    out.baseInstances.reset();
    out.targetInstances.reset();
    out.baseCalls.reset();
    out.targetCalls.reset();
  }
  for (const auto& child : e.children) {
    if (auto kept = filter_entity(child, mode)) out.children.push_back(std::move(*kept));
  }
  if (mode.diffOnly && out.status == ChangeStatus::kUnchanged && out.children.empty()) {
    return std::nullopt;
  }
  return out;
}

void visit_entity(const ComparedEntity& e, const std::function<void(const ComparedEntity&)>& visit) {
  visit(e);
  for (const auto& child : e.children) visit_entity(child, visit);
}

}  // namespace

ComparisonModel merge_comparison(const StructuralDiff& structure, const RuntimeDiff* runtime,
                                 const ComparisonInputs& inputs) {
  ModelBuilder builder;
  builder.add_structural(structure);
  if (runtime != nullptr) builder.add_runtime(*runtime);
  return builder.build(inputs, runtime);
}

ComparisonModel apply_filter(const ComparisonModel& model, const FilterMode& mode) {
  mode.validate();
  ComparisonModel out;
  out.base = model.base;
  out.target = model.target;
  out.baseWindow = model.baseWindow;
  out.targetWindow = model.targetWindow;
  for (const auto& root : model.entities) {
    if (auto kept = filter_entity(root, mode)) out.entities.push_back(std::move(*kept));
  }
  if (mode.includeDynamic) {
    for (const auto& edge : model.edges) {
      if (!mode.diffOnly || edge.status != ChangeStatus::kUnchanged) out.edges.push_back(edge);
    }
  }
  return out;
}

void for_each_entity(const ComparisonModel& model,
                     const std::function<void(const ComparedEntity&)>& visit) {
  for (const auto& root : model.entities) visit_entity(root, visit);
}

}  // namespace codecity
