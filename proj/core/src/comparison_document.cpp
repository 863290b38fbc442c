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

#include "codecity/comparison_document.hpp"

#include "json_util.hpp"

namespace codecity {
namespace {

using detail::Json;

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json commit_json(const CommitRef& ref) {
  return Json{{"application", ref.application},
              {"branch", ref.branch},
              {"commit", ref.commit},
              {"parentCommit", optional_json(ref.parentCommit)}};
}

Json metrics_json(const std::optional<EntityMetrics>& m) {
  if (!m) return nullptr;
  return Json{{"loc",
               {{"code", m->loc.codeLines},
                {"comment", m->loc.commentLines},
                {"blank", m->loc.blankLines}}},
              {"methodCount", m->methodCount}};
}

Json entity_json(const ComparedEntity& e) {
  Json children = Json::array();
  for (const auto& c : e.children) children.push_back(entity_json(c));
  return Json{{"fqn", e.fqn},
              {"name", e.name},
              {"kind", std::string(to_string(e.kind))},
              {"status", std::string(to_string(e.status))},
              {"origin", std::string(to_string(e.origin))},
              {"baseMetrics", metrics_json(e.baseMetrics)},
              {"targetMetrics", metrics_json(e.targetMetrics)},
              {"baseInstances", optional_json(e.baseInstances)},
              {"targetInstances", optional_json(e.targetInstances)},
              {"baseCalls", optional_json(e.baseCalls)},
              {"targetCalls", optional_json(e.targetCalls)},
              {"children", std::move(children)}};
}

Json edge_key_json(const EdgeKey& k) {
  return Json{{"callerClass", k.callerClass},
              {"callerMethod", k.callerMethod},
              {"calleeClass", k.calleeClass},
              {"calleeMethod", k.calleeMethod}};
}

Json model_json(const ComparisonModel& m) {
  Json entities = Json::array();
  for (const auto& e : m.entities) entities.push_back(entity_json(e));
  Json edges = Json::array();
  for (const auto& e : m.edges) {
    edges.push_back(Json{{"key", edge_key_json(e.key)},
                         {"status", std::string(to_string(e.status))},
                         {"baseCount", optional_json(e.baseCount)},
                         {"targetCount", optional_json(e.targetCount)}});
  }
  return Json{{"base", commit_json(m.base)},
              {"target", commit_json(m.target)},
              {"baseWindow", optional_json(m.baseWindow)},
              {"targetWindow", optional_json(m.targetWindow)},
              {"entities", std::move(entities)},
              {"edges", std::move(edges)}};
}

Json point_json(const Point3& p) { return Json::array({p.x, p.y, p.z}); }

Json layout_json(const CityLayout& l) {
  Json items = Json::array();
  for (const auto& i : l.items) {
    items.push_back(Json{{"fqn", i.fqn},
                         {"kind", std::string(to_string(i.entityKind))},
                         {"x", i.rect.x},
                         {"z", i.rect.z},
                         {"width", i.rect.width},
                         {"depth", i.rect.depth},
                         {"baseY", i.baseY},
                         {"height", i.height},
                         {"parent", i.parentFqn}});
  }
  Json anchors = Json::array();
  for (const auto& a : l.edgeAnchors) {
    anchors.push_back(Json{{"key", edge_key_json(a.edgeKey)},
                           {"from", point_json(a.from)},
                           {"to", point_json(a.to)},
                           {"weight", a.weight}});
  }
  return Json{{"items", std::move(items)}, {"edgeAnchors", std::move(anchors)},
              {"warnings", l.warnings}};
}

}  // namespace

std::string emit_commit_ref(const CommitRef& ref) { return detail::dump_json(commit_json(ref)); }

std::string emit_model_document(const ComparisonModel& model) {
  return detail::dump_json(model_json(model));
}

std::string emit_layout_document(const CityLayout& layout) {
  return detail::dump_json(layout_json(layout));
}

std::string emit_comparison_response(const ComparisonModel& model, const CityLayout& layout,
                                     const std::vector<std::string>& warnings) {
  return detail::dump_json(
      Json{{"model", model_json(model)}, {"layout", layout_json(layout)}, {"warnings", warnings}});
}

}  // namespace codecity
