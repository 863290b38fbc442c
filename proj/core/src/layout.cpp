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

#include "codecity/layout.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/core.h>

namespace codecity {

BuildingSize building_dimensions(const ComparedEntity& cls) {
  std::int64_t methods = 0;
  if (cls.baseMetrics) methods = std::max(methods, cls.baseMetrics->methodCount);
  if (cls.targetMetrics) methods = std::max(methods, cls.targetMetrics->methodCount);

  std::int64_t instances = methods;
  if (cls.baseInstances || cls.targetInstances) {
    instances = std::max({cls.baseInstances.value_or(0), cls.targetInstances.value_or(0),
                          std::int64_t{0}});
  }
  return BuildingSize{
      1.0 + 0.5 * std::ceil(std::sqrt(static_cast<double>(methods))),
      0.5 + std::log2(1.0 + static_cast<double>(instances)),
  };
}

DistrictLayout layout_district(std::vector<DistrictChild> children) {
  std::sort(children.begin(), children.end(), [](const DistrictChild& a, const DistrictChild& b) {
    const double area_a = a.width * a.depth;
    const double area_b = b.width * b.depth;
    if (area_a != area_b) return area_a > area_b;
    return a.fqn < b.fqn;
  });

  double padded_area = 0;
  for (const auto& c : children) {
    padded_area += (c.width + kDistrictPadding) * (c.depth + kDistrictPadding);
  }
  const double strip = std::ceil(std::sqrt(padded_area));

  DistrictLayout out;
  double cursor_x = 0;
  double shelf_z = 0;
  double shelf_depth = 0;
  double max_x = 0;
  double max_z = 0;
  for (const auto& c : children) {
    if (cursor_x > 0 && cursor_x + c.width > strip) {
      shelf_z += shelf_depth + kDistrictPadding;
      cursor_x = 0;
      shelf_depth = 0;
    }
    Placement p{c.fqn, kDistrictPadding + cursor_x, kDistrictPadding + shelf_z};
    max_x = std::max(max_x, p.x + c.width);
    max_z = std::max(max_z, p.z + c.depth);
    cursor_x += c.width + kDistrictPadding;
    shelf_depth = std::max(shelf_depth, c.depth);
    out.placements.push_back(std::move(p));
  }
  out.width = children.empty() ? 2 * kDistrictPadding : max_x + kDistrictPadding;
  out.depth = children.empty() ? 2 * kDistrictPadding : max_z + kDistrictPadding;
  return out;
}

namespace {

// Measured element before absolute placement. Children are keyed by kind
// prefix plus fqn since a package and a class may share a dotted name.
struct Block {
  std::string fqn;
  EntityKind kind = EntityKind::kPackage;
  double width = 0;
  double depth = 0;
  double height = 0;
  DistrictLayout district;
  std::map<std::string, Block> children;
};

void collect_buildings(const ComparedEntity& cls, std::map<std::string, Block>& out) {
  const BuildingSize size = building_dimensions(cls);
  Block b;
  b.fqn = cls.fqn;
  b.kind = EntityKind::kClass;
  b.width = b.depth = size.footprintSide;
  b.height = size.height;
  out.emplace("c:" + cls.fqn, std::move(b));
  for (const auto& child : cls.children) {
    if (child.kind == EntityKind::kClass) collect_buildings(child, out);
  }
}

Block measure_district(const std::string& fqn, const std::vector<ComparedEntity>& members);

void collect_members(const std::vector<ComparedEntity>& members, std::map<std::string, Block>& out) {
  for (const auto& m : members) {
    if (m.kind == EntityKind::kPackage) {
      out.emplace("p:" + m.fqn, measure_district(m.fqn, m.children));
    } else if (m.kind == EntityKind::kClass) {
      collect_buildings(m, out);
    }
  }
}

Block measure_district(const std::string& fqn, const std::vector<ComparedEntity>& members) {
  Block d;
  d.fqn = fqn;
  d.kind = EntityKind::kPackage;
  d.height = kSlabThickness;
  collect_members(members, d.children);
  std::vector<DistrictChild> sizes;
  sizes.reserve(d.children.size());
  for (const auto& [child_fqn, child] : d.children) {
    sizes.push_back({child_fqn, child.width, child.depth});
  }
  d.district = layout_district(std::move(sizes));
  d.width = d.district.width;
  d.depth = d.district.depth;
  return d;
}

void place(const Block& district, double x, double z, double slab_top, const std::string& parent,
           CityLayout& out) {
  for (const auto& p : district.district.placements) {
    const Block& child = district.children.at(p.fqn);
    LayoutItem item;
    item.fqn = child.fqn;
    item.entityKind = child.kind;
    item.rect = Rect{x + p.x, z + p.z, child.width, child.depth};
    item.baseY = slab_top;
    item.height = child.height;
    item.parentFqn = parent;
    out.items.push_back(item);
    if (child.kind == EntityKind::kPackage) {
      place(child, item.rect.x, item.rect.z, slab_top + kSlabThickness, child.fqn, out);
    }
  }
}

std::string describe(const EdgeKey& k) {
  return fmt::format("{}.{} -> {}.{}", k.callerClass, k.callerMethod, k.calleeClass, k.calleeMethod);
}

}  // namespace

CityLayout layout_city(const ComparisonModel& model) {
  CityLayout layout;
  if (model.entities.empty() && model.edges.empty()) return layout;

  // The ground is an unnamed district whose own rectangle is not emitted.
  const Block ground = measure_district("", model.entities);
  place(ground, -kDistrictPadding, -kDistrictPadding, 0.0, "", layout);

  std::map<std::string, const LayoutItem*> buildings;
  for (const auto& item : layout.items) {
    if (item.entityKind == EntityKind::kClass) buildings.emplace(item.fqn, &item);
  }
  auto roof = [](const LayoutItem& b) {
    return Point3{b.rect.x + b.rect.width / 2, b.baseY + b.height, b.rect.z + b.rect.depth / 2};
  };
  for (const auto& edge : model.edges) {
    auto from = buildings.find(edge.key.callerClass);
    auto to = buildings.find(edge.key.calleeClass);
    if (from == buildings.end() || to == buildings.end()) {
      const std::string& missing =
          from == buildings.end() ? edge.key.callerClass : edge.key.calleeClass;
      layout.warnings.push_back(
          fmt::format("edge {} dropped: class {} is not in the model", describe(edge.key), missing));
      continue;
    }
    const double total =
        static_cast<double>(edge.baseCount.value_or(0) + edge.targetCount.value_or(0));
    layout.edgeAnchors.push_back(
        EdgeAnchor{edge.key, roof(*from->second), roof(*to->second), std::log2(1.0 + total)});
  }
  return layout;
}

}  // namespace codecity
