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

namespace codecity {

/// Gap kept between sibling footprints and between a district border and
/// its content.
inline constexpr double kDistrictPadding = 0.5;
inline constexpr double kSlabThickness = 0.1;

struct Rect {
  double x = 0;
  double z = 0;
  double width = 0;
  double depth = 0;

  friend bool operator==(const Rect&, const Rect&) = default;
};

struct Point3 {
  double x = 0;
  double y = 0;
  double z = 0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

struct LayoutItem {
  std::string fqn;
  EntityKind entityKind = EntityKind::kPackage;
  Rect rect;
  double baseY = 0;
  double height = 0;
  std::string parentFqn;  // enclosing district, empty at ground level

  friend bool operator==(const LayoutItem&, const LayoutItem&) = default;
};

struct EdgeAnchor {
  EdgeKey edgeKey;
  Point3 from;
  Point3 to;
  double weight = 0;

  friend bool operator==(const EdgeAnchor&, const EdgeAnchor&) = default;
};

struct CityLayout {
  std::vector<LayoutItem> items;  // parents before children
  std::vector<EdgeAnchor> edgeAnchors;
  std::vector<std::string> warnings;

  friend bool operator==(const CityLayout&, const CityLayout&) = default;
};

struct BuildingSize {
  double footprintSide = 0;
  double height = 0;
};

/// Footprint grows with the larger method count of the two commits; height
/// with the larger instance count (method count when there is no runtime
/// data at all).
BuildingSize building_dimensions(const ComparedEntity& cls);

struct DistrictChild {
  std::string fqn;
  double width = 0;
  double depth = 0;
};

struct Placement {
  std::string fqn;
  double x = 0;  // relative to the district's corner
  double z = 0;
};

struct DistrictLayout {
  double width = 0;
  double depth = 0;
  std::vector<Placement> placements;  // in packing order
};

/// Greedy shelf packing of the children into a district. Children are
/// placed in (area desc, fqn asc) order, left to right, opening a new shelf
/// when the strip width would be exceeded.
DistrictLayout layout_district(std::vector<DistrictChild> children);

/// Nested districts for packages, buildings for classes (nested classes
/// share their outer class's district) and roof-to-roof anchors for edges.
/// Edges with an endpoint missing from the model are dropped with a
/// warning.
CityLayout layout_city(const ComparisonModel& model);

}  // namespace codecity
