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

#include "codecity/structure_document.hpp"

#include <set>

#include <fmt/core.h>

#include "json_util.hpp"

namespace codecity {
namespace {

using detail::Json;

Json loc_json(const LocMetrics& loc) {
  return Json{{"code", loc.codeLines}, {"comment", loc.commentLines}, {"blank", loc.blankLines}};
}

Json method_json(const MethodDecl& m) {
  return Json{{"name", m.name},
              {"params", m.paramTypes},
              {"returns", m.returnType},
              {"modifiers", m.modifiers},
              {"loc", loc_json(m.loc)}};
}

Json class_json(const ClassUnit& c) {
  Json methods = Json::array();
  for (const auto& m : c.methods) methods.push_back(method_json(m));
  Json nested = Json::array();
  for (const auto& n : c.nestedClasses) nested.push_back(class_json(n));
  return Json{{"name", c.name},
              {"fqn", c.fqn},
              {"kind", to_string(c.kind)},
              {"superClass", c.superClass ? Json(*c.superClass) : Json(nullptr)},
              {"interfaces", c.interfaces},
              {"filePath", c.filePath},
              {"loc", loc_json(c.loc)},
              {"methods", std::move(methods)},
              {"nested", std::move(nested)}};
}

Json package_json(const PackageNode& p) {
  Json subs = Json::array();
  for (const auto& s : p.subpackages) subs.push_back(package_json(s));
  Json classes = Json::array();
  for (const auto& c : p.classes) classes.push_back(class_json(c));
  return Json{{"name", p.name}, {"subpackages", std::move(subs)}, {"classes", std::move(classes)}};
}

LocMetrics parse_loc(const Json& obj, const std::string& where) {
  const Json& loc = detail::field(obj, "loc", where);
  LocMetrics m{detail::int_field(loc, "code", where + ".loc"),
               detail::int_field(loc, "comment", where + ".loc"),
               detail::int_field(loc, "blank", where + ".loc")};
  if (m.codeLines < 0 || m.commentLines < 0 || m.blankLines < 0) {
    detail::schema_error(where + ".loc", "line counts must be non-negative");
  }
  return m;
}

std::vector<std::string> parse_string_array(const Json& obj, std::string_view key,
                                            const std::string& where) {
  std::vector<std::string> out;
  for (const auto& v : detail::array_field(obj, key, where)) {
    if (!v.is_string()) detail::schema_error(where, fmt::format("'{}' must hold strings", key));
    out.push_back(v.get<std::string>());
  }
  return out;
}

ClassUnit parse_class(const Json& obj, const std::string& where) {
  ClassUnit c;
  c.name = detail::string_field(obj, "name", where);
  c.fqn = detail::string_field(obj, "fqn", where);
  if (!is_identifier(c.name)) detail::schema_error(where, "class name is not an identifier");
  if (c.fqn != c.name && !c.fqn.ends_with("." + c.name)) {
    detail::schema_error(where, "fqn does not end with the class name");
  }
  try {
    c.kind = class_kind_from_string(detail::string_field(obj, "kind", where));
  } catch (const Error& e) {
    detail::schema_error(where, e.what());
  }
  c.superClass = detail::nullable_string_field(obj, "superClass", where);
  c.interfaces = parse_string_array(obj, "interfaces", where);
  c.filePath = detail::string_field(obj, "filePath", where);
  c.loc = parse_loc(obj, where);
  const Json& methods = detail::array_field(obj, "methods", where);
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const std::string mw = fmt::format("{}.methods[{}]", where, i);
    MethodDecl m;
    m.name = detail::string_field(methods[i], "name", mw);
    m.paramTypes = parse_string_array(methods[i], "params", mw);
    m.returnType = detail::string_field(methods[i], "returns", mw);
    m.modifiers = parse_string_array(methods[i], "modifiers", mw);
    m.loc = parse_loc(methods[i], mw);
    c.methods.push_back(std::move(m));
  }
  const Json& nested = detail::array_field(obj, "nested", where);
  for (std::size_t i = 0; i < nested.size(); ++i) {
    c.nestedClasses.push_back(parse_class(nested[i], fmt::format("{}.nested[{}]", where, i)));
  }
  return c;
}

PackageNode parse_package(const Json& obj, const std::string& where) {
  PackageNode p;
  p.name = detail::string_field(obj, "name", where);
  const Json& subs = detail::array_field(obj, "subpackages", where);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    p.subpackages.push_back(parse_package(subs[i], fmt::format("{}.subpackages[{}]", where, i)));
  }
  const Json& classes = detail::array_field(obj, "classes", where);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    p.classes.push_back(parse_class(classes[i], fmt::format("{}.classes[{}]", where, i)));
  }
  return p;
}

}  // namespace

std::string emit_snapshot_document(const StructuralSnapshot& input) {
  StructuralSnapshot s = input;
  canonicalize_snapshot(s);

  Json files = Json::array();
  for (const auto& f : s.files) files.push_back(Json{{"path", f.path}, {"loc", loc_json(f.loc)}});
  Json packages = Json::array();
  for (const auto& p : s.rootPackages) packages.push_back(package_json(p));
  Json warnings = Json::array();
  for (const auto& w : s.warnings) warnings.push_back(Json{{"path", w.path}, {"reason", w.reason}});

  const CommitRef& ref = s.commitRef;
  Json doc{{"schema", std::string(kStructureSchema)},
           {"application", ref.application},
           {"commit", ref.commit},
           {"branch", ref.branch},
           {"parentCommit", ref.parentCommit ? Json(*ref.parentCommit) : Json(nullptr)},
           {"analyzedAtMs", s.analyzedAtMs},
           {"files", std::move(files)},
           {"packages", std::move(packages)},
           {"warnings", std::move(warnings)}};
  return detail::dump_json(doc, 2) + "\n";
}

StructuralSnapshot parse_structure_document(std::string_view text) {
  const Json doc = detail::parse_json(text, "structure document");
  detail::expect_schema(doc, kStructureSchema);

  StructuralSnapshot s;
  s.commitRef.application = detail::string_field(doc, "application", "document");
  s.commitRef.commit = detail::string_field(doc, "commit", "document");
  s.commitRef.branch = detail::string_field(doc, "branch", "document");
  s.commitRef.parentCommit = detail::nullable_string_field(doc, "parentCommit", "document");
  try {
    s.commitRef.validate();
  } catch (const Error& e) {
    detail::schema_error("document", e.what());
  }
  s.analyzedAtMs = detail::int_field(doc, "analyzedAtMs", "document");

  const Json& files = detail::array_field(doc, "files", "document");
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string where = fmt::format("files[{}]", i);
    s.files.push_back({detail::string_field(files[i], "path", where), parse_loc(files[i], where)});
  }
  const Json& packages = detail::array_field(doc, "packages", "document");
  for (std::size_t i = 0; i < packages.size(); ++i) {
    s.rootPackages.push_back(parse_package(packages[i], fmt::format("packages[{}]", i)));
  }
  const Json& warnings = detail::array_field(doc, "warnings", "document");
  for (std::size_t i = 0; i < warnings.size(); ++i) {
    const std::string where = fmt::format("warnings[{}]", i);
    s.warnings.push_back({detail::string_field(warnings[i], "path", where),
                          detail::string_field(warnings[i], "reason", where)});
  }

  std::set<std::string> fqns;
  std::set<std::string> file_paths;
  for (const auto& f : s.files) file_paths.insert(f.path);
  for (const auto& root : s.rootPackages) {
    for_each_class(root, [&](const ClassUnit& c) {
      if (!fqns.insert(c.fqn).second) {
        detail::schema_error("packages", fmt::format("duplicate fqn {}", c.fqn));
      }
      if (!file_paths.contains(c.filePath)) {
        detail::schema_error("packages",
                             fmt::format("class {} refers to unlisted file {}", c.fqn, c.filePath));
      }
    });
  }
  canonicalize_snapshot(s);
  return s;
}

bool same_structure(const StructuralSnapshot& a, const StructuralSnapshot& b) {
  return a.commitRef == b.commitRef && a.rootPackages == b.rootPackages && a.files == b.files &&
         a.warnings == b.warnings;
}

}  // namespace codecity
