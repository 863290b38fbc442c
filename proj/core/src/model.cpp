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

#include "codecity/model.hpp"

#include <algorithm>
#include <cctype>

namespace codecity {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidIdentifier: return "invalid-identifier";
    case ErrorCode::kRange: return "range";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kSnapshotConflict: return "snapshot-conflict";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kInvalidMode: return "invalid-mode";
    case ErrorCode::kCycle: return "cycle";
    case ErrorCode::kContractViolation: return "contract-violation";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kCredentials: return "credentials";
    case ErrorCode::kTransport: return "transport";
  }
  return "unknown";
}

bool is_commit_hash(std::string_view text) noexcept {
  return text.size() == 40 &&
         std::all_of(text.begin(), text.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

bool is_identifier(std::string_view text) noexcept {
  if (text.empty()) {
    return false;
  }
  auto ident_char = [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_' || c == '$' || c >= 0x80;
  };
  if (std::isdigit(static_cast<unsigned char>(text.front())) != 0) {
    return false;
  }
  return std::all_of(text.begin(), text.end(),
                     [&](char c) { return ident_char(static_cast<unsigned char>(c)); });
}

void validate_application_name(std::string_view name) {
  bool bad = name.empty() || name == "." || name == ".." ||
             std::any_of(name.begin(), name.end(), [](char c) {
               return c == '/' || c == '\\' ||
                      std::isspace(static_cast<unsigned char>(c)) != 0;
             });
  if (bad) {
    throw Error(ErrorCode::kInvalidArgument,
                "invalid application name '" + std::string(name) + "'");
  }
}

void CommitRef::validate() const {
  validate_application_name(application);
  if (branch.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "branch must not be empty");
  }
  if (!is_commit_hash(commit)) {
    throw Error(ErrorCode::kInvalidArgument,
                "commit is not a 40-char lowercase hex hash: '" + commit + "'");
  }
  if (parentCommit && !is_commit_hash(*parentCommit)) {
    throw Error(ErrorCode::kInvalidArgument,
                "parent commit is not a 40-char lowercase hex hash: '" +
                    *parentCommit + "'");
  }
}

std::string_view to_string(ClassKind kind) noexcept {
  switch (kind) {
    case ClassKind::kClass: return "class";
    case ClassKind::kAbstract: return "abstract";
    case ClassKind::kInterface: return "interface";
    case ClassKind::kEnum: return "enum";
  }
  return "class";
}

ClassKind class_kind_from_string(std::string_view text) {
  if (text == "class") return ClassKind::kClass;
  if (text == "abstract") return ClassKind::kAbstract;
  if (text == "interface") return ClassKind::kInterface;
  if (text == "enum") return ClassKind::kEnum;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown class kind '" + std::string(text) + "'");
}

std::string make_fqn(std::string_view packagePath,
                     const std::vector<std::string>& enclosing,
                     std::string_view name) {
  auto require = [](std::string_view part) {
    if (!is_identifier(part)) {
      throw Error(ErrorCode::kInvalidIdentifier,
                  "invalid identifier '" + std::string(part) + "'");
    }
  };
  require(name);

  std::string fqn;
  if (!packagePath.empty()) {
    std::size_t begin = 0;
    while (true) {
      auto dot = packagePath.find('.', begin);
      require(packagePath.substr(begin, dot - begin));
      if (dot == std::string_view::npos) {
        break;
      }
      begin = dot + 1;
    }
    fqn.append(packagePath);
  }
  for (const auto& outer : enclosing) {
    require(outer);
    if (!fqn.empty()) fqn.push_back('.');
    fqn.append(outer);
  }
  if (!fqn.empty()) fqn.push_back('.');
  fqn.append(name);
  return fqn;
}

std::string signature_of(const MethodDecl& method) {
  std::string sig = method.name;
  sig.push_back('(');
  for (std::size_t i = 0; i < method.paramTypes.size(); ++i) {
    if (i != 0) sig.push_back(',');
    sig.append(method.paramTypes[i]);
  }
  sig.append("):");
  sig.append(method.returnType);
  std::erase_if(sig, [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
  return sig;
}

void for_each_class(const ClassUnit& root,
                    const std::function<void(const ClassUnit&)>& visit) {
  visit(root);
  for (const auto& nested : root.nestedClasses) {
    for_each_class(nested, visit);
  }
}

void for_each_class(const PackageNode& root,
                    const std::function<void(const ClassUnit&)>& visit) {
  for (const auto& cls : root.classes) {
    for_each_class(cls, visit);
  }
  for (const auto& sub : root.subpackages) {
    for_each_class(sub, visit);
  }
}

}  // namespace codecity
