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

#include "doctest.h"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "codecity/code_agent.hpp"
#include "codecity/error.hpp"
#include "codecity/structure_document.hpp"
#include "test_support.hpp"

using namespace codecity;
using codecity::testing::TempDir;
using codecity::testing::write_text;

namespace {

CommitRef ref_for(std::string app = "clinic") {
  return CommitRef{std::move(app), "main", codecity::testing::hash_of(1), std::nullopt};
}

const ClassUnit* find_class(const StructuralSnapshot& s, const std::string& fqn) {
  const ClassUnit* hit = nullptr;
  for (const auto& root : s.rootPackages) {
    for_each_class(root, [&](const ClassUnit& c) {
      if (c.fqn == fqn) hit = &c;
    });
  }
  return hit;
}

}  // namespace

TEST_SUITE("scan") {
  TEST_CASE("paths come back repo-relative and lexicographically sorted") {
    TempDir dir;
    write_text(dir.path() / "src/b/B.java", "class B {}");
    write_text(dir.path() / "src/A.java", "class A {}");
    write_text(dir.path() / "src/notes.txt", "x");
    CHECK(scan_source_tree(dir.path()) == std::vector<std::string>{"src/A.java", "src/b/B.java"});
  }

  TEST_CASE("an empty directory yields no paths") {
    TempDir dir;
    CHECK(scan_source_tree(dir.path()).empty());
  }

  TEST_CASE("the bundled corpus holds ten source files") {
    CHECK(scan_source_tree(codecity::testing::fixture_dir() / "corpus").size() == 10);
  }

  TEST_CASE("symlinked directories are not followed") {
    TempDir dir;
    write_text(dir.path() / "real/A.java", "class A {}");
    std::filesystem::create_directory_symlink(dir.path() / "real", dir.path() / "link");
    CHECK(scan_source_tree(dir.path()) == std::vector<std::string>{"real/A.java"});
  }

  TEST_CASE("a missing root is an io error") {
    TempDir dir;
    try {
      (void)scan_source_tree(dir.path() / "absent");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kIo);
    }
  }

  TEST_CASE("include globs") {
    CHECK(glob_match("**/*.java", "A.java"));
    CHECK(glob_match("**/*.java", "a/b/C.java"));
    CHECK_FALSE(glob_match("*.java", "a/C.java"));
    CHECK(glob_match("src/?.java", "src/A.java"));
    CHECK_FALSE(glob_match("src/?.java", "src/AB.java"));
  }
}

TEST_SUITE("parse") {
  TEST_CASE("a class with one method") {
    const auto unit = parse_compilation_unit("package p; public class A { void f(){} }", "A.java");
    CHECK(unit.packagePath == "p");
    REQUIRE(unit.topLevelTypes.size() == 1);
    const ClassUnit& a = unit.topLevelTypes[0];
    CHECK(a.name == "A");
    CHECK(a.fqn == "p.A");
    CHECK(a.kind == ClassKind::kClass);
    REQUIRE(a.methods.size() == 1);
    CHECK(signature_of(a.methods[0]) == "f():void");
    CHECK(unit.warnings.empty());
  }

  TEST_CASE("an interface extending another keeps the name for resolution") {
    auto unit = parse_compilation_unit("package p; interface I extends J {}", "I.java");
    REQUIRE(unit.topLevelTypes.size() == 1);
    CHECK(unit.topLevelTypes[0].kind == ClassKind::kInterface);
    CHECK(unit.topLevelTypes[0].superClass == std::optional<std::string>("J"));
    std::vector<CompilationUnit> units{unit};
    resolve_type_names(units);
    CHECK(units[0].unresolvedTypeNames.count("J") == 1);
  }

  TEST_CASE("an empty file yields no types and one warning") {
    const auto unit = parse_compilation_unit("", "Empty.java");
    CHECK(unit.topLevelTypes.empty());
    CHECK(unit.warnings.size() == 1);
  }

  TEST_CASE("kinds, modifiers, constructors and generics") {
    const auto unit = parse_compilation_unit(R"(package q;
import java.util.List;
public abstract class Shape<T extends Comparable<T>> implements Comparable<Shape<T>>, java.io.Serializable {
  protected Shape(final int sides) {}
  public static <R> List<R> map(List<? super T> in, java.util.function.Function<T, R> f) { return null; }
  abstract double area();
  enum Color { RED, GREEN; int code() { return 0; } }
}
)", "q/Shape.java");
    REQUIRE(unit.topLevelTypes.size() == 1);
    const ClassUnit& shape = unit.topLevelTypes[0];
    CHECK(shape.kind == ClassKind::kAbstract);
    CHECK(shape.interfaces.size() == 2);
    std::vector<std::string> sigs;
    for (const auto& m : shape.methods) sigs.push_back(signature_of(m));
    std::sort(sigs.begin(), sigs.end());
    CHECK(sigs == std::vector<std::string>{"<init>(int):void", "area():double",
                                           "map(List<?superT>,java.util.function.Function<T,R>):List<R>"});
    REQUIRE(shape.nestedClasses.size() == 1);
    CHECK(shape.nestedClasses[0].fqn == "q.Shape.Color");
    CHECK(shape.nestedClasses[0].kind == ClassKind::kEnum);
    CHECK(unit.warnings.empty());
  }

  TEST_CASE("an unsupported construct keeps the declared type name and warns") {
    const auto unit = parse_compilation_unit("package p;\nclass Broken extends A, B { void f() {} }\n",
                                             "Broken.java");
    REQUIRE(unit.topLevelTypes.size() == 1);
    CHECK(unit.topLevelTypes[0].name == "Broken");
    CHECK_FALSE(unit.warnings.empty());
  }

  TEST_CASE("garbage input never throws") {
    std::mt19937 rng(7);
    const std::string alphabet = "classinterfaceenum{}();<>.,@ \n/*\"'abcXYZ";
    for (int i = 0; i < 500; ++i) {
      std::string text;
      const int len = static_cast<int>(rng() % 200);
      for (int k = 0; k < len; ++k) text.push_back(alphabet[rng() % alphabet.size()]);
      CHECK_NOTHROW((void)parse_compilation_unit(text, "G.java"));
    }
  }
}

TEST_SUITE("loc") {
  TEST_CASE("one line of each kind") {
    CHECK(compute_loc("int x;\n\n// x\n", 1, 3) == LocMetrics{1, 1, 1});
  }

  TEST_CASE("a three-line block comment") {
    CHECK(compute_loc("/*\nx\n*/\n", 1, 3) == LocMetrics{0, 3, 0});
  }

  TEST_CASE("code before a trailing comment counts as code") {
    CHECK(compute_loc("int x; // c\n", 1, 1) == LocMetrics{1, 0, 0});
  }

  TEST_CASE("comment markers inside strings are code") {
    CHECK(compute_loc("String s = \"/*\";\nint y;\n", 1, 2) == LocMetrics{2, 0, 0});
  }

  TEST_CASE("the Owner fixture file") {
    // 15-line license block and one blank line above 40 hand-counted lines.
    const auto text = codecity::testing::read_text(codecity::testing::fixture_dir() /
                                                   "corpus/clinic/model/Owner.java");
    CHECK(count_lines(text) == 56);
    CHECK(compute_file_loc(text) == LocMetrics{28, 22, 6});
  }

  TEST_CASE("out-of-range requests are range errors") {
    for (auto [first, last] : {std::pair{0, 1}, std::pair{2, 1}, std::pair{1, 4}}) {
      try {
        (void)compute_loc("a\nb\nc\n", first, last);
        FAIL("expected an error");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kRange);
      }
    }
  }

  TEST_CASE("property: the three counts partition the physical lines") {
    std::mt19937 rng(11);
    const std::vector<std::string> pieces{"int a;", "// c", "/*", "*/", "  ", "\"s/*\"", "x /* y */ z",
                                          "'\\''", "\"\"\"", "\t", "}"};
    for (int i = 0; i < 300; ++i) {
      std::string text;
      const int lines = 1 + static_cast<int>(rng() % 30);
      for (int l = 0; l < lines; ++l) {
        const int parts = static_cast<int>(rng() % 3);
        for (int p = 0; p < parts; ++p) text += pieces[rng() % pieces.size()];
        text += '\n';
      }
      const auto n = count_lines(text);
      REQUIRE(n == lines);
      CHECK(compute_file_loc(text).total() == n);
      const auto a = 1 + static_cast<std::int64_t>(rng() % n);
      const auto b = a + static_cast<std::int64_t>(rng() % (n - a + 1));
      CHECK(compute_loc(text, a, b).total() == b - a + 1);
    }
  }
}

TEST_SUITE("snapshot") {
  TEST_CASE("two units in one package merge into one node") {
    std::vector<CompilationUnit> units{parse_compilation_unit("package p; class A {}", "p/A.java"),
                                       parse_compilation_unit("package p; class B {}", "p/B.java")};
    const auto s = build_snapshot(units, ref_for(), 0);
    REQUIRE(s.rootPackages.size() == 1);
    CHECK(s.rootPackages[0].name == "p");
    CHECK(s.rootPackages[0].classes.size() == 2);
  }

  TEST_CASE("supertypes resolve through single-type imports") {
    std::vector<CompilationUnit> units{
        parse_compilation_unit("package p; import q.B; class A extends B {}", "p/A.java"),
        parse_compilation_unit("package q; class B {}", "q/B.java")};
    const auto s = build_snapshot(units, ref_for(), 0);
    const ClassUnit* a = find_class(s, "p.A");
    REQUIRE(a);
    CHECK(a->superClass == std::optional<std::string>("q.B"));
  }

  TEST_CASE("unresolved supertypes stay verbatim") {
    std::vector<CompilationUnit> units{
        parse_compilation_unit("package p; class A extends External {}", "p/A.java")};
    resolve_type_names(units);
    CHECK(units[0].unresolvedTypeNames == std::set<std::string>{"External"});
    const auto s = build_snapshot(units, ref_for(), 0);
    CHECK(find_class(s, "p.A")->superClass == std::optional<std::string>("External"));
  }

  TEST_CASE("wildcard imports resolve only when exactly one package matches") {
    std::vector<CompilationUnit> one{
        parse_compilation_unit("package p; import q.*; class A extends B {}", "p/A.java"),
        parse_compilation_unit("package q; class B {}", "q/B.java")};
    CHECK(find_class(build_snapshot(one, ref_for(), 0), "p.A")->superClass ==
          std::optional<std::string>("q.B"));

    std::vector<CompilationUnit> two{
        parse_compilation_unit("package p; import q.*; import r.*; class A extends B {}", "p/A.java"),
        parse_compilation_unit("package q; class B {}", "q/B.java"),
        parse_compilation_unit("package r; class B {}", "r/B.java")};
    CHECK(find_class(build_snapshot(two, ref_for(), 0), "p.A")->superClass ==
          std::optional<std::string>("B"));
  }

  TEST_CASE("property: no resolvable name is left unresolved") {
    std::vector<CompilationUnit> units{
        parse_compilation_unit("package p; import q.B; class A extends B implements C, Z {}", "p/A.java"),
        parse_compilation_unit("package p; interface C {}", "p/C.java"),
        parse_compilation_unit("package q; class B {}", "q/B.java")};
    resolve_type_names(units);
    CHECK(units[0].unresolvedTypeNames == std::set<std::string>{"Z"});
  }

  TEST_CASE("duplicate fqns are a conflict naming both files") {
    std::vector<CompilationUnit> units{parse_compilation_unit("package p; class A {}", "one/A.java"),
                                       parse_compilation_unit("package p; class A {}", "two/A.java")};
    try {
      (void)build_snapshot(units, ref_for(), 0);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kSnapshotConflict);
      CHECK(std::string(e.what()).find("one/A.java") != std::string::npos);
      CHECK(std::string(e.what()).find("two/A.java") != std::string::npos);
    }
  }

  TEST_CASE("every class file is listed in files") {
    const auto s = analyze_source_tree(codecity::testing::fixture_dir() / "corpus", ref_for(), 0);
    std::set<std::string> files;
    for (const auto& f : s.files) files.insert(f.path);
    for (const auto& root : s.rootPackages) {
      for_each_class(root, [&](const ClassUnit& c) { CHECK(files.count(c.filePath) == 1); });
    }
  }
}

TEST_SUITE("document") {
  TEST_CASE("emission is deterministic and independent of insertion order") {
    auto s = analyze_source_tree(codecity::testing::fixture_dir() / "corpus", ref_for(), 1234);
    const std::string once = emit_snapshot_document(s);
    CHECK(emit_snapshot_document(s) == once);
    std::reverse(s.rootPackages.begin(), s.rootPackages.end());
    for (auto& p : s.rootPackages) {
      std::reverse(p.subpackages.begin(), p.subpackages.end());
      std::reverse(p.classes.begin(), p.classes.end());
    }
    std::reverse(s.files.begin(), s.files.end());
    CHECK(emit_snapshot_document(s) == once);
  }

  TEST_CASE("documents round-trip") {
    const auto s = analyze_source_tree(codecity::testing::fixture_dir() / "corpus", ref_for(), 99);
    const auto back = parse_structure_document(emit_snapshot_document(s));
    CHECK(back == s);
  }

  TEST_CASE("schema violations are rejected") {
    for (const char* doc : {"{}", "[]", "not json",
                            R"({"schema":"codecity-structure/2","application":"a"})"}) {
      try {
        (void)parse_structure_document(doc);
        FAIL("expected an error");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kSchema);
      }
    }
  }
}

TEST_SUITE("corpus") {
  CommitRef golden_ref() {
    return CommitRef{"clinic", "main", "0123456789abcdef0123456789abcdef01234567", std::nullopt};
  }

  TEST_CASE("hand-counted totals") {
    const auto s = analyze_source_tree(codecity::testing::fixture_dir() / "corpus", golden_ref(), 0);
    std::size_t packages = 0;
    std::map<ClassKind, int> kinds;
    int classes = 0, nested = 0, methods = 0;
    std::function<void(const PackageNode&)> walk = [&](const PackageNode& p) {
      ++packages;
      for (const auto& c : p.classes) {
        for_each_class(c, [&](const ClassUnit& k) {
          ++classes;
          ++kinds[k.kind];
          methods += static_cast<int>(k.methods.size());
        });
        nested += [&] {
          int n = -1;
          for_each_class(c, [&](const ClassUnit&) { ++n; });
          return n;
        }();
      }
      for (const auto& sub : p.subpackages) walk(sub);
    };
    for (const auto& root : s.rootPackages) walk(root);
    CHECK(s.files.size() == 10);
    CHECK(packages == 4);
    CHECK(classes == 12);
    CHECK(nested == 2);
    CHECK(kinds[ClassKind::kInterface] == 1);
    CHECK(kinds[ClassKind::kAbstract] == 1);
    CHECK(kinds[ClassKind::kEnum] == 1);
    CHECK(methods == 30);
    CHECK(s.warnings.empty());
  }

  TEST_CASE("the emitted document matches the golden file byte for byte") {
    const auto s = analyze_source_tree(codecity::testing::fixture_dir() / "corpus", golden_ref(),
                                       1'700'000'000'000);
    CHECK(emit_snapshot_document(s) ==
          codecity::testing::read_text(codecity::testing::fixture_dir() / "golden/clinic.structure.json"));
  }
}

TEST_SUITE("changed paths") {
  TEST_CASE("name-status lines") {
    CHECK(read_changed_paths("A\tsrc/X.java\nM\tsrc/Y.java") ==
          std::vector<ChangedPath>{{"src/X.java", ChangeKind::kAdded},
                                   {"src/Y.java", ChangeKind::kModified}});
    CHECK(read_changed_paths("").empty());
    CHECK(read_changed_paths("D\tREADME.md") ==
          std::vector<ChangedPath>{{"README.md", ChangeKind::kDeleted}});
  }

  TEST_CASE("malformed lines name their line number") {
    try {
      (void)read_changed_paths("A\tx.java\nbogus\n");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParse);
      CHECK(std::string(e.what()).find('2') != std::string::npos);
    }
  }
}
