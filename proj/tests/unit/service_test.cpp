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

#include <atomic>
#include <sstream>
#include <thread>

#include "codecity/comparison_document.hpp"
#include "codecity/error.hpp"
#include "codecity/file_store.hpp"
#include "codecity/http_client.hpp"
#include "codecity/review_service.hpp"
#include "codecity/structure_document.hpp"
#include "json.hpp"
#include "generators.hpp"
#include "live_service.hpp"
#include "scenario.hpp"

using namespace codecity;
using namespace codecity::testing;
using nlohmann::json;

namespace {

std::string shop_structure(const std::string& tree, const std::string& commit) {
  return emit_snapshot_document(analyze_source_tree(scenario_dir() / tree, shop_ref(commit), 42));
}

std::string stamped_spans(const std::string& commit, const std::string& fixture) {
  CiContext ctx{"shop", commit, "main", std::nullopt, ""};
  return replay_batches(ctx, read_text(scenario_dir() / fixture), 1.0).at(0);
}

template <typename Fn>
ErrorCode error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

struct TickingClock {
  std::shared_ptr<std::int64_t> now = std::make_shared<std::int64_t>(1000);
  std::int64_t operator()() const { return *now; }
};

}  // namespace

TEST_SUITE("file store") {
  TEST_CASE("structures are stored once and survive a restart") {
    TempDir dir;
    const auto snapshot = parse_structure_document(shop_structure("base", kShopBase));
    {
      FileStore store(dir.path());
      CHECK(store.put_structure(snapshot, 5) == FileStore::PutResult::kStored);
      CHECK(store.put_structure(snapshot, 6) == FileStore::PutResult::kAlreadyPresent);
    }
    FileStore reopened(dir.path());
    REQUIRE(reopened.structure("shop", kShopBase));
    CHECK(same_structure(*reopened.structure("shop", kShopBase), snapshot));
    REQUIRE(reopened.commits("shop").size() == 1);
    CHECK(reopened.commits("shop")[0].receivedAtMs == 5);
  }

  TEST_CASE("a different structure for a stored commit conflicts") {
    TempDir dir;
    FileStore store(dir.path());
    auto snapshot = parse_structure_document(shop_structure("base", kShopBase));
    store.put_structure(snapshot, 1);
    auto altered = snapshot;
    altered.files.pop_back();
    CHECK(error_of([&] { store.put_structure(altered, 2); }) == ErrorCode::kConflict);
    CHECK(same_structure(*store.structure("shop", kShopBase), snapshot));
  }

  TEST_CASE("a re-analysis at a later time is idempotent") {
    TempDir dir;
    FileStore store(dir.path());
    auto snapshot = parse_structure_document(shop_structure("base", kShopBase));
    store.put_structure(snapshot, 1);
    snapshot.analyzedAtMs += 1000;
    CHECK(store.put_structure(snapshot, 2) == FileStore::PutResult::kAlreadyPresent);
  }

  TEST_CASE("spans survive a restart without duplicates") {
    TempDir dir;
    const auto doc = parse_spans_document(stamped_spans(kShopBase, "base-window.spans.json"));
    {
      FileStore store(dir.path());
      store.ingest_spans(doc.spans);
      store.ingest_spans(doc.spans);
    }
    FileStore reopened(dir.path());
    CHECK(reopened.spans().size("shop", kShopBase) == doc.spans.size());
    CHECK(reopened.spans().windows("shop", kShopBase) == std::vector<std::int64_t>{kShopBaseWindow});
  }
}

TEST_SUITE("review service") {
  TEST_CASE("listing, latest commit and windows") {
    TempDir dir;
    TickingClock clock;
    ReviewService service(dir.path(), clock);
    CHECK(error_of([&] { (void)service.latest_commit("shop"); }) == ErrorCode::kNotFound);

    CHECK(service.store_structure(shop_structure("base", kShopBase)).created);
    CHECK(service.latest_commit("shop").commit == kShopBase);
    *clock.now = 2000;
    service.store_structure(shop_structure("target", kShopTarget));
    CHECK(service.latest_commit("shop").commit == kShopTarget);
    CHECK_FALSE(service.store_structure(shop_structure("base", kShopBase)).created);
    CHECK(service.latest_commit("shop").commit == kShopTarget);

    CHECK(service.applications() == std::vector<std::string>{"shop"});
    service.ingest_spans(stamped_spans(kShopTarget, "target-window.spans.json"));
    const auto commits = service.commits("shop");
    REQUIRE(commits.size() == 2);
    CHECK(commits[0].commit == kShopBase);
    CHECK_FALSE(commits[0].hasRuntime);
    CHECK(commits[1].hasRuntime);
    CHECK(service.windows("shop", kShopTarget) == std::vector<std::int64_t>{kShopTargetWindow});
  }

  TEST_CASE("receipt ties go to the larger commit hash") {
    TempDir dir;
    ReviewService service(dir.path(), [] { return std::int64_t{7}; });
    service.store_structure(shop_structure("target", kShopTarget));
    service.store_structure(shop_structure("base", kShopBase));
    CHECK(service.latest_commit("shop").commit == std::max(kShopBase, kShopTarget));
  }

  TEST_CASE("comparing a commit with itself is all unchanged") {
    TempDir dir;
    ReviewService service(dir.path());
    service.store_structure(shop_structure("base", kShopBase));
    const auto result = service.get_comparison({"shop", kShopBase, kShopBase, {}, {}, {}});
    for_each_entity(result.model, [](const ComparedEntity& e) { CHECK(e.status == ChangeStatus::kUnchanged); });
    CHECK(result.warnings.empty());
  }

  TEST_CASE("the full pipeline matches the in-process model") {
    TempDir dir;
    ReviewService service(dir.path());
    service.store_structure(shop_structure("base", kShopBase));
    service.store_structure(shop_structure("target", kShopTarget));
    service.ingest_spans(stamped_spans(kShopBase, "base-window.spans.json"));
    service.ingest_spans(stamped_spans(kShopTarget, "target-window.spans.json"));
    const auto result =
        service.get_comparison({"shop", kShopBase, kShopTarget, kShopBaseWindow, kShopTargetWindow, {}});
    CHECK(result.model == shop_model());
    CHECK(result.layout == layout_city(result.model));
  }

  TEST_CASE("a missing window leaves that runtime side absent") {
    TempDir dir;
    ReviewService service(dir.path());
    service.store_structure(shop_structure("base", kShopBase));
    service.store_structure(shop_structure("target", kShopTarget));
    service.ingest_spans(stamped_spans(kShopTarget, "target-window.spans.json"));
    const auto result = service.get_comparison({"shop", kShopBase, kShopTarget, 99, kShopTargetWindow, {}});
    CHECK(result.warnings.size() == 1);
    CHECK_FALSE(result.model.baseWindow);
    for (const auto& e : result.model.edges) CHECK(e.status == ChangeStatus::kAdded);
  }

  TEST_CASE("errors") {
    TempDir dir;
    ReviewService service(dir.path());
    service.store_structure(shop_structure("base", kShopBase));
    CHECK(error_of([&] { (void)service.get_comparison({"shop", kShopBase, kShopTarget, {}, {}, {}}); }) ==
          ErrorCode::kNotFound);
    CHECK(error_of([&] {
            (void)service.get_comparison({"shop", kShopBase, kShopBase, {}, {}, FilterMode{false, false, false}});
          }) == ErrorCode::kInvalidMode);
    CHECK(error_of([&] { (void)service.store_structure("{}"); }) == ErrorCode::kSchema);
    CHECK(error_of([&] {
            (void)service.ingest_spans(R"({"schema":"codecity-spans/1","application":"../x","commit":"c","spans":[]})");
          }) == ErrorCode::kSchema);
  }

  TEST_CASE("status codes") {
    CHECK(http_status_for(ErrorCode::kSchema) == 422);
    CHECK(http_status_for(ErrorCode::kConflict) == 409);
    CHECK(http_status_for(ErrorCode::kNotFound) == 404);
    CHECK(http_status_for(ErrorCode::kInvalidMode) == 400);
  }
}

TEST_SUITE("http api") {
  TEST_CASE("ingest and query endpoints") {
    LiveService live;
    HttpClient client(live.url());
    const std::string base = shop_structure("base", kShopBase);

    auto res = client.post("/api/v1/structure", base, "application/json");
    CHECK(res.status == 201);
    CHECK(json::parse(res.body)["commit"] == kShopBase);
    CHECK(client.post("/api/v1/structure", base, "application/json").status == 200);

    auto altered = json::parse(base);
    altered["files"][0]["loc"]["code"] = 999;
    CHECK(client.post("/api/v1/structure", altered.dump(), "application/json").status == 409);
    CHECK(client.post("/api/v1/structure", "{\"schema\":1}", "application/json").status == 422);

    CHECK(client.post("/api/v1/structure", shop_structure("target", kShopTarget), "application/json").status == 201);

    res = client.post("/api/v1/spans", stamped_spans(kShopTarget, "target-window.spans.json"), "application/json");
    CHECK(res.status == 200);
    CHECK(json::parse(res.body)["accepted"] == 15);
    CHECK(json::parse(res.body)["rejected"].empty());

    CHECK(json::parse(client.get("/api/v1/applications").body) == json::array({"shop"}));
    const auto commits = json::parse(client.get("/api/v1/applications/shop/commits").body);
    REQUIRE(commits.size() == 2);
    CHECK(commits[1]["hasRuntime"] == true);
    CHECK(json::parse(client.get("/api/v1/applications/shop/commits/" + kShopTarget + "/windows").body) ==
          json::array({kShopTargetWindow}));
    CHECK(json::parse(client.get("/api/v1/applications/shop/latest").body)["commit"] == kShopTarget);
    CHECK(client.get("/api/v1/applications/nobody/latest").status == 404);
  }

  TEST_CASE("comparison endpoint") {
    LiveService live;
    HttpClient client(live.url());
    client.post("/api/v1/structure", shop_structure("base", kShopBase), "application/json");
    client.post("/api/v1/structure", shop_structure("target", kShopTarget), "application/json");
    client.post("/api/v1/spans", stamped_spans(kShopBase, "base-window.spans.json"), "application/json");
    client.post("/api/v1/spans", stamped_spans(kShopTarget, "target-window.spans.json"), "application/json");

    const std::string path = "/api/v1/applications/shop/comparison?base=" + kShopBase + "&target=" + kShopTarget +
                             "&baseWindow=3&targetWindow=5";
    auto res = client.get(path);
    REQUIRE(res.status == 200);
    const ComparisonModel expected = shop_model();
    CHECK(res.body == emit_comparison_response(expected, layout_city(expected), {}));

    res = client.get(path + "&static=true&dynamic=false");
    CHECK(json::parse(res.body)["model"]["edges"].empty());

    CHECK(client.get(path + "&static=false&dynamic=false").status == 400);
    CHECK(client.get(path + "&diffOnly=maybe").status == 400);
    CHECK(client.get("/api/v1/applications/shop/comparison?base=" + kShopBase).status == 400);
    CHECK(client.get("/api/v1/applications/shop/comparison?base=" + kShopBase + "&target=" + hash_of(9)).status ==
          404);
  }

  TEST_CASE("concurrent readers and writers") {
    LiveService live;
    {
      HttpClient client(live.url());
      client.post("/api/v1/structure", shop_structure("base", kShopBase), "application/json");
    }
    Rng rng(41);
    std::vector<std::string> batches;
    for (int b = 0; b < 8; ++b) {
      SpanDocument doc{"shop", kShopBase, random_spans(rng, 200, 2, static_cast<std::uint64_t>(b) * 1000)};
      batches.push_back(emit_spans_document(doc));
    }
    std::atomic<int> failures{0};
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
      threads.emplace_back([&, t] {
        HttpClient client(live.url());
        for (int b = t; b < 8; b += 4) {
          if (client.post("/api/v1/spans", batches[static_cast<std::size_t>(b)], "application/json").status != 200) ++failures;
          if (client.get("/api/v1/applications/shop/comparison?base=" + kShopBase + "&target=" + kShopBase +
                         "&baseWindow=0&targetWindow=1")
                  .status != 200) {
            ++failures;
          }
        }
      });
    }
    for (auto& t : threads) t.join();
    CHECK(failures == 0);
    CHECK(live.service().store().spans().size("shop", kShopBase) == 1600);
  }
}
