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

#include "codecity/spans_document.hpp"

#include <fmt/core.h>

#include "json_util.hpp"

namespace codecity {

using detail::Json;

SpanDocument parse_spans_document(std::string_view text, CommitStamp stamp) {
  const Json doc = detail::parse_json(text, "spans document");
  detail::expect_schema(doc, kSpansSchema);

  SpanDocument out;
  if (stamp == CommitStamp::kRequired) {
    out.application = detail::string_field(doc, "application", "document");
    out.commit = detail::string_field(doc, "commit", "document");
  } else {
    out.application = detail::nullable_string_field(doc, "application", "document").value_or("");
    out.commit = detail::nullable_string_field(doc, "commit", "document").value_or("");
  }

  const Json& spans = detail::array_field(doc, "spans", "document");
  out.spans.reserve(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const std::string where = fmt::format("spans[{}]", i);
    const Json& s = spans[i];
    SpanRecord r;
    r.traceId = detail::string_field(s, "traceId", where);
    r.spanId = detail::string_field(s, "spanId", where);
    r.parentSpanId = detail::nullable_string_field(s, "parentSpanId", where);
    r.startNs = detail::int_field(s, "startNs", where);
    r.endNs = detail::int_field(s, "endNs", where);
    const Json& attrs = detail::field(s, "attrs", where);
    r.attrs.className = detail::string_field(attrs, "class", where + ".attrs");
    r.attrs.method = detail::string_field(attrs, "method", where + ".attrs");
    r.attrs.instanceId = detail::nullable_string_field(attrs, "instanceId", where + ".attrs");
    r.application = out.application;
    r.commit = out.commit;
    out.spans.push_back(std::move(r));
  }
  return out;
}

std::string emit_spans_document(const SpanDocument& document) {
  Json spans = Json::array();
  for (const auto& r : document.spans) {
    Json attrs{{"class", r.attrs.className}, {"method", r.attrs.method}};
    if (r.attrs.instanceId) attrs["instanceId"] = *r.attrs.instanceId;
    spans.push_back(Json{{"traceId", r.traceId},
                         {"spanId", r.spanId},
                         {"parentSpanId", r.parentSpanId ? Json(*r.parentSpanId) : Json(nullptr)},
                         {"startNs", r.startNs},
                         {"endNs", r.endNs},
                         {"attrs", std::move(attrs)}});
  }
  Json doc{{"schema", std::string(kSpansSchema)},
           {"application", document.application},
           {"commit", document.commit},
           {"spans", std::move(spans)}};
  return detail::dump_json(doc);
}

}  // namespace codecity
