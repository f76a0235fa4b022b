// Copyright 2026 The TransferBench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/placeholder.hpp"
#include "core/types.hpp"

namespace tbench::providers {

// Document templates: "movie", "music", "soccer", "baseball".
const std::string& document_template(std::string_view template_id);
Domain template_domain(std::string_view template_id);

// Field names a template needs, in first-use order.
std::vector<std::string> template_fields(std::string_view template_id);

// Static label prefixes of the template's lines ("- Movie Title: ", "Score: ",
// "Innings Breakdown:"). Lines that start with a value have no label.
std::vector<std::string> template_labels(std::string_view template_id);

// Byte-deterministic rendering. Throws Error(kTemplateFieldMissing, field).
std::string render_document(std::string_view template_id, const Bindings& fields);

// Template chosen for an entity: movie/music by domain, sports by the payload's
// "sports" value (baseball, else soccer).
std::string template_for(const KnowledgeEntity& entity);

// Payload values as strings; arrays are joined with ", ", numbers printed plainly.
Bindings payload_fields(const Json& payload);

// Proper names that a translation must carry verbatim: titles, artists, cast,
// team names, league and venue.
std::vector<std::string> entity_names(const KnowledgeEntity& entity);

// Display name used for probing: title for movie/music, "<home> vs <away> <date>"
// for matches.
std::string derive_display_name(Domain domain, const Json& payload, const Date& date);

}  // namespace tbench::providers
