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


#include "providers/documents.hpp"

#include <algorithm>
#include <map>

#include "core/error.hpp"
#include "core/text.hpp"

namespace tbench::providers {
namespace {

const std::map<std::string, std::string, std::less<>>& templates() {
  static const std::map<std::string, std::string, std::less<>> kTemplates{
      {"movie",
       "- Movie Title: {title}\n"
       "- Movie Cast: {casts}\n"
       "- Movie Summary: {summary}\n"
       "- Movie Synopsis: {synopsis}\n"},
      {"music",
       "- Music Video Title: {title}\n"
       "- Music Release Date: {date}\n"
       "- Music Video Description: {description}\n"},
      {"soccer",
       "Sports: {sports}\n"
       "League: {league}\n"
       "Match: {home_team} vs {away_team}\n"
       "Date: {date}\n"
       "Score: {home_score} - {away_score}\n"
       "Match Stats ({home_team} vs {away_team}):\n"
       "{stats_block}\n"},
      {"baseball",
       "Sports: {sports}\n"
       "League: {league}\n"
       "\n"
       "Match: {home_team} vs {away_team}\n"
       "Date: {date}\n"
       "Score: {home_score} - {away_score}\n"
       "Venue: {venue}\n"
       "\n"
       "Innings Breakdown:\n"
       "{home_team}: {home_innings} → Hits: {home_hits}, Errors: {home_errors}\n"
       "{away_team}: {away_innings} → Hits: {away_hits}, Errors: {away_errors}\n"},
  };
  return kTemplates;
}

std::string scalar_string(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  return v.dump();
}

}  // namespace

const std::string& document_template(std::string_view template_id) {
  const auto it = templates().find(template_id);
  if (it == templates().end()) {
    throw Error(ErrorKind::kValidation, "unknown document template '" + std::string(template_id) + "'");
  }
  return it->second;
}

Domain template_domain(std::string_view template_id) {
  if (template_id == "movie") return Domain::kMovie;
  if (template_id == "music") return Domain::kMusic;
  if (template_id == "soccer" || template_id == "baseball") return Domain::kSports;
  throw Error(ErrorKind::kValidation, "unknown document template '" + std::string(template_id) + "'");
}

std::vector<std::string> template_fields(std::string_view template_id) {
  const std::string& t = document_template(template_id);
  std::vector<std::string> out;
  for (std::size_t i = t.find('{'); i != std::string::npos; i = t.find('{', i + 1)) {
    const std::size_t close = t.find('}', i);
    std::string name = t.substr(i + 1, close - i - 1);
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(std::move(name));
  }
  return out;
}

std::vector<std::string> template_labels(std::string_view template_id) {
  std::vector<std::string> out;
  for (const auto& line : text::split_lines(document_template(template_id))) {
    const std::string prefix = line.substr(0, line.find('{'));
    if (!prefix.empty()) out.push_back(prefix);
  }
  return out;
}

std::string render_document(std::string_view template_id, const Bindings& fields) {
  return substitute(document_template(template_id), fields, ErrorKind::kTemplateFieldMissing);
}

std::string template_for(const KnowledgeEntity& entity) {
  switch (entity.domain) {
    case Domain::kMovie: return "movie";
    case Domain::kMusic: return "music";
    case Domain::kSports: {
      const std::string kind = entity.payload.is_object() && entity.payload.contains("sports")
                                   ? scalar_string(entity.payload.at("sports"))
                                   : "";
      return text::casefold(kind) == "baseball" ? "baseball" : "soccer";
    }
  }
  return "movie";
}

Bindings payload_fields(const Json& payload) {
  Bindings out;
  if (!payload.is_object()) return out;
  for (const auto& [key, value] : payload.items()) {
    if (value.is_array()) {
      std::vector<std::string> parts;
      for (const auto& v : value) parts.push_back(scalar_string(v));
      out[key] = text::join(parts, ", ");
    } else if (!value.is_null()) {
      out[key] = scalar_string(value);
    }
  }
  return out;
}

std::vector<std::string> entity_names(const KnowledgeEntity& entity) {
  std::vector<std::string> names;
  auto add = [&](const std::string& s) {
    const std::string t = text::trim(s);
    if (!t.empty() && std::find(names.begin(), names.end(), t) == names.end()) names.push_back(t);
  };
  const Json& p = entity.payload;
  if (!p.is_object()) return names;
  auto add_field = [&](const char* key) {
    if (!p.contains(key)) return;
    const Json& v = p.at(key);
    if (v.is_array()) {
      for (const auto& x : v) add(scalar_string(x));
    } else if (v.is_string()) {
      const std::string s = v.get<std::string>();
      // Cast lists may arrive as one comma-separated string.
      if (std::string(key) == "casts") {
        for (const auto& part : text::split(s, ',')) add(part);
      } else {
        add(s);
      }
    }
  };
  switch (entity.domain) {
    case Domain::kMovie:
      add_field("title");
      add_field("casts");
      break;
    case Domain::kMusic:
      add_field("title");
      add_field("artist");
      break;
    case Domain::kSports:
      add_field("home_team");
      add_field("away_team");
      add_field("league");
      add_field("venue");
      break;
  }
  return names;
}

std::string derive_display_name(Domain domain, const Json& payload, const Date& date) {
  const Bindings f = payload_fields(payload);
  auto field = [&](const char* k) -> std::string {
    const auto it = f.find(k);
    return it == f.end() ? "" : it->second;
  };
  if (domain == Domain::kSports) {
    return field("home_team") + " vs " + field("away_team") + " " + format_date(date);
  }
  return field("title");
}

}  // namespace tbench::providers
