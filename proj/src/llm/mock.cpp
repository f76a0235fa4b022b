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


#include "llm/mock.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "core/error.hpp"
#include "core/hash.hpp"
#include "core/io.hpp"
#include "core/text.hpp"
#include "llm/json_extract.hpp"

namespace tbench::llm {

namespace fs = std::filesystem;

std::string mock_key(const std::string& template_key, const Bindings& bindings) {
  Json j = Json::object();
  for (const auto& [k, v] : bindings) j[k] = v;
  return template_key + "#" + sha256_hex(j.dump());
}

std::string mock_key(const LlmRequest& request) { return mock_key(request.key(), request.bindings); }

void MockBackend::add_canned(const std::string& template_key, const Bindings& bindings,
                             std::vector<std::string> responses) {
  std::lock_guard lock(mu_);
  canned_[mock_key(template_key, bindings)] = std::move(responses);
}

void MockBackend::set_responder(Responder responder) {
  std::lock_guard lock(mu_);
  responder_ = std::move(responder);
}

void MockBackend::load_canned(const Json& fixture) {
  if (!fixture.contains("canned")) return;
  for (const auto& entry : fixture.at("canned")) {
    Bindings b;
    const Json bindings = entry.value("bindings", Json::object());
    for (const auto& [k, v] : bindings.items()) b[k] = v.get<std::string>();
    add_canned(entry.at("template_id").get<std::string>(), b,
               entry.at("responses").get<std::vector<std::string>>());
  }
}

std::shared_ptr<MockBackend> MockBackend::from_audit_log(const fs::path& path) {
  auto backend = std::make_shared<MockBackend>();
  std::map<std::string, std::vector<std::string>> replay;
  for (const Json& rec : io::read_jsonl(path)) {
    if (!rec.value("ok", false)) continue;
    Bindings b;
    for (const auto& [k, v] : rec.at("bindings").items()) b[k] = v.get<std::string>();
    replay[mock_key(rec.at("template_id").get<std::string>(), b)].push_back(rec.at("raw_text").get<std::string>());
  }
  std::lock_guard lock(backend->mu_);
  backend->canned_ = std::move(replay);
  return backend;
}

BackendResult MockBackend::send(const LlmRequest& request, const std::string&) {
  const std::string key = mock_key(request);
  Responder responder;
  {
    std::lock_guard lock(mu_);
    const int n = calls_[key]++;
    const auto it = canned_.find(key);
    if (it != canned_.end() && !it->second.empty()) {
      const auto& list = it->second;
      return BackendResult{BackendResult::Status::kOk, list[std::min<std::size_t>(n, list.size() - 1)], 0, 0, {}};
    }
    responder = responder_;
  }
  if (responder) {
    if (auto text = responder(request)) return BackendResult{BackendResult::Status::kOk, *text, 0, 0, {}};
  }
  BackendResult miss;
  miss.status = BackendResult::Status::kFatal;
  miss.error = "no mock response for " + request.key();
  return miss;
}

int MockBackend::call_count(const std::string& key) const {
  std::lock_guard lock(mu_);
  const auto it = calls_.find(key);
  return it == calls_.end() ? 0 : it->second;
}

// ---------------------------------------------------------------------------
// SimulatedModel

namespace {

struct DocLine {
  std::string label;
  std::string value;
};

std::vector<DocLine> parse_doc(const std::string& doc) {
  std::vector<DocLine> out;
  for (std::string line : text::split_lines(doc)) {
    line = text::trim(line);
    if (line.empty()) continue;
    if (line.rfind("- ", 0) == 0) line = line.substr(2);
    const auto colon = line.find(": ");
    if (colon == std::string::npos) {
      out.push_back({"", line});
    } else {
      out.push_back({line.substr(0, colon), line.substr(colon + 2)});
    }
  }
  return out;
}

std::string field(const std::vector<DocLine>& lines, std::string_view label) {
  for (const auto& l : lines) {
    if (l.label == label) return l.value;
  }
  return "";
}

std::string strip_punct(const std::string& token) {
  std::size_t b = 0, e = token.size();
  auto punct = [](char c) { return std::ispunct(static_cast<unsigned char>(c)) && c != '%' && c != '-'; };
  while (b < e && punct(token[b])) ++b;
  while (e > b && punct(token[e - 1])) --e;
  return token.substr(b, e - b);
}

bool is_number(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_capitalized(const std::string& s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

// Numbers and capitalized phrases (not sentence-initial) of a sentence, in order.
std::vector<std::string> key_phrases(const std::string& sentence) {
  std::vector<std::string> out;
  const auto tokens = text::split(sentence, ' ');
  std::string phrase;
  auto flush = [&] {
    if (!phrase.empty()) out.push_back(phrase);
    phrase.clear();
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& raw = tokens[i];
    const std::string tok = strip_punct(raw);
    const bool breaks_after = !raw.empty() && tok != raw && std::ispunct(static_cast<unsigned char>(raw.back()));
    if (is_number(tok)) {
      flush();
      out.push_back(tok);
      continue;
    }
    if (i > 0 && is_capitalized(tok) && tok.size() > 1) {
      phrase += phrase.empty() ? tok : " " + tok;
      if (breaks_after) flush();
    } else {
      flush();
    }
  }
  flush();
  return out;
}

const std::vector<std::string>& fallback_names() {
  static const std::vector<std::string> kNames{"Jordan Reyes", "Mina Park",   "Luca Moretti", "Aisha Khan",
                                               "Tomas Berg",   "Elena Ruiz",  "Noah Fischer", "Sara Lind"};
  return kNames;
}

bool contains_ci_list(const std::vector<std::string>& list, const std::string& s) {
  const std::string f = text::casefold(s);
  return std::any_of(list.begin(), list.end(), [&](const std::string& x) { return text::casefold(x) == f; });
}

// Picks three distinct distractors from candidates in order.
std::vector<std::string> pick_distractors(const std::string& answer, const std::vector<std::string>& candidates) {
  std::vector<std::string> out;
  std::vector<std::string> taken{answer};
  for (const auto& c : candidates) {
    if (out.size() == 3) break;
    if (c.empty() || contains_ci_list(taken, c)) continue;
    out.push_back(c);
    taken.push_back(c);
  }
  return out;
}

std::vector<std::string> numeric_distractors(long long n) {
  std::vector<std::string> out{std::to_string(n + 1), std::to_string(n + 2)};
  out.push_back(std::to_string(n >= 1 ? n - 1 : n + 3));
  out.push_back(std::to_string(n + 4));
  return out;
}

Json make_qa(const std::string& question, const std::string& answer, const std::vector<std::string>& distractors) {
  // The simulated generator always places the answer first; the pipeline's
  // shuffle is what spreads answers across letters.
  return Json{{"question", question},
              {"options", {{"A", answer}, {"B", distractors[0]}, {"C", distractors[1]}, {"D", distractors[2]}}},
              {"correct_option", "A"}};
}

void add_cloze_questions(Json& qas, const std::string& lead, const std::vector<std::string>& sentences,
                         const std::vector<std::string>& doc_phrases) {
  for (const auto& sentence : sentences) {
    const auto phrases = key_phrases(sentence);
    if (phrases.empty()) continue;
    const std::string& answer = phrases.front();
    std::vector<std::string> candidates;
    if (is_number(answer)) {
      candidates = numeric_distractors(std::stoll(answer));
    } else {
      // Other phrases of the document, starting after the answer, then fallbacks.
      auto it = std::find(doc_phrases.begin(), doc_phrases.end(), answer);
      const std::size_t start = it == doc_phrases.end() ? 0 : static_cast<std::size_t>(it - doc_phrases.begin()) + 1;
      for (std::size_t k = 0; k < doc_phrases.size(); ++k) {
        const std::string& p = doc_phrases[(start + k) % doc_phrases.size()];
        if (!is_number(p)) candidates.push_back(p);
      }
      candidates.insert(candidates.end(), fallback_names().begin(), fallback_names().end());
    }
    const auto distractors = pick_distractors(answer, candidates);
    if (distractors.size() < 3) continue;
    std::string cloze = sentence;
    cloze.replace(cloze.find(answer), answer.size(), "____");
    qas.push_back(make_qa(lead + ", which word or number fills the blank: \"" + cloze + "\"?", answer, distractors));
  }
}

std::vector<std::string> all_phrases(const std::vector<std::string>& sentences) {
  std::vector<std::string> out;
  for (const auto& s : sentences) {
    for (auto& p : key_phrases(s)) {
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
    }
  }
  return out;
}

std::string shift_date(const std::string& iso, int days) {
  const Date d = parse_full_date(iso);
  return format_date(Date{std::chrono::sys_days(d) + std::chrono::days(days)});
}

// "3 - 1" -> (3, 1)
std::optional<std::pair<long long, long long>> parse_pair(const std::string& v) {
  const auto dash = v.find(" - ");
  if (dash == std::string::npos) return std::nullopt;
  std::string a = text::trim(v.substr(0, dash)), b = text::trim(v.substr(dash + 3));
  std::string suffix;
  if (!a.empty() && a.back() == '%' && !b.empty() && b.back() == '%') {
    a.pop_back();
    b.pop_back();
  }
  if (!is_number(a) || !is_number(b)) return std::nullopt;
  return std::make_pair(std::stoll(a), std::stoll(b));
}

std::vector<std::string> pair_distractors(long long h, long long a, const std::string& unit) {
  auto fmt = [&](long long x, long long y) { return std::to_string(x) + unit + " - " + std::to_string(y) + unit; };
  return {fmt(a, h), fmt(h + 1, a), fmt(h, a + 1), fmt(h + 2, a + 1), fmt(h + 1, a + 2)};
}

}  // namespace

SimulatedModel::Options SimulatedModel::options_from_json(const Json& fixture) {
  Options o;
  if (fixture.contains("known_entities")) {
    o.known_entities = fixture.at("known_entities").get<std::map<std::string, std::string>>();
  }
  if (fixture.value("translation_mode", "pseudo") == "identity") o.translation = TranslationMode::kIdentity;
  return o;
}

std::optional<std::string> SimulatedModel::respond(const LlmRequest& request) const {
  switch (request.template_id) {
    case PromptId::kKnowledgeProbe: return probe(request.bindings);
    case PromptId::kRecognitionJudge: return judge(request.bindings);
    case PromptId::kQaGenerate: return generate(request.variant, request.bindings);
    case PromptId::kQaVerify: return verify(request.bindings);
    case PromptId::kQaTranslate: return translate_qa(request.bindings);
    case PromptId::kDocTranslate: return translate_document(request.variant, request.bindings);
  }
  return std::nullopt;
}

std::string SimulatedModel::probe(const Bindings& b) const {
  const auto it = options_.known_entities.find(b.at("entity"));
  return it == options_.known_entities.end() ? kNoKnowledgeReply : it->second;
}

std::string SimulatedModel::judge(const Bindings& b) const {
  const std::string& entity = b.at("entity");
  const std::string& probe_text = b.at("probe");
  std::vector<std::string> facts;
  for (const auto& line : parse_doc(b.at("document"))) {
    if (line.label.empty() && line.value.find(": ") == std::string::npos) continue;
    if (line.label == "Sports" || line.label == "League") continue;  // genre-level, not entity facts
    std::vector<std::string> candidates;
    if (line.value.size() <= 60) {
      candidates.push_back(line.value);
      for (const auto& part : text::split(line.value, ',')) candidates.push_back(text::trim(part));
    } else {
      for (const auto& s : text::split_sentences(line.value)) candidates.push_back(s);
    }
    for (const auto& c : candidates) {
      if (c.size() < 3 || text::contains_ci(entity, c)) continue;
      if (!text::contains_ci(probe_text, c) || contains_ci_list(facts, c)) continue;
      facts.push_back(c);
    }
  }
  const bool known = !facts.empty();
  return Json{{"verdict", known ? "KNOWN" : "UNKNOWN"},
              {"matched_facts", facts},
              {"rationale", known ? "The response states details that match the reference document."
                                  : "The response contains no concrete detail from the reference document."}}
      .dump(2);
}

std::string SimulatedModel::generate(const std::string& domain, const Bindings& b) const {
  const auto lines = parse_doc(b.at("meta_data"));
  Json qas = Json::array();
  if (domain == "movie") {
    const std::string title = field(lines, "Movie Title");
    const std::string lead = "In the movie: '" + title + "'";
    const std::string cast = field(lines, "Movie Cast");
    std::vector<std::string> sentences = text::split_sentences(field(lines, "Movie Summary"));
    for (auto& s : text::split_sentences(field(lines, "Movie Synopsis"))) sentences.push_back(std::move(s));
    if (!cast.empty()) {
      auto members = text::split(cast, ',');
      for (auto& m : members) m = text::trim(m);
      std::vector<std::string> candidates;
      for (const auto& name : fallback_names()) {
        if (text::contains_ci(b.at("meta_data"), name)) continue;
        auto variant = members;
        variant.back() = name;
        candidates.push_back(text::join(variant, ", "));
      }
      const auto distractors = pick_distractors(cast, candidates);
      if (distractors.size() == 3) qas.push_back(make_qa(lead + ", who are the credited cast members?", cast, distractors));
    }
    add_cloze_questions(qas, lead, sentences, all_phrases(sentences));
  } else if (domain == "music") {
    const std::string title = field(lines, "Music Video Title");
    const std::string lead = "In the music video '" + title + "'";
    const std::string date = field(lines, "Music Release Date");
    if (!date.empty()) {
      try {
        qas.push_back(make_qa(lead + ", when was it released?", date,
                              {shift_date(date, 7), shift_date(date, -14), shift_date(date, 30)}));
      } catch (const Error&) {
      }
    }
    const auto sentences = text::split_sentences(field(lines, "Music Video Description"));
    add_cloze_questions(qas, lead, sentences, all_phrases(sentences));
  } else {
    const std::string match = field(lines, "Match");
    const std::string date = field(lines, "Date");
    const auto vs = match.find(" vs ");
    const std::string home = vs == std::string::npos ? match : match.substr(0, vs);
    const std::string away = vs == std::string::npos ? "" : match.substr(vs + 4);
    const std::string lead = "In the sports game '" + match + "' at " + date;
    if (const auto score = parse_pair(field(lines, "Score"))) {
      const auto [h, a] = *score;
      qas.push_back(make_qa(lead + ", what was the final score?", field(lines, "Score"),
                            pick_distractors(field(lines, "Score"), pair_distractors(h, a, ""))));
      const std::string draw = "The match ended in a draw";
      const std::string winner = h > a ? home : h < a ? away : draw;
      qas.push_back(make_qa(lead + ", which team won the match?", winner,
                            pick_distractors(winner, {home, away, draw, "The match was abandoned"})));
    }
    const std::string venue = field(lines, "Venue");
    if (!venue.empty()) {
      qas.push_back(make_qa(lead + ", where was the match played?", venue,
                            pick_distractors(venue, {"Fenway Park", "Wrigley Field", "Oracle Park", "Citi Field",
                                                     "Yankee Stadium"})));
    }
    bool in_stats = false;
    for (const auto& line : lines) {
      if (line.label.rfind("Match Stats", 0) == 0 || line.value.rfind("Match Stats", 0) == 0 ||
          line.value == "Innings Breakdown:") {
        in_stats = true;
        continue;
      }
      if (!in_stats || line.label.empty()) continue;
      const auto arrow = line.value.find("Hits: ");
      if (arrow != std::string::npos) {
        // "<team>: <innings> → Hits: 9, Errors: 1"
        const std::string hits = text::trim(line.value.substr(arrow + 6, line.value.find(',', arrow) - arrow - 6));
        if (!is_number(hits)) continue;
        qas.push_back(make_qa(lead + ", how many hits did " + line.label + " record?", hits,
                              numeric_distractors(std::stoll(hits))));
      } else if (const auto stat = parse_pair(line.value)) {
        const std::string unit = line.value.find('%') != std::string::npos ? "%" : "";
        qas.push_back(make_qa(lead + ", what was the " + line.label + " (" + home + " - " + away + ")?", line.value,
                              pick_distractors(line.value, pair_distractors(stat->first, stat->second, unit))));
      }
    }
  }
  return "```json\n" + Json{{"QA", qas}}.dump(2) + "\n```";
}

std::string SimulatedModel::verify(const Bindings& b) const {
  const Json qa = extract_json(b.at("qa"));
  const std::string correct = qa.at("options").at(qa.at("correct_option").get<std::string>()).get<std::string>();
  for (const auto& raw_line : text::split_lines(b.at("meta_data"))) {
    for (const auto& sentence : text::split_sentences(raw_line)) {
      if (text::contains_ci(sentence, correct)) {
        return Json{{"Decision", "SUPPORTED"}, {"SourceSentence", sentence}}.dump(2);
      }
    }
  }
  return Json{{"Decision", "UNSUPPORTED"}, {"SourceSentence", ""}}.dump(2);
}

std::string SimulatedModel::translate_value(const std::string& value, const std::string& lang) const {
  if (options_.translation == TranslationMode::kIdentity) return value;
  const std::string tag = "[" + lang + "] ";
  if (value.rfind(tag, 0) == 0) return value;
  std::string body = value;
  if (body.size() > 5 && body[0] == '[' && body[3] == ']' && body[4] == ' ') body = body.substr(5);
  return tag + body;
}

std::string SimulatedModel::translate_qa(const Bindings& b) const {
  Json qa = extract_json(b.at("qa_json"));
  const std::string& lang = b.at("lang");
  qa["question"] = translate_value(qa.at("question").get<std::string>(), lang);
  for (auto& [key, value] : qa.at("options").items()) value = translate_value(value.get<std::string>(), lang);
  return qa.dump(2);
}

std::string SimulatedModel::translate_document(const std::string& template_id, const Bindings& b) const {
  Json translation = Json::object();
  for (const auto& f : translatable_fields(template_id)) {
    translation[f.json_key] = translate_value(b.at(f.field), b.at("lang"));
  }
  return Json{{"translation", translation}}.dump(2);
}

std::shared_ptr<MockBackend> make_fixture_backend(const fs::path& fixture_path) {
  Json fixture = Json::object();
  if (!fixture_path.empty()) {
    try {
      fixture = Json::parse(io::read_file(fixture_path));
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::kValidation, "mock fixture " + fixture_path.string() + ": " + e.what());
    }
  }
  auto backend = std::make_shared<MockBackend>();
  backend->load_canned(fixture);
  auto model = std::make_shared<SimulatedModel>(SimulatedModel::options_from_json(fixture));
  backend->set_responder([model](const LlmRequest& r) { return model->respond(r); });
  return backend;
}

}  // namespace tbench::llm
