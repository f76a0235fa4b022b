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


#include "llm/prompts.hpp"

#include <map>
#include <mutex>

#include "core/error.hpp"

namespace tbench::llm {
namespace {

struct GenerationWording {
  std::string info;       // "movie information"
  std::string inputs;     // bullet list of provided fields
  std::string audience;   // who would ask the questions
  std::string lead;       // leading phrase every question starts with
  std::string keep_note;  // what must stay untranslated
  std::string aspects;
};

std::string generation_body(const GenerationWording& w) {
  return "You are generating high-quality multiple-choice QA pairs in {lang}, strictly grounded in the given " +
         w.info + ".\n"
         "\n"
         "You will be provided with:\n" +
         w.inputs +
         "\n"
         "Task:\n"
         "- Generate natural, audience-friendly questions that " +
         w.audience +
         " might realistically ask.\n"
         "- All questions must be written fully in {lang}, including the leading phrase (“" +
         w.lead +
         ", …”).\n"
         "- Each QA pair must be based ONLY on facts explicitly present in the input. Do not add, assume, or "
         "hallucinate.\n"
         "- Use diverse aspects " +
         w.aspects +
         ".\n"
         "\n"
         "Each QA pair must include:\n"
         "- Question in {lang}, beginning with “" +
         w.lead + ", …” (" + w.keep_note +
         ")\n"
         "- Options:\n"
         "    - Provide four options labeled A, B, C, D.\n"
         "    - Exactly one option is correct.\n"
         "    - Place the correct option randomly among A–D (do not always use the same position).\n"
         "    - Distractors must be plausible but wrong (no random, absurd, or unrelated answers).\n"
         "- Correct Option: Output the letter (A, B, C, or D) of the correct answer.\n"
         "\n"
         "--------------------------\n"
         "Inputs:\n"
         "{meta_data}\n"
         "\n"
         "--------------------------\n"
         "Output Format (JSON):\n"
         "{\n"
         "    \"QA\": [\n"
         "        {\n"
         "            \"question\": \"<string in {lang}>\",\n"
         "            \"options\": {\n"
         "                \"A\": \"<option A in {lang}>\",\n"
         "                \"B\": \"<option B in {lang}>\",\n"
         "                \"C\": \"<option C in {lang}>\",\n"
         "                \"D\": \"<option D in {lang}>\"\n"
         "            },\n"
         "            \"correct_option\": \"<A | B | C | D>\"\n"
         "        },\n"
         "        ...\n"
         "    ]\n"
         "}\n"
         "\n"
         "--------------------------\n"
         "Guidelines:\n"
         "- Write everything (questions and options) only in {lang}.\n"
         "- Keep all proper names (people, places, entities) unchanged.\n"
         "- Ensure every correct answer can be directly verified in the input metadata.\n"
         "- Distractors must be reasonable, related, and plausible.\n";
}

struct DocWording {
  std::string noun;  // "movie document"
  std::string field_names;
  std::vector<std::pair<std::string, std::string>> lines;  // label, placeholder
  std::vector<TranslatableField> fields;
};

std::string doc_translate_body(const DocWording& w) {
  std::string body = "Translate the following " + w.noun +
                     " into {lang}.\n"
                     "- Do NOT translate the field names (e.g., " +
                     w.field_names +
                     ").\n"
                     "- Translate only the values after the colon.\n"
                     "- If the text is already in {lang}, return it unchanged.\n"
                     "- Return only the JSON object, no extra text.\n"
                     "\n"
                     "Document:\n";
  for (const auto& [label, placeholder] : w.lines) body += "- " + label + ": {" + placeholder + "}\n";
  body +=
      "\n"
      "Output Format:\n"
      "{\n"
      "  \"translation\": {\n";
  for (std::size_t i = 0; i < w.fields.size(); ++i) {
    std::string lower = w.fields[i].json_key;
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    body += "    \"" + w.fields[i].json_key + "\": \"<translated " + lower + ">\"";
    body += i + 1 < w.fields.size() ? ",\n" : "\n";
  }
  body +=
      "  }\n"
      "}\n";
  return body;
}

const std::map<std::string, DocWording, std::less<>>& doc_wordings() {
  static const std::map<std::string, DocWording, std::less<>> kWordings{
      {"movie",
       {"movie document",
        "\"Movie Cast\", \"Movie Summary\", \"Movie Synopsis\"",
        {{"Movie Cast", "casts"}, {"Movie Summary", "summary"}, {"Movie Synopsis", "synopsis"}},
        {{"casts", "Cast"}, {"summary", "Summary"}, {"synopsis", "Synopsis"}}}},
      {"music",
       {"music video document",
        "\"Music Video Description\"",
        {{"Music Video Description", "description"}},
        {{"description", "Description"}}}},
      {"soccer",
       {"sports match document",
        "\"Match Stats\"",
        {{"Match Stats", "stats_block"}},
        {{"stats_block", "Stats"}}}},
  };
  return kWordings;
}

constexpr const char* kVerifyBody =
    "You are verifying if QA pairs are grounded in the provided metadata.\n"
    "\n"
    "Check:\n"
    "- Is the correct option explicitly supported by the metadata?\n"
    "- If yes, return SUPPORTED and the supporting sentence(s).\n"
    "- If not, return UNSUPPORTED.\n"
    "\n"
    "Output Format:\n"
    "{\n"
    "  \"Decision\": \"<SUPPORTED or UNSUPPORTED>\",\n"
    "  \"SourceSentence\": \"<sentence(s) from metadata or empty>\"\n"
    "}\n"
    "\n"
    "Metadata:\n"
    "{meta_data}\n"
    "\n"
    "QA:\n"
    "{qa}\n";

constexpr const char* kTranslateQaBody =
    "Translate the QA JSON into target language {lang}.\n"
    "\n"
    "Rules:\n"
    "- Translate only values of \"question\" and \"options\".\n"
    "- Do NOT translate keys (\"QA\", \"question\", \"options\", \"A\"...\"D\", \"correct_option\").\n"
    "- Keep \"correct_option\" unchanged.\n"
    "- Preserve JSON structure.\n"
    "\n"
    "{qa_json}\n";

constexpr const char* kProbeBody = "Provide a brief factual summary of '{entity}'.";

constexpr const char* kJudgeBody =
    "You are checking whether a language model already knows a real-world entity.\n"
    "\n"
    "Entity: {entity}\n"
    "\n"
    "Reference document:\n"
    "{document}\n"
    "\n"
    "Model response:\n"
    "{probe}\n"
    "\n"
    "Decide whether the model response states at least one concrete fact that is consistent with the "
    "reference document. Concrete facts are specific names, dates, scores, cast members, or other "
    "verifiable details of this entity. Repeating the entity name, hedging, refusing, and generic "
    "genre-level or plot-generic statements are not concrete facts.\n"
    "\n"
    "Return only a JSON object:\n"
    "{\n"
    "  \"verdict\": \"<KNOWN or UNKNOWN>\",\n"
    "  \"matched_facts\": [\"<each concrete fact from the response that matches the document>\"],\n"
    "  \"rationale\": \"<one sentence>\"\n"
    "}\n";

PromptTemplate make(PromptId id, std::string key, std::string body) {
  PromptTemplate t{std::move(key), id, std::move(body), {}};
  t.required = find_placeholders(t.body);
  return t;
}

const std::map<std::string, PromptTemplate, std::less<>>& registry() {
  static const std::map<std::string, PromptTemplate, std::less<>> kRegistry = [] {
    std::map<std::string, PromptTemplate, std::less<>> r;
    auto add = [&](PromptTemplate t) { r.emplace(t.key, std::move(t)); };
    add(make(PromptId::kQaGenerate, "qa_generate.movie",
             generation_body({"movie information",
                              "- Movie Title\n- Movie Casts\n- Movie Summary\n- Movie Synopsis\n",
                              "viewers", "In the movie: '<title>'", "do not translate title",
                              "(casts, summary, synopsis content)"})));
    add(make(PromptId::kQaGenerate, "qa_generate.music",
             generation_body({"music video information",
                              "- Music Video Title\n- Music Release Date\n- Music Video Description\n",
                              "listeners", "In the music video '<title>'", "do not translate title",
                              "(title, release date, description content)"})));
    add(make(PromptId::kQaGenerate, "qa_generate.sports",
             generation_body({"sports match information",
                              "- Sport and League\n- Teams and Date\n- Final Score\n- Match Statistics\n",
                              "fans", "In the sports game '<home team> vs <away team>' at <date>",
                              "do not translate team names", "(score, teams, venue, statistics)"})));
    for (const auto& [tid, wording] : doc_wordings()) {
      add(make(PromptId::kDocTranslate, "doc_translate." + tid, doc_translate_body(wording)));
    }
    add(make(PromptId::kQaVerify, "qa_verify", kVerifyBody));
    add(make(PromptId::kQaTranslate, "qa_translate", kTranslateQaBody));
    add(make(PromptId::kKnowledgeProbe, "knowledge_probe", kProbeBody));
    add(make(PromptId::kRecognitionJudge, "recognition_judge", kJudgeBody));
    return r;
  }();
  return kRegistry;
}

}  // namespace

std::string_view prompt_id_name(PromptId id) {
  switch (id) {
    case PromptId::kQaGenerate: return "qa_generate";
    case PromptId::kQaVerify: return "qa_verify";
    case PromptId::kQaTranslate: return "qa_translate";
    case PromptId::kDocTranslate: return "doc_translate";
    case PromptId::kKnowledgeProbe: return "knowledge_probe";
    case PromptId::kRecognitionJudge: return "recognition_judge";
  }
  return "qa_generate";
}

PromptId parse_prompt_id(std::string_view name) {
  for (PromptId id : {PromptId::kQaGenerate, PromptId::kQaVerify, PromptId::kQaTranslate, PromptId::kDocTranslate,
                      PromptId::kKnowledgeProbe, PromptId::kRecognitionJudge}) {
    if (prompt_id_name(id) == name) return id;
  }
  throw Error(ErrorKind::kValidation, "unknown prompt template '" + std::string(name) + "'");
}

std::string template_key(PromptId id, std::string_view variant) {
  if (id == PromptId::kQaGenerate || id == PromptId::kDocTranslate) {
    return std::string(prompt_id_name(id)) + "." + std::string(variant);
  }
  return std::string(prompt_id_name(id));
}

const PromptTemplate& prompt_template(PromptId id, std::string_view variant) {
  const std::string key = template_key(id, variant);
  const auto it = registry().find(key);
  if (it == registry().end()) throw Error(ErrorKind::kValidation, "no prompt template '" + key + "'");
  return it->second;
}

std::string render_prompt(PromptId id, std::string_view variant, const Bindings& bindings) {
  return substitute(prompt_template(id, variant).body, bindings, ErrorKind::kMissingPlaceholder);
}

const std::vector<TranslatableField>& translatable_fields(std::string_view template_id) {
  static const std::vector<TranslatableField> kNone;
  const auto it = doc_wordings().find(template_id);
  return it == doc_wordings().end() ? kNone : it->second.fields;
}

}  // namespace tbench::llm
