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

// Adversarial translations for the integrity checks: ten each of a wrong key,
// a fifth option, a moved correct_option, a dropped name and a changed
// document label. Every case lists the exact codes it must raise.

#include <string>
#include <vector>

#include "core/types.hpp"
#include "providers/documents.hpp"
#include "translate/translator.hpp"

namespace tbench::testing {

struct IntegrityCase {
  std::string name;
  bool document = false;
  std::string template_id;  // documents only
  Json original;            // QA payload, or the document text as a string
  Json translated;
  std::vector<std::string> names;
  std::vector<translate::Violation> expected;
};

inline const std::vector<std::vector<std::string>>& corpus_people() {
  static const std::vector<std::vector<std::string>> kPeople{
      {"Ava Stone", "Marcus Calder", "Ines Varga", "Felix Okafor"},
      {"Odette Lindqvist", "Ravi Harrow", "Keiko Sato", "Bruno Mendes"},
      {"Clara Quill", "Dmitri Ashby", "Yara Drummond", "Hugo Falk"},
      {"Lena Gallo", "Omar Ibarra", "Priya Jansen", "Silas Kovac"},
      {"Tessa Morrow", "Viktor Novak", "Wren Pelham", "Zane Rourke"},
      {"Anneke Szabo", "Basil Thorne", "Corinne Ueda", "Dario Whitlock"},
      {"Esme Stone", "Gideon Calder", "Helga Varga", "Ivo Okafor"},
      {"Juno Harrow", "Kasimir Sato", "Ava Mendes", "Marcus Quill"},
      {"Ines Ashby", "Felix Drummond", "Odette Falk", "Ravi Gallo"},
      {"Keiko Ibarra", "Bruno Jansen", "Clara Kovac", "Dmitri Morrow"},
  };
  return kPeople;
}

inline Json corpus_qa(std::size_t i) {
  const auto& p = corpus_people()[i];
  const std::string title = "Title " + std::to_string(i);
  return Json{{"question", "In the movie: '" + title + "', who repairs the radio?"},
              {"options", {{"A", p[0]}, {"B", p[1]}, {"C", p[2]}, {"D", p[3]}}},
              {"correct_option", std::string(1, "ABCD"[i % 4])}};
}

inline std::vector<std::string> corpus_names(std::size_t i) {
  std::vector<std::string> names{"Title " + std::to_string(i)};
  for (const auto& n : corpus_people()[i]) names.push_back(n);
  return names;
}

// Faithful pseudo-translation: names kept, text tagged.
inline Json corpus_translation(const Json& qa) {
  Json t = qa;
  t["question"] = "[fr] " + qa.at("question").get<std::string>();
  return t;
}

inline std::string corpus_movie_document(std::size_t i) {
  const auto& p = corpus_people()[i];
  return providers::render_document(
      "movie", {{"title", "Title " + std::to_string(i)},
                {"casts", p[0] + ", " + p[1]},
                {"summary", p[2] + " returns to Port Ellis after " + std::to_string(i + 3) + " years."},
                {"synopsis", "The town council votes to close the bakery run by " + p[3] + "."}});
}

inline std::vector<IntegrityCase> integrity_corpus() {
  using V = translate::Violation;
  std::vector<IntegrityCase> out;
  const std::vector<std::string> letters{"A", "B", "C", "D"};
  for (std::size_t i = 0; i < 10; ++i) {
    const Json qa = corpus_qa(i);
    const Json good = corpus_translation(qa);
    const auto names = corpus_names(i);
    const std::string n = std::to_string(i);

    // Wrong key: renamed, missing, extra or re-lettered.
    Json wrong = good;
    switch (i % 5) {
      case 0: wrong["Question"] = wrong["question"]; wrong.erase("question"); break;
      case 1: wrong["answer"] = wrong["correct_option"]; wrong.erase("correct_option"); break;
      case 2: wrong["explanation"] = "[fr] because"; break;
      case 3: wrong["options"]["E"] = wrong["options"]["D"]; wrong["options"].erase("D"); break;
      case 4: wrong["choices"] = wrong["options"]; wrong.erase("options"); break;
    }
    out.push_back({"wrong_key_" + n, false, "", qa, wrong, names, {V::kKeySetMismatch}});

    Json five = good;
    five["options"]["E"] = "Jordan Reyes " + n;
    out.push_back({"five_options_" + n, false, "", qa, five, names, {V::kOptionCount}});

    Json flipped = good;
    const std::string correct = qa.at("correct_option");
    flipped["correct_option"] = letters[(std::string("ABCD").find(correct) + 1 + i % 3) % 4];
    out.push_back({"flipped_correct_" + n, false, "", qa, flipped, names, {V::kCorrectOptionChanged}});

    // Dropped name: transliterated in an option, or the title lost from the question.
    Json dropped = good;
    if (i % 2 == 0) {
      const std::string key = letters[i % 4];
      const std::string person = dropped["options"][key];
      dropped["options"][key] = "Mx. " + person.substr(person.find(' ') + 1);
    } else {
      dropped["question"] = "[fr] Dans le film, qui répare la radio ?";
    }
    out.push_back({"dropped_name_" + n, false, "", qa, dropped, names, {V::kNameDropped}});

    // Changed label on a document line.
    const std::string doc = corpus_movie_document(i);
    static const std::vector<std::pair<std::string, std::string>> kRelabel{
        {"- Movie Title: ", "- Titre du film : "}, {"- Movie Cast: ", "- Distribution : "},
        {"- Movie Summary: ", "- Résumé : "}, {"- Movie Synopsis: ", "- Synopsis du film : "},
        {"- Movie Summary: ", "Movie Summary: "}};
    const auto& [from, to] = kRelabel[i % kRelabel.size()];
    std::string relabeled = doc;
    relabeled.replace(relabeled.find(from), from.size(), to);
    out.push_back({"changed_label_" + n, true, "movie", Json(doc), Json(relabeled),
                   {corpus_people()[i][0], corpus_people()[i][1]}, {V::kLabelChanged}});
  }
  return out;
}

inline std::vector<translate::Violation> run_integrity_case(const IntegrityCase& c) {
  if (c.document) {
    return translate::check_document_integrity(c.template_id, c.original.get<std::string>(),
                                               c.translated.get<std::string>(), c.names);
  }
  return translate::check_qa_integrity(c.original, c.translated, c.names);
}

}  // namespace tbench::testing
