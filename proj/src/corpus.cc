// src/corpus.cc

// Copyright 2026  The talkalign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "talkalign/corpus.h"

#include <string>
#include <utility>

#include "json.hpp"
#include "talkalign/errors.h"
#include "talkalign/text.h"

namespace talkalign {

using nlohmann::json;

std::string_view SectionRoleName(SectionRole role) {
  switch (role) {
    case SectionRole::kAbstract: return "abstract";
    case SectionRole::kIntroduction: return "introduction";
    case SectionRole::kRelatedWork: return "related_work";
    case SectionRole::kAcknowledgments: return "acknowledgments";
    case SectionRole::kBody: return "body";
  }
  return "body";
}

SectionRole RoleFromName(std::string_view name) {
  const std::string lower = AsciiLower(name);
  if (lower.find("abstract") != std::string::npos) return SectionRole::kAbstract;
  if (lower.find("introduction") != std::string::npos) return SectionRole::kIntroduction;
  if (lower.find("related work") != std::string::npos) return SectionRole::kRelatedWork;
  if (lower.find("acknowledg") != std::string::npos) return SectionRole::kAcknowledgments;
  return SectionRole::kBody;
}

std::size_t PaperDocument::sentence_count() const {
  std::size_t n = 0;
  for (const auto &s : sections) n += s.sentences.size();
  return n;
}

namespace {

template <typename F>
decltype(auto) Locate(const PaperDocument &doc, SentenceId id, F &&f) {
  std::size_t base = 0;
  for (const auto &section : doc.sections) {
    if (id < base + section.sentences.size()) return f(section, section.sentences[id - base]);
    base += section.sentences.size();
  }
  throw Error(ErrorKind::kContract, "sentence id " + std::to_string(id) + " out of range");
}

Sentence MakeSentence(std::string text) {
  Sentence s;
  s.tokens = Tokenize(text);
  s.word_count = CountWords(text);
  s.text = std::move(text);
  return s;
}

void Renumber(PaperDocument &doc) {
  SentenceId next = 0;
  for (auto &section : doc.sections) {
    for (auto &sentence : section.sentences) sentence.id = next++;
  }
}

const json &RequireField(const json &obj, const char *key, const char *where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorKind::kFormat, std::string(where) + ": missing field \"" + key + "\"");
  }
  return *it;
}

}  // namespace

const Sentence &PaperDocument::sentence(SentenceId id) const {
  return Locate(*this, id, [](const Section &, const Sentence &s) -> const Sentence & { return s; });
}

SectionRole PaperDocument::role_of(SentenceId id) const {
  return Locate(*this, id, [](const Section &sec, const Sentence &) { return sec.role; });
}

PaperDocument ParsePaper(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    throw Error(ErrorKind::kFormat,
                "paper JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!root.is_object()) throw Error(ErrorKind::kFormat, "paper JSON: top level is not an object");

  PaperDocument doc;
  try {
    if (auto it = root.find("title"); it != root.end() && !it->is_null()) {
      doc.title = it->get<std::string>();
    }
    const json &sections = RequireField(root, "sections", "paper JSON");
    if (!sections.is_array()) throw Error(ErrorKind::kFormat, "paper JSON: sections is not an array");
    for (const auto &sec : sections) {
      Section section;
      section.name = RequireField(sec, "name", "section").get<std::string>();
      section.role = RoleFromName(section.name);
      if (auto it = sec.find("sentences"); it != sec.end()) {
        for (const auto &s : *it) section.sentences.push_back(MakeSentence(s.get<std::string>()));
      } else if (auto t = sec.find("text"); t != sec.end()) {
        for (auto &s : SplitSentences(t->get<std::string>())) {
          section.sentences.push_back(MakeSentence(std::move(s)));
        }
      } else {
        throw Error(ErrorKind::kFormat,
                    "section \"" + section.name + "\": needs \"sentences\" or \"text\"");
      }
      doc.sections.push_back(std::move(section));
    }
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kFormat, std::string("paper JSON: ") + e.what());
  }
  if (doc.sections.empty() || doc.sentence_count() == 0) {
    throw Error(ErrorKind::kEmptyDocument, "paper has no sentences");
  }
  Renumber(doc);
  return doc;
}

namespace {

bool StartsWithCopyright(std::string_view text) {
  constexpr std::string_view kPrefix = "copyright";
  const auto trimmed = Trim(text);
  if (trimmed.size() < kPrefix.size()) return false;
  return AsciiLower(trimmed.substr(0, kPrefix.size())) == kPrefix;
}

}  // namespace

PaperDocument CleanPaper(const PaperDocument &doc) {
  PaperDocument out;
  out.title = doc.title;
  out.sections.reserve(doc.sections.size());
  for (const auto &section : doc.sections) {
    Section kept{section.name, section.role, {}};
    for (const auto &sentence : section.sentences) {
      if (StartsWithCopyright(sentence.text)) continue;
      if (sentence.tokens.size() < kMinSentenceTokens) continue;
      kept.sentences.push_back(sentence);
    }
    out.sections.push_back(std::move(kept));
  }
  Renumber(out);
  return out;
}

StateSpace BuildStateSpace(const PaperDocument &doc) {
  StateSpace space;
  std::vector<std::size_t> first_section_states;
  bool first_section_seen = false;
  SentenceId id = 0;
  for (const auto &section : doc.sections) {
    const bool excluded = IsExcludedRole(section.role);
    const bool take_as_first = !excluded && !first_section_seen && !section.sentences.empty();
    for (std::size_t i = 0; i < section.sentences.size(); ++i, ++id) {
      if (excluded) continue;
      const std::size_t pos = space.states.size();
      space.states.push_back(id);
      if (section.role == SectionRole::kIntroduction) space.intro_states.push_back(pos);
      if (take_as_first) first_section_states.push_back(pos);
    }
    if (take_as_first) first_section_seen = true;
  }
  if (space.states.empty()) {
    throw Error(ErrorKind::kEmptyStateSpace, "no eligible sentences outside excluded sections");
  }
  if (space.intro_states.empty()) space.intro_states = std::move(first_section_states);
  return space;
}

namespace {

void AppendWord(std::string_view word, const TranscriptOptions &options, std::size_t &position,
                Transcript &out) {
  for (auto &token : Tokenize(word)) {
    const std::size_t pos = position++;
    if (options.remove_stopwords && IsStopword(token)) continue;
    out.tokens.push_back({std::move(token), pos});
  }
}

}  // namespace

Transcript ParseTranscript(std::string_view input, const TranscriptOptions &options) {
  Transcript out;
  std::size_t position = 0;
  const auto trimmed = Trim(input);
  if (!trimmed.empty() && trimmed.front() == '{') {
    json root;
    try {
      root = json::parse(trimmed.begin(), trimmed.end());
    } catch (const json::parse_error &e) {
      throw Error(ErrorKind::kFormat,
                  "transcript JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    try {
      const json &words = RequireField(root, "words", "transcript JSON");
      for (const auto &entry : words) {
        const auto w = RequireField(entry, "w", "transcript word").get<std::string>();
        if (auto t = entry.find("t"); t != entry.end() && !t->is_null() && !t->is_number()) {
          throw Error(ErrorKind::kFormat, "transcript word: \"t\" must be a number");
        }
        AppendWord(w, options, position, out);
      }
    } catch (const json::exception &e) {
      throw Error(ErrorKind::kFormat, std::string("transcript JSON: ") + e.what());
    }
  } else {
    for (auto word : SplitWhitespace(input)) AppendWord(word, options, position, out);
  }
  if (out.tokens.empty()) throw Error(ErrorKind::kEmptyTranscript, "transcript is empty after cleaning");
  return out;
}

}  // namespace talkalign
