// tests/test_corpus.cc

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

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "synthetic.h"
#include "talkalign/corpus.h"
#include "talkalign/errors.h"
#include "talkalign/text.h"

using namespace talkalign;
using talkalign::testing::MakePaper;

namespace {

std::vector<std::string> Filler(std::size_t n, const std::string &stem) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(stem + " sentence number " + std::to_string(i) + ".");
  return out;
}

ErrorKind KindOf(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::kContract;
}

}  // namespace

TEST_CASE("parse_paper assigns dense ids and roles in file order") {
  const PaperDocument doc = MakePaper({{"Abstract", Filler(2, "abs")},
                                       {"Introduction", Filler(3, "intro")},
                                       {"Method", Filler(4, "method")}});
  REQUIRE(doc.sections.size() == 3);
  CHECK(doc.sentence_count() == 9);
  SentenceId expected = 0;
  for (const auto &sec : doc.sections) {
    for (const auto &s : sec.sentences) CHECK(s.id == expected++);
  }
  CHECK(doc.sections[0].role == SectionRole::kAbstract);
  CHECK(doc.sections[1].role == SectionRole::kIntroduction);
  CHECK(doc.sections[2].role == SectionRole::kBody);
  CHECK(doc.sentence(4).text == "intro sentence number 2.");
  CHECK(doc.role_of(8) == SectionRole::kBody);
  CHECK(doc.sentence(0).word_count == 4);
  CHECK(doc.sentence(0).tokens == std::vector<std::string>{"abs", "sentence", "number", "0"});
}

TEST_CASE("section role rule over heading variants") {
  struct Case {
    const char *name;
    SectionRole role;
  };
  const Case cases[] = {
      {"Abstract", SectionRole::kAbstract},
      {"ABSTRACT", SectionRole::kAbstract},
      {"1 Introduction", SectionRole::kIntroduction},
      {"1. INTRODUCTION", SectionRole::kIntroduction},
      {"2 Related Work", SectionRole::kRelatedWork},
      {"Background and related work", SectionRole::kRelatedWork},
      {"Acknowledgements", SectionRole::kAcknowledgments},
      {"Acknowledgments", SectionRole::kAcknowledgments},
      {"Acknowledgment", SectionRole::kAcknowledgments},
      {"3 Method", SectionRole::kBody},
      {"Related Problems", SectionRole::kBody},
      {"Conclusion", SectionRole::kBody},
  };
  for (const auto &c : cases) {
    CAPTURE(c.name);
    CHECK(RoleFromName(c.name) == c.role);
  }
}

TEST_CASE("parse_paper errors") {
  SUBCASE("malformed JSON reports a byte offset") {
    try {
      ParsePaper(R"({"title": "x", "sections": [)");
      FAIL("no error");
    } catch (const Error &e) {
      CHECK(e.kind() == ErrorKind::kFormat);
      CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
  }
  SUBCASE("missing fields") {
    CHECK(KindOf([] { ParsePaper(R"({"title": "x"})"); }) == ErrorKind::kFormat);
    CHECK(KindOf([] { ParsePaper(R"({"sections": [{"sentences": []}]})"); }) == ErrorKind::kFormat);
    CHECK(KindOf([] { ParsePaper(R"({"sections": [{"name": "A", "sentences": [1]}]})"); }) ==
          ErrorKind::kFormat);
  }
  SUBCASE("empty documents") {
    CHECK(KindOf([] { ParsePaper(R"({"title": "x", "sections": []})"); }) == ErrorKind::kEmptyDocument);
    CHECK(KindOf([] { ParsePaper(R"({"sections": [{"name": "A", "sentences": []}]})"); }) ==
          ErrorKind::kEmptyDocument);
  }
}

TEST_CASE("raw section text goes through the fallback splitter") {
  const PaperDocument doc = ParsePaper(
      R"({"title": "t", "sections": [{"name": "Intro", "text": "First one here. Second one here! third"}]})");
  REQUIRE(doc.sentence_count() == 2);
  CHECK(doc.sentence(0).text == "First one here.");
  CHECK(doc.sentence(1).text == "Second one here! third");
}

TEST_CASE("clean_paper drops copyright lines and short fragments") {
  const PaperDocument doc = MakePaper({{"Introduction",
                                        {"Copyright 2019 ACL.", "We propose a model.", "Table 1.",
                                         "   copyright notice for the proceedings",
                                         "The copyright law is discussed here."}}});
  const PaperDocument clean = CleanPaper(doc);
  REQUIRE(clean.sentence_count() == 2);
  CHECK(clean.sentence(0).text == "We propose a model.");
  CHECK(clean.sentence(0).id == 0);
  CHECK(clean.sentence(1).text == "The copyright law is discussed here.");
  CHECK(clean.sentence(1).id == 1);
}

TEST_CASE("clean_paper invariants on random documents") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> words = {"Copyright", "copyright", "we", "a", "model", "x",
                                          "Table", "1.", "-", "results"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1), len(0, 6), nsent(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<std::string, std::vector<std::string>>> sections;
    for (const char *name : {"Abstract", "Introduction", "Method"}) {
      std::vector<std::string> sents;
      for (std::size_t i = nsent(rng); i > 0; --i) {
        std::string s;
        for (std::size_t j = len(rng); j > 0; --j) s += words[pick(rng)] + " ";
        sents.push_back(s);
      }
      sections.push_back({name, sents});
    }
    sections[2].second.push_back("one two three");
    const PaperDocument clean = CleanPaper(MakePaper(sections));
    SentenceId next = 0;
    for (const auto &sec : clean.sections) {
      for (const auto &s : sec.sentences) {
        CHECK(s.id == next++);
        CHECK(s.tokens.size() >= kMinSentenceTokens);
        CHECK(AsciiLower(Trim(s.text)).rfind("copyright", 0) != 0);
      }
    }
  }
}

TEST_CASE("build_state_space excludes abstract, related work and acknowledgments") {
  const PaperDocument doc = MakePaper({{"Abstract", Filler(2, "a")},
                                       {"1 Introduction", Filler(3, "i")},
                                       {"2 Related Work", Filler(2, "r")},
                                       {"3 Method", Filler(4, "m")},
                                       {"Acknowledgments", Filler(1, "k")}});
  const StateSpace space = BuildStateSpace(doc);
  CHECK(space.size() == 7);
  CHECK(space.states == std::vector<SentenceId>{2, 3, 4, 7, 8, 9, 10});
  CHECK(space.intro_states == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("build_state_space falls back to the first eligible section") {
  const StateSpace space = BuildStateSpace(MakePaper({{"Model", Filler(5, "b")}}));
  CHECK(space.size() == 5);
  CHECK(space.intro_states == std::vector<std::size_t>{0, 1, 2, 3, 4});

  // An introduction emptied by cleaning also triggers the fallback.
  const PaperDocument doc = CleanPaper(MakePaper({{"Abstract", Filler(1, "a")},
                                                  {"Introduction", {"Copyright 2020 ACL."}},
                                                  {"Related Work", Filler(2, "r")},
                                                  {"Method", Filler(2, "m")},
                                                  {"Results", Filler(3, "x")}}));
  const StateSpace fallback = BuildStateSpace(doc);
  CHECK(fallback.size() == 5);
  CHECK(fallback.intro_states == std::vector<std::size_t>{0, 1});
}

TEST_CASE("build_state_space rejects documents with nothing eligible") {
  CHECK(KindOf([] { BuildStateSpace(MakePaper({{"Abstract", Filler(3, "a")}})); }) ==
        ErrorKind::kEmptyStateSpace);
}

TEST_CASE("state space order and exclusion on random role layouts") {
  std::mt19937_64 rng(3);
  const char *names[] = {"Abstract", "Introduction", "Related Work", "Acknowledgements", "Method",
                         "Results"};
  std::uniform_int_distribution<int> pick(0, 5), count(0, 4), nsec(1, 7);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::pair<std::string, std::vector<std::string>>> sections;
    for (int i = nsec(rng); i > 0; --i) sections.push_back({names[pick(rng)], Filler(count(rng), "s")});
    sections.push_back({"Abstract", Filler(1, "s")});
    const PaperDocument doc = MakePaper(sections);
    StateSpace space;
    try {
      space = BuildStateSpace(doc);
    } catch (const Error &e) {
      CHECK(e.kind() == ErrorKind::kEmptyStateSpace);
      continue;
    }
    ++checked;
    CHECK_FALSE(space.intro_states.empty());
    for (std::size_t i = 0; i < space.size(); ++i) {
      CHECK_FALSE(IsExcludedRole(doc.role_of(space.states[i])));
      if (i) CHECK(space.states[i - 1] < space.states[i]);
    }
    for (auto pos : space.intro_states) CHECK(pos < space.size());
  }
  CHECK(checked > 100);
}

TEST_CASE("parse_transcript plain text") {
  SUBCASE("stopwords removed") {
    const Transcript t = ParseTranscript("Let's begin with the motivation", {.remove_stopwords = true});
    REQUIRE(t.size() == 2);
    CHECK(t.tokens[0].surface == "begin");
    CHECK(t.tokens[1].surface == "motivation");
    CHECK(t.tokens[0].position == 1);
    CHECK(t.tokens[1].position == 4);
  }
  SUBCASE("stopwords kept") {
    const Transcript t = ParseTranscript("Hello world", {.remove_stopwords = false});
    REQUIRE(t.size() == 2);
    CHECK(t.tokens[0].surface == "hello");
    CHECK(t.tokens[1].surface == "world");
    CHECK(t.tokens[0].position == 0);
    CHECK(t.tokens[1].position == 1);
  }
  SUBCASE("default options drop stopwords") {
    CHECK(ParseTranscript("the model works").size() == 2);
  }
  SUBCASE("all stopwords") {
    CHECK(KindOf([] { ParseTranscript("the the the", {.remove_stopwords = true}); }) ==
          ErrorKind::kEmptyTranscript);
    CHECK(KindOf([] { ParseTranscript("  ... ", {}); }) == ErrorKind::kEmptyTranscript);
  }
}

TEST_CASE("parse_transcript JSON words with optional timestamps") {
  const Transcript t = ParseTranscript(
      R"({"words": [{"w": "So", "t": 0.5}, {"w": "Sentence-level", "t": 1.0}, {"w": "simplification"}]})",
      {.remove_stopwords = true});
  REQUIRE(t.size() == 3);
  CHECK(t.tokens[0].surface == "sentence");
  CHECK(t.tokens[1].surface == "level");
  CHECK(t.tokens[2].surface == "simplification");
  CHECK(t.tokens[0].position == 1);
  CHECK(KindOf([] { ParseTranscript(R"({"words": [{"x": 1}]})"); }) == ErrorKind::kFormat);
  CHECK(KindOf([] { ParseTranscript(R"({"words": [{"w": "a", "t": "late"}]})"); }) ==
        ErrorKind::kFormat);
  CHECK(KindOf([] { ParseTranscript(R"({"words": )"); }) == ErrorKind::kFormat);
}

TEST_CASE("parse_transcript keeps every token group when stopwords are kept") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> pieces = {"the", "Model", "x-y", ",", " ", "  ", "it's", "\n", "42"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    std::string s = "w ";
    for (int i = 0; i < 20; ++i) s += pieces[pick(rng)];
    const Transcript t = ParseTranscript(s, {.remove_stopwords = false});
    CHECK(t.size() == Tokenize(s).size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(t.tokens[i].position == i);
      CHECK(t.tokens[i].surface == AsciiLower(t.tokens[i].surface));
    }
  }
}
