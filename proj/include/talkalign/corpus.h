// include/talkalign/corpus.h

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

// Paper and transcript ingestion, cleaning, and the HMM state space.

#ifndef TALKALIGN_CORPUS_H_
#define TALKALIGN_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace talkalign {

using SentenceId = std::uint32_t;

enum class SectionRole { kAbstract, kIntroduction, kRelatedWork, kAcknowledgments, kBody };

std::string_view SectionRoleName(SectionRole role);

/// Case-insensitive substring match on the section heading:
/// "abstract", "introduction", "related work", "acknowledg", else body.
SectionRole RoleFromName(std::string_view name);

/// Abstract, related work and acknowledgments never become hidden states.
inline bool IsExcludedRole(SectionRole role) {
  return role == SectionRole::kAbstract || role == SectionRole::kRelatedWork ||
         role == SectionRole::kAcknowledgments;
}

struct Sentence {
  SentenceId id = 0;
  std::string text;
  std::vector<std::string> tokens;
  std::size_t word_count = 0;
};

struct Section {
  std::string name;
  SectionRole role = SectionRole::kBody;
  std::vector<Sentence> sentences;
};

struct PaperDocument {
  std::string title;
  std::vector<Section> sections;

  std::size_t sentence_count() const;
  /// Sentence by document-wide id together with its section role.
  /// Linear in the number of sections.
  const Sentence &sentence(SentenceId id) const;
  SectionRole role_of(SentenceId id) const;
};

/// Parses the paper JSON format:
///   {"title": s, "sections": [{"name": s, "sentences": [s, ...]}]}
/// A section may carry "text" instead of "sentences"; it is then split with
/// SplitSentences(). Throws Error(kFormat) with the byte offset on malformed
/// JSON and Error(kEmptyDocument) when there are no sections or no sentences.
PaperDocument ParsePaper(std::string_view json);

/// Drops sentences starting with "copyright" (case-insensitive, after leading
/// whitespace) and sentences with fewer than kMinSentenceTokens tokens, then
/// renumbers ids densely.
inline constexpr std::size_t kMinSentenceTokens = 3;
PaperDocument CleanPaper(const PaperDocument &doc);

/// Hidden states of the alignment model: eligible sentences in paper order.
struct StateSpace {
  std::vector<SentenceId> states;
  /// Positions into `states` whose sentence is in an introduction section.
  std::vector<std::size_t> intro_states;
  std::size_t size() const { return states.size(); }
};

/// Throws Error(kEmptyStateSpace) when every sentence is excluded. When no
/// introduction-role section has sentences in the state space, the first
/// eligible section stands in for it.
StateSpace BuildStateSpace(const PaperDocument &doc);

struct TranscriptToken {
  std::string surface;
  std::size_t position = 0;  // index in the token stream before filtering
};

struct Transcript {
  std::vector<TranscriptToken> tokens;
  /// Tokens removed because no embedding exists for them.
  std::size_t dropped_oov = 0;
  std::size_t size() const { return tokens.size(); }
};

struct TranscriptOptions {
  bool remove_stopwords = true;
};

/// Accepts plain whitespace-delimited text or {"words": [{"w": s, "t": n}]}.
/// Input whose first non-space byte is '{' is treated as JSON; timestamps
/// are read and discarded. Throws Error(kEmptyTranscript) if nothing is left.
Transcript ParseTranscript(std::string_view input, const TranscriptOptions &options = {});

}  // namespace talkalign

#endif  // TALKALIGN_CORPUS_H_
