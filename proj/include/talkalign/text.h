// include/talkalign/text.h

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

// Low-level text utilities shared by ingestion and ROUGE scoring.

#ifndef TALKALIGN_TEXT_H_
#define TALKALIGN_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace talkalign {

/// Splits text into lowercase word tokens. Letters, digits and apostrophes
/// are kept; everything else separates tokens. Leading and trailing
/// apostrophes are trimmed (quotes), so no token is empty or all-apostrophe.
/// Non-ASCII code points are treated as letters unless they fall in a
/// punctuation / symbol block. Lowercasing covers ASCII and Latin-1.
std::vector<std::string> Tokenize(std::string_view text);

/// Number of whitespace-delimited words in `text`.
std::size_t CountWords(std::string_view text);

/// Splits on ASCII whitespace; no empty pieces.
std::vector<std::string_view> SplitWhitespace(std::string_view text);

/// Fallback sentence splitter for unsplit section text: breaks after '.',
/// '?' or '!' when followed by whitespace and an uppercase letter.
std::vector<std::string> SplitSentences(std::string_view text);

/// Built-in English stopword list membership. Expects a lowercase token as
/// produced by Tokenize().
bool IsStopword(std::string_view token);

/// Porter suffix stripper for lowercase ASCII words, as in the author's
/// reference release (which maps "bli" -> "ble" and "logi" -> "log"). Words
/// with other bytes or of length <= 2 are returned unchanged.
std::string PorterStem(std::string_view word);

/// Trims ASCII whitespace from both ends.
std::string_view Trim(std::string_view s);

/// ASCII lowercase copy.
std::string AsciiLower(std::string_view s);

}  // namespace talkalign

#endif  // TALKALIGN_TEXT_H_
