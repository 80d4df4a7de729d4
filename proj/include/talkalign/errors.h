// include/talkalign/errors.h

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

#ifndef TALKALIGN_ERRORS_H_
#define TALKALIGN_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace talkalign {

/// Error classes raised by the library. Each maps to one CLI exit code.
enum class ErrorKind {
  kIo,               // file missing or unreadable
  kFormat,           // malformed JSON / embedding line
  kEmptyDocument,
  kEmptyStateSpace,
  kEmptyTranscript,
  kEmptyTable,
  kEmptyText,        // ROUGE input empty after tokenization
  kEmptyCorpus,
  kBudgetTooSmall,
  kMissingAbstract,
  kUsage,
  kContract,         // caller broke a precondition
};

/// Stable name used on stderr and in batch manifests.
std::string_view ErrorKindName(ErrorKind kind);

/// Process exit code for an error class.
///   2 I/O, 3 empty domain object (document / state space / transcript /
///   embedding table), 4 empty text, 5 empty corpus, 6 budget too small,
///   7 missing abstract, 8 format, 64 usage, 70 contract violation.
int ExitCode(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace talkalign

#endif  // TALKALIGN_ERRORS_H_
