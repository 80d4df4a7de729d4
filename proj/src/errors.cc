// src/errors.cc

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

#include "talkalign/errors.h"

namespace talkalign {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "IoError";
    case ErrorKind::kFormat: return "FormatError";
    case ErrorKind::kEmptyDocument: return "EmptyDocument";
    case ErrorKind::kEmptyStateSpace: return "EmptyStateSpace";
    case ErrorKind::kEmptyTranscript: return "EmptyTranscript";
    case ErrorKind::kEmptyTable: return "EmptyTable";
    case ErrorKind::kEmptyText: return "EmptyText";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpus";
    case ErrorKind::kBudgetTooSmall: return "BudgetTooSmall";
    case ErrorKind::kMissingAbstract: return "MissingAbstract";
    case ErrorKind::kUsage: return "UsageError";
    case ErrorKind::kContract: return "ContractViolation";
  }
  return "UnknownError";
}

int ExitCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return 2;
    case ErrorKind::kEmptyDocument:
    case ErrorKind::kEmptyStateSpace:
    case ErrorKind::kEmptyTranscript:
    case ErrorKind::kEmptyTable: return 3;
    case ErrorKind::kEmptyText: return 4;
    case ErrorKind::kEmptyCorpus: return 5;
    case ErrorKind::kBudgetTooSmall: return 6;
    case ErrorKind::kMissingAbstract: return 7;
    case ErrorKind::kFormat: return 8;
    case ErrorKind::kUsage: return 64;
    case ErrorKind::kContract: return 70;
  }
  return 1;
}

}  // namespace talkalign
