#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace topicrank {

// Failure taxonomy shared by all modules. The CLI maps categories to exit
// codes; library callers can switch on code().
enum class Err {
  // input / parse
  ParseError,
  DanglingCitation,
  UnknownJournal,
  ShapeMismatch,
  InvalidShape,
  InvalidArgument,
  // empty results
  AllDocumentsRemoved,
  EmptyVocabulary,
  NoComparablePairs,
  TooFewPoints,
  // numerical failures
  ZeroLengthDocument,
  ZeroRow,
  RankDeficient,
  SingularSystem,
  AllZeroSolution,
  CollapsedVertices,
  // model degeneracy
  DegenerateLeadVector,
  DegenerateSimplex,
  Separation,
  DisconnectedComparisonGraph,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

// Exit-code category used by the CLI: 2 input/parse, 3 empty result,
// 4 numerical failure, 5 model degeneracy.
inline int exit_category(Err code) {
  switch (code) {
    case Err::ParseError:
    case Err::DanglingCitation:
    case Err::UnknownJournal:
    case Err::ShapeMismatch:
    case Err::InvalidShape:
    case Err::InvalidArgument:
      return 2;
    case Err::AllDocumentsRemoved:
    case Err::EmptyVocabulary:
    case Err::NoComparablePairs:
    case Err::TooFewPoints:
      return 3;
    case Err::ZeroLengthDocument:
    case Err::ZeroRow:
    case Err::RankDeficient:
    case Err::SingularSystem:
    case Err::AllZeroSolution:
    case Err::CollapsedVertices:
      return 4;
    default:
      return 5;
  }
}

}  // namespace topicrank
