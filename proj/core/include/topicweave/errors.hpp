#pragma once

#include <stdexcept>
#include <string>

namespace topicweave {

// Broad failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  Input,       // malformed or unreadable input
  Degenerate,  // pipeline reached a state with nothing left to work on
  Infeasible,  // dataset/graph request cannot be satisfied
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define TOPICWEAVE_DEFINE_ERROR(Name, Kind)                  \
  class Name : public Error {                                \
   public:                                                   \
    explicit Name(const std::string& what)                   \
        : Error(ErrorKind::Kind, #Name ": " + what) {}       \
  }

TOPICWEAVE_DEFINE_ERROR(InputError, Input);
TOPICWEAVE_DEFINE_ERROR(EmptyDocument, Input);
TOPICWEAVE_DEFINE_ERROR(DomainError, Input);
TOPICWEAVE_DEFINE_ERROR(TooManyLabels, Input);
TOPICWEAVE_DEFINE_ERROR(EmptyVocabulary, Degenerate);
TOPICWEAVE_DEFINE_ERROR(EmptyGraph, Degenerate);
TOPICWEAVE_DEFINE_ERROR(DegenerateData, Degenerate);
TOPICWEAVE_DEFINE_ERROR(InfeasibleGraph, Infeasible);
TOPICWEAVE_DEFINE_ERROR(DatasetInfeasible, Infeasible);
TOPICWEAVE_DEFINE_ERROR(InsufficientParagraphs, Infeasible);

#undef TOPICWEAVE_DEFINE_ERROR

}  // namespace topicweave
