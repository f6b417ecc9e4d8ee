#pragma once

// Typed error taxonomy shared by every module. Each failure mode carries a
// stable enum value so callers (and tests) can match on the condition rather
// than on message text.

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperkube {

enum class Errc {
  // grid
  DuplicateInRow,
  DuplicateInColumn,
  SharedCell,
  BadComponentIndex,
  InvalidRow,
  IllegalCommutation,
  // cube
  FlatCountViolation,
  RightAngleViolation,
  VertexLabelViolation,
  ProjectionNotGrid,
  // hypercube
  CubeCountViolation,
  UnpairedMarking,
  CrossingViolation,
  OpenChain,
  MalformedSchematic,
  // moves
  BadIndex,
  NoUnitChain,
  NotBlockForm,
  // torus complex
  NonManifoldEdge,
  UnclassifiableCircle,
  // homology
  SizeBound,
  InexactDivision,
  // search
  NoRepairWithinBudget,
  BudgetExhausted,
  // I/O
  ParseError,
  ValidationError,
};

constexpr std::string_view to_string(Errc c) {
  switch (c) {
    case Errc::DuplicateInRow: return "DuplicateInRow";
    case Errc::DuplicateInColumn: return "DuplicateInColumn";
    case Errc::SharedCell: return "SharedCell";
    case Errc::BadComponentIndex: return "BadComponentIndex";
    case Errc::InvalidRow: return "InvalidRow";
    case Errc::IllegalCommutation: return "IllegalCommutation";
    case Errc::FlatCountViolation: return "FlatCountViolation";
    case Errc::RightAngleViolation: return "RightAngleViolation";
    case Errc::VertexLabelViolation: return "VertexLabelViolation";
    case Errc::ProjectionNotGrid: return "ProjectionNotGrid";
    case Errc::CubeCountViolation: return "CubeCountViolation";
    case Errc::UnpairedMarking: return "UnpairedMarking";
    case Errc::CrossingViolation: return "CrossingViolation";
    case Errc::OpenChain: return "OpenChain";
    case Errc::MalformedSchematic: return "MalformedSchematic";
    case Errc::BadIndex: return "BadIndex";
    case Errc::NoUnitChain: return "NoUnitChain";
    case Errc::NotBlockForm: return "NotBlockForm";
    case Errc::NonManifoldEdge: return "NonManifoldEdge";
    case Errc::UnclassifiableCircle: return "UnclassifiableCircle";
    case Errc::SizeBound: return "SizeBound";
    case Errc::InexactDivision: return "InexactDivision";
    case Errc::NoRepairWithinBudget: return "NoRepairWithinBudget";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
  }
  return "UnknownError";
}

/** Exception thrown by every operation that can reject its input. */
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hyperkube
