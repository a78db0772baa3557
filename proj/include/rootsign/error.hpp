#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rootsign {

enum class ErrorKind {
  // arithmetic
  zero_argument,
  trivial_character,
  not_real,
  zero_value,
  overflow,
  invalid_field,
  // groups and representations
  group_mismatch,
  group_too_large,
  // curves
  singular_model,
  off_curve,
  not_a_subgroup,
  not_torsion,
  not_minimal,
  factorization,
  // P^1 geometry
  empty_divisor,
  higher_order_pole,
  overlap,
  wrong_divisor,
  // fibers and engine
  unsupported_type,
  invalid_fiber,
  nontrivial_det,
  missing_local_data,
  missing_input,
  not_tame,
  not_valid_rep,
  unsupported_reduction,
  // I/O
  parse_error,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::zero_argument: return "ZeroArgument";
    case ErrorKind::trivial_character: return "TrivialCharacter";
    case ErrorKind::not_real: return "NotReal";
    case ErrorKind::zero_value: return "Zero";
    case ErrorKind::overflow: return "ArithmeticOverflow";
    case ErrorKind::invalid_field: return "InvalidField";
    case ErrorKind::group_mismatch: return "GroupMismatch";
    case ErrorKind::group_too_large: return "GroupTooLarge";
    case ErrorKind::singular_model: return "SingularModel";
    case ErrorKind::off_curve: return "OffCurve";
    case ErrorKind::not_a_subgroup: return "NotASubgroup";
    case ErrorKind::not_torsion: return "NotTorsion";
    case ErrorKind::not_minimal: return "NotMinimal";
    case ErrorKind::factorization: return "Factorization";
    case ErrorKind::empty_divisor: return "EmptyD";
    case ErrorKind::higher_order_pole: return "HigherOrderPole";
    case ErrorKind::overlap: return "Overlap";
    case ErrorKind::wrong_divisor: return "WrongDivisor";
    case ErrorKind::unsupported_type: return "UnsupportedType";
    case ErrorKind::invalid_fiber: return "InvalidFiber";
    case ErrorKind::nontrivial_det: return "NontrivialDet";
    case ErrorKind::missing_local_data: return "MissingLocalData";
    case ErrorKind::missing_input: return "MissingInput";
    case ErrorKind::not_tame: return "NotTame";
    case ErrorKind::not_valid_rep: return "NotValidRep";
    case ErrorKind::unsupported_reduction: return "UnsupportedReduction";
    case ErrorKind::parse_error: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// CLI exit status for an error: 3 for missing data, 1 for malformed input,
/// 2 for every other precondition failure.
constexpr int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::missing_local_data:
    case ErrorKind::missing_input:
      return 3;
    case ErrorKind::parse_error:
      return 1;
    default:
      return 2;
  }
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace rootsign
