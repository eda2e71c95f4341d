#pragma once

#include <stdexcept>
#include <string>

namespace asch {

/// Failure categories surfaced by the library. Every thrown asch::Error
/// carries one of these codes so callers can dispatch without string
/// matching.
enum class Errc {
  composite_characteristic,
  reducible_modulus,
  field_mismatch,
  non_divisor_degree,
  norm_not_one,
  no_embedding,
  division_by_zero,
  singular_matrix,
  shape_mismatch,
  empty_generator_list,
  norm_condition_violated,
  retries_exhausted,
  order_cap_exceeded,
  singular_generator,
  not_prime_order,
  roots_of_unity_missing,
  not_absolutely_irreducible,
  not_normal,
  characters_differ,
  characteristic_two,
  no_order_two_automorphism,
  non_prime_degree,
  not_transitive,
  not_in_stabilizer,
  parse_error,
  validation_error,
  invariant_violation,
  unsupported,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::composite_characteristic: return "CompositeCharacteristic";
    case Errc::reducible_modulus: return "ReducibleModulus";
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::non_divisor_degree: return "NonDivisorDegree";
    case Errc::norm_not_one: return "NormNotOne";
    case Errc::no_embedding: return "NoEmbedding";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::singular_matrix: return "SingularMatrix";
    case Errc::shape_mismatch: return "ShapeMismatch";
    case Errc::empty_generator_list: return "EmptyGeneratorList";
    case Errc::norm_condition_violated: return "NormConditionViolated";
    case Errc::retries_exhausted: return "RetriesExhausted";
    case Errc::order_cap_exceeded: return "OrderCapExceeded";
    case Errc::singular_generator: return "SingularGenerator";
    case Errc::not_prime_order: return "NotPrimeOrder";
    case Errc::roots_of_unity_missing: return "RootsOfUnityMissing";
    case Errc::not_absolutely_irreducible: return "NotAbsolutelyIrreducible";
    case Errc::not_normal: return "NotNormal";
    case Errc::characters_differ: return "CharactersDiffer";
    case Errc::characteristic_two: return "CharacteristicTwo";
    case Errc::no_order_two_automorphism: return "NoOrderTwoAutomorphism";
    case Errc::non_prime_degree: return "NonPrimeDegree";
    case Errc::not_transitive: return "NotTransitive";
    case Errc::not_in_stabilizer: return "NotInStabilizer";
    case Errc::parse_error: return "ParseError";
    case Errc::validation_error: return "ValidationError";
    case Errc::invariant_violation: return "InvariantViolation";
    case Errc::unsupported: return "Unsupported";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) {
  throw Error(c, msg);
}

inline void require(bool ok, Errc c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

}  // namespace asch
