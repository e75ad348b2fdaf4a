#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcx/linalg.hpp"
#include "gcx/polynomial.hpp"
#include "gcx/realroots.hpp"

namespace gcx {

enum class Outcome { GConvex, NotGConvex, Unknown };

enum class CertificateKind {
  NoCriticalPoint,
  UnivariateOddRoot,
  QuadraticPSD,
  QuadraticNoCritical,
  MonomialEvenPower,
  Separable,
  ConstantFunction,
};

enum class WitnessKind {
  EvenMultiplicityRoot,
  MultipleOddRoots,
  NegativeLeadingCofactor,
  IndefiniteHessianAtCritical,
  MonomialStructure,
  SeparableFailure,
};

struct Certificate {
  CertificateKind kind;
  // UnivariateOddRoot
  std::optional<RootRecord> root;       // interval + odd multiplicity 2r-1
  bool cofactor_positive = false;
  // MonomialEvenPower
  int variable_index = -1;
  int degree = 0;
  Rational coefficient;
  // Separable
  std::vector<Certificate> blocks;
};

struct Witness {
  WitnessKind kind;
  std::vector<RootRecord> roots;        // offending root interval(s)
  std::optional<RatVec> critical_point; // IndefiniteHessianAtCritical
  std::string detail;                   // violated condition, human readable
  int failing_block = -1;               // SeparableFailure
};

struct Verdict {
  Outcome outcome;
  std::optional<Certificate> certificate;  // populated iff GConvex
  std::optional<Witness> witness;          // populated iff NotGConvex
  std::string reason;                      // populated iff Unknown
};

/// f = 1/2 x^T A x + b^T x + c with A symmetric.
struct QuadraticForm {
  RatMat A;
  RatVec b;
  Rational c;
  int n() const { return static_cast<int>(b.size()); }
};

Verdict classify_univariate(const Polynomial& f);  // NotUnivariate if >1 var
QuadraticForm to_quadratic_form(const Polynomial& f);  // DegreeTooHigh if deg > 2
Verdict classify_quadratic(const QuadraticForm& q);
Verdict classify_monomial(const Polynomial& f);  // NotMonomial unless 1 term

struct SeparableBlock {
  std::vector<int> variables;  // ambient indices, ascending
  Polynomial summand;          // in ambient arity
};

/// Finest partition by the variable-interaction graph; the constant term goes
/// to the first block. Sum of summands reproduces f. Empty for constants.
std::vector<SeparableBlock> separable_partition(const Polynomial& f);

/// Dispatcher: constant -> univariate -> monomial -> quadratic -> separable.
Verdict classify(const Polynomial& f);

struct CriticalPointReport {
  bool is_critical;
  bool hessian_psd;
};
CriticalPointReport check_necessary_at_critical(const Polynomial& f, const RatVec& point);
std::vector<CriticalPointReport> check_necessary_at_critical(
    const Polynomial& f, const std::vector<RatVec>& points);

struct CriticalCount {
  enum Kind { Count, Continuum, Unknown } kind;
  long count = 0;  // valid when kind == Count
  // >= 2 isolated critical points rules out every geodesically complete
  // connection.
  bool complete_connection_obstruction() const { return kind == Count && count >= 2; }
};
CriticalCount count_isolated_critical_points(const Polynomial& f);

/// True when f provably has no critical point (univariate derivative without
/// real roots, quadratic rank jump, linear monomial, or a separable block
/// with one of those); nullopt when undecided.
std::optional<bool> has_no_critical_point(const Polynomial& f);

std::string outcome_name(Outcome o);
std::string certificate_kind_name(CertificateKind k);
std::string witness_kind_name(WitnessKind k);

}  // namespace gcx
