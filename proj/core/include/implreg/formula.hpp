#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace implreg {

/// Basis functions of the implicit model family.
enum class Term { kOne, kX, kY, kXY, kXSquared, kInvX };

inline constexpr std::array<Term, 6> kAllTerms = {Term::kOne, Term::kX, Term::kY,
                                                  Term::kXY, Term::kXSquared, Term::kInvX};

/// Evaluates a term at one observation. Throws DomainError for 1/x at x == 0.
double eval_term(Term term, double x, double y);

/// Canonical text: "1", "x", "y", "x*y", "x^2", "1/x".
std::string_view term_symbol(Term term) noexcept;

/// An implicit model `response ~ [1 +] predictors`.
///
/// A response of Term::kOne is the non-response form (the constant 1 on the
/// left); it never carries an intercept. Construct through make() or
/// parse_model() to get the invariants checked.
class ModelSpec {
 public:
  /// Throws std::invalid_argument when the invariants do not hold.
  static ModelSpec make(Term response, std::vector<Term> predictors, bool intercept);

  Term response() const noexcept { return response_; }
  const std::vector<Term>& predictors() const noexcept { return predictors_; }
  bool intercept() const noexcept { return intercept_; }
  bool is_non_response() const noexcept { return response_ == Term::kOne; }

  /// Number of estimated coefficients (intercept included).
  std::size_t coefficient_count() const noexcept {
    return predictors_.size() + (intercept_ ? 1 : 0);
  }
  bool has_predictor(Term term) const noexcept;
  /// True if `term` appears anywhere in the model, response included.
  bool uses(Term term) const noexcept;

  /// Copy with one predictor removed. Throws std::invalid_argument if the
  /// result would have no coefficient left.
  ModelSpec without(Term predictor) const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

 private:
  ModelSpec(Term response, std::vector<Term> predictors, bool intercept)
      : response_(response), predictors_(std::move(predictors)), intercept_(intercept) {}

  Term response_ = Term::kY;
  std::vector<Term> predictors_;
  bool intercept_ = true;
};

/// Parses `response ~ term (+ term)*`. Whitespace is insignificant and `xy`
/// is accepted for `x*y`. Throws ParseError carrying the character offset.
ModelSpec parse_model(std::string_view text);

/// Canonical text, e.g. "y ~ 1 + x + x*y". Parses back to an equal spec.
std::string format_model(const ModelSpec& spec);

/// The three rotations and the non-response model over {1, x, y, xy}.
std::vector<ModelSpec> enumerate_family();

}  // namespace implreg
