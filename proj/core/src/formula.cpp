#include "implreg/formula.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "implreg/error.hpp"

namespace implreg {

double eval_term(Term term, double x, double y) {
  switch (term) {
    case Term::kOne:
      return 1.0;
    case Term::kX:
      return x;
    case Term::kY:
      return y;
    case Term::kXY:
      return x * y;
    case Term::kXSquared:
      return x * x;
    case Term::kInvX:
      if (x == 0.0) throw DomainError("1/x evaluated at x = 0");
      return 1.0 / x;
  }
  throw std::logic_error("unknown term");
}

std::string_view term_symbol(Term term) noexcept {
  switch (term) {
    case Term::kOne:
      return "1";
    case Term::kX:
      return "x";
    case Term::kY:
      return "y";
    case Term::kXY:
      return "x*y";
    case Term::kXSquared:
      return "x^2";
    case Term::kInvX:
      return "1/x";
  }
  return "?";
}

ModelSpec ModelSpec::make(Term response, std::vector<Term> predictors, bool intercept) {
  if (response == Term::kXSquared || response == Term::kInvX) {
    throw std::invalid_argument("response must be one of 1, x, y, x*y");
  }
  if (response == Term::kOne && intercept) {
    throw std::invalid_argument("non-response model cannot carry an intercept");
  }
  for (std::size_t i = 0; i < predictors.size(); ++i) {
    if (predictors[i] == Term::kOne) {
      throw std::invalid_argument("the constant term is expressed through the intercept flag");
    }
    if (predictors[i] == response) {
      throw std::invalid_argument("response appears among the predictors");
    }
    if (std::find(predictors.begin(), predictors.begin() + static_cast<std::ptrdiff_t>(i),
                  predictors[i]) != predictors.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw std::invalid_argument("duplicate predictor");
    }
  }
  if (predictors.empty() && !intercept) {
    throw std::invalid_argument("model has no coefficient to estimate");
  }
  return ModelSpec(response, std::move(predictors), intercept);
}

bool ModelSpec::has_predictor(Term term) const noexcept {
  return std::find(predictors_.begin(), predictors_.end(), term) != predictors_.end();
}

bool ModelSpec::uses(Term term) const noexcept {
  if (term == Term::kOne) return intercept_ || response_ == Term::kOne;
  return response_ == term || has_predictor(term);
}

ModelSpec ModelSpec::without(Term predictor) const {
  std::vector<Term> kept;
  for (Term t : predictors_) {
    if (t != predictor) kept.push_back(t);
  }
  return make(response_, std::move(kept), intercept_);
}

namespace {

enum class TokenKind { kOne, kTwo, kX, kY, kXY, kTilde, kPlus, kStar, kSlash, kCaret, kEnd };

struct Token {
  TokenKind kind;
  std::size_t pos;
};

[[noreturn]] void fail(const std::string& what, std::size_t pos) {
  throw ParseError(what + " at position " + std::to_string(pos), ParseError::Where::kPosition,
                   pos);
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
      const std::string_view word = text.substr(start, i - start);
      if (word == "x") {
        out.push_back({TokenKind::kX, start});
      } else if (word == "y") {
        out.push_back({TokenKind::kY, start});
      } else if (word == "xy") {
        out.push_back({TokenKind::kXY, start});
      } else {
        fail("unknown token '" + std::string(word) + "'", start);
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      const std::string_view number = text.substr(start, i - start);
      if (number == "1") {
        out.push_back({TokenKind::kOne, start});
      } else if (number == "2") {
        out.push_back({TokenKind::kTwo, start});
      } else {
        fail("unknown token '" + std::string(number) + "'", start);
      }
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '~': kind = TokenKind::kTilde; break;
      case '+': kind = TokenKind::kPlus; break;
      case '*': kind = TokenKind::kStar; break;
      case '/': kind = TokenKind::kSlash; break;
      case '^': kind = TokenKind::kCaret; break;
      default: fail(std::string("unknown token '") + c + "'", start);
    }
    out.push_back({kind, start});
    ++i;
  }
  out.push_back({TokenKind::kEnd, text.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ModelSpec parse() {
    if (peek().kind == TokenKind::kEnd) fail("empty model", peek().pos);
    const std::size_t response_pos = peek().pos;
    const Term response = parse_term();
    if (response == Term::kXSquared || response == Term::kInvX) {
      fail("response must be one of 1, x, y, x*y", response_pos);
    }
    expect(TokenKind::kTilde, "expected '~'");
    if (peek().kind == TokenKind::kEnd) fail("empty predictor list", peek().pos);

    std::vector<Term> predictors;
    bool intercept = false;
    for (;;) {
      const std::size_t pos = peek().pos;
      const Term term = parse_term();
      if (term == Term::kOne) {
        if (response == Term::kOne) fail("intercept in a non-response model", pos);
        if (intercept) fail("duplicate predictor '1'", pos);
        intercept = true;
      } else {
        if (term == response) fail("response repeated as predictor", pos);
        if (std::find(predictors.begin(), predictors.end(), term) != predictors.end()) {
          fail("duplicate predictor '" + std::string(term_symbol(term)) + "'", pos);
        }
        predictors.push_back(term);
      }
      if (peek().kind == TokenKind::kEnd) break;
      expect(TokenKind::kPlus, "expected '+'");
    }
    return ModelSpec::make(response, std::move(predictors), intercept);
  }

 private:
  const Token& peek() const { return tokens_[index_]; }
  const Token& next() { return tokens_[index_++]; }

  void expect(TokenKind kind, const char* message) {
    if (peek().kind != kind) fail(message, peek().pos);
    ++index_;
  }

  bool accept(TokenKind kind) {
    if (peek().kind != kind) return false;
    ++index_;
    return true;
  }

  Term parse_term() {
    const Token& tok = next();
    switch (tok.kind) {
      case TokenKind::kOne:
        if (accept(TokenKind::kSlash)) {
          expect(TokenKind::kX, "expected 'x' after '1/'");
          return Term::kInvX;
        }
        return Term::kOne;
      case TokenKind::kX:
        if (accept(TokenKind::kStar)) {
          expect(TokenKind::kY, "expected 'y' after 'x*'");
          return Term::kXY;
        }
        if (accept(TokenKind::kCaret)) {
          expect(TokenKind::kTwo, "expected '2' after 'x^'");
          return Term::kXSquared;
        }
        return Term::kX;
      case TokenKind::kY:
        return Term::kY;
      case TokenKind::kXY:
        return Term::kXY;
      case TokenKind::kEnd:
        fail("expected a term", tok.pos);
      default:
        fail("unexpected token", tok.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

}  // namespace

ModelSpec parse_model(std::string_view text) { return Parser(tokenize(text)).parse(); }

std::string format_model(const ModelSpec& spec) {
  std::string out(term_symbol(spec.response()));
  out += " ~ ";
  bool first = true;
  auto append = [&](std::string_view s) {
    if (!first) out += " + ";
    out += s;
    first = false;
  };
  if (spec.intercept()) append("1");
  for (Term t : spec.predictors()) append(term_symbol(t));
  return out;
}

std::vector<ModelSpec> enumerate_family() {
  return {
      ModelSpec::make(Term::kY, {Term::kX, Term::kXY}, true),
      ModelSpec::make(Term::kX, {Term::kY, Term::kXY}, true),
      ModelSpec::make(Term::kXY, {Term::kX, Term::kY}, true),
      ModelSpec::make(Term::kOne, {Term::kX, Term::kY, Term::kXY}, false),
  };
}

}  // namespace implreg
