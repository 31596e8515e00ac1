#include "catrank/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace catrank {

Ordinal Ordinal::finite(std::uint64_t n) {
  Ordinal o;
  if (n > 0) o.terms_.push_back(Term{Ordinal{}, n});
  return o;
}

Ordinal Ordinal::omega() { return power(finite(1)); }

Ordinal Ordinal::power(Ordinal exponent, std::uint64_t coefficient) {
  Ordinal o;
  if (coefficient > 0) o.terms_.push_back(Term{std::move(exponent), coefficient});
  return o;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
    if (cmp(terms[i].exponent, terms[i + 1].exponent) != Order::greater)
      throw std::invalid_argument("Ordinal::from_terms: exponents not strictly descending");
  }
  for (const Term& t : terms) {
    if (t.coefficient == 0) throw std::invalid_argument("Ordinal::from_terms: zero coefficient");
  }
  Ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::uint64_t Ordinal::finite_value() const {
  if (terms_.empty()) return 0;
  return terms_[0].coefficient;
}

bool Ordinal::is_limit() const {
  return !terms_.empty() && !terms_.back().exponent.is_zero();
}

bool Ordinal::operator==(const Ordinal& other) const { return cmp(*this, other) == Order::equal; }

Order cmp(const Ordinal& a, const Ordinal& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  const std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    Order e = cmp(ta[i].exponent, tb[i].exponent);
    if (e != Order::equal) return e;
    if (ta[i].coefficient != tb[i].coefficient)
      return ta[i].coefficient < tb[i].coefficient ? Order::less : Order::greater;
  }
  if (ta.size() == tb.size()) return Order::equal;
  return ta.size() < tb.size() ? Order::less : Order::greater;
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = b.terms().front().exponent;
  std::vector<Ordinal::Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  for (const auto& t : a.terms()) {
    if (cmp(t.exponent, lead) == Order::greater) out.push_back(t);
  }
  // Merge coefficients when a retains a term of the leading exponent of b.
  std::uint64_t carry = 0;
  for (const auto& t : a.terms()) {
    if (cmp(t.exponent, lead) == Order::equal) carry = t.coefficient;
  }
  bool first = true;
  for (const auto& t : b.terms()) {
    Ordinal::Term copy = t;
    if (first) {
      if (copy.coefficient > UINT64_MAX - carry)
        throw std::overflow_error("ordinal coefficient overflow in add");
      copy.coefficient += carry;
      first = false;
    }
    out.push_back(std::move(copy));
  }
  return Ordinal::from_terms(std::move(out));
}

Ordinal succ(const Ordinal& a) { return add(a, Ordinal::finite(1)); }

bool is_limit(const Ordinal& a) { return a.is_limit(); }

Ordinal pred(const Ordinal& a) {
  if (!a.is_successor()) throw std::invalid_argument("pred requires a successor ordinal");
  std::vector<Ordinal::Term> terms = a.terms();
  if (terms.back().coefficient == 1) {
    terms.pop_back();
  } else {
    terms.back().coefficient -= 1;
  }
  return Ordinal::from_terms(std::move(terms));
}

Ordinal sup_finite(const std::vector<Ordinal>& xs) {
  Ordinal best;
  for (const Ordinal& x : xs) {
    if (x > best) best = x;
  }
  return best;
}

Ordinal sup_linear(const LinearFamily& f) { return add(f.base, Ordinal::omega()); }

bool OrdinalExt::operator==(const OrdinalExt& other) const {
  return cmp(*this, other) == Order::equal;
}

Order cmp(const OrdinalExt& a, const OrdinalExt& b) {
  if (a.is_lambda() && b.is_lambda()) return Order::equal;
  if (a.is_lambda()) return Order::greater;
  if (b.is_lambda()) return Order::less;
  return cmp(a.small(), b.small());
}

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal parse_full() {
    Ordinal o = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after ordinal");
    return o;
  }

  OrdinalExt parse_full_ext() {
    skip_ws();
    if (match_word("LAMBDA")) {
      skip_ws();
      if (pos_ != text_.size()) fail("trailing input after LAMBDA");
      return OrdinalExt::lambda();
    }
    return OrdinalExt(parse_full());
  }

 private:
  Ordinal parse_sum() {
    Ordinal acc = parse_term();
    while (true) {
      skip_ws();
      if (!match('+')) break;
      acc = add(acc, parse_term());
    }
    return acc;
  }

  Ordinal parse_term() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected ordinal term");
    char c = text_[pos_];
    if (c == 'w') {
      ++pos_;
      Ordinal expo = Ordinal::finite(1);
      skip_ws();
      if (match('^')) expo = parse_expo();
      std::uint64_t coeff = 1;
      skip_ws();
      if (match('*')) {
        skip_ws();
        coeff = parse_int();
      }
      return Ordinal::power(std::move(expo), coeff);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Ordinal::finite(parse_int());
    fail("expected 'w' or an integer");
  }

  // Exponents without parentheses are limited to integers and pure towers
  // (w, w^w, ...); anything with '+' or '*' must be parenthesized so that
  // printing stays unambiguous.
  Ordinal parse_expo() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected exponent");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Ordinal inner = parse_sum();
      skip_ws();
      if (!match(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'w') {
      ++pos_;
      Ordinal expo = Ordinal::finite(1);
      skip_ws();
      if (match('^')) expo = parse_expo();
      return Ordinal::power(std::move(expo));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Ordinal::finite(parse_int());
    fail("expected exponent");
  }

  std::uint64_t parse_int() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer");
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (UINT64_MAX - digit) / 10) fail("integer literal too large");
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool match(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool match_word(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) {
    throw ordinal_parse_error(message, pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// An exponent prints without parentheses iff it is an integer or a pure
// coefficient-1 tower.
bool expo_is_atomic(const Ordinal& o) {
  if (o.is_finite()) return true;
  if (o.terms().size() != 1) return false;
  const auto& t = o.terms()[0];
  return t.coefficient == 1 && expo_is_atomic(t.exponent);
}

void print_term(std::ostream& os, const Ordinal::Term& t) {
  if (t.exponent.is_zero()) {
    os << t.coefficient;
    return;
  }
  os << "w";
  if (!(t.exponent.is_finite() && t.exponent.finite_value() == 1)) {
    os << "^";
    if (expo_is_atomic(t.exponent)) {
      os << print_ordinal(t.exponent);
    } else {
      os << "(" << print_ordinal(t.exponent) << ")";
    }
  }
  if (t.coefficient != 1) os << "*" << t.coefficient;
}

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return OrdinalParser(text).parse_full(); }

OrdinalExt parse_ordinal_ext(std::string_view text) { return OrdinalParser(text).parse_full_ext(); }

std::string print_ordinal(const Ordinal& o) {
  if (o.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : o.terms()) {
    if (!first) os << " + ";
    print_term(os, t);
    first = false;
  }
  return os.str();
}

std::string print_ordinal(const OrdinalExt& o) {
  return o.is_lambda() ? "LAMBDA" : print_ordinal(o.small());
}

}  // namespace catrank
