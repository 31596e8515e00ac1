#ifndef CATRANK_ORDINAL_HPP
#define CATRANK_ORDINAL_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace catrank {

// Ordinals below epsilon_0 in Cantor normal form:
//   w^e1 * c1 + w^e2 * c2 + ... + w^ek * ck,  e1 > e2 > ... > ek, ci >= 1.
// The empty term list is 0. Exponents are ordinals themselves; the
// representation is canonical, so equality is structural.
class Ordinal {
 public:
  struct Term;

  Ordinal() = default;  // zero

  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  // Builds w^exponent * coefficient (coefficient >= 1).
  static Ordinal power(Ordinal exponent, std::uint64_t coefficient = 1);
  // Terms must already be in strictly descending exponent order.
  static Ordinal from_terms(std::vector<Term> terms);

  bool is_zero() const;
  bool is_finite() const;
  // Precondition: is_finite().
  std::uint64_t finite_value() const;
  bool is_limit() const;
  bool is_successor() const { return !is_zero() && !is_limit(); }

  const std::vector<Term>& terms() const { return terms_; }

  bool operator==(const Ordinal& other) const;
  bool operator!=(const Ordinal& other) const { return !(*this == other); }

 private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coefficient = 1;
};

inline bool Ordinal::is_zero() const { return terms_.empty(); }

enum class Order { less, equal, greater };

Order cmp(const Ordinal& a, const Ordinal& b);

inline bool operator<(const Ordinal& a, const Ordinal& b) { return cmp(a, b) == Order::less; }
inline bool operator<=(const Ordinal& a, const Ordinal& b) { return cmp(a, b) != Order::greater; }
inline bool operator>(const Ordinal& a, const Ordinal& b) { return cmp(a, b) == Order::greater; }
inline bool operator>=(const Ordinal& a, const Ordinal& b) { return cmp(a, b) != Order::less; }

// Ordinal sum in CNF. Not commutative: small leading terms of `a` are
// absorbed when `b` starts with a larger exponent.
Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal succ(const Ordinal& a);
bool is_limit(const Ordinal& a);
// Predecessor of a successor ordinal; throws std::invalid_argument otherwise.
Ordinal pred(const Ordinal& a);

// Least upper bound of a finite set; empty set has sup 0.
Ordinal sup_finite(const std::vector<Ordinal>& xs);

// The N-indexed family n |-> base + n. Its sup is base + w.
struct LinearFamily {
  Ordinal base;
};

Ordinal sup_linear(const LinearFamily& f);

// An ordinal extended with the symbolic top element Lambda, which compares
// strictly greater than every small ordinal.
class OrdinalExt {
 public:
  OrdinalExt() : small_(Ordinal{}) {}
  OrdinalExt(Ordinal o) : small_(std::move(o)) {}
  static OrdinalExt lambda() { return OrdinalExt(LambdaTag{}); }

  bool is_lambda() const { return !small_.has_value(); }
  bool is_small() const { return small_.has_value(); }
  // Precondition: is_small().
  const Ordinal& small() const { return *small_; }

  bool operator==(const OrdinalExt& other) const;
  bool operator!=(const OrdinalExt& other) const { return !(*this == other); }

 private:
  struct LambdaTag {};
  explicit OrdinalExt(LambdaTag) {}
  std::optional<Ordinal> small_;
};

Order cmp(const OrdinalExt& a, const OrdinalExt& b);

inline bool operator<(const OrdinalExt& a, const OrdinalExt& b) { return cmp(a, b) == Order::less; }
inline bool operator<=(const OrdinalExt& a, const OrdinalExt& b) { return cmp(a, b) != Order::greater; }
inline bool operator>(const OrdinalExt& a, const OrdinalExt& b) { return cmp(a, b) == Order::greater; }
inline bool operator>=(const OrdinalExt& a, const OrdinalExt& b) { return cmp(a, b) != Order::less; }

// Raised on malformed ordinal text; `position` is a 0-based byte offset.
class ordinal_parse_error : public std::runtime_error {
 public:
  ordinal_parse_error(const std::string& message, std::size_t position)
      : std::runtime_error(message), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar (whitespace-insensitive):
//   ordinal := "0" | term ("+" term)*
//   term    := "w" ("^" expo)? ("*" INT)? | INT
//   expo    := "(" ordinal ")" | "w" ("^" expo)? | INT
// Non-canonical input (e.g. "w + w") is normalized via ordinal addition,
// never rejected.
Ordinal parse_ordinal(std::string_view text);
OrdinalExt parse_ordinal_ext(std::string_view text);

std::string print_ordinal(const Ordinal& o);
std::string print_ordinal(const OrdinalExt& o);

}  // namespace catrank

#endif  // CATRANK_ORDINAL_HPP
