#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wo/error.hpp"

namespace wo {

// An ordinal strictly below w^w in Cantor normal form:
//   w^e1*c1 + ... + w^em*cm   with e1 > e2 > ... > em and all ci >= 1.
// The empty term list is 0. Exponent 0 carries the finite part.
// Values are immutable; all operations are pure.
class Ordinal {
 public:
  // (exponent, coefficient), exponents strictly decreasing.
  using Term = std::pair<uint64_t, uint64_t>;

  Ordinal() = default;  // zero

  static Ordinal from_nat(uint64_t n);
  static Ordinal one() { return from_nat(1); }
  static Ordinal omega();
  // Builds from a term list; throws PreconditionError if the CNF invariants fail.
  static Ordinal from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // True iff the value is a finite n (including 0); n returned through out.
  bool as_nat(uint64_t& out) const;

  std::strong_ordering operator<=>(const Ordinal& rhs) const;
  bool operator==(const Ordinal& rhs) const = default;

  // Canonical text: terms in decreasing-exponent order, "w^1" printed "w",
  // exponent-0 terms printed as bare naturals, coefficient 1 omitted.
  std::string to_string() const;

  friend Ordinal add(const Ordinal& a, const Ordinal& b);
  // a*w = w^(e1+1) for a > 0; throws on zero input.
  friend Ordinal mul_omega_right(const Ordinal& a);
  // w*a: shifts every exponent up by one; w*0 = 0.
  friend Ordinal mul_omega_left(const Ordinal& a);
  // The unique (beta, n) with a = w*beta + n.
  friend std::pair<Ordinal, uint64_t> split_limit_finite(const Ordinal& a);
  friend Ordinal successor(const Ordinal& a);

  bool is_limit() const;  // a > 0 with no exponent-0 term
  bool is_successor() const { return !terms_.empty() && terms_.back().first == 0; }

 private:
  std::vector<Term> terms_;
};

// Grammar: ord := "0" | term ("+" term)* ; term := NAT | "w" ("^" NAT)? ("*" POSNAT)?
// Exponents must be strictly decreasing left to right; coefficients positive.
Ordinal parse_ordinal(const std::string& text);

enum class Cmp { LT, EQ, GT };
Cmp compare(const Ordinal& a, const Ordinal& b);

}  // namespace wo
