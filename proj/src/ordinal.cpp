#include "wo/ordinal.hpp"

#include <cctype>

namespace wo {

namespace {

uint64_t checked_add(uint64_t a, uint64_t b) {
  uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw PreconditionError("ordinal coefficient overflow");
  return r;
}

}  // namespace

Ordinal Ordinal::from_nat(uint64_t n) {
  Ordinal o;
  if (n > 0) o.terms_.emplace_back(0, n);
  return o;
}

Ordinal Ordinal::omega() {
  Ordinal o;
  o.terms_.emplace_back(1, 1);
  return o;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].second == 0) throw PreconditionError("coefficient must be positive");
    if (i > 0 && terms[i - 1].first <= terms[i].first)
      throw PreconditionError("exponents must be strictly decreasing");
  }
  Ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

bool Ordinal::as_nat(uint64_t& out) const {
  if (terms_.empty()) {
    out = 0;
    return true;
  }
  if (terms_.size() == 1 && terms_[0].first == 0) {
    out = terms_[0].second;
    return true;
  }
  return false;
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& rhs) const {
  // Lexicographic on (exponent, coefficient) lists matches ordinal order in CNF.
  size_t n = std::min(terms_.size(), rhs.terms_.size());
  for (size_t i = 0; i < n; ++i) {
    if (auto c = terms_[i].first <=> rhs.terms_[i].first; c != 0) return c;
    if (auto c = terms_[i].second <=> rhs.terms_[i].second; c != 0) return c;
  }
  return terms_.size() <=> rhs.terms_.size();
}

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < terms_.size(); ++i) {
    auto [e, c] = terms_[i];
    if (i > 0) out += " + ";
    if (e == 0) {
      out += std::to_string(c);
    } else {
      out += "w";
      if (e > 1) out += "^" + std::to_string(e);
      if (c > 1) out += "*" + std::to_string(c);
    }
  }
  return out;
}

bool Ordinal::is_limit() const { return !terms_.empty() && terms_.back().first > 0; }

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  uint64_t lead = b.terms_.front().first;
  Ordinal out;
  for (const auto& t : a.terms_) {
    if (t.first > lead) out.terms_.push_back(t);
  }
  out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
  // Terms of a below b's leading exponent are absorbed; an equal leading
  // exponent merges coefficients instead.
  for (const auto& t : a.terms_) {
    if (t.first == lead) {
      out.terms_[out.terms_.size() - b.terms_.size()].second =
          checked_add(t.second, b.terms_.front().second);
      break;
    }
  }
  return out;
}

Ordinal mul_omega_right(const Ordinal& a) {
  if (a.is_zero()) throw PreconditionError("0*w is not defined here (need a > 0)");
  uint64_t e1;
  if (__builtin_add_overflow(a.terms_.front().first, uint64_t{1}, &e1))
    throw PreconditionError("ordinal exponent overflow");
  Ordinal out;
  out.terms_.emplace_back(e1, 1);
  return out;
}

Ordinal mul_omega_left(const Ordinal& a) {
  Ordinal out;
  for (auto [e, c] : a.terms_) {
    uint64_t e1;
    if (__builtin_add_overflow(e, uint64_t{1}, &e1))
      throw PreconditionError("ordinal exponent overflow");
    out.terms_.emplace_back(e1, c);
  }
  return out;
}

std::pair<Ordinal, uint64_t> split_limit_finite(const Ordinal& a) {
  Ordinal beta;
  uint64_t n = 0;
  for (auto [e, c] : a.terms_) {
    if (e == 0)
      n = c;
    else
      beta.terms_.emplace_back(e - 1, c);
  }
  return {beta, n};
}

Ordinal successor(const Ordinal& a) {
  Ordinal out = a;
  if (!out.terms_.empty() && out.terms_.back().first == 0)
    out.terms_.back().second = checked_add(out.terms_.back().second, 1);
  else
    out.terms_.emplace_back(0, 1);
  return out;
}

Cmp compare(const Ordinal& a, const Ordinal& b) {
  auto c = a <=> b;
  if (c < 0) return Cmp::LT;
  if (c > 0) return Cmp::GT;
  return Cmp::EQ;
}

namespace {

struct OrdParser {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  uint64_t nat() {
    skip_ws();
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError("expected a natural number", i);
    uint64_t v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      uint64_t d = static_cast<uint64_t>(s[i] - '0');
      if (__builtin_mul_overflow(v, uint64_t{10}, &v) || __builtin_add_overflow(v, d, &v))
        throw ParseError("number too large", i);
      ++i;
    }
    return v;
  }

  Ordinal::Term term() {
    skip_ws();
    size_t start = i;
    if (i < s.size() && s[i] == 'w') {
      ++i;
      uint64_t e = 1, c = 1;
      if (eat('^')) e = nat();
      if (eat('*')) c = nat();
      if (c == 0) throw ParseError("coefficient must be positive", start);
      return {e, c};
    }
    uint64_t n = nat();
    if (n == 0) throw ParseError("term 0 is not allowed inside a sum", start);
    return {0, n};
  }

  Ordinal parse() {
    skip_ws();
    if (i < s.size() && s[i] == '0') {
      size_t at = i;
      ++i;
      skip_ws();
      if (i != s.size()) throw ParseError("unexpected input after 0", at + 1);
      return Ordinal{};
    }
    std::vector<Ordinal::Term> terms;
    terms.push_back(term());
    while (true) {
      skip_ws();
      if (i >= s.size()) break;
      size_t at = i;
      if (!eat('+')) throw ParseError("expected '+' or end of input", i);
      auto t = term();
      if (terms.back().first <= t.first)
        throw ParseError(
            "exponents must be strictly decreasing; write the sum in canonical order "
            "(largest power of w first)",
            at);
      terms.push_back(t);
    }
    return Ordinal::from_terms(std::move(terms));
  }
};

}  // namespace

Ordinal parse_ordinal(const std::string& text) {
  OrdParser p{text};
  return p.parse();
}

}  // namespace wo
