#include "wo/formula.hpp"

#include <algorithm>
#include <cctype>

namespace wo {

namespace {

bool valid_ident(const std::string& v) {
  if (v.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_')) return false;
  for (char c : v)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

FormulaPtr mk(Kind k, std::string v1, std::string v2, FormulaPtr l, FormulaPtr r) {
  uint16_t rank = 0;
  switch (k) {
    case Kind::True:
    case Kind::False:
    case Kind::Lt:
    case Kind::Eq:
      break;
    case Kind::Not:
      rank = l->rank;
      break;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      rank = std::max(l->rank, r->rank);
      break;
    case Kind::Forall:
    case Kind::Exists:
      rank = static_cast<uint16_t>(l->rank + 1);
      break;
  }
  return std::make_shared<const Formula>(Formula{k, std::move(v1), std::move(v2), std::move(l), std::move(r), rank});
}

void check_ident(const std::string& v) {
  if (!valid_ident(v)) throw PreconditionError("invalid variable identifier: '" + v + "'");
}

}  // namespace

FormulaPtr f_true() { return mk(Kind::True, "", "", nullptr, nullptr); }
FormulaPtr f_false() { return mk(Kind::False, "", "", nullptr, nullptr); }
FormulaPtr f_lt(std::string x, std::string y) {
  check_ident(x);
  check_ident(y);
  return mk(Kind::Lt, std::move(x), std::move(y), nullptr, nullptr);
}
FormulaPtr f_eq(std::string x, std::string y) {
  check_ident(x);
  check_ident(y);
  return mk(Kind::Eq, std::move(x), std::move(y), nullptr, nullptr);
}
FormulaPtr f_not(FormulaPtr f) { return mk(Kind::Not, "", "", std::move(f), nullptr); }
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return mk(Kind::And, "", "", std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return mk(Kind::Or, "", "", std::move(a), std::move(b)); }
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return mk(Kind::Implies, "", "", std::move(a), std::move(b));
}
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) { return mk(Kind::Iff, "", "", std::move(a), std::move(b)); }
FormulaPtr f_forall(std::string v, FormulaPtr body) {
  check_ident(v);
  return mk(Kind::Forall, std::move(v), "", std::move(body), nullptr);
}
FormulaPtr f_exists(std::string v, FormulaPtr body) {
  check_ident(v);
  return mk(Kind::Exists, std::move(v), "", std::move(body), nullptr);
}

unsigned quantifier_rank(const FormulaPtr& f) { return f->rank; }

namespace {

void collect_free(const Formula* f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
      return;
    case Kind::Lt:
    case Kind::Eq:
      if (!bound.count(f->v1)) out.insert(f->v1);
      if (!bound.count(f->v2)) out.insert(f->v2);
      return;
    case Kind::Not:
      collect_free(f->l.get(), bound, out);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      collect_free(f->l.get(), bound, out);
      collect_free(f->r.get(), bound, out);
      return;
    case Kind::Forall:
    case Kind::Exists: {
      bool inserted = bound.insert(f->v1).second;
      collect_free(f->l.get(), bound, out);
      if (inserted) bound.erase(f->v1);
      return;
    }
  }
}

void collect_all(const Formula* f, std::set<std::string>& out) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
      return;
    case Kind::Lt:
    case Kind::Eq:
      out.insert(f->v1);
      out.insert(f->v2);
      return;
    case Kind::Not:
      collect_all(f->l.get(), out);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      collect_all(f->l.get(), out);
      collect_all(f->r.get(), out);
      return;
    case Kind::Forall:
    case Kind::Exists:
      out.insert(f->v1);
      collect_all(f->l.get(), out);
      return;
  }
}

}  // namespace

std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collect_free(f.get(), bound, out);
  return out;
}

bool is_sentence(const FormulaPtr& f) { return free_variables(f).empty(); }

std::set<std::string> all_variables(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_all(f.get(), out);
  return out;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->v1 != b->v1 || a->v2 != b->v2) return false;
  if ((a->l == nullptr) != (b->l == nullptr) || (a->r == nullptr) != (b->r == nullptr)) return false;
  if (a->l && !equal(a->l, b->l)) return false;
  if (a->r && !equal(a->r, b->r)) return false;
  return true;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (unsigned i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

namespace {

// Substitution with an avoid-set: binders whose variable lies in `avoid` or
// equals `to` are renamed before descending.
FormulaPtr subst(const FormulaPtr& f, const std::string& from, const std::string& to,
                 const std::set<std::string>& avoid) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Lt:
    case Kind::Eq: {
      std::string a = f->v1 == from ? to : f->v1;
      std::string b = f->v2 == from ? to : f->v2;
      if (a == f->v1 && b == f->v2) return f;
      return mk(f->kind, a, b, nullptr, nullptr);
    }
    case Kind::Not:
      return f_not(subst(f->l, from, to, avoid));
    case Kind::And:
      return f_and(subst(f->l, from, to, avoid), subst(f->r, from, to, avoid));
    case Kind::Or:
      return f_or(subst(f->l, from, to, avoid), subst(f->r, from, to, avoid));
    case Kind::Implies:
      return f_implies(subst(f->l, from, to, avoid), subst(f->r, from, to, avoid));
    case Kind::Iff:
      return f_iff(subst(f->l, from, to, avoid), subst(f->r, from, to, avoid));
    case Kind::Forall:
    case Kind::Exists: {
      if (f->v1 == from) return f;  // shadowed, nothing free below
      FormulaPtr body = f->l;
      std::string v = f->v1;
      if (v == to) {
        // Renaming required to avoid capturing the incoming variable.
        std::set<std::string> taken = all_variables(body);
        taken.insert(avoid.begin(), avoid.end());
        taken.insert(from);
        taken.insert(to);
        std::string nv = fresh_name(v, taken);
        body = subst(body, v, nv, taken);
        v = nv;
      }
      FormulaPtr nb = subst(body, from, to, avoid);
      if (nb.get() == f->l.get() && v == f->v1) return f;
      return mk(f->kind, v, "", nb, nullptr);
    }
  }
  return f;  // unreachable
}

}  // namespace

FormulaPtr substitute_var(const FormulaPtr& f, const std::string& from, const std::string& to) {
  check_ident(to);
  std::set<std::string> avoid = all_variables(f);
  return subst(f, from, to, avoid);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence levels: quantifier 0 < iff 1 < implies 2 < or 3 < and 4 < not 5 < atom 6.
int level_of(const Formula* f) {
  switch (f->kind) {
    case Kind::Forall:
    case Kind::Exists:
      return 0;
    case Kind::Iff:
      return 1;
    case Kind::Implies:
      return 2;
    case Kind::Or:
      return 3;
    case Kind::And:
      return 4;
    case Kind::Not:
      return 5;
    default:
      return 6;
  }
}

void print_rec(const Formula* f, int min_level, bool full, std::string& out) {
  int lvl = level_of(f);
  bool parens = full ? lvl < 6 : lvl < min_level;
  if (parens) out += "(";
  switch (f->kind) {
    case Kind::True:
      out += "true";
      break;
    case Kind::False:
      out += "false";
      break;
    case Kind::Lt:
      out += f->v1 + " < " + f->v2;
      break;
    case Kind::Eq:
      out += f->v1 + " = " + f->v2;
      break;
    case Kind::Not:
      out += "~";
      print_rec(f->l.get(), 5, full, out);
      break;
    case Kind::And:
      print_rec(f->l.get(), 4, full, out);
      out += " & ";
      print_rec(f->r.get(), 5, full, out);
      break;
    case Kind::Or:
      print_rec(f->l.get(), 3, full, out);
      out += " | ";
      print_rec(f->r.get(), 4, full, out);
      break;
    case Kind::Implies:  // right-associative
      print_rec(f->l.get(), 3, full, out);
      out += " -> ";
      print_rec(f->r.get(), 2, full, out);
      break;
    case Kind::Iff:  // folded left-associatively by the parser
      print_rec(f->l.get(), 1, full, out);
      out += " <-> ";
      print_rec(f->r.get(), 2, full, out);
      break;
    case Kind::Forall:
    case Kind::Exists: {
      out += (f->kind == Kind::Forall ? "forall " : "exists ") + f->v1 + " ";
      const Formula* body = f->l.get();
      if (body->is_quantifier() && !full) {
        print_rec(body, 0, full, out);
      } else {
        out += "(";
        print_rec(body, 0, full, out);
        out += ")";
      }
      break;
    }
  }
  if (parens) out += ")";
}

}  // namespace

std::string print_formula(const FormulaPtr& f, bool full_parens) {
  std::string out;
  print_rec(f.get(), 0, full_parens, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Forall, Exists, True, False, Ident, Not, And, Or, Implies, Iff, Lt, Eq, Leq, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

struct Lexer {
  const std::string& s;
  size_t i = 0;
  bool require_sentence;

  bool starts_with(const char* u) const {
    size_t n = std::char_traits<char>::length(u);
    return s.compare(i, n, u) == 0;
  }

  Token next() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t at = i;
    if (i >= s.size()) return {Tok::End, "", at};
    char c = s[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string w = s.substr(i, j - i);
      i = j;
      if (w == "forall") return {Tok::Forall, w, at};
      if (w == "exists") return {Tok::Exists, w, at};
      if (w == "true") return {Tok::True, w, at};
      if (w == "false") return {Tok::False, w, at};
      return {Tok::Ident, w, at};
    }
    switch (c) {
      case '(':
        ++i;
        return {Tok::LParen, "(", at};
      case ')':
        ++i;
        return {Tok::RParen, ")", at};
      case '~':
        ++i;
        return {Tok::Not, "~", at};
      case '&':
        ++i;
        return {Tok::And, "&", at};
      case '|':
        ++i;
        return {Tok::Or, "|", at};
      case '=':
        ++i;
        return {Tok::Eq, "=", at};
      case '-':
        if (starts_with("->")) {
          i += 2;
          return {Tok::Implies, "->", at};
        }
        throw ParseError("stray '-'", at);
      case '<':
        if (starts_with("<->")) {
          i += 3;
          return {Tok::Iff, "<->", at};
        }
        if (starts_with("<=")) {
          i += 2;
          return {Tok::Leq, "<=", at};
        }
        ++i;
        return {Tok::Lt, "<", at};
      default:
        break;
    }
    // Unicode aliases (UTF-8).
    struct Alias {
      const char* utf8;
      Tok tok;
    };
    static const Alias aliases[] = {
        {"∀", Tok::Forall}, {"∃", Tok::Exists}, {"¬", Tok::Not},
        {"∧", Tok::And},    {"∨", Tok::Or},     {"→", Tok::Implies},
        {"↔", Tok::Iff},    {"≤", Tok::Leq},
    };
    for (const auto& a : aliases) {
      if (starts_with(a.utf8)) {
        i += std::char_traits<char>::length(a.utf8);
        return {Token{a.tok, a.utf8, at}};
      }
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }
};

struct Parser {
  Lexer lex;
  Token tok;

  explicit Parser(const std::string& s, bool require_sentence) : lex{s, 0, require_sentence} {
    tok = lex.next();
  }

  void advance() { tok = lex.next(); }
  void expect(Tok k, const char* what) {
    if (tok.kind != k) throw ParseError(std::string("expected ") + what, tok.pos);
    advance();
  }

  FormulaPtr formula() {
    if (tok.kind == Tok::Forall || tok.kind == Tok::Exists) {
      bool forall = tok.kind == Tok::Forall;
      advance();
      if (tok.kind != Tok::Ident) throw ParseError("expected a variable after quantifier", tok.pos);
      std::string v = tok.text;
      advance();
      FormulaPtr body = formula();  // body extends maximally right
      return forall ? f_forall(v, body) : f_exists(v, body);
    }
    return iff();
  }

  FormulaPtr iff() {
    FormulaPtr f = imp();
    while (tok.kind == Tok::Iff) {
      advance();
      f = f_iff(f, imp());
    }
    return f;
  }

  FormulaPtr imp() {
    FormulaPtr f = disj();
    if (tok.kind == Tok::Implies) {
      advance();
      return f_implies(f, imp());  // right-assoc
    }
    return f;
  }

  FormulaPtr disj() {
    FormulaPtr f = conj();
    while (tok.kind == Tok::Or) {
      advance();
      f = f_or(f, conj());
    }
    return f;
  }

  FormulaPtr conj() {
    FormulaPtr f = neg();
    while (tok.kind == Tok::And) {
      advance();
      f = f_and(f, neg());
    }
    return f;
  }

  FormulaPtr neg() {
    if (tok.kind == Tok::Not) {
      advance();
      return f_not(neg());
    }
    return atom();
  }

  FormulaPtr atom() {
    switch (tok.kind) {
      case Tok::LParen: {
        advance();
        FormulaPtr f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::True:
        advance();
        return f_true();
      case Tok::False:
        advance();
        return f_false();
      case Tok::Ident: {
        std::string a = tok.text;
        advance();
        Tok op = tok.kind;
        if (op != Tok::Lt && op != Tok::Eq && op != Tok::Leq)
          throw ParseError("expected '<', '=' or '<=' after variable", tok.pos);
        advance();
        if (tok.kind != Tok::Ident) throw ParseError("expected a variable", tok.pos);
        std::string b = tok.text;
        advance();
        if (op == Tok::Lt) return f_lt(a, b);
        if (op == Tok::Eq) return f_eq(a, b);
        return f_or(f_lt(a, b), f_eq(a, b));  // a <= b desugars, < stays the only primitive
      }
      case Tok::End:
        throw ParseError("unexpected end of input", tok.pos);
      default:
        throw ParseError("unexpected token '" + tok.text + "'", tok.pos);
    }
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, bool require_sentence) {
  Parser p(text, require_sentence);
  FormulaPtr f = p.formula();
  if (p.tok.kind != Tok::End) throw ParseError("unexpected trailing input", p.tok.pos);
  if (require_sentence) {
    auto fv = free_variables(f);
    if (!fv.empty()) throw ParseError("formula has unbound variable '" + *fv.begin() + "'", 0);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Relativization

Guard Guard::below(std::string x) { return Guard{GKind::Below, std::move(x), "", nullptr, ""}; }
Guard Guard::at_least(std::string x) { return Guard{GKind::AtLeast, std::move(x), "", nullptr, ""}; }
Guard Guard::interval(std::string x, std::string y) {
  return Guard{GKind::Interval, std::move(x), std::move(y), nullptr, ""};
}
Guard Guard::where(FormulaPtr p, std::string hole) {
  return Guard{GKind::Pred, "", "", std::move(p), std::move(hole)};
}

namespace {

std::set<std::string> guard_vars(const Guard& g) {
  switch (g.kind) {
    case Guard::GKind::Below:
    case Guard::GKind::AtLeast:
      return {g.x};
    case Guard::GKind::Interval:
      return {g.x, g.y};
    case Guard::GKind::Pred: {
      auto fv = free_variables(g.pred);
      fv.erase(g.hole);
      return fv;
    }
  }
  return {};
}

FormulaPtr guard_at(const Guard& g, const std::string& v) {
  switch (g.kind) {
    case Guard::GKind::Below:
      return f_lt(v, g.x);
    case Guard::GKind::AtLeast:
      return f_or(f_eq(g.x, v), f_lt(g.x, v));
    case Guard::GKind::Interval:
      return f_and(f_or(f_eq(g.x, v), f_lt(g.x, v)), f_lt(v, g.y));
    case Guard::GKind::Pred:
      return substitute_var(g.pred, g.hole, v);
  }
  throw PreconditionError("bad guard");
}

// Renames every binder whose variable collides with `avoid`.
FormulaPtr rename_binders(const FormulaPtr& f, const std::set<std::string>& avoid,
                          std::set<std::string>& taken) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Lt:
    case Kind::Eq:
      return f;
    case Kind::Not:
      return f_not(rename_binders(f->l, avoid, taken));
    case Kind::And:
      return f_and(rename_binders(f->l, avoid, taken), rename_binders(f->r, avoid, taken));
    case Kind::Or:
      return f_or(rename_binders(f->l, avoid, taken), rename_binders(f->r, avoid, taken));
    case Kind::Implies:
      return f_implies(rename_binders(f->l, avoid, taken), rename_binders(f->r, avoid, taken));
    case Kind::Iff:
      return f_iff(rename_binders(f->l, avoid, taken), rename_binders(f->r, avoid, taken));
    case Kind::Forall:
    case Kind::Exists: {
      std::string v = f->v1;
      FormulaPtr body = f->l;
      if (avoid.count(v)) {
        std::string nv = fresh_name(v, taken);
        taken.insert(nv);
        body = substitute_var(body, v, nv);
        v = nv;
      }
      return mk(f->kind, v, "", rename_binders(body, avoid, taken), nullptr);
    }
  }
  return f;
}

FormulaPtr relativize_rec(const FormulaPtr& f, const Guard& g) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Lt:
    case Kind::Eq:
      return f;
    case Kind::Not:
      return f_not(relativize_rec(f->l, g));
    case Kind::And:
      return f_and(relativize_rec(f->l, g), relativize_rec(f->r, g));
    case Kind::Or:
      return f_or(relativize_rec(f->l, g), relativize_rec(f->r, g));
    case Kind::Implies:
      return f_implies(relativize_rec(f->l, g), relativize_rec(f->r, g));
    case Kind::Iff:
      return f_iff(relativize_rec(f->l, g), relativize_rec(f->r, g));
    case Kind::Exists:
      return f_exists(f->v1, f_and(guard_at(g, f->v1), relativize_rec(f->l, g)));
    case Kind::Forall:
      return f_forall(f->v1, f_implies(guard_at(g, f->v1), relativize_rec(f->l, g)));
  }
  return f;
}

}  // namespace

RelativizeResult relativize(const FormulaPtr& f, const Guard& g) {
  std::set<std::string> avoid = guard_vars(g);
  std::set<std::string> taken = all_variables(f);
  for (const auto& v : avoid) taken.insert(v);
  if (g.kind == Guard::GKind::Pred) {
    for (const auto& v : all_variables(g.pred)) taken.insert(v);
  }
  FormulaPtr clean = rename_binders(f, avoid, taken);
  FormulaPtr out = relativize_rec(clean, g);
  unsigned bound = quantifier_rank(f);
  if (g.kind == Guard::GKind::Pred) bound += quantifier_rank(g.pred);
  return RelativizeResult{out, quantifier_rank(out), bound};
}

}  // namespace wo
