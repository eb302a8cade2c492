#include "wo/typealg.hpp"

#include <algorithm>
#include <cstring>
#include <memory>

namespace wo {
namespace {

void append_u32(std::string& out, uint32_t v) {
  char buf[4];
  std::memcpy(buf, &v, 4);
  out.append(buf, 4);
}

std::string pack_key(uint32_t level, const std::vector<std::pair<TypeId, TypeId>>& pairs) {
  std::string key;
  key.reserve(4 + pairs.size() * 8);
  append_u32(key, level);
  for (auto [l, r] : pairs) {
    append_u32(key, l);
    append_u32(key, r);
  }
  return key;
}

constexpr size_t kEncodingGuard = size_t{64} << 20;

using U128 = unsigned __int128;

constexpr U128 fnv_basis() {
  return (U128{0x6c62272e07bb0142ULL} << 64) | U128{0x62b821756295c58dULL};
}
constexpr U128 fnv_prime() {
  return (U128{0x0000000001000000ULL} << 64) | U128{0x000000000000013bULL};
}

void fnv_bytes(U128& h, const void* data, size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= fnv_prime();
  }
}

std::string hex128(uint64_t hi, uint64_t lo) {
  static const char* digits = "0123456789abcdef";
  std::string out(32, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[hi & 0xf];
    hi >>= 4;
  }
  for (int i = 31; i >= 16; --i) {
    out[i] = digits[lo & 0xf];
    lo >>= 4;
  }
  return out;
}

}  // namespace

TypeTable::TypeTable() {
  atom_ = intern(0, {});
}

TypeTable::~TypeTable() {
  size_t n = count_.load(std::memory_order_acquire);
  size_t used_chunks = (n + kChunkSize - 1) / kChunkSize;
  for (size_t c = 0; c < used_chunks; ++c) delete[] chunks_[c].load(std::memory_order_acquire);
}

const TypeTable::Node& TypeTable::node(TypeId t) const {
  return chunks_[t >> kChunkBits].load(std::memory_order_acquire)[t & (kChunkSize - 1)];
}

TypeId TypeTable::intern(uint32_t level, std::vector<std::pair<TypeId, TypeId>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::string key = pack_key(level, pairs);
  {
    std::shared_lock lk(intern_mx_);
    auto it = interner_.find(key);
    if (it != interner_.end()) return it->second;
  }
  std::unique_lock lk(intern_mx_);
  auto it = interner_.find(key);
  if (it != interner_.end()) return it->second;
  uint32_t idx = count_.load(std::memory_order_relaxed);
  size_t chunk = idx >> kChunkBits;
  if (chunk >= kMaxChunks)
    throw ResourceLimitError("type table capacity exhausted", "intern", 0, idx);
  Node* arr = chunks_[chunk].load(std::memory_order_relaxed);
  if (!arr) {
    arr = new Node[kChunkSize];
    chunks_[chunk].store(arr, std::memory_order_release);
  }
  arr[idx & (kChunkSize - 1)] = Node{level, std::move(pairs)};
  count_.store(idx + 1, std::memory_order_release);
  interner_.emplace(std::move(key), idx);
  return idx;
}

TypeId TypeTable::atom() { return atom_; }

TypeId TypeTable::type_empty(unsigned k) {
  if (k == 0) return atom_;
  return intern(k, {});
}

TypeId TypeTable::type_singleton(unsigned k) {
  if (k == 0) return atom_;
  TypeId e = type_empty(k - 1);
  return intern(k, {{e, e}});
}

unsigned TypeTable::level(TypeId t) const { return node(t).level; }

std::span<const std::pair<TypeId, TypeId>> TypeTable::pairs(TypeId t) const {
  const Node& n = node(t);
  return {n.pairs.data(), n.pairs.size()};
}

size_t TypeTable::size() const { return count_.load(std::memory_order_acquire); }

TypeId TypeTable::lower(TypeId t) {
  const Node& n = node(t);
  if (n.level == 0) throw PreconditionError("cannot lower a level-0 type");
  if (n.level == 1) return atom_;
  {
    std::shared_lock lk(memo_mx_);
    auto it = lower_memo_.find(t);
    if (it != lower_memo_.end()) return it->second;
  }
  std::vector<std::pair<TypeId, TypeId>> out;
  out.reserve(n.pairs.size());
  for (auto [l, r] : n.pairs) out.emplace_back(lower(l), lower(r));
  TypeId res = intern(n.level - 1, std::move(out));
  std::unique_lock lk(memo_mx_);
  lower_memo_.emplace(t, res);
  return res;
}

TypeId TypeTable::sum_impl(TypeId s, TypeId t) {
  const Node& ns = node(s);
  const Node& nt = node(t);
  if (ns.level != nt.level)
    throw PreconditionError("sum requires types of equal level");
  if (ns.level == 0) return atom_;
  if (ns.pairs.empty()) return t;  // empty left summand
  if (nt.pairs.empty()) return s;  // empty right summand
  TypeId low_s = lower(s);
  TypeId low_t = lower(t);
  std::vector<std::pair<TypeId, TypeId>> out;
  out.reserve(ns.pairs.size() + nt.pairs.size());
  // Points of the left summand keep their left part; the whole right summand
  // joins their right part. Symmetrically for points of the right summand.
  for (auto [l, r] : ns.pairs) out.emplace_back(l, sum(r, low_t));
  for (auto [l, r] : nt.pairs) out.emplace_back(sum(low_s, l), r);
  return intern(ns.level, std::move(out));
}

TypeId TypeTable::sum(TypeId s, TypeId t) {
  if (node(s).level == 0) return sum_impl(s, t);
  uint64_t key = (uint64_t{s} << 32) | t;
  {
    std::shared_lock lk(memo_mx_);
    auto it = sum_memo_.find(key);
    if (it != sum_memo_.end()) return it->second;
  }
  TypeId res = sum_impl(s, t);
  std::unique_lock lk(memo_mx_);
  sum_memo_.emplace(key, res);
  return res;
}

TypeId TypeTable::sum_raw(TypeId s, TypeId t) { return sum_impl(s, t); }

TypeId TypeTable::omega_mult_impl(TypeId s) {
  const Node& ns = node(s);
  if (ns.level == 0) return atom_;
  if (ns.pairs.empty()) return s;  // empty * w = empty
  unsigned k = ns.level;
  TypeId low_s = lower(s);
  // Orbit of finite prefixes: types of s*j for j = 0, 1, ... at level k-1.
  // Finitely many level-(k-1) types, so the orbit closes; every finite
  // prefix type is hit before the first repeat.
  std::vector<TypeId> prefixes;
  TypeId cur = type_empty(k - 1);
  while (std::find(prefixes.begin(), prefixes.end(), cur) == prefixes.end()) {
    prefixes.push_back(cur);
    cur = sum(cur, low_s);
  }
  TypeId tail = omega_mult(low_s);
  std::vector<std::pair<TypeId, TypeId>> out;
  out.reserve(prefixes.size() * ns.pairs.size());
  // A point of the j-th copy sees j earlier copies plus its in-copy left
  // part, and its in-copy right part followed by another full s*w.
  for (TypeId p : prefixes)
    for (auto [l, r] : ns.pairs) out.emplace_back(sum(p, l), sum(r, tail));
  return intern(k, std::move(out));
}

TypeId TypeTable::omega_mult(TypeId s) {
  if (node(s).level == 0) return omega_mult_impl(s);
  {
    std::shared_lock lk(memo_mx_);
    auto it = omega_memo_.find(s);
    if (it != omega_memo_.end()) return it->second;
  }
  TypeId res = omega_mult_impl(s);
  std::unique_lock lk(memo_mx_);
  omega_memo_.emplace(s, res);
  return res;
}

TypeId TypeTable::omega_mult_raw(TypeId s) { return omega_mult_impl(s); }

TypeId TypeTable::type_of_finite(uint64_t n, unsigned k) {
  if (k == 0) return atom_;
  uint64_t key = (n << 8) | k;
  bool small = n < (uint64_t{1} << 48);
  if (small) {
    std::shared_lock lk(memo_mx_);
    auto it = finite_memo_.find(key);
    if (it != finite_memo_.end()) return it->second;
  }
  TypeId one = type_singleton(k);
  TypeId cur = type_empty(k);
  // Finite types stabilize once two consecutive lengths coincide.
  for (uint64_t i = 0; i < n; ++i) {
    TypeId nxt = sum(cur, one);
    if (nxt == cur) break;
    cur = nxt;
  }
  if (small) {
    std::unique_lock lk(memo_mx_);
    finite_memo_.emplace(key, cur);
  }
  return cur;
}

TypeId TypeTable::type_of_finite_bruteforce(uint64_t n, unsigned k) {
  if (n > 8 || k > 4)
    throw PreconditionError("brute-force finite types are guarded to n <= 8, k <= 4");
  if (k == 0) return atom_;
  uint64_t key = (n << 8) | k;
  {
    std::shared_lock lk(memo_mx_);
    auto it = finite_bf_memo_.find(key);
    if (it != finite_bf_memo_.end()) return it->second;
  }
  // Directly expand the definition over the n-element order {0,...,n-1}:
  // each point a contributes (type of a-element prefix, type of n-1-a suffix).
  std::vector<std::pair<TypeId, TypeId>> out;
  out.reserve(n);
  for (uint64_t a = 0; a < n; ++a)
    out.emplace_back(type_of_finite_bruteforce(a, k - 1),
                     type_of_finite_bruteforce(n - 1 - a, k - 1));
  TypeId res = intern(k, std::move(out));
  std::unique_lock lk(memo_mx_);
  finite_bf_memo_.emplace(key, res);
  return res;
}

TypeId TypeTable::type_of_ordinal(const Ordinal& a, unsigned k) {
  if (k == 0) return atom_;
  std::string key = a.to_string() + "@" + std::to_string(k);
  {
    std::shared_lock lk(memo_mx_);
    auto it = ordinal_memo_.find(key);
    if (it != ordinal_memo_.end()) return it->second;
  }
  TypeId res;
  const auto& terms = a.terms();
  if (terms.empty()) {
    res = type_empty(k);
  } else {
    // Rightmost CNF term first: type(w^e*c + rho) = sum(c-fold w^e part, type(rho)).
    res = type_empty(k);
    for (size_t i = terms.size(); i-- > 0;) {
      auto [exp, coef] = terms[i];
      // Iterate omega_mult to w^exp; detect the inevitable cycle so huge
      // exponents cost at most one pass over the distinct iterates.
      TypeId pw = type_singleton(k);
      std::vector<TypeId> seen{pw};
      for (uint64_t e = 0; e < exp; ++e) {
        TypeId nxt = omega_mult(pw);
        auto it = std::find(seen.begin(), seen.end(), nxt);
        if (it != seen.end()) {
          size_t start = static_cast<size_t>(it - seen.begin());
          size_t period = seen.size() - start;
          uint64_t remaining = exp - e - 1;
          size_t pos = start + static_cast<size_t>(remaining % period);
          pw = seen[pos];
          break;
        }
        seen.push_back(nxt);
        pw = nxt;
      }
      // c-fold sum, with the same stabilization cutoff as finite types.
      TypeId part = pw;
      for (uint64_t c = 1; c < coef; ++c) {
        TypeId nxt = sum(part, pw);
        if (nxt == part) break;
        part = nxt;
      }
      res = sum(part, res);
    }
  }
  std::unique_lock lk(memo_mx_);
  ordinal_memo_.emplace(std::move(key), res);
  return res;
}

std::string TypeTable::encoding(TypeId t) {
  {
    std::shared_lock lk(enc_mx_);
    auto it = enc_memo_.find(t);
    if (it != enc_memo_.end()) return *it->second;
  }
  const Node& n = node(t);
  std::string res;
  if (n.level == 0) {
    res = "0";
  } else {
    std::vector<std::string> parts;
    parts.reserve(n.pairs.size());
    size_t total = 2;
    for (auto [l, r] : n.pairs) {
      std::string p = "(" + encoding(l) + "," + encoding(r) + ")";
      total += p.size() + 1;
      if (total > kEncodingGuard)
        throw ResourceLimitError("encoding exceeds size guard", "encoding", 0, size());
      parts.push_back(std::move(p));
    }
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    res = "{";
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) res += ",";
      res += parts[i];
    }
    res += "}";
  }
  auto sp = std::make_shared<const std::string>(std::move(res));
  std::unique_lock lk(enc_mx_);
  enc_memo_.emplace(t, sp);
  return *sp;
}

std::string TypeTable::digest(TypeId t) {
  std::pair<uint64_t, uint64_t> d;
  {
    std::shared_lock lk(enc_mx_);
    auto it = digest_memo_.find(t);
    if (it != digest_memo_.end()) {
      d = it->second;
      return hex128(d.first, d.second);
    }
  }
  const Node& n = node(t);
  U128 h = fnv_basis();
  if (n.level == 0) {
    fnv_bytes(h, "A", 1);
  } else {
    fnv_bytes(h, "S", 1);
    uint32_t lv = n.level;
    fnv_bytes(h, &lv, 4);
    // Feed child digests sorted by value so the result is independent of
    // interning order.
    std::vector<std::string> child;
    child.reserve(n.pairs.size());
    for (auto [l, r] : n.pairs) child.push_back(digest(l) + digest(r));
    std::sort(child.begin(), child.end());
    child.erase(std::unique(child.begin(), child.end()), child.end());
    for (const auto& c : child) fnv_bytes(h, c.data(), c.size());
  }
  d = {static_cast<uint64_t>(h >> 64), static_cast<uint64_t>(h)};
  std::unique_lock lk(enc_mx_);
  digest_memo_.emplace(t, d);
  return hex128(d.first, d.second);
}

std::string TypeTable::dump() {
  size_t n = size();
  std::vector<std::tuple<unsigned, std::string, std::string>> rows;
  rows.reserve(n);
  for (TypeId t = 0; t < n; ++t)
    rows.emplace_back(level(t), encoding(t), digest(t));
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto& [lv, enc, dg] : rows) {
    out += dg;
    out += " ";
    out += std::to_string(lv);
    out += " ";
    out += enc;
    out += "\n";
  }
  return out;
}

}  // namespace wo
