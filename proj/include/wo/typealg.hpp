#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wo/error.hpp"
#include "wo/ordinal.hpp"

namespace wo {

// Interned identifier of a canonical k-type. Equality of types is equality of
// ids within one table.
using TypeId = uint32_t;

// The k-type algebra. A level-k type is, semantically, the set
//   { (type_{k-1}(L_{<a}), type_{k-1}(L_{>a})) : a in L }
// over all points a of a linear order L; level 0 has a single atom. Two
// linear orders agree on all sentences of quantifier rank <= k iff their
// level-k types coincide. Contents store child ids, so deep objects share
// structure as a DAG.
//
// Thread safety: interning and all memo caches use insert-if-absent under
// internal locks, so concurrent callers get stable ids for equal content.
// Numeric id values depend on first-insertion order; every exported artifact
// (encodings, digests, dumps) is content-canonical and schedule-independent.
class TypeTable {
 public:
  TypeTable();
  TypeTable(const TypeTable&) = delete;
  TypeTable& operator=(const TypeTable&) = delete;
  ~TypeTable();

  TypeId atom();                     // the unique level-0 type
  TypeId type_empty(unsigned k);     // empty order; the atom when k = 0
  TypeId type_singleton(unsigned k); // one-point order

  unsigned level(TypeId t) const;
  std::span<const std::pair<TypeId, TypeId>> pairs(TypeId t) const;

  // Projection to the level-(k-1) type of the same order. Level 0 is an error.
  TypeId lower(TypeId t);

  // Level-k type of A+B from the types of A and B (levels must match).
  TypeId sum(TypeId s, TypeId t);
  // Level-k type of L*w from the type of L.
  TypeId omega_mult(TypeId s);
  // Same operations without the top-level memo entry; recursive interior
  // calls still memoize. Closure expansion enumerates distinct argument
  // pairs, so caching those top pairs would only grow the table.
  TypeId sum_raw(TypeId s, TypeId t);
  TypeId omega_mult_raw(TypeId s);

  // n-fold sum of singletons.
  TypeId type_of_finite(uint64_t n, unsigned k);
  // Independent oracle: expands the defining recursion on the explicit
  // n-element order. Guarded to n <= 8, k <= 4.
  TypeId type_of_finite_bruteforce(uint64_t n, unsigned k);
  // Structural recursion on the Cantor normal form; memoized per (a, k).
  TypeId type_of_ordinal(const Ordinal& a, unsigned k);

  size_t size() const;  // number of interned types

  // Canonical content encoding: "0" for the atom, otherwise the
  // lexicographically sorted list of (enc(left),enc(right)) pairs in braces.
  // Equal content always yields the same string, independent of interning
  // order. Sizes grow steeply with level; a guard throws past ~64 MiB.
  std::string encoding(TypeId t);

  // 128-bit content digest over the DAG, printed as 32 hex digits. Stable
  // across runs and schedules; used as the public id in dumps.
  std::string digest(TypeId t);

  // Debug dump: one line per interned type, "id level enc", sorted by
  // (level, enc). Byte-identical across runs on the same inputs.
  std::string dump();

 private:
  struct Node {
    uint32_t level;
    std::vector<std::pair<TypeId, TypeId>> pairs;  // sorted by id pair, deduplicated
  };

  // Append-only node storage with lock-free reads: fixed directory of
  // atomically published chunks.
  static constexpr size_t kChunkBits = 12;
  static constexpr size_t kChunkSize = size_t{1} << kChunkBits;
  static constexpr size_t kMaxChunks = size_t{1} << 16;

  const Node& node(TypeId t) const;
  TypeId intern(uint32_t level, std::vector<std::pair<TypeId, TypeId>> pairs);
  TypeId sum_impl(TypeId s, TypeId t);
  TypeId omega_mult_impl(TypeId s);

  std::array<std::atomic<Node*>, kMaxChunks> chunks_{};
  std::atomic<uint32_t> count_{0};

  mutable std::shared_mutex intern_mx_;
  std::unordered_map<std::string, TypeId> interner_;  // packed (level, pairs) -> id

  mutable std::shared_mutex memo_mx_;
  std::unordered_map<TypeId, TypeId> lower_memo_;
  std::unordered_map<uint64_t, TypeId> sum_memo_;  // (s << 32) | t
  std::unordered_map<TypeId, TypeId> omega_memo_;
  std::unordered_map<uint64_t, TypeId> finite_memo_;     // (n << 8) | k
  std::unordered_map<uint64_t, TypeId> finite_bf_memo_;  // (n << 8) | k
  std::unordered_map<std::string, TypeId> ordinal_memo_; // "cnf@k"

  mutable std::shared_mutex enc_mx_;
  std::unordered_map<TypeId, std::shared_ptr<const std::string>> enc_memo_;
  std::unordered_map<TypeId, std::pair<uint64_t, uint64_t>> digest_memo_;

  TypeId atom_ = 0;
};

}  // namespace wo
