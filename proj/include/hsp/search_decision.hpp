#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hsp/reductions.hpp"

namespace hsp {

enum class DecisionAnswer { Trivial, Nontrivial };

std::string to_string(DecisionAnswer a);

/// Process-wide logical clock; every tick is unique and increasing.
class EventClock {
 public:
  static std::uint64_t tick();
  static std::uint64_t now();

 private:
  static std::atomic<std::uint64_t> counter_;
};

struct OracleCall {
  std::uint64_t tick = 0;
  DecisionAnswer answer = DecisionAnswer::Trivial;
};

/// An HSP_D answerer over structured instances. Calls go through decide(),
/// which records the clock tick and answer of each call.
class DecisionOracle {
 public:
  virtual ~DecisionOracle() = default;

  DecisionAnswer decide(const StructuredHspInstance& q);

  std::vector<OracleCall> call_log() const;
  std::uint64_t calls() const;
  void clear_log();

 protected:
  virtual DecisionAnswer answer(const StructuredHspInstance& q) = 0;

 private:
  mutable std::mutex mutex_;
  std::vector<OracleCall> log_;
};

/// (i, j, j', k, l) of a decisionHS query, 1-based.
struct QueryIndex {
  std::uint32_t i = 0, j = 0, jp = 0, k = 0, l = 0;
  friend bool operator==(const QueryIndex&, const QueryIndex&) = default;
  friend auto operator<=>(const QueryIndex&, const QueryIndex&) = default;
};

struct QueryRecord {
  QueryIndex index;
  StructuredHspInstance instance;
};

class SealedBatch;

/// Query list under construction. No oracle can be attached until seal().
class QueryBatch {
 public:
  void add(QueryIndex index, StructuredHspInstance instance);
  std::size_t size() const { return records_.size(); }
  SealedBatch seal() &&;

 private:
  std::vector<QueryRecord> records_;
};

class SealedBatch {
 public:
  const std::vector<QueryRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  std::uint64_t sealed_at() const { return sealed_at_; }
  std::vector<QueryIndex> indices() const;

  /// Every query answered by the oracle; answers are aligned with records().
  std::vector<DecisionAnswer> issue(DecisionOracle& oracle, unsigned jobs = 1) const;

 private:
  friend class QueryBatch;
  SealedBatch(std::vector<QueryRecord> records, std::uint64_t tick) : records_(std::move(records)), sealed_at_(tick) {}

  std::vector<QueryRecord> records_;
  std::uint64_t sealed_at_ = 0;
};

/**
 * Instance over embed(G^(i-1) wr Z_2) <= S_2n with f'(g1, g2, t) = (f(g1), f(g2))
 * for t = 0 and the swapped pair for t = 1. Its hidden subgroup is
 * H^(i-1) wr Z_2; the attached kernel enumerator lists it from the kernel of
 * `inst`, which is computed once per `inst` and shared by all levels.
 */
class DoubledInstanceFactory {
 public:
  explicit DoubledInstanceFactory(std::shared_ptr<const HspInstance> inst);
  std::shared_ptr<const HspInstance> level(std::uint32_t i) const;

 private:
  std::shared_ptr<const HspInstance> inst_;
  struct Shared;
  std::shared_ptr<Shared> shared_;
};

/// Every (i, j, j', k, l) query for a permutation-group instance of degree n.
QueryBatch build_decision_batch(std::shared_ptr<const HspInstance> inst);

/// Sum over i of (n - i)^2 (n - i + 1)^2.
std::uint64_t decision_query_count(std::size_t degree);

/**
 * Reads a nontrivial element of H off the answers: the largest level i with a
 * Nontrivial answer, its smallest witnessing (j, j'), and h(k) = the unique l
 * with a Nontrivial answer for each k >= i. Depends only on the (index, answer)
 * pairs, not their order. Returns nullopt when every answer is Trivial and
 * throws OracleInconsistent when the answers do not describe such an h.
 */
std::optional<Permutation> reconstruct_hidden_element(const HspInstance& inst,
                                                      const std::vector<QueryIndex>& indices,
                                                      const std::vector<DecisionAnswer>& answers);

std::optional<Permutation> hsp_search_via_decision(std::shared_ptr<const HspInstance> inst, DecisionOracle& oracle,
                                                   unsigned jobs = 1);

/// Hidden Shift decision query: is there u in `group` with f1(g) = f2(g u) for all g in `group`?
struct ShiftQuery {
  std::shared_ptr<const FiniteGroup> group;
  OracleFunction f1;
  OracleFunction f2;
};

class ShiftDecisionOracle {
 public:
  virtual ~ShiftDecisionOracle() = default;
  bool decide(const ShiftQuery& q) {
    calls_.fetch_add(1);
    return answer(q);
  }
  std::uint64_t calls() const { return calls_.load(); }

 protected:
  virtual bool answer(const ShiftQuery& q) = 0;

 private:
  std::atomic<std::uint64_t> calls_{0};
};

struct ShiftSearchResult {
  Permutation shift;
  /// Queries spent at each chain level.
  std::vector<std::size_t> level_queries;
  /// The accepted coset representative sigma_i per level.
  std::vector<Permutation> sigmas;
};

/**
 * Walks the stabilizer chain of G. At level i the shift is narrowed to a right
 * coset G^(i+1) sigma_i, after which f2 is replaced by x -> f2(x sigma_i ... sigma_0).
 * Returns u = sigma_{n-1} * ... * sigma_0, so that f1(g) = f2(g u).
 * Throws NoShift when no representative is accepted at some level.
 */
ShiftSearchResult hsh_search_via_decision(std::shared_ptr<const FiniteGroup> group, const OracleFunction& f1,
                                          const OracleFunction& f2, ShiftDecisionOracle& oracle);

/// Dihedral decision query: does the hidden subgroup meet <r^step, r^offset s> nontrivially?
struct DihedralQuery {
  std::uint32_t n = 0;
  std::uint32_t step = 0;
  std::uint32_t offset = 0;
};

FiniteGroup dihedral_query_group(const DihedralQuery& q);

class DihedralDecisionOracle {
 public:
  virtual ~DihedralDecisionOracle() = default;
  bool decide(const DihedralQuery& q) {
    calls_.fetch_add(1);
    return answer(q);
  }
  std::uint64_t calls() const { return calls_.load(); }

 protected:
  virtual bool answer(const DihedralQuery& q) = 0;

 private:
  std::atomic<std::uint64_t> calls_{0};
};

struct PrimePower {
  std::uint64_t prime = 0;
  std::uint32_t exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct SmoothFactorization {
  std::uint64_t n = 0;
  std::uint64_t bound = 0;
  std::vector<PrimePower> factors;
};

/// Trial division; throws NotSmooth if a prime factor exceeds the bound.
SmoothFactorization smooth_factorize(std::uint64_t n, std::uint64_t bound);

struct Residue {
  std::uint64_t value = 0;
  std::uint64_t modulus = 1;
  friend bool operator==(const Residue&, const Residue&) = default;
};

/// Unique x mod prod(m_i) with x = r_i mod m_i. Throws InvalidInput on non-coprime moduli.
Residue crt_combine(const std::vector<Residue>& residues);

struct DihedralSearchResult {
  std::uint32_t a = 0;
  std::uint64_t queries = 0;
  /// a mod p^e for each prime power of n.
  std::vector<Residue> residues;
};

/// Recovers a for a hidden subgroup {id, r^a s} of D_n with B-smooth n.
DihedralSearchResult dihedral_search_via_decision(std::uint32_t n, std::uint64_t bound,
                                                  DihedralDecisionOracle& oracle);

}  // namespace hsp
