#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "hsp/search_decision.hpp"

namespace hsp {

/// Generators of {g : f(g) = f(id)}, drawn greedily in canonical order.
/// Throws PromiseViolation if that set is not a subgroup.
std::vector<GroupElement> brute_hsp_solve(const HspInstance& inst, std::size_t cap = kDefaultCap);

/// Nontrivial iff some g != id has f(g) = f(id) and lies in every constraint group.
DecisionAnswer brute_decide(const StructuredHspInstance& q, std::size_t cap = kDefaultCap);

/// brute_decide with the base kernel cached per base instance.
class BruteForceDecisionOracle : public DecisionOracle {
 public:
  explicit BruteForceDecisionOracle(std::size_t cap = kDefaultCap) : cap_(cap) {}
  void clear_cache();

 protected:
  DecisionAnswer answer(const StructuredHspInstance& q) override;

 private:
  struct Entry {
    std::shared_ptr<const HspInstance> base;
    std::vector<Permutation> nontrivial_kernel;
  };
  std::size_t cap_;
  std::mutex mutex_;
  std::map<const HspInstance*, Entry> cache_;
};

class BruteForceShiftOracle : public ShiftDecisionOracle {
 protected:
  bool answer(const ShiftQuery& q) override;
};

/// Answers dihedral queries against an instance over D_n.
class BruteForceDihedralOracle : public DihedralDecisionOracle {
 public:
  explicit BruteForceDihedralOracle(std::shared_ptr<const HspInstance> inst) : inst_(std::move(inst)) {}

 protected:
  bool answer(const DihedralQuery& q) override;

 private:
  std::shared_ptr<const HspInstance> inst_;
};

enum class BugMode { AlwaysTrivial, AlwaysNontrivial, FlipWithProb, WrongOnMatching };

struct BugSpec {
  BugMode mode = BugMode::AlwaysTrivial;
  double probability = 0.0;  // FlipWithProb
  std::uint64_t seed = 0;    // FlipWithProb stream
  std::function<bool(const StructuredHspInstance&)> predicate;  // WrongOnMatching
  std::string description;
};

/**
 * Parses "always-trivial", "always-nontrivial", "flip:<p>" and
 * "wrong-on-order-gt:<m>" (flip answers on base groups of order > m).
 */
BugSpec parse_bug_spec(const std::string& text, std::uint64_t seed = 0);

/// P with answers changed exactly as the spec says. FlipWithProb draws from its own seeded stream.
std::shared_ptr<DecisionOracle> wrap_buggy(std::shared_ptr<DecisionOracle> program, BugSpec spec);

struct SearchOutput {
  std::vector<GroupElement> generators;
};

using SearchProgram = std::function<SearchOutput(const HspInstance&)>;

SearchProgram brute_search_program(std::size_t cap = kDefaultCap);

enum class SearchBugMode { ProperSubgroup, ShiftedRepresentative };

/// ProperSubgroup drops the largest generator. ShiftedRepresentative multiplies
/// the second slot of every swapping wreath generator (k1, k2, 1) by `offset`
/// on the right; other outputs pass through.
struct SearchBugSpec {
  SearchBugMode mode = SearchBugMode::ProperSubgroup;
  std::optional<GroupElement> offset;
};

SearchProgram wrap_buggy_search(SearchProgram program, SearchBugSpec spec);

enum class Verdict { Correct, Buggy };

std::string to_string(Verdict v);

struct TrialRecord {
  std::size_t trial = 0;  // 0 is the program's own answer on the input
  std::string result;
  bool passed = true;
};

struct CheckerVerdict {
  Verdict verdict = Verdict::Correct;
  std::string branch;
  std::vector<TrialRecord> transcript;
  std::uint64_t oracle_calls = 0;
  std::uint64_t checker_steps = 0;
  /// Clock tick after which every trial query was sealed (0 if no batch was built).
  std::uint64_t sealed_at = 0;
  /// Clock tick of the first call to the program after sealing.
  std::uint64_t first_trial_call = 0;
};

/// Seed of trial i, derived from the master seed by splitmix hashing.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t i);

struct CheckerOptions {
  unsigned jobs = 1;
  std::size_t cap = kDefaultCap;
};

/**
 * Checks a decision program P on one instance over G <= S_n. If P says
 * Nontrivial, the search-via-decision reduction is run with P and must produce
 * h != id with f(h) = f(id). If P says Trivial, k shifted copies are built:
 * f'(g) = f(g u^-1) for random u, reduced to an HSP over G wr Z_2 embedded in
 * S_2n, and P must lead the search to exactly (u^-1, u, 1). All k query
 * batches are sealed before P sees any of them.
 */
CheckerVerdict checker_hspD(DecisionOracle& program, std::shared_ptr<const HspInstance> inst, std::size_t k,
                            std::uint64_t seed, const CheckerOptions& options = {});

/**
 * Checks a search program P: every returned generator must satisfy
 * f(s) = f(id); then on k Hidden Coset copies with random shifts u, the
 * recovered (H', u') must have <H'> = <S> and u' u^-1 in <S>.
 */
CheckerVerdict checker_hsp(const SearchProgram& program, std::shared_ptr<const HspInstance> inst, std::size_t k,
                           std::uint64_t seed, const CheckerOptions& options = {});

/// The shifted copy of a left-coset oracle used by both checkers: HSP over G wr Z_2.
HspInstance shifted_coset_instance(const HspInstance& inst, const GroupElement& shift, std::size_t cap = kDefaultCap);

/// An HSP instance over G wr Z_2 (G <= S_n) moved into S_2n by wreath_embed.
HspInstance embed_wreath_instance(const HspInstance& inst, std::size_t n);

}  // namespace hsp
