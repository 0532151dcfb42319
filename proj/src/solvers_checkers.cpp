#include "hsp/solvers_checkers.hpp"

#include <algorithm>

#include "hsp/errors.hpp"

namespace hsp {

std::vector<GroupElement> brute_hsp_solve(const HspInstance& inst, std::size_t cap) {
  auto gens = greedy_generators(inst.group->shape(), kernel_elements(inst, cap), cap);
  if (!gens) throw PromiseViolation("{g : f(g) = f(id)} is not a subgroup");
  return *gens;
}

DecisionAnswer brute_decide(const StructuredHspInstance& q, std::size_t cap) {
  for (const auto& p : q.intersection(cap))
    if (!p.is_identity()) return DecisionAnswer::Nontrivial;
  return DecisionAnswer::Trivial;
}

void BruteForceDecisionOracle::clear_cache() {
  std::lock_guard lock(mutex_);
  cache_.clear();
}

DecisionAnswer BruteForceDecisionOracle::answer(const StructuredHspInstance& q) {
  const std::vector<Permutation>* kernel = nullptr;
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(q.base.get());
    if (it == cache_.end()) {
      Entry e{q.base, {}};
      for (const auto& g : kernel_elements(*q.base, cap_))
        if (!g.is_identity()) e.nontrivial_kernel.push_back(g.perm());
      it = cache_.emplace(q.base.get(), std::move(e)).first;
    }
    kernel = &it->second.nontrivial_kernel;
  }
  for (const auto& p : *kernel)
    if (std::all_of(q.constraints.begin(), q.constraints.end(), [&](const auto& c) { return c.contains(p); }))
      return DecisionAnswer::Nontrivial;
  return DecisionAnswer::Trivial;
}

bool BruteForceShiftOracle::answer(const ShiftQuery& q) {
  const auto& elems = q.group->elements();
  std::vector<ValueLabel> first;
  first.reserve(elems.size());
  for (const auto& g : elems) first.push_back(q.f1(g));
  for (const auto& u : elems) {
    bool ok = true;
    for (std::size_t x = 0; x < elems.size() && ok; ++x) ok = first[x] == q.f2(elems[x] * u);
    if (ok) return true;
  }
  return false;
}

bool BruteForceDihedralOracle::answer(const DihedralQuery& q) {
  if (inst_->group->shape() != Shape::dihedral(q.n)) throw ShapeMismatch("dihedral query over a different group");
  const ValueLabel at_identity = inst_->f(inst_->group->identity());
  const FiniteGroup sub = dihedral_query_group(q);
  for (const auto& x : sub.elements())
    if (!x.is_identity() && inst_->f(x) == at_identity) return true;
  return false;
}

BugSpec parse_bug_spec(const std::string& text, std::uint64_t seed) {
  BugSpec spec;
  spec.description = text;
  spec.seed = seed;
  auto value_after = [&](const std::string& prefix) { return text.substr(prefix.size()); };
  try {
    if (text == "always-trivial") {
      spec.mode = BugMode::AlwaysTrivial;
    } else if (text == "always-nontrivial") {
      spec.mode = BugMode::AlwaysNontrivial;
    } else if (text.rfind("flip:", 0) == 0) {
      spec.mode = BugMode::FlipWithProb;
      spec.probability = std::stod(value_after("flip:"));
      if (spec.probability < 0 || spec.probability > 1) throw InvalidInput("flip probability must lie in [0, 1]");
    } else if (text.rfind("wrong-on-order-gt:", 0) == 0) {
      spec.mode = BugMode::WrongOnMatching;
      const std::uint64_t bound = std::stoull(value_after("wrong-on-order-gt:"));
      spec.predicate = [bound](const StructuredHspInstance& q) { return q.base->group->order() > bound; };
    } else {
      throw InvalidInput("unknown bug spec '" + text + "'");
    }
  } catch (const std::logic_error&) {
    throw InvalidInput("malformed bug spec '" + text + "'");
  }
  return spec;
}

namespace {

class BuggyDecisionOracle : public DecisionOracle {
 public:
  BuggyDecisionOracle(std::shared_ptr<DecisionOracle> inner, BugSpec spec)
      : inner_(std::move(inner)), spec_(std::move(spec)), rng_(spec_.seed) {}

 protected:
  DecisionAnswer answer(const StructuredHspInstance& q) override {
    switch (spec_.mode) {
      case BugMode::AlwaysTrivial:
        return DecisionAnswer::Trivial;
      case BugMode::AlwaysNontrivial:
        return DecisionAnswer::Nontrivial;
      case BugMode::FlipWithProb: {
        const DecisionAnswer a = inner_->decide(q);
        bool flip;
        {
          std::lock_guard lock(rng_mutex_);
          flip = std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < spec_.probability;
        }
        return flip ? negate(a) : a;
      }
      case BugMode::WrongOnMatching: {
        const DecisionAnswer a = inner_->decide(q);
        return spec_.predicate(q) ? negate(a) : a;
      }
    }
    return DecisionAnswer::Trivial;
  }

 private:
  static DecisionAnswer negate(DecisionAnswer a) {
    return a == DecisionAnswer::Trivial ? DecisionAnswer::Nontrivial : DecisionAnswer::Trivial;
  }

  std::shared_ptr<DecisionOracle> inner_;
  BugSpec spec_;
  std::mutex rng_mutex_;
  std::mt19937_64 rng_;
};

}  // namespace

std::shared_ptr<DecisionOracle> wrap_buggy(std::shared_ptr<DecisionOracle> program, BugSpec spec) {
  return std::make_shared<BuggyDecisionOracle>(std::move(program), std::move(spec));
}

SearchProgram brute_search_program(std::size_t cap) {
  return [cap](const HspInstance& inst) { return SearchOutput{brute_hsp_solve(inst, cap)}; };
}

SearchProgram wrap_buggy_search(SearchProgram program, SearchBugSpec spec) {
  return [program = std::move(program), spec = std::move(spec)](const HspInstance& inst) {
    SearchOutput out = program(inst);
    if (spec.mode == SearchBugMode::ProperSubgroup) {
      if (!out.generators.empty())
        out.generators.erase(std::max_element(out.generators.begin(), out.generators.end()));
      return out;
    }
    if (!spec.offset) throw InvalidInput("shifted-representative bug needs an offset");
    for (auto& g : out.generators) {
      if (g.kind() != ElementKind::Wreath || g.wreath().shift != 1 || g.wreath().slots.size() != 2) continue;
      g = make_wreath({g.wreath().slots[0], g.wreath().slots[1] * *spec.offset}, 1);
    }
    return out;
  };
}

std::string to_string(Verdict v) { return v == Verdict::Correct ? "CORRECT" : "BUGGY"; }

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t i) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(master ^ mix(i + 1));
}

HspInstance shifted_coset_instance(const HspInstance& inst, const GroupElement& shift, std::size_t cap) {
  // The coset reduction reads f1 as a labeling of left cosets gH.
  OracleFunction f1 = inst.f;
  if (inst.side == CosetSide::Right)
    f1 = OracleFunction(inst.group, [f = inst.f](const GroupElement& g) { return f(invert(g)); });
  const GroupElement shift_inv = invert(shift);
  OracleFunction f2(inst.group, [f1, shift_inv](const GroupElement& g) { return f1(g * shift_inv); });
  return hidden_coset_to_hsp(HiddenCosetInstance{inst.group, f1, f2, std::nullopt, std::nullopt}, cap);
}

HspInstance embed_wreath_instance(const HspInstance& inst, std::size_t n) {
  std::vector<Permutation> gens;
  for (const auto& g : inst.group->generators()) gens.push_back(wreath_embed(g));
  auto group = std::make_shared<const FiniteGroup>(permutation_group(static_cast<std::uint32_t>(2 * n), gens));
  OracleFunction f(group, [f = inst.f, n](const GroupElement& p) { return f(wreath_unembed(p.perm(), n)); });
  std::optional<std::vector<GroupElement>> planted;
  if (inst.planted) {
    planted.emplace();
    for (const auto& g : *inst.planted) planted->emplace_back(wreath_embed(g));
  }
  return HspInstance{std::move(group), std::move(f), inst.side, std::move(planted), {}};
}

namespace {

struct StepCounter {
  std::uint64_t steps = 0;
};

CheckerVerdict finish(CheckerVerdict v) {
  v.verdict = std::all_of(v.transcript.begin(), v.transcript.end(), [](const auto& t) { return t.passed; })
                  ? Verdict::Correct
                  : Verdict::Buggy;
  return v;
}

}  // namespace

CheckerVerdict checker_hspD(DecisionOracle& program, std::shared_ptr<const HspInstance> inst, std::size_t k,
                            std::uint64_t seed, const CheckerOptions& options) {
  if (k < 1) throw InvalidInput("checker needs k >= 1");
  if (!inst->group->is_permutation_group()) throw ShapeMismatch("the decision checker needs a permutation group");
  const std::uint64_t calls_before = program.calls();
  const std::size_t n = inst->group->degree();
  CheckerVerdict v;
  const ValueLabel at_identity = inst->f(inst->group->identity());
  v.checker_steps += 1;

  const DecisionAnswer first = program.decide(multi_intersection(inst, {}));
  if (first == DecisionAnswer::Nontrivial) {
    v.branch = "nontrivial";
    QueryBatch batch = build_decision_batch(inst);
    v.checker_steps += batch.size();
    const SealedBatch sealed = std::move(batch).seal();
    v.sealed_at = sealed.sealed_at();
    v.first_trial_call = EventClock::now() + 1;
    TrialRecord rec{0, "", false};
    try {
      const auto answers = sealed.issue(program, options.jobs);
      const auto h = reconstruct_hidden_element(*inst, sealed.indices(), answers);
      v.checker_steps += sealed.size() + 2;
      if (!h) {
        rec.result = "search found no element";
      } else if (h->is_identity() || inst->f(GroupElement(*h)) != at_identity) {
        rec.result = "search returned " + h->to_cycle_string() + " outside the hidden subgroup";
      } else {
        rec.passed = true;
        rec.result = "found " + h->to_cycle_string();
      }
    } catch (const OracleInconsistent& e) {
      rec.result = std::string("inconsistent answers: ") + e.what();
    }
    v.transcript.push_back(rec);
    v.oracle_calls = program.calls() - calls_before;
    return finish(std::move(v));
  }

  v.branch = "trivial";
  const auto& chain = inst->group->chain();
  std::vector<GroupElement> shifts;
  std::vector<std::shared_ptr<const HspInstance>> embedded;
  std::vector<SealedBatch> batches;
  for (std::size_t t = 0; t < k; ++t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    shifts.emplace_back(chain.random_element(rng));
    auto e = std::make_shared<const HspInstance>(
        embed_wreath_instance(shifted_coset_instance(*inst, shifts.back(), options.cap), n));
    QueryBatch batch = build_decision_batch(e);
    v.checker_steps += batch.size() + 1;
    batches.push_back(std::move(batch).seal());
    embedded.push_back(std::move(e));
  }
  v.sealed_at = batches.back().sealed_at();
  v.first_trial_call = EventClock::now() + 1;

  std::vector<std::vector<DecisionAnswer>> answers;
  for (const auto& b : batches) answers.push_back(b.issue(program, options.jobs));

  for (std::size_t t = 0; t < k; ++t) {
    TrialRecord rec{t + 1, "", false};
    const GroupElement expected = make_wreath({invert(shifts[t]), shifts[t]}, 1);
    try {
      const auto h = reconstruct_hidden_element(*embedded[t], batches[t].indices(), answers[t]);
      v.checker_steps += batches[t].size() + 1;
      if (!h) {
        rec.result = "search found no element";
      } else {
        const GroupElement w = wreath_unembed(*h, n);
        rec.passed = w == expected;
        rec.result = (rec.passed ? "matched " : "expected " + expected.to_string() + ", got ") + w.to_string();
      }
    } catch (const OracleInconsistent& e) {
      rec.result = std::string("inconsistent answers: ") + e.what();
    }
    v.transcript.push_back(std::move(rec));
  }
  v.oracle_calls = program.calls() - calls_before;
  return finish(std::move(v));
}

CheckerVerdict checker_hsp(const SearchProgram& program, std::shared_ptr<const HspInstance> inst, std::size_t k,
                           std::uint64_t seed, const CheckerOptions& options) {
  if (k < 1) throw InvalidInput("checker needs k >= 1");
  CheckerVerdict v;
  v.branch = "search";
  const Shape& shape = inst->group->shape();
  const ValueLabel at_identity = inst->f(inst->group->identity());

  const SearchOutput claimed = program(*inst);
  v.oracle_calls += 1;
  TrialRecord own{0, "", true};
  for (const auto& s : claimed.generators) {
    v.checker_steps += 1;
    if (s.shape() != shape || !inst->group->contains(s) || inst->f(s) != at_identity) {
      own.passed = false;
      own.result = "generator " + s.to_string() + " is not in the hidden subgroup";
      break;
    }
  }
  if (own.passed) own.result = std::to_string(claimed.generators.size()) + " generators verified";
  v.transcript.push_back(own);
  if (!own.passed) return finish(std::move(v));

  const auto span = closure_set(shape, claimed.generators, options.cap);
  v.checker_steps += span.size();

  std::vector<GroupElement> shifts;
  std::vector<HspInstance> copies;
  for (std::size_t t = 0; t < k; ++t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    const auto& elems = inst->group->elements(options.cap);
    shifts.push_back(elems[std::uniform_int_distribution<std::size_t>(0, elems.size() - 1)(rng)]);
    copies.push_back(shifted_coset_instance(*inst, shifts.back(), options.cap));
    v.checker_steps += 1;
  }

  for (std::size_t t = 0; t < k; ++t) {
    TrialRecord rec{t + 1, "", false};
    try {
      const SearchOutput out = program(copies[t]);
      v.oracle_calls += 1;
      const CosetSolution sol = recover_coset_solution(out.generators, *inst->group);
      const auto recovered = closure_set(shape, sol.subgroup_gens, options.cap);
      v.checker_steps += recovered.size() + out.generators.size();
      if (recovered != span) {
        rec.result = "recovered subgroup of order " + std::to_string(recovered.size()) + ", claimed order " +
                     std::to_string(span.size());
      } else if (!span.contains(sol.shift * invert(shifts[t]))) {
        rec.result = "representative " + sol.shift.to_string() + " not in the coset of " + shifts[t].to_string();
      } else {
        rec.passed = true;
        rec.result = "consistent";
      }
    } catch (const Error& e) {
      rec.result = std::string("recovery failed: ") + e.what();
    }
    v.transcript.push_back(std::move(rec));
  }
  return finish(std::move(v));
}

}  // namespace hsp
