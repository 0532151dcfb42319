#include "hsp/search_decision.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <thread>

#include "hsp/errors.hpp"

namespace hsp {

std::string to_string(DecisionAnswer a) { return a == DecisionAnswer::Trivial ? "trivial" : "nontrivial"; }

std::atomic<std::uint64_t> EventClock::counter_{0};

std::uint64_t EventClock::tick() { return counter_.fetch_add(1) + 1; }
std::uint64_t EventClock::now() { return counter_.load(); }

DecisionAnswer DecisionOracle::decide(const StructuredHspInstance& q) {
  const std::uint64_t t = EventClock::tick();
  const DecisionAnswer a = answer(q);
  std::lock_guard lock(mutex_);
  log_.push_back({t, a});
  return a;
}

std::vector<OracleCall> DecisionOracle::call_log() const {
  std::lock_guard lock(mutex_);
  return log_;
}

std::uint64_t DecisionOracle::calls() const {
  std::lock_guard lock(mutex_);
  return log_.size();
}

void DecisionOracle::clear_log() {
  std::lock_guard lock(mutex_);
  log_.clear();
}

void QueryBatch::add(QueryIndex index, StructuredHspInstance instance) {
  records_.push_back({index, std::move(instance)});
}

SealedBatch QueryBatch::seal() && { return SealedBatch(std::move(records_), EventClock::tick()); }

std::vector<QueryIndex> SealedBatch::indices() const {
  std::vector<QueryIndex> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.index);
  return out;
}

std::vector<DecisionAnswer> SealedBatch::issue(DecisionOracle& oracle, unsigned jobs) const {
  std::vector<DecisionAnswer> answers(records_.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(records_.size())));
  if (jobs <= 1) {
    for (std::size_t q = 0; q < records_.size(); ++q) answers[q] = oracle.decide(records_[q].instance);
    return answers;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t q = w; q < records_.size(); q += jobs) answers[q] = oracle.decide(records_[q].instance);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return answers;
}

struct DoubledInstanceFactory::Shared {
  std::mutex mutex;
  std::optional<std::vector<Permutation>> kernel;
};

DoubledInstanceFactory::DoubledInstanceFactory(std::shared_ptr<const HspInstance> inst)
    : inst_(std::move(inst)), shared_(std::make_shared<Shared>()) {
  if (!inst_->group->is_permutation_group()) throw ShapeMismatch("search via decision needs a permutation group");
}

std::shared_ptr<const HspInstance> DoubledInstanceFactory::level(std::uint32_t i) const {
  const auto n = static_cast<std::uint32_t>(inst_->group->degree());
  if (i < 1 || i > n) throw InvalidInput("level out of range");
  const auto sub_gens = inst_->group->chain().stabilizer_generators(i - 1);
  const GroupElement id = Permutation::identity(n);

  std::vector<Permutation> gens;
  for (const auto& g : sub_gens) {
    gens.push_back(wreath_embed(make_wreath({g, id}, 0)));
    gens.push_back(wreath_embed(make_wreath({id, g}, 0)));
  }
  gens.push_back(wreath_embed(make_wreath({id, id}, 1)));
  auto group = std::make_shared<const FiniteGroup>(permutation_group(2 * n, gens));

  OracleFunction f(group, [f = inst_->f, n](const GroupElement& x) {
    const auto w = wreath_unembed(x.perm(), n);
    const auto& v = w.wreath();
    if (v.shift == 0) return ValueLabel::pair(f(v.slots[0]), f(v.slots[1]));
    return ValueLabel::pair(f(v.slots[1]), f(v.slots[0]));
  });

  KernelEnumerator kernel = [inst = inst_, shared = shared_, i, n](std::size_t cap) {
    std::vector<Permutation> sub;
    {
      std::lock_guard lock(shared->mutex);
      if (!shared->kernel) {
        std::vector<Permutation> k;
        for (const auto& g : kernel_elements(*inst, cap)) k.push_back(g.perm());
        shared->kernel = std::move(k);
      }
      for (const auto& p : *shared->kernel) {
        bool fixes = true;
        for (Point x = 1; x < i && fixes; ++x) fixes = p(x) == x;
        if (fixes) sub.push_back(p);
      }
    }
    if (2 * sub.size() * sub.size() > cap) throw ExceedsCap("doubled kernel exceeds cap");
    std::vector<GroupElement> out;
    out.reserve(2 * sub.size() * sub.size());
    for (std::uint32_t t = 0; t < 2; ++t)
      for (const auto& a : sub)
        for (const auto& b : sub) out.emplace_back(wreath_embed(make_wreath({a, b}, t)));
    (void)n;
    return out;
  };
  return std::make_shared<const HspInstance>(
      HspInstance{std::move(group), std::move(f), CosetSide::Left, std::nullopt, std::move(kernel)});
}

QueryBatch build_decision_batch(std::shared_ptr<const HspInstance> inst) {
  DoubledInstanceFactory factory(inst);
  const auto n = static_cast<std::uint32_t>(inst->group->degree());
  QueryBatch batch;
  for (std::uint32_t i = 1; i < n; ++i) {
    const auto base = factory.level(i);
    for (std::uint32_t j = i + 1; j <= n; ++j)
      for (std::uint32_t jp = i + 1; jp <= n; ++jp)
        for (std::uint32_t k = i; k <= n; ++k)
          for (std::uint32_t l = i; l <= n; ++l) {
            std::vector<ConstraintGroup> cs{
                ConstraintGroup::setwise_stabilizer(PointSet(2 * n, {i, j + n})),
                ConstraintGroup::setwise_stabilizer(PointSet(2 * n, {i + n, jp})),
                ConstraintGroup::setwise_stabilizer(PointSet(2 * n, {k, l + n})),
            };
            batch.add({i, j, jp, k, l}, multi_intersection(base, std::move(cs)));
          }
  }
  return batch;
}

std::uint64_t decision_query_count(std::size_t degree) {
  std::uint64_t total = 0;
  for (std::uint64_t i = 1; i <= degree; ++i) {
    const std::uint64_t a = degree - i;
    total += a * a * (a + 1) * (a + 1);
  }
  return total;
}

std::optional<Permutation> reconstruct_hidden_element(const HspInstance& inst,
                                                      const std::vector<QueryIndex>& indices,
                                                      const std::vector<DecisionAnswer>& answers) {
  if (indices.size() != answers.size()) throw InvalidInput("answer count differs from query count");
  std::vector<QueryIndex> yes;
  for (std::size_t q = 0; q < indices.size(); ++q)
    if (answers[q] == DecisionAnswer::Nontrivial) yes.push_back(indices[q]);
  if (yes.empty()) return std::nullopt;
  std::sort(yes.begin(), yes.end());

  const auto n = static_cast<std::uint32_t>(inst.group->degree());
  const std::uint32_t i = std::max_element(yes.begin(), yes.end(), [](auto& a, auto& b) { return a.i < b.i; })->i;
  auto first = std::find_if(yes.begin(), yes.end(), [&](const QueryIndex& q) { return q.i == i; });
  const std::uint32_t j = first->j, jp = first->jp;

  std::vector<Point> images(n);
  for (Point x = 1; x < i; ++x) images[x - 1] = x;
  for (Point k = i; k <= n; ++k) {
    std::vector<Point> ls;
    for (const auto& q : yes)
      if (q.i == i && q.j == j && q.jp == jp && q.k == k) ls.push_back(q.l);
    if (ls.size() != 1)
      throw OracleInconsistent("level " + std::to_string(i) + ": " + std::to_string(ls.size()) +
                               " accepted images for point " + std::to_string(k));
    images[k - 1] = ls.front();
  }
  std::optional<Permutation> h;
  try {
    h.emplace(images);
  } catch (const InvalidInput&) {
    throw OracleInconsistent("reconstructed images are not a permutation");
  }
  if (h->is_identity()) throw OracleInconsistent("reconstructed element is the identity");
  const GroupElement hg(*h);
  if (!inst.group->contains(hg)) throw OracleInconsistent("reconstructed element lies outside the group");
  if (inst.f(hg) != inst.f(inst.group->identity()))
    throw OracleInconsistent("reconstructed element is not in the hidden subgroup");
  return h;
}

std::optional<Permutation> hsp_search_via_decision(std::shared_ptr<const HspInstance> inst, DecisionOracle& oracle,
                                                   unsigned jobs) {
  const SealedBatch sealed = build_decision_batch(inst).seal();
  const auto answers = sealed.issue(oracle, jobs);
  return reconstruct_hidden_element(*inst, sealed.indices(), answers);
}

ShiftSearchResult hsh_search_via_decision(std::shared_ptr<const FiniteGroup> group, const OracleFunction& f1,
                                          const OracleFunction& f2, ShiftDecisionOracle& oracle) {
  if (!group->is_permutation_group()) throw ShapeMismatch("hidden shift search needs a permutation group");
  const auto& chain = group->chain();
  const std::size_t n = chain.degree();
  auto shifted = [&](const Permutation& s) {
    return OracleFunction(group, [f2, s](const GroupElement& x) { return f2(GroupElement(x.perm() * s)); });
  };

  ShiftSearchResult result{Permutation::identity(n), {}, {}};
  Permutation t = Permutation::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto sub = std::make_shared<const FiniteGroup>(
        permutation_group(static_cast<std::uint32_t>(n), chain.stabilizer_generators(i + 1)));
    std::size_t queries = 1;
    std::optional<Permutation> sigma;
    if (oracle.decide({sub, f1, shifted(t)})) {
      sigma = Permutation::identity(n);
    } else {
      for (const auto& [point, tau] : chain.transversal(i)) {
        if (tau.is_identity()) continue;
        ++queries;
        if (oracle.decide({sub, f1, shifted(tau * t)})) {
          sigma = tau;
          break;
        }
      }
    }
    result.level_queries.push_back(queries);
    if (!sigma) throw NoShift("no coset representative accepted at level " + std::to_string(i + 1));
    t = *sigma * t;
    result.sigmas.push_back(*sigma);
  }
  result.shift = t;
  return result;
}

FiniteGroup dihedral_query_group(const DihedralQuery& q) {
  return FiniteGroup(Shape::dihedral(q.n), {make_dihedral(q.step % q.n, false, q.n), make_dihedral(q.offset % q.n, true, q.n)});
}

SmoothFactorization smooth_factorize(std::uint64_t n, std::uint64_t bound) {
  if (n < 2 || bound < 2) throw InvalidInput("smooth factorization needs n >= 2 and B >= 2");
  SmoothFactorization out{n, bound, {}};
  std::uint64_t rest = n;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    if (p > bound) throw NotSmooth(std::to_string(n) + " has prime factor " + std::to_string(p) + " > " + std::to_string(bound));
    PrimePower pp{p, 0};
    while (rest % p == 0) {
      rest /= p;
      ++pp.exponent;
    }
    out.factors.push_back(pp);
  }
  if (rest > 1) {
    if (rest > bound)
      throw NotSmooth(std::to_string(n) + " has prime factor " + std::to_string(rest) + " > " + std::to_string(bound));
    out.factors.push_back({rest, 1});
  }
  return out;
}

namespace {

// Inverse of a modulo m for coprime a, m.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  __int128 old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  __int128 x = old_s % static_cast<__int128>(m);
  if (x < 0) x += m;
  return static_cast<std::uint64_t>(x);
}

}  // namespace

Residue crt_combine(const std::vector<Residue>& residues) {
  Residue acc{0, 1};
  for (const auto& r : residues) {
    if (r.modulus == 0) throw InvalidInput("modulus must be positive");
    if (std::gcd(acc.modulus, r.modulus) != 1) throw InvalidInput("moduli are not pairwise coprime");
    // x = acc.value + acc.modulus * t with acc.modulus * t = r.value - acc.value (mod r.modulus)
    const std::uint64_t target = (r.value % r.modulus + r.modulus - acc.value % r.modulus) % r.modulus;
    const auto t = static_cast<std::uint64_t>(static_cast<unsigned __int128>(target) *
                                              mod_inverse(acc.modulus % r.modulus, r.modulus) % r.modulus);
    acc.value += acc.modulus * t;
    acc.modulus *= r.modulus;
    acc.value %= acc.modulus;
  }
  return acc;
}

DihedralSearchResult dihedral_search_via_decision(std::uint32_t n, std::uint64_t bound,
                                                  DihedralDecisionOracle& oracle) {
  const auto factorization = smooth_factorize(n, bound);
  DihedralSearchResult result;
  for (const auto& [p, e] : factorization.factors) {
    std::uint64_t known = 0, prev = 1;
    for (std::uint32_t j = 1; j <= e; ++j) {
      const std::uint64_t step = prev * p;
      std::optional<std::uint64_t> accepted;
      for (std::uint64_t t = 0; t < p; ++t) {
        const std::uint64_t c = t * prev + known;
        ++result.queries;
        if (!oracle.decide({n, static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(c)})) continue;
        if (accepted) throw OracleInconsistent("two residues accepted modulo " + std::to_string(step));
        accepted = c;
      }
      if (!accepted) throw OracleInconsistent("no residue accepted modulo " + std::to_string(step));
      known = *accepted;
      prev = step;
    }
    result.residues.push_back({known, prev});
  }
  result.a = static_cast<std::uint32_t>(crt_combine(result.residues).value);
  return result;
}

}  // namespace hsp
