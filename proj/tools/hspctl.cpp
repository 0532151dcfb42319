// hspctl: plant, reduce, solve, search and check hidden subgroup instances.
// JSON reports go to stdout, diagnostics to stderr.
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "hsp/catalog.hpp"
#include "hsp/errors.hpp"
#include "hsp/io.hpp"
#include "hsp/search_decision.hpp"
#include "hsp/selftest.hpp"
#include "hsp/solvers_checkers.hpp"

using namespace hsp;

namespace {

struct Global {
  std::uint64_t seed = 1;
  std::size_t cap = 100000;
  unsigned jobs = 1;
};

struct Report {
  Json outputs = Json::object();
  Json digest = nullptr;
  std::uint64_t evaluations = 0;
  std::uint64_t queries = 0;
  int exit_code = 0;
};

Json elements_json(const std::vector<GroupElement>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(element_to_json(x));
  return a;
}

std::string read_source(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

/// Reads an instance file; a previous run report is unwrapped to its instance.
PlantedSpec load_spec(const std::string& path, Report& report) {
  Json j = Json::parse(read_source(path));
  if (j.is_object() && j.contains("outputs") && j["outputs"].contains("instance")) j = j["outputs"]["instance"];
  auto spec = spec_from_json(j);
  report.digest = digest(spec_to_json(spec));
  return spec;
}

std::shared_ptr<const FiniteGroup> load_group(const std::string& text) {
  const bool literal = !text.empty() && text.front() == '{';
  return std::make_shared<const FiniteGroup>(literal ? group_from_json(Json::parse(text)) : group_from_name(text));
}

CosetSide parse_side(const std::string& s) {
  if (s == "left") return CosetSide::Left;
  if (s == "right") return CosetSide::Right;
  throw InvalidInput("side must be left or right");
}

GroupElement draw(const FiniteGroup& g, std::mt19937_64& rng, std::size_t cap) {
  if (g.is_permutation_group()) return g.chain().random_element(rng);
  const auto& all = g.elements(cap);
  return all[rng() % all.size()];
}

void require(bool promise, const std::string& what) {
  if (!promise) throw PromiseViolation(what + " does not satisfy its promise");
}

/// Checks the promise of a spec and of everything it reduces from.
void validate(const PlantedSpec& spec, std::size_t cap) {
  if (spec.problem == "reduced") {
    validate(*spec.source, cap);
    require(verify_promise(materialize_hsp(spec, cap), cap), "reduced instance");
  } else if (spec.problem == "hsp") {
    require(verify_promise(materialize_hsp(spec, cap), cap), "instance");
  } else if (spec.problem == "hidden_coset" || spec.problem == "hidden_shift") {
    require(verify_promise(materialize_coset(spec, cap), cap), "instance");
  } else if (spec.problem == "ghsh") {
    require(verify_promise(materialize_ghsh(spec, cap), cap), "instance");
  } else {
    require(verify_promise(materialize_orbit_coset(spec, cap), cap), "instance");
  }
}

/// The slot read off the unique shift-1 element of the hidden cyclic subgroup.
GroupElement ghsh_shift(const std::vector<GroupElement>& k_gens, const Shape& shape, std::size_t cap) {
  for (const auto& x : closure(shape, k_gens, cap))
    if (x.kind() == ElementKind::Wreath && x.wreath().shift == 1) return x.wreath().slots.front();
  throw InvalidKGenerators("no element with shift 1 in the hidden subgroup");
}

/// Interprets HSP generators of a reduced instance as a solution of its source.
Json decode(const PlantedSpec& source, const std::vector<GroupElement>& k_gens, const Shape& shape, std::size_t cap) {
  if (source.problem == "hidden_coset" || source.problem == "hidden_shift") {
    const auto sol = recover_coset_solution(k_gens, *source.group);
    return Json{{"subgroup", elements_json(sol.subgroup_gens)}, {"shift", element_to_json(sol.shift)}};
  }
  if (source.problem == "ghsh") return Json{{"shift", element_to_json(ghsh_shift(k_gens, shape, cap))}};
  const auto sol = recover_orbit_coset_solution(k_gens);
  return Json{{"disjoint", sol.rejected},
              {"shift", sol.shift ? element_to_json(*sol.shift) : Json(nullptr)},
              {"stabilizer", elements_json(sol.stabilizer_gens)}};
}

Json labels_summary(const HspInstance& inst, std::size_t cap) {
  std::set<std::string> labels;
  for (const auto& g : inst.group->elements(cap)) labels.insert(inst.f(g).to_string());
  return Json{{"coset_labels", labels.size()}, {"labels", labels}};
}

std::shared_ptr<const HspInstance> inline_instance(const std::string& group, const std::string& subgroup,
                                                   const std::string& side, const std::string& path,
                                                   const Global& gl, Report& report) {
  if (!path.empty()) {
    const auto spec = load_spec(path, report);
    validate(spec, gl.cap);
    return std::make_shared<const HspInstance>(materialize_hsp(spec, gl.cap));
  }
  PlantedSpec spec;
  spec.problem = "hsp";
  spec.group = load_group(group);
  spec.side = parse_side(side);
  spec.subgroup = parse_elements(subgroup, spec.group->shape());
  report.digest = digest(spec_to_json(spec));
  auto inst = std::make_shared<const HspInstance>(materialize_hsp(spec, gl.cap));
  require(verify_promise(*inst, gl.cap), "instance");
  return inst;
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  Global gl;
  Report report;
  Json command = Json::array();
  for (int i = 1; i < argc; ++i) command.push_back(argv[i]);

  CLI::App app{"Hidden subgroup reductions, search-to-decision and program checkers"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", gl.seed, "64-bit master seed");
  app.add_option("--cap", gl.cap, "group enumeration cap");
  app.add_option("--jobs", gl.jobs, "worker threads for independent queries")->check(CLI::Range(1u, 256u));

  // plant
  auto* plant = app.add_subcommand("plant", "plant an instance and print its JSON");
  std::string problem, group_text, subgroup_text, side_text = "left", shift_text, action_text;
  std::size_t count = 2;
  std::uint32_t phi1 = 0;
  bool disjoint = false;
  plant->add_option("problem", problem, "hsp | hidden_coset | hidden_shift | ghsh | orbit_coset")->required();
  plant->add_option("--group", group_text, "catalog name (s4, z6, d12, wr:z3:2) or group JSON")->required();
  plant->add_option("--subgroup", subgroup_text, "generators separated by ';'");
  plant->add_option("--side", side_text, "left | right");
  plant->add_option("--shift", shift_text, "planted shift; drawn from --seed when omitted");
  plant->add_option("--count", count, "number of functions for ghsh");
  plant->add_option("--action", action_text, R"(orbit coset action {"states": N, "table": [[...], ...]})");
  plant->add_option("--phi1", phi1, "orbit coset start state");
  plant->add_flag("--disjoint", disjoint, "orbit coset with phi0 outside the orbit of phi1");

  // reduce / solve
  std::string instance_path;
  auto* reduce = app.add_subcommand("reduce", "reduce an instance to a hidden subgroup instance");
  reduce->add_option("--instance", instance_path, "instance or report JSON file, '-' for stdin")->required();
  auto* solve = app.add_subcommand("solve", "brute-force solve an instance");
  solve->add_option("--instance", instance_path, "instance or report JSON file, '-' for stdin")->required();

  // search-via-decision
  auto* search = app.add_subcommand("search-via-decision", "find hidden elements with decision queries only");
  std::string oracle_text = "bruteforce";
  bool emit_log = false;
  std::uint64_t bound = 0;
  search->add_option("--instance", instance_path, "instance or report JSON file");
  search->add_option("--group", group_text, "group for an inline hsp instance");
  search->add_option("--subgroup", subgroup_text, "generators of the inline hidden subgroup");
  search->add_option("--side", side_text, "left | right");
  search->add_option("--oracle", oracle_text, "bruteforce | buggy:<spec>");
  search->add_flag("--emit-querylog", emit_log, "include every query index and answer");
  search->add_option("--bound", bound, "smoothness bound for dihedral search (default: largest prime factor)");

  // check
  auto* check = app.add_subcommand("check", "run a program checker");
  std::string program_text = "bruteforce", flavor = "decision";
  std::size_t k = 7, runs = 1;
  check->add_option("--instance", instance_path, "instance or report JSON file");
  check->add_option("--group", group_text, "group for an inline hsp instance");
  check->add_option("--subgroup", subgroup_text, "generators of the inline hidden subgroup");
  check->add_option("--side", side_text, "left | right");
  check->add_option("--program", program_text, "bruteforce | buggy:<mode>");
  check->add_option("--flavor", flavor, "decision | search")->check(CLI::IsMember({"decision", "search"}));
  check->add_option("--k", k, "trials per run");
  check->add_option("--runs", runs, "independent checker runs");

  // selftest
  auto* selftest = app.add_subcommand("selftest", "run property suites");
  std::string suite = "all";
  std::size_t max_degree = 6;
  selftest->add_option("--suite", suite, "all | perm_core | group_alg | instances | reductions | search_decision | solvers_checkers");
  selftest->add_option("--max-degree", max_degree, "largest symmetric group degree used");

  auto fail = [&](int code, const std::string& type, const std::string& message) {
    std::cerr << "hspctl: " << message << "\n";
    std::cout << Json{{"command", command}, {"error", {{"type", type}, {"message", message}}}}.dump(2) << "\n";
    return code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, std::cerr, std::cerr);
  } catch (const CLI::ParseError& e) {
    return fail(2, "usage", e.what());
  }

  try {
    if (*plant) {
      PlantedSpec spec;
      spec.problem = problem;
      spec.group = load_group(group_text);
      const Shape& shape = spec.group->shape();
      std::mt19937_64 rng(gl.seed);
      auto shift_or_draw = [&] {
        return shift_text.empty() ? draw(*spec.group, rng, gl.cap) : parse_element(shift_text, shape);
      };
      spec.subgroup = parse_elements(subgroup_text, shape);
      for (const auto& g : spec.subgroup)
        if (!spec.group->contains(g, gl.cap)) throw NotInGroup(g.to_string() + " is not in the group");
      if (problem == "hsp") {
        spec.side = parse_side(side_text);
      } else if (problem == "hidden_coset" || problem == "hidden_shift" || problem == "ghsh") {
        spec.shift = shift_or_draw();
        spec.count = count;
        if (problem != "hidden_coset") spec.subgroup.clear();
      } else if (problem == "orbit_coset") {
        const Json action = Json::parse(action_text.empty() ? "null" : action_text);
        if (!action.is_object()) throw InvalidInput("orbit_coset needs --action");
        spec.states = action.at("states").get<std::size_t>();
        spec.table = action.at("table").get<std::vector<std::vector<std::uint32_t>>>();
        spec.phi1 = phi1;
        if (!disjoint) spec.shift = shift_or_draw();
      }
      Json j = spec_to_json(spec);
      spec = spec_from_json(j);
      if (spec.shift) j = spec_to_json(spec);
      validate(spec, gl.cap);
      report.digest = digest(j);
      report.outputs["instance"] = j;
      if (problem == "hsp") {
        const auto inst = materialize_hsp(spec, gl.cap);
        report.outputs.update(labels_summary(inst, gl.cap));
        report.evaluations = inst.f.evaluations();
      } else if (problem == "orbit_coset") {
        report.outputs["phi0"] = materialize_orbit_coset(spec, gl.cap).phi0;
      }
    } else if (*reduce) {
      const auto spec = load_spec(instance_path, report);
      validate(spec, gl.cap);
      const auto reduced = reduce_spec(spec);
      const auto inst = materialize_hsp(reduced, gl.cap);
      require(verify_promise(inst, gl.cap), "reduced instance");
      static const std::map<std::string, std::string> statements{
          {"hidden-coset-to-hsp",
           "f(g1, g2, t) over G wr Z2 hides K; H and the shift set Hu are read from the shift-1 generators of K"},
          {"generalized-shift-to-hsp",
           "f(g1..gn, t) = (f_t(1)(g1), ..., f_t(n)(gn)) hides the n-element cyclic subgroup generated by "
           "(u, ..., u, u^(1-n), 1)"},
          {"orbit-coset-to-hsp",
           "the ordered pair of state labels over G wr Z2 hides the stabilizer pair together with (u^-1, u, 1) "
           "when the orbits meet"},
      };
      const Json reduced_json = spec_to_json(reduced);
      report.outputs["instance"] = reduced_json;
      report.outputs["provenance"] = Json{{"reduction", reduced.reduction},
                                          {"statement", statements.at(reduced.reduction)},
                                          {"source_digest", report.digest},
                                          {"hidden_subgroup", inst.planted ? elements_json(*inst.planted) : Json(nullptr)}};
      report.digest = digest(reduced_json);
    } else if (*solve) {
      const auto spec = load_spec(instance_path, report);
      validate(spec, gl.cap);
      const auto& target = spec.problem == "hsp" || spec.problem == "reduced" ? spec : reduce_spec(spec);
      const auto inst = materialize_hsp(target, gl.cap);
      const auto gens = brute_hsp_solve(inst, gl.cap);
      report.evaluations = inst.f.evaluations();
      report.outputs["generators"] = elements_json(gens);
      report.outputs["order"] = closure(inst.group->shape(), gens, gl.cap).size();
      if (target.problem == "reduced") {
        report.outputs["reduction"] = target.reduction;
        report.outputs["solution"] = decode(*target.source, gens, inst.group->shape(), gl.cap);
      }
    } else if (*search) {
      if (instance_path.empty() && group_text.empty()) throw InvalidInput("give --instance or --group");
      std::optional<PlantedSpec> spec;
      if (!instance_path.empty()) {
        spec = load_spec(instance_path, report);
        validate(*spec, gl.cap);
      }
      if (spec && spec->problem == "hidden_shift") {
        if (oracle_text != "bruteforce") throw InvalidInput("hidden shift search supports only the bruteforce oracle");
        const auto hc = materialize_coset(*spec, gl.cap);
        BruteForceShiftOracle oracle;
        try {
          const auto r = hsh_search_via_decision(spec->group, hc.f1, hc.f2, oracle);
          report.outputs["status"] = "found";
          report.outputs["shift"] = element_to_json(r.shift);
          report.outputs["level_queries"] = r.level_queries;
        } catch (const NoShift& e) {
          report.outputs["status"] = "no-shift";
        }
        report.queries = oracle.calls();
        report.evaluations = hc.f1.evaluations() + hc.f2.evaluations();
      } else {
        const auto inst = spec ? std::make_shared<const HspInstance>(materialize_hsp(*spec, gl.cap))
                               : inline_instance(group_text, subgroup_text, side_text, "", gl, report);
        if (inst->group->shape().kind == ElementKind::Dihedral) {
          if (oracle_text != "bruteforce") throw InvalidInput("dihedral search supports only the bruteforce oracle");
          const std::uint32_t n = inst->group->shape().size;
          if (bound == 0)
            for (std::uint64_t p = 2, m = n; m > 1; ++p)
              while (m % p == 0) {
                m /= p;
                bound = p;
              }
          BruteForceDihedralOracle oracle(inst);
          const auto r = dihedral_search_via_decision(n, std::max<std::uint64_t>(bound, 2), oracle);
          const auto element = make_dihedral(r.a, true, n);
          Json residues = Json::array();
          for (const auto& res : r.residues) residues.push_back({res.value, res.modulus});
          report.outputs["a"] = r.a;
          report.outputs["element"] = element_to_json(element);
          report.outputs["in_subgroup"] = inst->f(element) == inst->f(inst->group->identity());
          report.outputs["residues"] = residues;
          report.queries = r.queries;
        } else {
          if (!inst->group->is_permutation_group()) throw InvalidInput("search needs a permutation or dihedral group");
          auto base = std::make_shared<BruteForceDecisionOracle>(gl.cap);
          std::shared_ptr<DecisionOracle> oracle = base;
          if (oracle_text.rfind("buggy:", 0) == 0) {
            oracle = wrap_buggy(base, parse_bug_spec(oracle_text.substr(6), gl.seed));
          } else if (oracle_text != "bruteforce") {
            throw InvalidInput("unknown oracle '" + oracle_text + "'");
          }
          const SealedBatch sealed = build_decision_batch(inst).seal();
          const auto answers = sealed.issue(*oracle, gl.jobs);
          const auto log = oracle->call_log();
          bool sealed_first = true;
          for (const auto& c : log) sealed_first = sealed_first && c.tick > sealed.sealed_at();
          try {
            const auto h = reconstruct_hidden_element(*inst, sealed.indices(), answers);
            report.outputs["status"] = h ? "found" : "trivial";
            report.outputs["element"] = h ? element_to_json(*h) : Json(nullptr);
            if (h) report.outputs["cycles"] = h->to_cycle_string();
          } catch (const OracleInconsistent& e) {
            report.outputs["status"] = "inconsistent";
            report.outputs["element"] = nullptr;
            report.outputs["detail"] = e.what();
          }
          report.outputs["sealed_before_calls"] = sealed_first;
          report.queries = log.size();
          if (emit_log) {
            Json qlog = Json::array();
            const auto indices = sealed.indices();
            for (std::size_t q = 0; q < indices.size(); ++q) {
              const auto& ix = indices[q];
              qlog.push_back({{"index", {ix.i, ix.j, ix.jp, ix.k, ix.l}}, {"answer", to_string(answers[q])}});
            }
            report.outputs["querylog"] = qlog;
          }
        }
        report.evaluations = inst->f.evaluations();
      }
    } else if (*check) {
      const auto inst = inline_instance(group_text.empty() ? "s3" : group_text,
                                        group_text.empty() && subgroup_text.empty() ? "(1 2)" : subgroup_text,
                                        side_text, instance_path, gl, report);
      if (!inst->group->is_permutation_group()) throw InvalidInput("checkers need a permutation group");
      const bool buggy = program_text.rfind("buggy:", 0) == 0;
      if (!buggy && program_text != "bruteforce") throw InvalidInput("unknown program '" + program_text + "'");
      const std::string mode = buggy ? program_text.substr(6) : "";
      std::map<std::string, std::size_t> verdicts{{"CORRECT", 0}, {"BUGGY", 0}};
      Json per_run = Json::array();
      for (std::size_t run = 0; run < runs; ++run) {
        const std::uint64_t seed = runs == 1 ? gl.seed : trial_seed(gl.seed, run);
        CheckerVerdict v;
        if (flavor == "decision") {
          auto base = std::make_shared<BruteForceDecisionOracle>(gl.cap);
          auto program = buggy ? wrap_buggy(base, parse_bug_spec(mode, seed)) : std::shared_ptr<DecisionOracle>(base);
          v = checker_hspD(*program, inst, k, seed, {gl.jobs, gl.cap});
        } else {
          SearchProgram program = brute_search_program(gl.cap);
          if (mode == "proper-subgroup") {
            program = wrap_buggy_search(program, {SearchBugMode::ProperSubgroup, std::nullopt});
          } else if (mode.rfind("shifted-representative", 0) == 0) {
            const auto colon = mode.find(':');
            const GroupElement offset = colon == std::string::npos ? inst->group->generators().front()
                                                                   : parse_element(mode.substr(colon + 1), inst->group->shape());
            program = wrap_buggy_search(program, {SearchBugMode::ShiftedRepresentative, offset});
          } else if (buggy) {
            throw InvalidInput("unknown search bug '" + mode + "'");
          }
          v = checker_hsp(program, inst, k, seed, {gl.jobs, gl.cap});
        }
        ++verdicts[to_string(v.verdict)];
        report.queries += v.oracle_calls;
        Json trials = Json::array();
        for (const auto& t : v.transcript) trials.push_back({{"trial", t.trial}, {"result", t.result}, {"passed", t.passed}});
        per_run.push_back({{"verdict", to_string(v.verdict)},
                           {"branch", v.branch},
                           {"trials", k},
                           {"oracle_calls", v.oracle_calls},
                           {"checker_steps", v.checker_steps},
                           {"per_trial", trials}});
      }
      if (runs == 1) report.outputs = per_run.front();
      report.outputs["verdicts"] = verdicts;
      if (runs > 1) report.outputs["runs"] = per_run;
      report.evaluations = inst->f.evaluations();
    } else if (*selftest) {
      SelftestOptions opts;
      opts.max_degree = max_degree;
      opts.seed = gl.seed;
      opts.cap = gl.cap;
      opts.jobs = gl.jobs;
      Json props = Json::array();
      bool all_ok = true;
      for (const auto& r : run_suite(suite, opts)) {
        all_ok = all_ok && r.ok();
        Json notes = Json::object();
        for (const auto& [key, value] : r.notes) notes[key] = value;
        props.push_back({{"suite", r.suite},
                         {"property", r.name},
                         {"passed", r.passed},
                         {"failed", r.failed},
                         {"failures", r.failures},
                         {"notes", notes},
                         {"seconds", r.seconds}});
      }
      report.outputs["suite"] = suite;
      report.outputs["ok"] = all_ok;
      report.outputs["properties"] = props;
      report.exit_code = all_ok ? 0 : 1;
    }
  } catch (const CLI::Error& e) {
    return fail(2, "usage", e.what());
  } catch (const InvalidInput& e) {
    return fail(2, "invalid-input", e.what());
  } catch (const ExceedsCap& e) {
    return fail(2, "exceeds-cap", e.what());
  } catch (const Json::exception& e) {
    return fail(2, "malformed-json", e.what());
  } catch (const std::exception& e) {
    return fail(1, "internal", e.what());
  }

  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  Json out{{"command", command},
           {"seed", gl.seed},
           {"instance_digest", report.digest},
           {"outputs", report.outputs},
           {"counters", {{"oracle_evaluations", report.evaluations}, {"decision_queries", report.queries}}},
           {"wall_time_ms", ms}};
  std::cout << out.dump(2) << "\n";
  return report.exit_code;
}
