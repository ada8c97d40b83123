// Command-line front end: instance generation and IO, LP/exact solves,
// rounding campaigns, submodular pipeline, gap tables, and invariant checks.
//
// Exit codes: 0 ok, 1 failed verification, 2 input error, 3 solver failure,
// 4 precondition violation.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sparsepip/exact.hpp"
#include "sparsepip/generators.hpp"
#include "sparsepip/json_io.hpp"
#include "sparsepip/lp.hpp"
#include "sparsepip/rounding.hpp"
#include "sparsepip/submodular.hpp"

namespace sp = sparsepip;
using nlohmann::json;

namespace {

constexpr const char* kSchema = "sparsepip/1";

bool ci_deterministic() {
  const char* env = std::getenv("CI_DETERMINISTIC");
  return env != nullptr && std::string(env) == "1";
}

// Explicit --seed is mandatory in CI mode; interactive runs fall back to a
// time-derived seed that is echoed so the run can be replayed.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, bool json_mode) {
  if (seed.has_value()) return *seed;
  if (ci_deterministic())
    throw sp::InputError("CI_DETERMINISTIC=1 requires an explicit --seed");
  const auto now = std::chrono::steady_clock::now().time_since_epoch();
  const auto derived = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(now).count());
  if (!json_mode) std::cout << "seed: " << derived << " (time-derived)\n";
  return derived;
}

void emit(const json& j, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw sp::InputError("cannot write " + output_path);
  out << j.dump(2) << "\n";
}

struct GenOptions {
  std::string family;
  int k = 2;
  double epsilon = 0.0;
  int n = 8;
  double b = 2.0;
  int big_m = 100;
  int m = 8;
  double density = 1.0;
  std::string sizes = "uniform";
  std::string weights = "unit";
  std::optional<std::uint64_t> seed;
  std::string output;
};

int cmd_gen(const GenOptions& opt) {
  sp::PipInstance inst;
  if (opt.family == "gap2k") {
    inst = sp::gen_gap_2k_minus_1(opt.k, opt.epsilon);
  } else if (opt.family == "l1bad") {
    inst = sp::gen_l1_bad_example(opt.n);
  } else if (opt.family == "gapB") {
    inst = sp::gen_gap_general_b(opt.n, opt.b);
  } else if (opt.family == "strawman") {
    inst = sp::gen_strawman_counterexample(opt.big_m).instance;
  } else if (opt.family == "random") {
    sp::RandomInstanceConfig config;
    config.n = opt.n;
    config.m = opt.m;
    config.k = opt.k;
    config.density = opt.density;
    if (opt.sizes == "uniform") config.sizes = sp::SizeProfile::Uniform;
    else if (opt.sizes == "mixed") config.sizes = sp::SizeProfile::MixedBigSmall;
    else throw sp::InputError("unknown size profile \"" + opt.sizes + "\"");
    if (opt.weights == "unit") config.weights = sp::WeightProfile::Unit;
    else if (opt.weights == "uniform") config.weights = sp::WeightProfile::Uniform;
    else throw sp::InputError("unknown weight profile \"" + opt.weights + "\"");
    inst = sp::gen_random(config, resolve_seed(opt.seed, true));
  } else {
    throw sp::InputError("unknown family \"" + opt.family + "\"");
  }
  emit(sp::instance_to_json(inst), opt.output);
  return 0;
}

int cmd_solve_lp(const std::string& instance_path, const std::string& relaxation,
                 const std::string& dump_path) {
  const sp::PipInstance raw = sp::load_instance_file(instance_path);
  sp::LpModel model;
  if (relaxation == "natural") {
    model = sp::build_natural_lp(raw);
  } else {
    const sp::PipInstance normalized = sp::normalize_unit_capacities(raw).instance;
    model = sp::build_strengthened_lp(normalized);
  }
  if (!dump_path.empty()) {
    std::ofstream out(dump_path);
    if (!out) throw sp::InputError("cannot write " + dump_path);
    sp::write_lp_text(model, out);
  }
  const sp::FractionalSolution sol = sp::solve_lp(model);
  json j;
  j["schema"] = kSchema;
  j["relaxation"] = relaxation;
  j["objective"] = sol.objective;
  j["x"] = sol.x;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_solve_exact(const std::string& instance_path, const std::string& mode_name) {
  const sp::PipInstance inst = sp::load_instance_file(instance_path);
  sp::ExactMode mode = sp::ExactMode::Auto;
  if (mode_name == "exhaustive") mode = sp::ExactMode::Exhaustive;
  else if (mode_name == "bnb") mode = sp::ExactMode::BranchAndBound;
  else if (mode_name != "auto") throw sp::InputError("unknown mode \"" + mode_name + "\"");
  const sp::ExactResult result = sp::solve_exact(inst, mode);
  json j;
  j["schema"] = kSchema;
  j["value"] = result.value;
  j["set"] = result.best.members();
  j["multiplicity"] = result.best.multiplicity;
  j["nodes"] = result.nodes;
  j["proven"] = result.proven;
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct RoundOptions {
  std::string instance_path;
  std::string algo = "simple";
  double alpha = 0.0;  // 0: algorithm default
  long long trials = 1000;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  bool json_output = false;
  std::string x_source = "auto";
};

int cmd_round(const RoundOptions& opt) {
  const sp::PipInstance raw = sp::load_instance_file(opt.instance_path);
  const std::uint64_t seed = resolve_seed(opt.seed, opt.json_output);
  const int threads =
      opt.threads > 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());

  sp::PipInstance inst;
  sp::AlterationRule rule;
  double alpha = opt.alpha;
  double scale = 0.0;
  std::vector<int> dropped;
  if (opt.algo == "large-b") {
    inst = sp::normalize_unit_max_size(raw);
    const double b = sp::slack(inst);
    const int k = std::max(1, sp::column_sparsity(inst));
    if (b < 1.0) throw sp::PreconditionError("large-b requires slack B >= 1 after normalization");
    alpha = sp::large_b_alpha(b, k);
    scale = 1.0 / alpha;
    rule = sp::AlterationRule::PowersOfTwo;
  } else {
    sp::NormalizationResult normalized = sp::normalize_unit_capacities(raw);
    inst = std::move(normalized.instance);
    dropped = std::move(normalized.dropped_items);
    const int k = std::max(1, sp::column_sparsity(inst));
    if (opt.algo == "simple") {
      if (alpha <= 0.0) alpha = 4.0;
      rule = sp::AlterationRule::Simple;
    } else if (opt.algo == "strong") {
      if (alpha <= 0.0) alpha = 1.0;
      rule = sp::AlterationRule::Sorted;
    } else if (opt.algo == "strawman") {
      alpha = 2.0;
      rule = sp::AlterationRule::Strawman;
    } else {
      throw sp::InputError("unknown algorithm \"" + opt.algo + "\"");
    }
    scale = 1.0 / (alpha * k);
  }

  std::vector<double> x;
  if (opt.x_source == "half") {
    x.assign(static_cast<std::size_t>(inst.num_items()), 0.5);
  } else {
    const bool strengthened =
        opt.x_source == "strengthened" || (opt.x_source == "auto" && opt.algo == "strong");
    if (opt.x_source != "auto" && opt.x_source != "natural" && opt.x_source != "strengthened" &&
        opt.x_source != "half")
      throw sp::InputError("unknown x source \"" + opt.x_source + "\"");
    const sp::LpModel model =
        strengthened ? sp::build_strengthened_lp(inst) : sp::build_natural_lp(inst);
    x = sp::solve_lp(model).x;
  }

  const sp::CampaignResult result = sp::run_trials(inst, x, rule, scale, opt.trials, seed, threads);

  if (opt.json_output) {
    json j;
    j["schema"] = kSchema;
    j["algo"] = opt.algo;
    j["seed"] = seed;
    j["alpha"] = alpha;
    j["scale"] = scale;
    j["trials"] = result.trials;
    j["mean_value"] = result.mean_value;
    j["value_std_error"] = result.value_std_error;
    j["feasibility_violations"] = result.feasibility_violations;
    j["dropped_items"] = dropped;
    json items = json::array();
    for (int i = 0; i < inst.num_items(); ++i) {
      json item;
      item["item"] = i;
      item["pr_sampled"] = result.retention.pr_sampled(i);
      if (result.retention.has_conditional(i)) {
        item["retention"] = result.retention.retention(i);
        item["retention_std_error"] = result.retention.retention_se(i);
        item["wilson_lower_3sigma"] = result.retention.wilson_lower(i, 3.0);
      } else {
        item["retention"] = nullptr;
      }
      items.push_back(std::move(item));
    }
    j["items"] = std::move(items);
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  std::printf("algo=%s seed=%llu alpha=%.6g scale=%.6g trials=%lld threads=%d\n",
              opt.algo.c_str(), static_cast<unsigned long long>(seed), alpha, scale,
              result.trials, threads);
  std::printf("mean value(S') = %.6f +- %.6f\n", result.mean_value, result.value_std_error);
  std::printf("feasibility violations = %lld\n", result.feasibility_violations);
  std::printf("%-6s %-12s %-12s %-12s %-12s\n", "item", "Pr[sampled]", "retention", "std.err",
              "wilson-3s");
  for (int i = 0; i < inst.num_items(); ++i) {
    if (result.retention.has_conditional(i))
      std::printf("%-6d %-12.5f %-12.5f %-12.5f %-12.5f\n", i, result.retention.pr_sampled(i),
                  result.retention.retention(i), result.retention.retention_se(i),
                  result.retention.wilson_lower(i, 3.0));
    else
      std::printf("%-6d %-12.5f %-12s %-12s %-12s\n", i, result.retention.pr_sampled(i), "n/a",
                  "n/a", "n/a");
  }
  return 0;
}

struct SubmodOptions {
  std::string instance_path;
  std::string oracle_path;
  double alpha = 1.0;
  int steps = 0;
  int samples = 0;
  long long trials = 1000;
  std::optional<std::uint64_t> seed;
  bool json_output = false;
  bool natural_polytope = false;
};

int cmd_submod(const SubmodOptions& opt) {
  const sp::PipInstance raw = sp::load_instance_file(opt.instance_path);
  const auto oracle = sp::load_oracle_file(opt.oracle_path);
  if (oracle->ground_size() != raw.num_items())
    throw sp::InputError("oracle ground set (" + std::to_string(oracle->ground_size()) +
                         ") does not match instance items (" + std::to_string(raw.num_items()) +
                         ")");
  const std::uint64_t seed = resolve_seed(opt.seed, opt.json_output);
  const sp::PipInstance inst = sp::normalize_unit_capacities(raw).instance;

  const sp::SubmodularMaxResult single = sp::maximize_submodular(
      *oracle, inst, opt.alpha, opt.steps, opt.samples, seed, !opt.natural_polytope);
  const sp::SubmodularTrialStats stats = sp::run_submodular_trials(
      *oracle, inst, single.fractional.x, single.scale, opt.trials, seed);

  std::optional<double> exact_opt;
  if (inst.num_items() <= 20) exact_opt = sp::exact_submodular_optimum(*oracle, inst);

  if (opt.json_output) {
    json j;
    j["schema"] = kSchema;
    j["seed"] = seed;
    j["alpha"] = single.alpha;
    j["scale"] = single.scale;
    j["extension_value"] = single.fractional.objective;
    j["x"] = single.fractional.x;
    j["trials"] = stats.trials;
    j["mean_f_final"] = stats.mean_final_value;
    j["mean_f_sampled"] = stats.mean_sampled_value;
    j["final_std_error"] = stats.final_value_std_error;
    j["feasibility_violations"] = stats.feasibility_violations;
    if (exact_opt) {
      j["exact_optimum"] = *exact_opt;
      j["ratio_vs_optimum"] = *exact_opt > 0.0 ? stats.mean_final_value / *exact_opt : 1.0;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  std::printf("seed=%llu alpha=%.6g scale=%.6g steps=%s\n",
              static_cast<unsigned long long>(seed), single.alpha, single.scale,
              opt.steps > 0 ? std::to_string(opt.steps).c_str() : "auto");
  std::printf("F(x) = %.6f\n", single.fractional.objective);
  std::printf("mean f(S') over %lld trials = %.6f +- %.6f\n", stats.trials,
              stats.mean_final_value, stats.final_value_std_error);
  std::printf("mean f(S) = %.6f, feasibility violations = %lld\n", stats.mean_sampled_value,
              stats.feasibility_violations);
  if (exact_opt) {
    std::printf("exact optimum = %.6f\n", *exact_opt);
    if (*exact_opt > 0.0)
      std::printf("ratio mean f(S') / OPT = %.4f\n", stats.mean_final_value / *exact_opt);
  }
  return 0;
}

struct GapOptions {
  std::string family;
  int k_min = 2;
  int k_max = 6;
  double epsilon = 1e-4;
  int n = 10;
  double b = 2.0;
  int big_m = 100;
  bool json_output = false;
};

int cmd_gap(const GapOptions& opt) {
  struct Row {
    std::string label;
    double lp_natural;
    double lp_strengthened;  // NaN when undefined
    double exact;
    double gap;
  };
  std::vector<Row> rows;

  auto measure = [](const std::string& label, const sp::PipInstance& raw) {
    Row row{label, 0.0, std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
    row.lp_natural = sp::solve_lp(sp::build_natural_lp(raw)).objective;
    const sp::PipInstance unit = sp::normalize_unit_capacities(raw).instance;
    bool strengthened_ok = true;
    for (int i = 0; i < unit.num_items(); ++i)
      if (unit.upper_bound(i) != 1) strengthened_ok = false;
    if (strengthened_ok)
      row.lp_strengthened = sp::solve_lp(sp::build_strengthened_lp(unit)).objective;
    row.exact = sp::solve_exact(raw).value;
    const double lp_for_gap =
        std::isnan(row.lp_strengthened) ? row.lp_natural : row.lp_strengthened;
    row.gap = row.exact > 0.0 ? lp_for_gap / row.exact
                              : std::numeric_limits<double>::infinity();
    return row;
  };

  if (opt.family == "gap2k") {
    if (opt.k_min < 1 || opt.k_max < opt.k_min) throw sp::InputError("need 1 <= k-min <= k-max");
    for (int k = opt.k_min; k <= opt.k_max; ++k)
      rows.push_back(measure("gap2k k=" + std::to_string(k),
                             sp::gen_gap_2k_minus_1(k, opt.epsilon)));
  } else if (opt.family == "l1bad") {
    rows.push_back(measure("l1bad n=" + std::to_string(opt.n), sp::gen_l1_bad_example(opt.n)));
  } else if (opt.family == "gapB") {
    rows.push_back(measure("gapB n=" + std::to_string(opt.n) + " B=" + std::to_string(opt.b),
                           sp::gen_gap_general_b(opt.n, opt.b)));
  } else if (opt.family == "strawman") {
    rows.push_back(
        measure("strawman M=" + std::to_string(opt.big_m),
                sp::gen_strawman_counterexample(opt.big_m).instance));
  } else {
    throw sp::InputError("unknown family \"" + opt.family + "\"");
  }

  if (opt.json_output) {
    json j;
    j["schema"] = kSchema;
    json out_rows = json::array();
    for (const Row& row : rows) {
      json r;
      r["label"] = row.label;
      r["lp_natural"] = row.lp_natural;
      if (!std::isnan(row.lp_strengthened)) r["lp_strengthened"] = row.lp_strengthened;
      r["exact"] = row.exact;
      r["gap"] = row.gap;
      out_rows.push_back(std::move(r));
    }
    j["rows"] = std::move(out_rows);
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  std::printf("%-22s %-14s %-16s %-10s %-10s\n", "instance", "LP natural", "LP strengthened",
              "exact", "gap");
  for (const Row& row : rows) {
    if (std::isnan(row.lp_strengthened))
      std::printf("%-22s %-14.6f %-16s %-10.4f %-10.4f\n", row.label.c_str(), row.lp_natural,
                  "n/a", row.exact, row.gap);
    else
      std::printf("%-22s %-14.6f %-16.6f %-10.4f %-10.4f\n", row.label.c_str(), row.lp_natural,
                  row.lp_strengthened, row.exact, row.gap);
  }
  return 0;
}

struct VerifyOptions {
  std::optional<std::uint64_t> seed;
  long long trials = 20000;
};

int cmd_verify(const VerifyOptions& opt) {
  const std::uint64_t seed = resolve_seed(opt.seed, false);
  int failures = 0;
  auto report = [&](const char* name, bool ok) {
    std::printf("%s %s\n", ok ? "PASS" : "FAIL", name);
    if (!ok) ++failures;
  };

  sp::Rng rng(seed);
  // Normalization idempotence and feasible-region preservation.
  {
    bool ok = true;
    for (int round = 0; round < 5 && ok; ++round) {
      sp::RandomInstanceConfig config;
      config.n = 8;
      config.m = 5;
      config.k = 3;
      sp::PipInstance inst = sp::gen_random(config, rng.next_u64());
      const sp::PipInstance unit = sp::normalize_unit_capacities(inst).instance;
      const sp::PipInstance twice = sp::normalize_unit_capacities(unit).instance;
      if (unit.entries().size() != twice.entries().size()) ok = false;
      for (std::uint32_t mask = 0; mask < (1u << config.n) && ok; ++mask) {
        sp::ItemSet s = sp::ItemSet::empty(config.n);
        for (int i = 0; i < config.n; ++i)
          if (mask & (1u << i)) s.multiplicity[static_cast<std::size_t>(i)] = 1;
        if (sp::check_feasible(inst, s) != sp::check_feasible(unit, s)) ok = false;
      }
    }
    report("normalization idempotent and region-preserving", ok);
  }
  // LP dominates the exact optimum.
  {
    bool ok = true;
    for (int round = 0; round < 5 && ok; ++round) {
      sp::RandomInstanceConfig config;
      config.n = 10;
      config.m = 6;
      config.k = 3;
      const sp::PipInstance inst = sp::gen_random(config, rng.next_u64());
      const double lp = sp::solve_lp(sp::build_natural_lp(inst)).objective;
      const double exact = sp::solve_exact(inst).value;
      if (lp < exact - 1e-6) ok = false;
    }
    report("lp objective >= exact optimum", ok);
  }
  // Alteration feasibility and subset invariants over random trials.
  {
    bool ok = true;
    sp::RandomInstanceConfig config;
    config.n = 12;
    config.m = 8;
    config.k = 3;
    config.sizes = sp::SizeProfile::MixedBigSmall;
    const sp::PipInstance inst = sp::gen_random(config, rng.next_u64());
    const std::vector<double> x = sp::solve_lp(sp::build_natural_lp(inst)).x;
    const int k = std::max(1, sp::column_sparsity(inst));
    for (sp::AlterationRule rule :
         {sp::AlterationRule::Simple, sp::AlterationRule::Sorted, sp::AlterationRule::Strawman}) {
      const sp::CampaignResult result =
          sp::run_trials(inst, x, rule, 1.0 / (2.0 * k), opt.trials, rng.next_u64(), 2);
      if (result.feasibility_violations != 0) ok = false;
    }
    report("alterations always feasible", ok);
  }
  // Survival monotonicity of the ordered rules.
  {
    bool ok = true;
    for (int round = 0; round < 3 && ok; ++round) {
      sp::RandomInstanceConfig config;
      config.n = 7;
      config.m = 5;
      config.k = 3;
      const sp::PipInstance inst = sp::gen_random(config, rng.next_u64());
      if (!sp::alteration_is_monotone(inst, sp::AlterationRule::Sorted)) ok = false;
      const sp::PipInstance scaled = sp::normalize_unit_max_size(inst);
      if (!sp::alteration_is_monotone(scaled, sp::AlterationRule::PowersOfTwo)) ok = false;
    }
    report("sorted and powers-of-two alterations are survival-monotone", ok);
  }
  // Generalized subadditivity on random small systems.
  {
    bool ok = true;
    for (int round = 0; round < 50 && ok; ++round) {
      const int n = 3;
      std::vector<double> x(n);
      for (double& v : x) v = rng.next_double();
      std::vector<double> element_weights{1.0, rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)};
      std::vector<std::vector<int>> covers(n);
      for (auto& cover : covers)
        for (int e = 0; e < 3; ++e)
          if (rng.bernoulli(0.6)) cover.push_back(e);
      const sp::CoverageOracle f(element_weights, covers);
      sp::AlterationFamily family = sp::random_monotone_family(n, rng);
      if (!sp::check_subadditivity_theorem(f, x, family).pass) ok = false;
    }
    report("generalized subadditivity holds on random systems", ok);
  }

  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Column-sparse packing integer program toolkit"};
  app.require_subcommand(1);

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
  gen_cmd->add_option("--family", gen.family, "gap2k | l1bad | gapB | strawman | random")
      ->required();
  gen_cmd->add_option("--k", gen.k, "column sparsity (gap2k, random)");
  gen_cmd->add_option("--epsilon", gen.epsilon, "gap2k epsilon (0 = default 1/(10nk))");
  gen_cmd->add_option("--n", gen.n, "item count (l1bad, gapB, random)");
  gen_cmd->add_option("--b", gen.b, "slack B (gapB)");
  gen_cmd->add_option("--big-m", gen.big_m, "strawman M");
  gen_cmd->add_option("--m", gen.m, "constraint count (random)");
  gen_cmd->add_option("--density", gen.density, "per-row keep probability (random)");
  gen_cmd->add_option("--sizes", gen.sizes, "uniform | mixed (random)");
  gen_cmd->add_option("--weights", gen.weights, "unit | uniform (random)");
  gen_cmd->add_option("--seed", gen.seed, "random generator seed");
  gen_cmd->add_option("-o,--output", gen.output, "output path (default stdout)");

  std::string lp_instance, lp_relaxation = "natural", lp_dump;
  CLI::App* lp_cmd = app.add_subcommand("solve-lp", "Solve an LP relaxation");
  lp_cmd->add_option("instance", lp_instance, "instance JSON file")->required();
  lp_cmd->add_option("--relaxation", lp_relaxation, "natural | strengthened");
  lp_cmd->add_option("--dump-lp", lp_dump, "write the model in LP text format");

  std::string exact_instance, exact_mode = "auto";
  CLI::App* exact_cmd = app.add_subcommand("solve-exact", "Exact integral optimum");
  exact_cmd->add_option("instance", exact_instance, "instance JSON file")->required();
  exact_cmd->add_option("--mode", exact_mode, "auto | exhaustive | bnb");

  RoundOptions round;
  CLI::App* round_cmd = app.add_subcommand("round", "Randomized rounding campaign");
  round_cmd->add_option("instance", round.instance_path, "instance JSON file")->required();
  round_cmd->add_option("--algo", round.algo, "simple | strong | large-b | strawman");
  round_cmd->add_option("--alpha", round.alpha, "sampling parameter (simple, strong)");
  round_cmd->add_option("--trials", round.trials, "number of trials");
  round_cmd->add_option("--seed", round.seed, "master seed");
  round_cmd->add_option("--threads", round.threads, "worker threads (default: cores)");
  round_cmd->add_option("--x-source", round.x_source, "auto | natural | strengthened | half");
  round_cmd->add_flag("--json", round.json_output, "machine-readable output");

  SubmodOptions submod;
  CLI::App* submod_cmd = app.add_subcommand("submod", "Submodular maximization pipeline");
  submod_cmd->add_option("instance", submod.instance_path, "instance JSON file")->required();
  submod_cmd->add_option("oracle", submod.oracle_path, "oracle JSON file")->required();
  submod_cmd->add_option("--alpha", submod.alpha, "sampling parameter");
  submod_cmd->add_option("--steps", submod.steps, "continuous greedy steps (0 = auto)");
  submod_cmd->add_option("--samples", submod.samples, "marginal samples per step (0 = auto)");
  submod_cmd->add_option("--trials", submod.trials, "rounding trials");
  submod_cmd->add_option("--seed", submod.seed, "master seed");
  submod_cmd->add_flag("--natural-polytope", submod.natural_polytope,
                       "drop the big-item rows from the greedy polytope");
  submod_cmd->add_flag("--json", submod.json_output, "machine-readable output");

  GapOptions gap;
  CLI::App* gap_cmd = app.add_subcommand("gap", "Integrality gap table");
  gap_cmd->add_option("--family", gap.family, "gap2k | l1bad | gapB | strawman")->required();
  gap_cmd->add_option("--k-min", gap.k_min, "first k (gap2k)");
  gap_cmd->add_option("--k-max", gap.k_max, "last k (gap2k)");
  gap_cmd->add_option("--epsilon", gap.epsilon, "gap2k epsilon");
  gap_cmd->add_option("--n", gap.n, "item count (l1bad, gapB)");
  gap_cmd->add_option("--b", gap.b, "slack B (gapB)");
  gap_cmd->add_option("--big-m", gap.big_m, "strawman M");
  gap_cmd->add_flag("--json", gap.json_output, "machine-readable output");

  VerifyOptions verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the invariant suites");
  verify_cmd->add_option("--seed", verify.seed, "master seed");
  verify_cmd->add_option("--trials", verify.trials, "Monte Carlo trials per suite");

  try {
    app.parse(argc, argv);
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (lp_cmd->parsed()) return cmd_solve_lp(lp_instance, lp_relaxation, lp_dump);
    if (exact_cmd->parsed()) return cmd_solve_exact(exact_instance, exact_mode);
    if (round_cmd->parsed()) return cmd_round(round);
    if (submod_cmd->parsed()) return cmd_submod(submod);
    if (gap_cmd->parsed()) return cmd_gap(gap);
    if (verify_cmd->parsed()) return cmd_verify(verify);
    return 2;
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  } catch (const sp::PreconditionError& err) {
    std::cerr << "precondition violation: " << err.what() << "\n";
    return 4;
  } catch (const sp::InputError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return 2;
  } catch (const sp::SolverError& err) {
    std::cerr << "solver failure: " << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
}
