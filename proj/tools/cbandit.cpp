#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbandit/analysis.hpp"
#include "cbandit/experiment.hpp"
#include "cbandit/reproduce.hpp"

namespace {

using nlohmann::json;

int print_config_errors(const cbandit::ConfigError& e) {
  std::cerr << "error: " << e.what() << "\n";
  std::cerr << "see 'cbandit run --help' for the available flags\n";
  return 1;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cbandit::ConfigError({"cannot open config file: " + path});
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw cbandit::ConfigError({std::string("malformed document: ") + e.what()});
  }
}

void print_reports(const std::vector<cbandit::BoundReport>& reports, bool as_json) {
  if (as_json) {
    json arr = json::array();
    for (const auto& r : reports) {
      arr.push_back({{"name", r.name},
                     {"bound", r.bound},
                     {"observed", r.observed},
                     {"slack", r.slack},
                     {"satisfied", r.satisfied},
                     {"detail", r.detail}});
    }
    std::cout << arr.dump(2) << "\n";
    return;
  }
  for (const auto& r : reports) {
    std::cout << (r.satisfied ? "[ ok ] " : "[FAIL] ") << r.name << "  observed=" << r.observed
              << "  bound=" << r.bound;
    if (r.slack > 0.0) std::cout << " (+slack " << r.slack << ")";
    if (!r.detail.empty()) std::cout << "  " << r.detail;
    std::cout << "\n";
  }
}

bool all_satisfied(const std::vector<cbandit::BoundReport>& reports) {
  for (const auto& r : reports) {
    if (!r.satisfied) return false;
  }
  return true;
}

void print_repro_report(const cbandit::ReproReport& report) {
  std::cout << "artifact: " << report.artifact << "\n";
  std::printf("%-12s %-14s %12s %10s %12s\n", "policy", "setting", "mean", "stderr", "reference");
  for (const auto& c : report.cells) {
    std::printf("%-12s %-14s %12.1f %10.2f %12.1f\n", c.policy.c_str(), c.setting.c_str(), c.mean,
                c.stderr_, c.reference);
  }
  if (report.ordering_ok()) {
    std::cout << "ordering: ok\n";
  } else {
    std::cout << "ordering violations:\n";
    for (const auto& v : report.violations) std::cout << "  - " << v << "\n";
  }
}

// Aligned multi-trace CSV with an optional per-row normalizer.
void print_fig_csv(const std::vector<cbandit::LabeledTrace>& traces,
                   double (*normalizer)(double)) {
  const auto& cps = traces.front().trace.checkpoints;
  std::cout << "trial";
  for (const auto& t : traces) std::cout << "," << t.label << "_mean," << t.label << "_stderr";
  std::cout << "\n";
  char buf[64];
  for (std::size_t c = 0; c < cps.size(); ++c) {
    const double norm = normalizer ? normalizer(static_cast<double>(cps[c])) : 1.0;
    if (!(norm > 0.0)) continue;  // skip trial 1 for log normalization
    std::cout << cps[c];
    for (const auto& t : traces) {
      std::snprintf(buf, sizeof(buf), ",%.8g,%.8g", t.trace.mean_regret[c] / norm,
                    t.trace.stderr_regret[c] / norm);
      std::cout << buf;
    }
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contextual bandit simulation toolkit"};
  app.require_subcommand(1);

  // ---------------------------------------------------------------- run
  auto* run = app.add_subcommand("run", "run one experiment and emit its CSV trace on stdout");
  std::string config_path, preset, policy;
  double epsilon = 0.0, delta = 0.0, alpha = 0.0;
  std::int64_t horizon = 0;
  int reps = 1, threads = 0;
  std::uint64_t seed = 42;
  bool scale_bonus = false;
  std::vector<std::int64_t> checkpoints;
  run->add_option("--config", config_path, "JSON config file; flags override its fields");
  run->add_option("--preset", preset,
                  "environment preset: channel-k7 | channel-k4 | energy-harvesting-k4");
  run->add_option("--policy", policy, "dcb | ucb1 | multi-ucb | ccb | ccb-doubling");
  run->add_option("--epsilon", epsilon, "confidence-widening parameter (dcb/ccb need > 0)");
  run->add_option("--delta", delta, "quantization width (ccb)");
  run->add_option("--alpha", alpha, "regret-exponent target in [0,1] (ccb-doubling)");
  run->add_option("--horizon", horizon, "number of trials");
  run->add_option("--reps", reps, "independent replications");
  run->add_option("--seed", seed, "master seed; replication r derives its own stream");
  run->add_option("--threads", threads, "worker threads (0 = hardware)");
  run->add_option("--checkpoints", checkpoints, "explicit checkpoint trials")->delimiter(',');
  run->add_flag("--scale-bonus", scale_bonus, "multi-ucb: scale bonuses by the context range");

  run->callback([&]() {
    json doc = config_path.empty() ? json::object() : load_config_file(config_path);
    if (!doc.contains("policy") || !doc["policy"].is_object()) doc["policy"] = json::object();
    if (run->count("--preset")) doc["environment"] = preset;
    if (run->count("--policy")) doc["policy"]["type"] = policy;
    if (run->count("--epsilon")) doc["policy"]["epsilon"] = epsilon;
    if (run->count("--delta")) doc["policy"]["delta"] = delta;
    if (run->count("--alpha")) doc["policy"]["alpha"] = alpha;
    if (run->count("--scale-bonus")) doc["policy"]["scale_bonus"] = scale_bonus;
    if (run->count("--horizon")) doc["horizon"] = horizon;
    if (run->count("--reps") || !doc.contains("replications")) doc["replications"] = reps;
    if (run->count("--seed") || !doc.contains("seed")) doc["seed"] = seed;
    if (run->count("--threads")) doc["threads"] = threads;
    if (run->count("--checkpoints")) doc["checkpoints"] = checkpoints;

    cbandit::ExperimentConfig cfg = cbandit::parse_config(doc);
    if (auto errors = cbandit::validate(cfg); !errors.empty())
      throw cbandit::ConfigError(std::move(errors));

    std::cerr << "running " << cbandit::policy_type_name(cfg.policy.type) << " for "
              << cfg.horizon << " trials x " << cfg.replications << " replications (seed "
              << cfg.seed << ")\n";
    const cbandit::RegretTrace trace = cbandit::run_config(cfg);
    cbandit::write_trace_csv(std::cout, trace);
  });

  // ---------------------------------------------------------- reproduce
  auto* repro = app.add_subcommand(
      "reproduce", "rerun a named reference table or figure and compare against its values");
  std::string artifact;
  cbandit::ReproduceOptions ropt;
  bool repro_ordering_ok = true;
  repro->add_option("artifact", artifact, "table1 | table2 | fig4 | fig5 | fig6")->required();
  repro->add_option("--reps", ropt.replications, "replications (default: table1/figs 20, table2/fig6 10)");
  repro->add_option("--seed", ropt.seed, "master seed");
  repro->add_option("--threads", ropt.threads, "worker threads (0 = hardware)");
  repro->add_option("--epsilon", ropt.epsilon, "epsilon for dcb/ccb policies");

  repro->callback([&]() {
    if (artifact == "table1") {
      const auto report = cbandit::reproduce_table1(ropt);
      print_repro_report(report);
      repro_ordering_ok = report.ordering_ok();
    } else if (artifact == "table2") {
      const auto report = cbandit::reproduce_table2(ropt);
      print_repro_report(report);
      repro_ordering_ok = report.ordering_ok();
    } else if (artifact == "fig4") {
      print_fig_csv(cbandit::reproduce_fig4(ropt), [](double n) { return std::log(n); });
    } else if (artifact == "fig5") {
      print_fig_csv(cbandit::reproduce_fig5(ropt), nullptr);
    } else if (artifact == "fig6") {
      print_fig_csv(cbandit::reproduce_fig6(ropt), [](double n) { return std::sqrt(n); });
    } else {
      throw cbandit::ConfigError({"unknown artifact '" + artifact + "'"});
    }
  });

  // ------------------------------------------------------------- verify
  auto* verify = app.add_subcommand(
      "verify", "evaluate one of the built-in bound checks and report pass/fail");
  std::string check, v_preset;
  int v_k = 2, v_reps = 0, v_threads = 0;
  double v_epsilon = -1.0, v_threshold = 2.0;
  std::uint64_t v_seed = 42;
  std::int64_t v_horizon = 100000;
  std::vector<double> v_means;
  std::vector<std::int64_t> v_n;
  bool v_json = false;
  bool verify_ok = true;
  verify->add_option("check", check, "lemma1 | theorem1 | theorem2 | theorem3")->required();
  verify->add_option("--k", v_k, "lemma1: number of arms");
  verify->add_option("--means", v_means, "lemma1: arm means in [0,1]")->delimiter(',');
  verify->add_option("--epsilon", v_epsilon,
                     "policy epsilon (default: 0 for lemma1, 0.01 otherwise)");
  verify->add_option("--n", v_n, "trial counts to evaluate at")->delimiter(',');
  verify->add_option("--reps", v_reps, "replications (default: 20000 lemma1, 50 otherwise)");
  verify->add_option("--preset", v_preset, "discrete environment preset (theorem checks)");
  verify->add_option("--horizon", v_horizon, "horizon for theorem2/theorem3 runs");
  verify->add_option("--threshold", v_threshold, "theorem2: allowed tail growth in pulls");
  verify->add_option("--seed", v_seed, "master seed");
  verify->add_option("--threads", v_threads, "worker threads (0 = hardware)");
  verify->add_flag("--json", v_json, "emit reports as JSON");

  verify->callback([&]() {
    std::vector<cbandit::BoundReport> reports;
    if (check == "lemma1") {
      if (v_means.empty()) throw cbandit::ConfigError({"lemma1: --means is required"});
      if (v_n.empty()) v_n = {150, 300, 600};
      if (v_reps <= 0) v_reps = 20000;
      if (v_epsilon < 0.0) v_epsilon = 0.0;
      reports = cbandit::check_lemma1(v_k, v_means, v_epsilon, v_n, v_reps, v_seed, v_threads);
    } else if (check == "theorem1" || check == "theorem2" || check == "theorem3") {
      if (v_preset.empty()) v_preset = check == "theorem2" ? "channel-k4" : "channel-k7";
      if (cbandit::preset_is_continuous(v_preset) || !cbandit::is_preset_name(v_preset))
        throw cbandit::ConfigError({"verify: needs a discrete preset"});
      if (v_epsilon < 0.0) v_epsilon = 0.01;
      if (v_reps <= 0) v_reps = 50;
      const cbandit::DiscreteEnvironment env = cbandit::make_discrete_preset(v_preset);

      cbandit::RunOptions opt;
      opt.replications = v_reps;
      opt.seed = v_seed;
      opt.threads = v_threads;
      if (check == "theorem1") {
        if (v_n.empty()) v_n = {1000, 10000, 100000};
        opt.horizon = *std::max_element(v_n.begin(), v_n.end());
        opt.checkpoints = v_n;
        std::sort(opt.checkpoints.begin(), opt.checkpoints.end());
      } else {
        if (v_horizon < 10) throw cbandit::ConfigError({"verify: horizon must be at least 10"});
        opt.horizon = v_horizon;
        // the log grid plus the decade endpoints the checks read
        opt.checkpoints = cbandit::default_checkpoints(v_horizon);
        opt.checkpoints.push_back(v_horizon / 10);
        std::sort(opt.checkpoints.begin(), opt.checkpoints.end());
        opt.checkpoints.erase(std::unique(opt.checkpoints.begin(), opt.checkpoints.end()),
                              opt.checkpoints.end());
      }
      std::cerr << "running dcb(" << v_epsilon << ") on " << v_preset << ": T=" << opt.horizon
                << " reps=" << v_reps << "\n";
      const auto trace = cbandit::run_experiment(
          env, [&] { return cbandit::DcbAgent{cbandit::DcbPolicy(env.table(), v_epsilon)}; },
          opt);

      if (check == "theorem1") {
        for (int arm : env.genie().non_optimal_set) {
          for (std::int64_t n : opt.checkpoints)
            reports.push_back(cbandit::check_theorem1(env.genie(), trace, v_epsilon, n, arm));
        }
        if (reports.empty())
          throw cbandit::ConfigError({"theorem1: preset has no non-optimal arms"});
      } else if (check == "theorem2") {
        reports = cbandit::check_theorem2_flatness(env.genie(), trace, v_threshold);
      } else {
        reports.push_back(cbandit::check_theorem3_slope(env.genie(), trace, v_epsilon));
      }
    } else {
      throw cbandit::ConfigError({"unknown check '" + check + "'"});
    }
    print_reports(reports, v_json);
    verify_ok = all_satisfied(reports);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the usage message
    return code == 0 ? 0 : 1;
  } catch (const cbandit::ConfigError& e) {
    return print_config_errors(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return 2;
  }

  if (repro->parsed() && !repro_ordering_ok) return 1;
  if (verify->parsed() && !verify_ok) return 1;
  return 0;
}
