// qaegate: dataset generation, training, evaluation and verification for
// compressed parametric gate families.

#include "CLI11.hpp"

#include "qaegate/diagnostics.hpp"
#include "qaegate/engine.hpp"
#include "qaegate/sampling.hpp"
#include "qaegate/trainer.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

using namespace qaegate;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

// Full invocation for output provenance.  The --threads value is execution
// detail: results are thread-count invariant, so it is stripped to keep
// output files byte-identical across thread counts.
std::string provenance(int argc, char** argv) {
  std::string line;
  for (int i = 0; i < argc; ++i) {
    const std::string tok = argv[i];
    if (tok == "--threads") {
      ++i;  // skip its value too
      continue;
    }
    if (tok.rfind("--threads=", 0) == 0) continue;
    if (!line.empty()) line += ' ';
    line += tok;
  }
  return line;
}

struct GenDatasetOptions {
  int n = 2;
  std::string preset = "isotropic";
  double jx = 0, jy = 0, jz = 0, h = 0;
  bool jx_set = false, jy_set = false, jz_set = false, h_set = false;
  int train = 50, test = 10;
  double t_lo = 0, t_hi = 10;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen_dataset(const GenDatasetOptions& opt, const std::string& command_line) {
  HeisenbergFamily family =
      opt.preset == "anisotropic" ? anisotropic_family(opt.n) : isotropic_family(opt.n);
  if (opt.jx_set) family.jx = opt.jx;
  if (opt.jy_set) family.jy = opt.jy;
  if (opt.jz_set) family.jz = opt.jz;
  if (opt.h_set) family.h = opt.h;

  const Dataset ds =
      sample_dataset(family, opt.train, opt.test, opt.t_lo, opt.t_hi, opt.seed);
  save_dataset(ds, opt.out, command_line);
  std::printf("wrote %s: n=%d J=(%g,%g,%g) h=%g train=%d test=%d t=[%g,%g) seed=%llu\n",
              opt.out.c_str(), family.n, family.jx, family.jy, family.jz, family.h,
              opt.train, opt.test, opt.t_lo, opt.t_hi,
              static_cast<unsigned long long>(opt.seed));
  return 0;
}

struct TrainOptions {
  std::string scenario;
  int rounds = 2;
  bool rounds_set = false;
  int n = 2, a = 1;
  std::string dataset, dataset2;
  TrainConfig cfg;
  std::string init = "random";
  std::string grad = "shift";
  int target_power = 1;
  bool target_power_set = false;
  std::string model_out, curve_out;
  bool curve_timing = false;
};

ScenarioModel build_model(const TrainOptions& opt) {
  if (opt.scenario == "basic") {
    if (opt.rounds_set) throw CLI::ValidationError("--rounds is only valid for multiround");
    if (!opt.dataset2.empty())
      throw CLI::ValidationError("--dataset2 is only valid for sequence");
    return ScenarioModel::basic(opt.n, opt.a);
  }
  if (opt.scenario == "multiround") {
    if (!opt.dataset2.empty())
      throw CLI::ValidationError("--dataset2 is only valid for sequence");
    return ScenarioModel::multi_round(opt.n, opt.a, opt.rounds);
  }
  if (opt.scenario == "sequence") {
    if (opt.rounds_set) throw CLI::ValidationError("--rounds is only valid for multiround");
    if (opt.target_power_set)
      throw CLI::ValidationError("--target-power is only valid for multiround");
    if (opt.dataset2.empty())
      throw CLI::ValidationError("sequence needs --dataset2 for the second gate family");
    return ScenarioModel::sequence(opt.n, opt.a);
  }
  throw CLI::ValidationError("unknown scenario \"" + opt.scenario + "\"");
}

int run_train(TrainOptions& opt, const std::string& command_line) {
  const ScenarioModel model = build_model(opt);

  opt.cfg.init = opt.init == "zero" ? InitMode::Zero : InitMode::Random;
  opt.cfg.gradient_mode =
      opt.grad == "fd" ? GradientMode::FiniteDifference : GradientMode::ParameterShift;
  opt.cfg.multiround_target_uses = opt.target_power;

  const Dataset ds = load_dataset(opt.dataset);
  if (ds.family.n != opt.n)
    throw std::runtime_error("dataset qubit count " + std::to_string(ds.family.n) +
                             " does not match --n " + std::to_string(opt.n));
  std::optional<Dataset> ds2;
  if (!opt.dataset2.empty()) {
    ds2 = load_dataset(opt.dataset2);
    if (ds2->family.n != opt.n)
      throw std::runtime_error("--dataset2 qubit count mismatch");
  }

  const TrainResult result = train(model, ds, opt.cfg, ds2 ? &*ds2 : nullptr);
  save_model(model, result.theta, opt.model_out, opt.cfg.seed, command_line);
  save_curve_csv(result.record, opt.curve_out, opt.curve_timing);
  const EpochRow& last = result.record.rows.back();
  std::printf(
      "trained %s n=%d a=%d: %d iters, train overlap %.6f, test overlap %.6f "
      "(%.1fs)\nwrote %s and %s\n",
      opt.scenario.c_str(), opt.n, opt.a, result.record.total_iters, last.train_overlap,
      last.test_overlap, last.seconds, opt.model_out.c_str(), opt.curve_out.c_str());
  return 0;
}

struct EvalOptions {
  std::string model, dataset, dataset2, out;
};

int run_eval(const EvalOptions& opt, const std::string& command_line) {
  const auto [model, theta] = load_model(opt.model);
  const Dataset ds = load_dataset(opt.dataset);
  if (ds.family.n != model.n)
    throw std::runtime_error("model acts on " + std::to_string(model.n) +
                             " qubits but the dataset has n=" + std::to_string(ds.family.n));
  std::optional<Dataset> ds2;
  if (model.kind == ScenarioKind::Sequence) {
    if (opt.dataset2.empty())
      throw std::runtime_error("sequence model needs --dataset2");
    ds2 = load_dataset(opt.dataset2);
    if (ds2->family.n != model.n) throw std::runtime_error("--dataset2 qubit count mismatch");
  } else if (!opt.dataset2.empty()) {
    throw std::runtime_error("--dataset2 is only valid for sequence models");
  }

  const std::span<const double> view(theta.data(), static_cast<std::size_t>(theta.size()));
  std::vector<double> per_sample;
  const std::size_t count = model.kind == ScenarioKind::Sequence
                                ? std::min(ds.test.size(), ds2->test.size())
                                : ds.test.size();
  if (count == 0) throw std::runtime_error("dataset has no test samples");
  double sum = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<ComplexMatrix> gates{heisenberg_gate(ds.test[i])};
    if (model.kind == ScenarioKind::Sequence)
      gates.push_back(heisenberg_gate(ds2->test[i]));
    const double overlap = CompiledScenario(model, gates).fidelity(view);
    per_sample.push_back(overlap);
    sum += overlap;
  }

  json report;
  report["version"] = "1";
  report["command_line"] = command_line;
  report["seed"] = ds.seed;
  report["mean_overlap"] = sum / static_cast<double>(count);
  report["per_sample"] = per_sample;
  std::ofstream out(opt.out);
  if (!out) throw std::runtime_error("cannot write " + opt.out);
  out << report.dump(2) << "\n";
  std::printf("mean test overlap %.6f over %zu gates; wrote %s\n",
              sum / static_cast<double>(count), count, opt.out.c_str());
  return 0;
}

struct VerifyOptions {
  std::string model;
  std::vector<std::string> checks{"kraus", "gradient", "smoothness", "swap"};
  std::uint64_t seed = 0;
  std::string out;
};

std::vector<ComplexMatrix> draw_gates(const ScenarioModel& model, std::mt19937_64& rng) {
  std::vector<ComplexMatrix> gates;
  gates.push_back(heisenberg_gate({isotropic_family(model.n), uniform_in(rng, 0, 10)}));
  if (model.kind == ScenarioKind::Sequence)
    gates.push_back(heisenberg_gate({anisotropic_family(model.n), uniform_in(rng, 0, 10)}));
  return gates;
}

std::vector<double> draw_theta(const ScenarioModel& model, std::mt19937_64& rng) {
  std::vector<double> theta(model.num_params());
  for (double& x : theta) x = uniform_in(rng, -std::numbers::pi, std::numbers::pi);
  return theta;
}

json check_kraus(const ScenarioModel& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<double> theta = draw_theta(model, rng);
    worst = std::max(
        worst, decoded_channel(model, theta, draw_gates(model, rng)).completeness_defect());
  }
  return {{"max_defect", worst}, {"tolerance", 1e-10}, {"pass", worst <= 1e-10}};
}

json check_gradient(const ScenarioModel& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 1);
  double worst_fd = 0, worst_shift = 0;
  const int configs = model.n >= 4 ? 2 : 5;
  for (int c = 0; c < configs; ++c) {
    const std::vector<ComplexMatrix> gates = draw_gates(model, rng);
    std::vector<double> theta = draw_theta(model, rng);
    const CompiledScenario program(model, gates);
    Eigen::VectorXd grad_f;
    program.fidelity_and_gradient(theta, grad_f);
    const Eigen::VectorXd fd =
        -gradient(model, theta, gates, GradientMode::FiniteDifference, 1e-5);
    worst_fd = std::max(worst_fd, (grad_f - fd).cwiseAbs().maxCoeff());
    const double s = std::numbers::pi / 8;
    for (int k = 0; k < model.num_params(); k += 9) {
      theta[k] += s;
      const double fp = program.fidelity(theta);
      theta[k] -= 2 * s;
      const double fm = program.fidelity(theta);
      theta[k] += s;
      worst_shift = std::max(worst_shift, std::abs((fp - fm) - std::sin(2 * s) * grad_f(k)));
    }
  }
  const bool pass = worst_fd <= 1e-6 && worst_shift <= 1e-9;
  return {{"max_fd_gap", worst_fd},
          {"max_two_shift_gap", worst_shift},
          {"pass", pass}};
}

json check_smoothness(const ScenarioModel& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 2);
  const int trials = model.n >= 4 ? 120 : 200;
  const SmoothnessReport report =
      check_second_order(model, draw_gates(model, rng), trials, seed + 3, trials / 2);
  return {{"samples", report.samples},      {"samples_d3", report.samples_d3},
          {"max_abs_d2", report.max_abs_d2}, {"bound_d2", report.bound_d2},
          {"max_abs_d3", report.max_abs_d3}, {"bound_d3", report.bound_d3},
          {"violations", report.violations}, {"pass", report.violations == 0}};
}

json check_swap(const ScenarioModel& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 4);
  const int dim = 1 << model.n;
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix u = haar_random_unitary(dim, rng);
    const KrausChannel ch = random_cptp_channel(dim, 1, rng);
    const double p = swap_test_probability(choi_of_unitary(u), choi_of_channel(ch));
    const double f = entanglement_fidelity(u, ch);
    worst = std::max(worst, std::abs(f - (2 * p - 1)));
  }
  return {{"max_identity_gap", worst}, {"tolerance", 1e-12}, {"pass", worst <= 1e-12}};
}

int run_verify(const VerifyOptions& opt, const std::string& command_line) {
  const auto [model, theta] = load_model(opt.model);
  (void)theta;

  json checks = json::object();
  bool all_pass = true;
  for (const std::string& name : opt.checks) {
    json result;
    if (name == "kraus")
      result = check_kraus(model, opt.seed);
    else if (name == "gradient")
      result = check_gradient(model, opt.seed);
    else if (name == "smoothness")
      result = check_smoothness(model, opt.seed);
    else if (name == "swap")
      result = check_swap(model, opt.seed);
    all_pass = all_pass && result["pass"].get<bool>();
    checks[name] = std::move(result);
    std::printf("check %-10s %s\n", name.c_str(),
                checks[name]["pass"].get<bool>() ? "pass" : "FAIL");
  }

  json report;
  report["version"] = "1";
  report["command_line"] = command_line;
  report["seed"] = opt.seed;
  report["checks"] = std::move(checks);
  report["pass"] = all_pass;
  if (!opt.out.empty()) {
    std::ofstream out(opt.out);
    if (!out) throw std::runtime_error("cannot write " + opt.out);
    out << report.dump(2) << "\n";
  }
  return all_pass ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variational compression of parametric quantum gate families"};
  app.require_subcommand(1);
  const std::string command_line = provenance(argc, argv);

  GenDatasetOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen-dataset", "sample a Heisenberg gate dataset");
  gen_cmd->set_help_flag("--help", "print help");  // frees -h for the field strength
  gen_cmd->add_option("--n", gen.n, "qubit count")->required()->check(CLI::Range(1, 4));
  gen_cmd->add_option("--preset", gen.preset, "coupling preset")
      ->check(CLI::IsMember({"isotropic", "anisotropic"}));
  gen_cmd->add_option("--jx", gen.jx)->each([&](const std::string&) { gen.jx_set = true; });
  gen_cmd->add_option("--jy", gen.jy)->each([&](const std::string&) { gen.jy_set = true; });
  gen_cmd->add_option("--jz", gen.jz)->each([&](const std::string&) { gen.jz_set = true; });
  gen_cmd->add_option("--h", gen.h)->each([&](const std::string&) { gen.h_set = true; });
  gen_cmd->add_option("--train", gen.train)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--test", gen.test)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--t-lo", gen.t_lo);
  gen_cmd->add_option("--t-hi", gen.t_hi);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", gen.out, "dataset path")->required();

  TrainOptions tr;
  CLI::App* train_cmd = app.add_subcommand("train", "optimize a compression model");
  train_cmd->add_option("--scenario", tr.scenario)
      ->required()
      ->check(CLI::IsMember({"basic", "multiround", "sequence"}));
  train_cmd->add_option("--rounds", tr.rounds)
      ->each([&](const std::string&) { tr.rounds_set = true; });
  train_cmd->add_option("--n", tr.n)->required()->check(CLI::Range(1, 4));
  train_cmd->add_option("--a", tr.a)->required()->check(CLI::Range(1, 4));
  train_cmd->add_option("--dataset", tr.dataset)->required();
  train_cmd->add_option("--dataset2", tr.dataset2);
  train_cmd->add_option("--iters", tr.cfg.max_iters)->check(CLI::PositiveNumber);
  train_cmd->add_option("--lr", tr.cfg.learning_rate);
  train_cmd->add_option("--delta", tr.cfg.loss_threshold);
  train_cmd->add_option("--seed", tr.cfg.seed);
  train_cmd->add_option("--epoch-size", tr.cfg.epoch_size);
  train_cmd->add_option("--init", tr.init)->check(CLI::IsMember({"random", "zero"}));
  train_cmd->add_option("--grad", tr.grad)->check(CLI::IsMember({"shift", "fd"}));
  train_cmd->add_option("--fd-step", tr.cfg.fd_step);
  train_cmd->add_option("--threads", tr.cfg.threads)->check(CLI::Range(1, 16));
  train_cmd->add_option("--target-power", tr.target_power)
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { tr.target_power_set = true; });
  train_cmd->add_option("--model-out", tr.model_out)->required();
  train_cmd->add_option("--curve-out", tr.curve_out)->required();
  train_cmd->add_flag("--curve-timing", tr.curve_timing,
                      "write wall-clock epoch times into the curve file");

  EvalOptions ev;
  CLI::App* eval_cmd = app.add_subcommand("eval", "score a model on a test split");
  eval_cmd->add_option("--model", ev.model)->required();
  eval_cmd->add_option("--dataset", ev.dataset)->required();
  eval_cmd->add_option("--dataset2", ev.dataset2);
  eval_cmd->add_option("--out", ev.out)->required();

  VerifyOptions ve;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run invariant suites on a model");
  verify_cmd->add_option("--model", ve.model)->required();
  verify_cmd->add_option("--checks", ve.checks)
      ->delimiter(',')
      ->check(CLI::IsMember({"kraus", "gradient", "smoothness", "swap"}));
  verify_cmd->add_option("--seed", ve.seed);
  verify_cmd->add_option("--out", ve.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return run_gen_dataset(gen, command_line);
    if (train_cmd->parsed()) return run_train(tr, command_line);
    if (eval_cmd->parsed()) return run_eval(ev, command_line);
    if (verify_cmd->parsed()) return run_verify(ve, command_line);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
