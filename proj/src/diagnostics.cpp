#include "qaegate/diagnostics.hpp"

#include "qaegate/engine.hpp"
#include "qaegate/random.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qaegate {

namespace {

constexpr double kSlackD2 = 1e-2;
constexpr double kSlackD3 = 1e-1;

class ShiftedFidelity {
 public:
  ShiftedFidelity(const CompiledScenario& program, std::vector<double> theta)
      : program_(program), theta_(std::move(theta)) {}

  // f with coordinates j/k/l offset by multiples of the step
  double operator()(std::initializer_list<std::pair<int, double>> offsets) {
    for (const auto& [idx, delta] : offsets) theta_[idx] += delta;
    const double f = program_.fidelity(theta_);
    for (const auto& [idx, delta] : offsets) theta_[idx] -= delta;
    return f;
  }

 private:
  const CompiledScenario& program_;
  std::vector<double> theta_;
};

double second_partial(ShiftedFidelity& f, int j, int k, double h) {
  if (j == k)
    return (f({{j, h}}) - 2 * f({}) + f({{j, -h}})) / (h * h);
  return (f({{j, h}, {k, h}}) - f({{j, h}, {k, -h}}) - f({{j, -h}, {k, h}}) +
          f({{j, -h}, {k, -h}})) /
         (4 * h * h);
}

double third_partial(ShiftedFidelity& f, int j, int k, int l, double h) {
  auto d2 = [&](double l_offset) {
    if (j == k)
      return (f({{j, h}, {l, l_offset}}) - 2 * f({{l, l_offset}}) +
              f({{j, -h}, {l, l_offset}})) /
             (h * h);
    return (f({{j, h}, {k, h}, {l, l_offset}}) - f({{j, h}, {k, -h}, {l, l_offset}}) -
            f({{j, -h}, {k, h}, {l, l_offset}}) +
            f({{j, -h}, {k, -h}, {l, l_offset}})) /
           (4 * h * h);
  };
  return (d2(h) - d2(-h)) / (2 * h);
}

}  // namespace

SmoothnessReport check_second_order(const ScenarioModel& m,
                                    const std::vector<ComplexMatrix>& gates, int trials,
                                    std::uint64_t seed, int trials_d3, double d2_step,
                                    double d3_step) {
  if (trials < 1) throw std::invalid_argument("check_second_order: trials must be >= 1");
  if (trials_d3 < 0) trials_d3 = trials;
  const CompiledScenario program(m, gates);
  const int p = program.num_params();
  std::mt19937_64 rng(seed);

  auto random_theta = [&] {
    std::vector<double> theta(p);
    for (double& x : theta) x = uniform_in(rng, -std::numbers::pi, std::numbers::pi);
    return theta;
  };

  SmoothnessReport report;
  report.samples = trials;
  report.samples_d3 = trials_d3;
  for (int s = 0; s < trials; ++s) {
    ShiftedFidelity f(program, random_theta());
    const int j = static_cast<int>(uniform_index(rng, p));
    const int k = static_cast<int>(uniform_index(rng, p));
    const double d2 = std::abs(second_partial(f, j, k, d2_step));
    report.max_abs_d2 = std::max(report.max_abs_d2, d2);
    if (d2 > report.bound_d2 + kSlackD2) ++report.violations;
  }
  for (int s = 0; s < trials_d3; ++s) {
    ShiftedFidelity f(program, random_theta());
    const int j = static_cast<int>(uniform_index(rng, p));
    const int k = static_cast<int>(uniform_index(rng, p));
    const int l = static_cast<int>(uniform_index(rng, p));
    const double d3 = std::abs(third_partial(f, j, k, l, d3_step));
    report.max_abs_d3 = std::max(report.max_abs_d3, d3);
    if (d3 > report.bound_d3 + kSlackD3) ++report.violations;
  }
  return report;
}

std::string SmoothnessReport::to_json() const {
  nlohmann::json j;
  j["samples"] = samples;
  j["samples_d3"] = samples_d3;
  j["max_abs_d2"] = max_abs_d2;
  j["bound_d2"] = bound_d2;
  j["max_abs_d3"] = max_abs_d3;
  j["bound_d3"] = bound_d3;
  j["violations"] = violations;
  return j.dump(2);
}

ConvergenceReport convergence_budget(const TrainingRecord& record, double epsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("convergence_budget: epsilon must be > 0");
  if (record.rows.empty())
    throw std::invalid_argument("convergence_budget: empty training record");
  ConvergenceReport report;
  report.epsilon = epsilon;
  report.budget = 4.0 * record.dim_theta / std::pow(epsilon, 4);
  for (const EpochRow& row : record.rows) {
    if (row.grad_norm_sq <= epsilon * epsilon) {
      report.met = true;
      report.first_epoch = row.epoch;
      report.iterations = static_cast<long>(row.epoch) * record.epoch_size;
      break;
    }
  }
  if (report.met) {
    report.ratio = static_cast<double>(report.iterations) / report.budget;
    report.within_budget = static_cast<double>(report.iterations) <= report.budget;
  }
  return report;
}

std::string ConvergenceReport::to_json() const {
  nlohmann::json j;
  j["epsilon"] = epsilon;
  j["met"] = met;
  j["first_epoch"] = first_epoch;
  j["iterations"] = iterations;
  j["budget"] = budget;
  j["ratio"] = ratio;
  j["within_budget"] = within_budget;
  return j.dump(2);
}

}  // namespace qaegate
