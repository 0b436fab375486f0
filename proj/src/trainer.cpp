#include "qaegate/trainer.hpp"

#include "qaegate/engine.hpp"
#include "qaegate/random.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace qaegate {

namespace {

std::vector<ComplexMatrix> realize_gates(const Dataset& ds, bool test_split) {
  std::vector<ComplexMatrix> out;
  for (const GateSample& s : test_split ? ds.test : ds.train)
    out.push_back(heisenberg_gate(s));
  return out;
}

Eigen::VectorXd finite_difference_grad_f(const CompiledScenario& program,
                                         std::span<const double> theta, double step) {
  std::vector<double> shifted(theta.begin(), theta.end());
  Eigen::VectorXd grad(program.num_params());
  for (int k = 0; k < program.num_params(); ++k) {
    const double saved = shifted[k];
    shifted[k] = saved + step;
    const double fp = program.fidelity(shifted);
    shifted[k] = saved - step;
    const double fm = program.fidelity(shifted);
    shifted[k] = saved;
    grad(k) = (fp - fm) / (2 * step);
  }
  return grad;
}

double eval_with_gradient(const CompiledScenario& program, std::span<const double> theta,
                          GradientMode mode, double fd_step, int threads,
                          Eigen::VectorXd& grad_f) {
  if (mode == GradientMode::ParameterShift)
    return program.fidelity_and_gradient(theta, grad_f, threads);
  grad_f = finite_difference_grad_f(program, theta, fd_step);
  return program.fidelity(theta);
}

}  // namespace

Eigen::VectorXd gradient(const ScenarioModel& m, std::span<const double> theta,
                         const std::vector<ComplexMatrix>& gates, GradientMode mode,
                         double fd_step, int threads) {
  const CompiledScenario program(m, gates);
  Eigen::VectorXd grad_f;
  eval_with_gradient(program, theta, mode, fd_step, threads, grad_f);
  return -grad_f;  // L = 1 - f
}

double mean_test_overlap(const ScenarioModel& m, std::span<const double> theta,
                         const Dataset& ds, const Dataset* ds2,
                         int multiround_target_uses) {
  const std::vector<ComplexMatrix> test1 = realize_gates(ds, true);
  std::vector<ComplexMatrix> test2;
  if (m.kind == ScenarioKind::Sequence) {
    if (ds2 == nullptr)
      throw std::invalid_argument("sequence scenario needs a second dataset");
    test2 = realize_gates(*ds2, true);
  }
  const std::size_t count =
      m.kind == ScenarioKind::Sequence ? std::min(test1.size(), test2.size())
                                       : test1.size();
  if (count == 0) throw std::invalid_argument("empty test split");
  double sum = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<ComplexMatrix> gates{test1[i]};
    if (m.kind == ScenarioKind::Sequence) gates.push_back(test2[i]);
    sum += CompiledScenario(m, gates, multiround_target_uses).fidelity(theta);
  }
  return sum / static_cast<double>(count);
}

TrainResult train(const ScenarioModel& m, const Dataset& ds, const TrainConfig& cfg,
                  const Dataset* ds2) {
  if (cfg.max_iters < 1) throw std::invalid_argument("train: max_iters must be >= 1");
  if (!(cfg.learning_rate > 0)) throw std::invalid_argument("train: learning rate must be > 0");
  if (ds.family.n != m.n) throw std::invalid_argument("train: dataset qubit count mismatch");
  if (ds.train.empty()) throw std::invalid_argument("train: empty training set");
  const bool sequence = m.kind == ScenarioKind::Sequence;
  if (sequence && ds2 == nullptr)
    throw std::invalid_argument("train: sequence scenario needs a second dataset");
  if (!sequence && ds2 != nullptr)
    throw std::invalid_argument("train: second dataset is only valid for sequence");
  if (sequence && (ds2->family.n != m.n || ds2->train.empty()))
    throw std::invalid_argument("train: bad second dataset");

  const std::vector<ComplexMatrix> train1 = realize_gates(ds, false);
  const std::vector<ComplexMatrix> train2 = sequence ? realize_gates(*ds2, false)
                                                     : std::vector<ComplexMatrix>{};

  std::mt19937_64 rng(cfg.seed);
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(m.num_params());
  if (cfg.init == InitMode::Random)
    for (int k = 0; k < theta.size(); ++k)
      theta(k) = uniform_in(rng, -std::numbers::pi / 4, std::numbers::pi / 4);

  const int epoch_size = cfg.epoch_size > 0 ? cfg.epoch_size
                                            : static_cast<int>(ds.train.size());
  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
        .count();
  };

  TrainResult result;
  result.record.dim_theta = m.num_params();
  result.record.epoch_size = epoch_size;

  auto make_program = [&](std::size_t i1, std::size_t i2) {
    std::vector<ComplexMatrix> gates{train1[i1]};
    if (sequence) gates.push_back(train2[i2]);
    return CompiledScenario(m, gates, cfg.multiround_target_uses);
  };

  // epoch 0: the untrained model over the full training set
  {
    double sum_f = 0, sum_g2 = 0;
    Eigen::VectorXd grad_f;
    const std::size_t count = sequence ? std::min(train1.size(), train2.size())
                                       : train1.size();
    for (std::size_t i = 0; i < count; ++i) {
      const CompiledScenario program = make_program(i, i);
      sum_f += eval_with_gradient(program, {theta.data(), theta.data() + theta.size()},
                                  cfg.gradient_mode, cfg.fd_step, cfg.threads, grad_f);
      sum_g2 += grad_f.squaredNorm();
    }
    const double mean_f = sum_f / static_cast<double>(count);
    result.record.rows.push_back(
        {0, mean_f, mean_test_overlap(m, {theta.data(), theta.data() + theta.size()},
                                      ds, ds2, cfg.multiround_target_uses),
         sum_g2 / static_cast<double>(count), elapsed()});
    if (1.0 - mean_f <= cfg.loss_threshold) {
      result.theta = theta;
      return result;
    }
  }

  int iter = 0;
  int epoch = 0;
  double sum_f = 0, sum_g2 = 0;
  int in_epoch = 0;
  Eigen::VectorXd grad_f;
  while (iter < cfg.max_iters) {
    const std::size_t i1 = uniform_index(rng, train1.size());
    const std::size_t i2 = sequence ? uniform_index(rng, train2.size()) : 0;
    const CompiledScenario program = make_program(i1, i2);
    const double f =
        eval_with_gradient(program, {theta.data(), theta.data() + theta.size()},
                           cfg.gradient_mode, cfg.fd_step, cfg.threads, grad_f);
    if (!std::isfinite(f) || !grad_f.allFinite())
      throw std::runtime_error("train: loss diverged (non-finite value at iteration " +
                               std::to_string(iter) + ")");
    theta += cfg.learning_rate * grad_f;  // theta - lr * grad(1 - f)
    sum_f += f;
    sum_g2 += grad_f.squaredNorm();
    ++iter;
    ++in_epoch;
    if (in_epoch == epoch_size || iter == cfg.max_iters) {
      ++epoch;
      const double mean_f = sum_f / in_epoch;
      result.record.rows.push_back(
          {epoch, mean_f,
           mean_test_overlap(m, {theta.data(), theta.data() + theta.size()}, ds, ds2,
                             cfg.multiround_target_uses),
           sum_g2 / in_epoch, elapsed()});
      if (1.0 - mean_f <= cfg.loss_threshold) break;
      sum_f = sum_g2 = 0;
      in_epoch = 0;
    }
  }
  result.record.total_iters = iter;
  result.theta = std::move(theta);
  return result;
}

void save_curve_csv(const TrainingRecord& record, const std::string& path,
                    bool include_timing) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (out == nullptr) throw std::runtime_error("cannot write " + path);
  std::fputs("epoch,train_overlap,test_overlap,grad_norm_sq,seconds\n", out);
  for (const EpochRow& row : record.rows)
    std::fprintf(out, "%d,%.12g,%.12g,%.12g,%.12g\n", row.epoch, row.train_overlap,
                 row.test_overlap, row.grad_norm_sq,
                 include_timing ? row.seconds : 0.0);
  std::fclose(out);
}

}  // namespace qaegate
