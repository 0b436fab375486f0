#pragma once

#include "qaegate/heisenberg.hpp"
#include "qaegate/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qaegate {

enum class GradientMode { ParameterShift, FiniteDifference };
enum class InitMode { Random, Zero };

struct TrainConfig {
  int max_iters = 20000;
  double learning_rate = 0.05;
  double loss_threshold = 1e-3;
  std::uint64_t seed = 0;
  int epoch_size = 0;  // 0: one pass-equivalent of the train-set size
  GradientMode gradient_mode = GradientMode::ParameterShift;
  double fd_step = 1e-5;
  InitMode init = InitMode::Random;
  int threads = 1;
  int multiround_target_uses = 1;
};

struct EpochRow {
  int epoch = 0;
  double train_overlap = 0;
  double test_overlap = 0;
  double grad_norm_sq = 0;
  double seconds = 0;
};

struct TrainingRecord {
  int dim_theta = 0;
  int epoch_size = 0;
  int total_iters = 0;
  std::vector<EpochRow> rows;
};

struct TrainResult {
  Eigen::VectorXd theta;
  TrainingRecord record;
};

// grad of L = 1 - f.  ParameterShift is exact for this gate set; the
// FiniteDifference mode is the independent cross-check.
Eigen::VectorXd gradient(const ScenarioModel& m, std::span<const double> theta,
                         const std::vector<ComplexMatrix>& gates, GradientMode mode,
                         double fd_step = 1e-5, int threads = 1);

// Stochastic gradient descent over the dataset: per iteration one training
// gate is drawn uniformly, L = 1 - f is evaluated and theta steps along
// -lr * grad L.  Stops at max_iters or when the epoch-mean loss drops to the
// threshold.  Fully deterministic for a fixed seed and any thread count.
// Sequence scenarios draw independently from `ds` ({U_x}) and `ds2` ({U_y}).
TrainResult train(const ScenarioModel& m, const Dataset& ds, const TrainConfig& cfg,
                  const Dataset* ds2 = nullptr);

// mean Choi overlap of the decoded channel against the targets of the test
// split (test pairs are zipped by index for Sequence)
double mean_test_overlap(const ScenarioModel& m, std::span<const double> theta,
                         const Dataset& ds, const Dataset* ds2 = nullptr,
                         int multiround_target_uses = 1);

// header: epoch,train_overlap,test_overlap,grad_norm_sq,seconds
// The seconds column is only written when include_timing is set; it is
// zeroed otherwise so identical runs produce byte-identical files.
void save_curve_csv(const TrainingRecord& record, const std::string& path,
                    bool include_timing = false);

}  // namespace qaegate
