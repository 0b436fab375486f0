#pragma once

#include "qaegate/scenario.hpp"
#include "qaegate/trainer.hpp"

#include <cstdint>
#include <string>

namespace qaegate {

// Sampled bounds on the loss-surface derivatives.  For this gate set every
// generator has unit operator norm, so second partials of f are bounded by 4
// and third partials by 8.
struct SmoothnessReport {
  int samples = 0;     // second-order samples
  int samples_d3 = 0;  // third-order samples
  double max_abs_d2 = 0;
  double max_abs_d3 = 0;
  double bound_d2 = 4.0;
  double bound_d3 = 8.0;
  int violations = 0;

  std::string to_json() const;
};

// Central finite-difference probes of random second (step 1e-3) and third
// (step 1e-2) partials of f at random parameter points.  A sample counts as
// a violation when it exceeds its bound plus slack (1e-2 for second order,
// 1e-1 for third).
SmoothnessReport check_second_order(const ScenarioModel& m,
                                    const std::vector<ComplexMatrix>& gates, int trials,
                                    std::uint64_t seed, int trials_d3 = -1,
                                    double d2_step = 1e-3, double d3_step = 1e-2);

struct ConvergenceReport {
  double epsilon = 0;
  bool met = false;       // epoch-mean ||grad L||^2 reached epsilon^2
  int first_epoch = -1;
  long iterations = -1;   // iterations elapsed at that epoch
  double budget = 0;      // 4 dim(theta) / epsilon^4
  double ratio = 0;       // iterations / budget
  bool within_budget = false;

  std::string to_json() const;
};

ConvergenceReport convergence_budget(const TrainingRecord& record, double epsilon);

}  // namespace qaegate
