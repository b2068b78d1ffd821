#pragma once

#include <Eigen/Dense>
#include <functional>

#include "bracketflow/types.hpp"

namespace bracketflow {

struct OdeOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double step_floor = 1e-14;
  double initial_step = 0.0;  // 0 = startup heuristic
  long max_steps = 500000;
};

using OdeRhs = std::function<void(double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy)>;

// One Dormand-Prince 5(4) stage sweep from (t, y, f = rhs(t,y)) with step h.
// y_new is the 5th-order solution, error the weighted RMS of the embedded
// difference, f_new the rhs at the new point (FSAL).
struct RkStepResult {
  Eigen::VectorXd y_new;
  Eigen::VectorXd f_new;
  double error = 0;
};
RkStepResult dopri5_step(const OdeRhs& rhs, double t, const Eigen::VectorXd& y,
                         const Eigen::VectorXd& f, double h, double atol, double rtol);

// Adaptive 5(4) driver with PI step-size control and compensated time
// accumulation (the backward singular approaches need t resolved well below
// one ulp of its magnitude).
class Dopri5 {
 public:
  Dopri5(OdeRhs rhs, double t0, Eigen::VectorXd y0, double direction, OdeOptions opts);

  // Advance one accepted step, clamped so t never passes t_limit; a clamped
  // accepted step lands on t_limit exactly. Returns false when the required
  // step falls below the floor. Throws numerical_error past max_steps.
  bool step_to(double t_limit);

  double t() const { return t_ + t_comp_; }
  const Eigen::VectorXd& y() const { return y_; }
  const Eigen::VectorXd& f() const { return f_; }

  double t_prev() const { return t_prev_; }
  const Eigen::VectorXd& y_prev() const { return y_prev_; }
  const Eigen::VectorXd& f_prev() const { return f_prev_; }

  long accepted_steps() const { return accepted_; }
  long attempted_steps() const { return attempted_; }
  double current_step() const { return h_; }

 private:
  double initial_step_guess(double t_limit) const;
  void advance_time(double h);

  OdeRhs rhs_;
  OdeOptions opts_;
  double dir_;
  double t_ = 0, t_comp_ = 0;
  double t_prev_ = 0;
  Eigen::VectorXd y_, f_, y_prev_, f_prev_;
  double h_ = 0;
  double facold_ = 1e-4;
  bool rejected_last_ = false;
  long accepted_ = 0, attempted_ = 0;
};

}  // namespace bracketflow
