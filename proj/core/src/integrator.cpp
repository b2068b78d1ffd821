#include "bracketflow/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace bracketflow {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kSafe = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo1 = 0.2 - kBeta * 0.75;
constexpr double kFacc1 = 5.0;   // reciprocal of max shrink factor 0.2
constexpr double kFacc2 = 0.1;   // reciprocal of max growth factor 10

}  // namespace

RkStepResult dopri5_step(const OdeRhs& rhs, double t, const Eigen::VectorXd& y,
                         const Eigen::VectorXd& f, double h, double atol, double rtol) {
  const Eigen::Index n = y.size();
  Eigen::VectorXd k2(n), k3(n), k4(n), k5(n), k6(n);

  rhs(t + c2 * h, y + h * (a21 * f), k2);
  rhs(t + c3 * h, y + h * (a31 * f + a32 * k2), k3);
  rhs(t + c4 * h, y + h * (a41 * f + a42 * k2 + a43 * k3), k4);
  rhs(t + c5 * h, y + h * (a51 * f + a52 * k2 + a53 * k3 + a54 * k4), k5);
  rhs(t + h, y + h * (a61 * f + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6);

  RkStepResult out;
  out.y_new = y + h * (b1 * f + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  out.f_new.resize(n);
  rhs(t + h, out.y_new, out.f_new);

  const Eigen::VectorXd diff =
      h * (e1 * f + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * out.f_new);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(out.y_new[i]));
    const double q = diff[i] / sc;
    sum += q * q;
  }
  out.error = std::sqrt(sum / static_cast<double>(n));
  if (!std::isfinite(out.error) || !out.y_new.allFinite()) out.error = 1e10;
  return out;
}

Dopri5::Dopri5(OdeRhs rhs, double t0, Eigen::VectorXd y0, double direction, OdeOptions opts)
    : rhs_(std::move(rhs)),
      opts_(opts),
      dir_(direction >= 0 ? 1.0 : -1.0),
      t_(t0),
      y_(std::move(y0)) {
  f_.resize(y_.size());
  rhs_(t_, y_, f_);
  t_prev_ = t_;
  y_prev_ = y_;
  f_prev_ = f_;
  if (opts_.initial_step > 0.0) h_ = dir_ * opts_.initial_step;
}

double Dopri5::initial_step_guess(double t_limit) const {
  const double hmax = std::abs(t_limit - t_);
  double dnf = 0.0, dny = 0.0;
  for (Eigen::Index i = 0; i < y_.size(); ++i) {
    const double sc = opts_.atol + opts_.rtol * std::abs(y_[i]);
    dnf += (f_[i] / sc) * (f_[i] / sc);
    dny += (y_[i] / sc) * (y_[i] / sc);
  }
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
  h = std::min(h, hmax);

  Eigen::VectorXd y1 = y_ + dir_ * h * f_;
  Eigen::VectorXd f1(y_.size());
  rhs_(t_ + dir_ * h, y1, f1);
  double der2 = 0.0;
  for (Eigen::Index i = 0; i < y_.size(); ++i) {
    const double sc = opts_.atol + opts_.rtol * std::abs(y_[i]);
    const double q = (f1[i] - f_[i]) / sc;
    der2 += q * q;
  }
  der2 = std::sqrt(der2) / h;
  const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
  const double h1 =
      (der12 <= 1e-15) ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
  h = std::min({100.0 * h, h1, hmax});
  if (!std::isfinite(h) || h <= 0.0) h = 1e-6;
  return dir_ * h;
}

void Dopri5::advance_time(double h) {
  const double y = h + t_comp_;
  const double t_new = t_ + y;
  t_comp_ = y - (t_new - t_);
  t_ = t_new;
}

bool Dopri5::step_to(double t_limit) {
  const double tcur = t();
  if ((t_limit - tcur) * dir_ <= 0.0) return true;
  if (h_ == 0.0) h_ = initial_step_guess(t_limit);

  while (true) {
    const double remaining = t_limit - t();
    bool landing = false;
    double h_try = h_;
    if (std::abs(h_try) >= std::abs(remaining)) {
      h_try = remaining;
      landing = true;
    }
    if (std::abs(h_try) < opts_.step_floor) return false;
    if (++attempted_ > opts_.max_steps)
      throw numerical_error("dopri5: maximum step count exceeded");

    const RkStepResult step =
        dopri5_step(rhs_, t(), y_, f_, h_try, opts_.atol, opts_.rtol);
    const double err = step.error;
    const double fac11 = std::pow(err, kExpo1);

    if (err <= 1.0) {
      t_prev_ = t();
      y_prev_.swap(y_);
      f_prev_.swap(f_);
      y_ = step.y_new;
      f_ = step.f_new;
      if (landing) {
        t_ = t_limit;
        t_comp_ = 0.0;
      } else {
        advance_time(h_try);
        double fac = fac11 / std::pow(facold_, kBeta);
        fac = std::max(kFacc2, std::min(kFacc1, fac / kSafe));
        double hnew = h_try / fac;
        if (rejected_last_) hnew = dir_ * std::min(std::abs(hnew), std::abs(h_try));
        h_ = hnew;
      }
      facold_ = std::max(err, 1e-4);
      rejected_last_ = false;
      ++accepted_;
      return true;
    }
    h_ = h_try / std::min(kFacc1, fac11 / kSafe);
    rejected_last_ = true;
  }
}

}  // namespace bracketflow
