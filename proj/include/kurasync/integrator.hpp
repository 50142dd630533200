#pragma once

#include <Eigen/Dense>

namespace kurasync {

/// Classical fixed-step fourth-order Runge-Kutta with reusable stage
/// buffers. The right-hand side is called as f(t, y, dydt).
class Rk4 {
 public:
  explicit Rk4(Eigen::Index dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

  template <class Rhs>
  void step(Rhs&& f, double t, Eigen::VectorXd& y, double h) {
    f(t, y, k1_);
    tmp_ = y + 0.5 * h * k1_;
    f(t + 0.5 * h, tmp_, k2_);
    tmp_ = y + 0.5 * h * k2_;
    f(t + 0.5 * h, tmp_, k3_);
    tmp_ = y + h * k3_;
    f(t + h, tmp_, k4_);
    y += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

 private:
  Eigen::VectorXd k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace kurasync
