#include "kurasync/hemodynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kurasync/error.hpp"

namespace kurasync::hemo {

double Params::beta() const { return (E0 + (1.0 - E0) * std::log(1.0 - E0)) / (tau_b * E0); }

void Params::validate() const {
  const bool positive = kappa_s > 0 && gamma_s > 0 && tau_b > 0 && alpha_s > 0 && E0 > 0 && V0 > 0;
  if (!positive || !(E0 < 1.0) || !(alpha_s < 1.0)) {
    throw Error(ErrorKind::InvalidInput, "hemodynamic parameters out of range");
  }
}

namespace {

void require_physiological(const State& x) {
  if (!(x.f > 0.0) || !(x.v > 0.0) || !(x.q > 0.0)) {
    std::ostringstream msg;
    msg << "non-physiological hemodynamic state (f, v, q) = (" << x.f << ", " << x.v << ", " << x.q
        << ")";
    throw Error(ErrorKind::NonPhysiologicalState, msg.str());
  }
}

State axpy(const State& x, double h, const State& d) {
  return {x.s + h * d.s, x.f + h * d.f, x.v + h * d.v, x.q + h * d.q};
}

}  // namespace

State rhs(const State& x, double z, const Params& p) {
  require_physiological(x);
  const double f_out = std::pow(x.v, 1.0 / p.alpha_s);
  const double extraction = 1.0 - std::pow(1.0 - p.E0, 1.0 / x.f);
  State d;
  d.s = z - p.kappa_s * x.s - p.gamma_s * (x.f - 1.0);
  d.f = x.s;
  d.v = (x.f - f_out) / p.tau_b;
  d.q = (x.f * extraction / p.E0 - f_out * x.q / x.v) / p.tau_b;
  return d;
}

double bold(const State& x, const Params& p) {
  if (!(x.v > 0.0)) throw Error(ErrorKind::NonPhysiologicalState, "blood volume must be positive");
  return p.V0 * (p.k1() * (1.0 - x.q) + p.k2() * (1.0 - x.q / x.v) + p.k3() * (1.0 - x.v));
}

Eigen::Matrix4d equilibrium_jacobian(const Params& p) {
  const double t = p.tau_b;
  const double a = p.alpha_s;
  Eigen::Matrix4d j;
  // rows/cols ordered (s, f, v, q)
  j << -p.kappa_s, -p.gamma_s, 0.0, 0.0,
       1.0, 0.0, 0.0, 0.0,
       0.0, 1.0 / t, -1.0 / (t * a), 0.0,
       0.0, p.beta(), -(1.0 - a) / (t * a), -1.0 / t;
  return j;
}

LinearCascade linear_cascade(const Params& p) {
  LinearCascade c;
  c.a1 << -p.kappa_s, -p.gamma_s, 1.0, 0.0;
  c.b1 << 1.0, 0.0;
  c.c1 << 0.0, 1.0;
  c.a2 << -1.0 / (p.tau_b * p.alpha_s), 0.0, -(1.0 - p.alpha_s) / (p.tau_b * p.alpha_s), -1.0 / p.tau_b;
  c.b2 << 1.0 / p.tau_b, p.beta();
  c.c2 << p.V0 * (p.k2() - p.k3()), p.V0 * (-p.k1() - p.k2());
  return c;
}

std::complex<double> linearized_response(double frequency_hz, const Params& p) {
  if (frequency_hz < 0.0) throw Error(ErrorKind::InvalidInput, "frequency must be nonnegative");
  const LinearCascade c = linear_cascade(p);
  using C2 = Eigen::Matrix<std::complex<double>, 2, 2>;
  const std::complex<double> s(0.0, 2.0 * std::numbers::pi * frequency_hz);
  auto stage = [&](const Eigen::Matrix2d& a, const Eigen::Vector2d& b, const Eigen::RowVector2d& out) {
    const C2 m = s * C2::Identity() - a.cast<std::complex<double>>();
    const Eigen::Vector2cd x = m.inverse() * b.cast<std::complex<double>>();
    return (out.cast<std::complex<double>>() * x)(0);
  };
  return stage(c.a1, c.b1, c.c1) * stage(c.a2, c.b2, c.c2);
}

Eigen::MatrixXd simulate_bold(const Eigen::Ref<const Eigen::MatrixXd>& neural, double sample_dt,
                              const Params& p, double dt) {
  p.validate();
  if (!(sample_dt > 0.0) || !(dt > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "time steps must be positive");
  }
  if (!neural.allFinite()) throw Error(ErrorKind::InvalidInput, "neural input is not finite");
  const int substeps = std::max(1, static_cast<int>(std::lround(sample_dt / dt)));
  const double h = sample_dt / substeps;

  Eigen::MatrixXd y(neural.rows(), neural.cols());
  for (Eigen::Index region = 0; region < neural.cols(); ++region) {
    State x;
    for (Eigen::Index k = 0; k < neural.rows(); ++k) {
      y(k, region) = bold(x, p);
      const double z = neural(k, region);
      try {
        for (int sub = 0; sub < substeps; ++sub) {
          const State k1 = rhs(x, z, p);
          const State k2 = rhs(axpy(x, 0.5 * h, k1), z, p);
          const State k3 = rhs(axpy(x, 0.5 * h, k2), z, p);
          const State k4 = rhs(axpy(x, h, k3), z, p);
          x.s += h / 6.0 * (k1.s + 2.0 * k2.s + 2.0 * k3.s + k4.s);
          x.f += h / 6.0 * (k1.f + 2.0 * k2.f + 2.0 * k3.f + k4.f);
          x.v += h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
          x.q += h / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
        }
        require_physiological(x);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonPhysiologicalState) throw;
        std::ostringstream msg;
        msg << e.what() << " in region " << region << " at t = " << static_cast<double>(k) * sample_dt
            << " s";
        throw Error(ErrorKind::NonPhysiologicalState, msg.str());
      }
    }
  }
  return y;
}

}  // namespace kurasync::hemo
