#pragma once

#include <Eigen/Core>

#include "actdiff/errors.hpp"

namespace actdiff {

enum class ProcessKind { passive, active };

/// Constants of the forward/reverse diffusion process.
///
/// passive:  dx = -k x dt + sqrt(2 T) dW            with T stored in T_p
/// active:   dx = (-k x + eta) dt + sqrt(2 T_p) dW1
///           deta = -eta/tau dt + (sqrt(2 T_a)/tau) dW2
struct DiffusionParams {
  ProcessKind kind = ProcessKind::passive;
  double k = 1.0;    // stiffness, 1/time
  double T_p = 0.0;  // passive temperature (the plain T for kind=passive)
  double T_a = 0.0;  // active temperature
  double tau = 0.0;  // persistence time of the active noise
  double t_f = 1.0;  // forward horizon

  bool is_active() const { return kind == ProcessKind::active; }

  void validate() const {
    if (!std::isfinite(k) || !std::isfinite(T_p) || !std::isfinite(T_a) ||
        !std::isfinite(tau) || !std::isfinite(t_f)) {
      throw InvalidInputError("DiffusionParams: non-finite field");
    }
    if (k <= 0.0) throw InvalidInputError("DiffusionParams: k must be > 0");
    if (t_f <= 0.0) throw InvalidInputError("DiffusionParams: t_f must be > 0");
    if (T_p < 0.0 || T_a < 0.0) throw InvalidInputError("DiffusionParams: temperatures must be >= 0");
    if (is_active() && tau <= 0.0) throw InvalidInputError("DiffusionParams: tau must be > 0 for the active process");
  }

  static DiffusionParams make_passive(double k, double T, double t_f) {
    DiffusionParams p;
    p.kind = ProcessKind::passive;
    p.k = k;
    p.T_p = T;
    p.t_f = t_f;
    p.validate();
    return p;
  }

  static DiffusionParams make_active(double k, double T_a, double tau, double t_f, double T_p = 0.0) {
    DiffusionParams p;
    p.kind = ProcessKind::active;
    p.k = k;
    p.T_a = T_a;
    p.tau = tau;
    p.t_f = t_f;
    p.T_p = T_p;
    p.validate();
    return p;
  }
};

/// The 2d-dimensional diffusing state: data vector x plus its active
/// partner eta, tagged with the forward time. eta is empty for passive runs.
struct JointState {
  Eigen::VectorXd x;
  Eigen::VectorXd eta;
  double t = 0.0;

  void validate(bool expect_eta) const {
    if (expect_eta && eta.size() != x.size())
      throw InvalidInputError("JointState: x and eta must have equal length");
    if (!x.allFinite() || !eta.allFinite() || !std::isfinite(t))
      throw InvalidInputError("JointState: non-finite entries");
  }
};

}  // namespace actdiff
