#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "swapnet/linalg.hpp"

namespace swapnet {

/// 2x2 Jones operator acting on one polarization qubit in the {H, V} basis.
struct PolarizationOperator {
  Mat2 u = Mat2::identity();

  bool is_unitary(double tol = 1e-9) const {
    return (u * u.dagger()).max_abs_diff(Mat2::identity()) <= tol;
  }
};

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline const char* to_string(BellKind k) {
  switch (k) {
    case BellKind::PhiPlus: return "phi+";
    case BellKind::PhiMinus: return "phi-";
    case BellKind::PsiPlus: return "psi+";
    case BellKind::PsiMinus: return "psi-";
  }
  return "?";
}

/// Two-qubit polarization density matrix in the ordered basis {HH, HV, VH, VV}.
/// Validity (Hermitian, unit trace, positive) is checked on construction via
/// `validated`, not on every operation.
struct TwoQubitState {
  Mat4 rho;

  static TwoQubitState validated(const Mat4& m, double tol = 1e-9) {
    if (m.max_abs_diff(m.dagger()) > tol)
      throw std::invalid_argument("TwoQubitState: matrix is not Hermitian");
    if (std::abs(m.trace() - cdouble(1.0)) > tol)
      throw std::invalid_argument("TwoQubitState: trace != 1");
    const auto ev = hermitian_eigenvalues(m);
    for (double e : ev)
      if (e < -1e-10) throw std::invalid_argument("TwoQubitState: negative eigenvalue");
    return TwoQubitState{m};
  }

  double purity() const { return trace_product(rho, rho).real(); }
};

inline double deg2rad(double d) { return d * std::numbers::pi / 180.0; }

/// Half-waveplate Jones matrix at fast-axis angle theta (degrees):
/// [[cos 2t, sin 2t], [sin 2t, -cos 2t]].  Real symmetric phase convention;
/// rotating the plate by theta rotates the analysis basis by 2*theta.
inline PolarizationOperator hwp_operator(double theta_deg) {
  if (!std::isfinite(theta_deg)) throw std::invalid_argument("hwp_operator: non-finite angle");
  const double t = deg2rad(2.0 * theta_deg);
  Mat2 u;
  u(0, 0) = std::cos(t);
  u(0, 1) = std::sin(t);
  u(1, 0) = std::sin(t);
  u(1, 1) = -std::cos(t);
  return PolarizationOperator{u};
}

/// Rotation of the polarization frame by angle (radians) about an axis on the
/// Bloch sphere given by unit vector (nx, ny, nz): exp(-i angle/2 n.sigma).
inline PolarizationOperator axis_rotation(double angle_rad, double nx, double ny, double nz) {
  const double h = 0.5 * angle_rad;
  const double c = std::cos(h);
  const double s = std::sin(h);
  Mat2 u;
  u(0, 0) = cdouble(c, -s * nz);
  u(0, 1) = cdouble(-s * ny, -s * nx);
  u(1, 0) = cdouble(s * ny, -s * nx);
  u(1, 1) = cdouble(c, s * nz);
  return PolarizationOperator{u};
}

inline TwoQubitState bell_state(BellKind kind) {
  // Amplitudes over {HH, HV, VH, VV}.
  double a[4] = {0, 0, 0, 0};
  const double r = 1.0 / std::numbers::sqrt2;
  switch (kind) {
    case BellKind::PhiPlus: a[0] = r; a[3] = r; break;
    case BellKind::PhiMinus: a[0] = r; a[3] = -r; break;
    case BellKind::PsiPlus: a[1] = r; a[2] = r; break;
    case BellKind::PsiMinus: a[1] = r; a[2] = -r; break;
  }
  Mat4 rho;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rho(i, j) = a[i] * a[j];
  return TwoQubitState{rho};
}

/// (uA ⊗ uB) rho (uA ⊗ uB)†.  Inputs must be unitary to 1e-9.
inline TwoQubitState apply_local(const PolarizationOperator& uA, const PolarizationOperator& uB,
                                 const TwoQubitState& state) {
  if (!uA.is_unitary() || !uB.is_unitary())
    throw std::invalid_argument("apply_local: operator is not unitary");
  const Mat4 u = kron(uA.u, uB.u);
  return TwoQubitState{u * state.rho * u.dagger()};
}

/// Projector onto the linear polarization cos(g)|H> + sin(g)|V>, g in degrees.
inline Mat2 analyzer_projector(double angle_deg) {
  const double g = deg2rad(angle_deg);
  const double c = std::cos(g);
  const double s = std::sin(g);
  Mat2 p;
  p(0, 0) = c * c;
  p(0, 1) = c * s;
  p(1, 0) = c * s;
  p(1, 1) = s * s;
  return p;
}

/// Probability that both photons pass analyzers at angles alpha, beta (degrees):
/// tr(rho P_alpha ⊗ P_beta).
inline double joint_projection_prob(const TwoQubitState& state, double alpha_deg,
                                    double beta_deg) {
  const Mat4 p = kron(analyzer_projector(alpha_deg), analyzer_projector(beta_deg));
  double v = trace_product(state.rho, p).real();
  // Clamp the tiny negative excursions of exact-zero cases.
  if (v < 0.0 && v > -1e-12) v = 0.0;
  return v;
}

}  // namespace swapnet
