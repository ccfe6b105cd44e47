#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace swapnet {

using cdouble = std::complex<double>;

/// Dense square complex matrix of fixed dimension N, row-major.
/// Sized for polarization algebra (N = 2 single qubit, N = 4 two qubits);
/// all operations are straightforward loops, no cleverness needed at this size.
template <std::size_t N>
struct CMat {
  std::array<cdouble, N * N> m{};

  static constexpr std::size_t dim = N;

  constexpr cdouble& operator()(std::size_t r, std::size_t c) { return m[r * N + c]; }
  constexpr const cdouble& operator()(std::size_t r, std::size_t c) const { return m[r * N + c]; }

  static CMat identity() {
    CMat out;
    for (std::size_t i = 0; i < N; ++i) out(i, i) = 1.0;
    return out;
  }

  static CMat zero() { return CMat{}; }

  CMat dagger() const {
    CMat out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  cdouble trace() const {
    cdouble t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  CMat operator+(const CMat& o) const {
    CMat out;
    for (std::size_t i = 0; i < N * N; ++i) out.m[i] = m[i] + o.m[i];
    return out;
  }

  CMat operator-(const CMat& o) const {
    CMat out;
    for (std::size_t i = 0; i < N * N; ++i) out.m[i] = m[i] - o.m[i];
    return out;
  }

  CMat operator*(const CMat& o) const {
    CMat out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const cdouble a = (*this)(r, k);
        if (a == cdouble{}) continue;
        for (std::size_t c = 0; c < N; ++c) out(r, c) += a * o(k, c);
      }
    return out;
  }

  CMat operator*(cdouble s) const {
    CMat out;
    for (std::size_t i = 0; i < N * N; ++i) out.m[i] = m[i] * s;
    return out;
  }

  CMat operator*(double s) const { return (*this) * cdouble(s, 0.0); }

  double max_abs_diff(const CMat& o) const {
    double w = 0.0;
    for (std::size_t i = 0; i < N * N; ++i) w = std::max(w, std::abs(m[i] - o.m[i]));
    return w;
  }
};

using Mat2 = CMat<2>;
using Mat4 = CMat<4>;

template <std::size_t N>
inline CMat<N> operator*(double s, const CMat<N>& a) {
  return a * s;
}

/// Kronecker product; index convention (a ⊗ b)(i*M+k, j*M+l) = a(i,j) b(k,l).
template <std::size_t N, std::size_t M>
inline CMat<N * M> kron(const CMat<N>& a, const CMat<M>& b) {
  CMat<N * M> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < M; ++k)
        for (std::size_t l = 0; l < M; ++l) out(i * M + k, j * M + l) = a(i, j) * b(k, l);
  return out;
}

inline cdouble trace_product(const Mat4& a, const Mat4& b) {
  cdouble t = 0.0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t k = 0; k < 4; ++k) t += a(r, k) * b(k, r);
  return t;
}

inline cdouble trace_product(const Mat2& a, const Mat2& b) {
  cdouble t = 0.0;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t k = 0; k < 2; ++k) t += a(r, k) * b(k, r);
  return t;
}

/// Trace out the second qubit of a two-qubit operator (basis index 2*first + second).
inline Mat2 partial_trace_second(const Mat4& rho) {
  Mat2 out;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t k = 0; k < 2; ++k) out(a, b) += rho(2 * a + k, 2 * b + k);
  return out;
}

/// Trace out the first qubit of a two-qubit operator.
inline Mat2 partial_trace_first(const Mat4& rho) {
  Mat2 out;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t k = 0; k < 2; ++k) out(a, b) += rho(2 * k + a, 2 * k + b);
  return out;
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Adequate for the 2x2/4x4 validation checks this library performs.
template <std::size_t N>
inline std::array<double, N> hermitian_eigenvalues(CMat<N> a, int max_sweeps = 64) {
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off += std::norm(a(p, q));
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const cdouble apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Unitary 2x2 rotation [[c, -conj(s)], [s, c]] zeroing the (p,q) entry.
        const double phi = std::arg(apq);
        const double absa = std::abs(apq);
        const double theta = 0.5 * std::atan2(2.0 * absa, app - aqq);
        const double c = std::cos(theta);
        const cdouble s = std::sin(theta) * std::exp(cdouble(0.0, phi));
        for (std::size_t k = 0; k < N; ++k) {
          const cdouble akp = a(k, p);
          const cdouble akq = a(k, q);
          a(k, p) = c * akp + std::conj(s) * akq;
          a(k, q) = -s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const cdouble apk = a(p, k);
          const cdouble aqk = a(q, k);
          a(p, k) = c * apk + s * aqk;
          a(q, k) = -std::conj(s) * apk + c * aqk;
        }
      }
    }
  }
  std::array<double, N> ev{};
  for (std::size_t i = 0; i < N; ++i) ev[i] = a(i, i).real();
  return ev;
}

}  // namespace swapnet
