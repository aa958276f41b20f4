#include "vcavity/negativity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vcavity {

Matrix9 Matrix9::identity() {
  Matrix9 m;
  for (std::size_t i = 0; i < kPairDim; ++i) m(i, i) = 1.0;
  return m;
}

Complex Matrix9::trace() const {
  Complex sum{};
  for (std::size_t i = 0; i < kPairDim; ++i) sum += (*this)(i, i);
  return sum;
}

Matrix9 Matrix9::adjoint() const {
  Matrix9 out;
  for (std::size_t i = 0; i < kPairDim; ++i)
    for (std::size_t j = 0; j < kPairDim; ++j) out(i, j) = std::conj((*this)(j, i));
  return out;
}

double Matrix9::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& z : data_) sum += std::norm(z);
  return std::sqrt(sum);
}

double Matrix9::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < kPairDim; ++i)
    for (std::size_t j = i; j < kPairDim; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

Matrix9 operator*(const Matrix9& lhs, const Matrix9& rhs) {
  Matrix9 out;
  for (std::size_t i = 0; i < kPairDim; ++i)
    for (std::size_t k = 0; k < kPairDim; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < kPairDim; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

Matrix9 operator-(const Matrix9& lhs, const Matrix9& rhs) {
  Matrix9 out;
  for (std::size_t i = 0; i < kPairDim; ++i)
    for (std::size_t j = 0; j < kPairDim; ++j) out(i, j) = lhs(i, j) - rhs(i, j);
  return out;
}

namespace {

constexpr std::size_t kA = 0, kB = 1, kC = 2;

}  // namespace

DensityMatrix9 build_density(const AmplitudeSet& amps) {
  const Amplitudes& a = amps.amps;
  if (a.excited_norm() > 1.0 + kNormTolerance) {
    throw Error(ErrorCode::NormViolation, "excited population exceeds 1");
  }
  // Non-zero rows/cols: |A1,C2>, |B1,C2>, |C1,A2>, |C1,B2>, plus |C1,C2>.
  const std::array<std::size_t, 4> index = {basis_index(kA, kC), basis_index(kB, kC),
                                            basis_index(kC, kA), basis_index(kC, kB)};
  const std::array<Complex, 4> c = {a.c1a, a.c1b, a.c2a, a.c2b};

  DensityMatrix9 rho;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t s = 0; s < 4; ++s) rho.entries(index[r], index[s]) = c[r] * std::conj(c[s]);
  rho.entries(basis_index(kC, kC), basis_index(kC, kC)) = amps.ground_population();
  return rho;
}

Matrix9 partial_transpose(const Matrix9& rho) {
  Matrix9 out;
  for (std::size_t i = 0; i < kQutritDim; ++i)
    for (std::size_t j = 0; j < kQutritDim; ++j)
      for (std::size_t k = 0; k < kQutritDim; ++k)
        for (std::size_t l = 0; l < kQutritDim; ++l)
          out(basis_index(i, j), basis_index(k, l)) = rho(basis_index(k, j), basis_index(i, l));
  return out;
}

namespace {

double off_diagonal_norm(const Matrix9& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < kPairDim; ++i)
    for (std::size_t j = 0; j < kPairDim; ++j)
      if (i != j) sum += std::norm(m(i, j));
  return std::sqrt(sum);
}

// One unitary rotation J in the (p, q) plane with a <- J^H a J, v <- v J,
// chosen so that a(p, q) becomes zero.
void rotate(Matrix9& a, Matrix9& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = apq / r;  // a(p, q) = r * phase

  const double zeta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // J = diag-phase(q) * real rotation.
  const Complex jpp = c;
  const Complex jpq = s;
  const Complex jqp = -s * std::conj(phase);
  const Complex jqq = c * std::conj(phase);

  for (std::size_t k = 0; k < kPairDim; ++k) {
    const Complex akp = a(k, p), akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (std::size_t k = 0; k < kPairDim; ++k) {
    const Complex apk = a(p, k), aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  for (std::size_t k = 0; k < kPairDim; ++k) {
    const Complex vkp = v(k, p), vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

}  // namespace

EigenDecomposition hermitian_eigensystem(const Matrix9& mat) {
  const double scale = mat.frobenius_norm();
  if (mat.hermiticity_defect() > 1e-12 * std::max(scale, 1.0)) {
    throw Error(ErrorCode::NotHermitian, "eigensolver input is not Hermitian");
  }

  Matrix9 a = mat;
  for (std::size_t i = 0; i < kPairDim; ++i) a(i, i) = a(i, i).real();
  Matrix9 v = Matrix9::identity();

  const double target = 1e-12 * scale;
  bool converged = off_diagonal_norm(a) <= target;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < kPairDim; ++p)
      for (std::size_t q = p + 1; q < kPairDim; ++q) rotate(a, v, p, q);
    converged = off_diagonal_norm(a) <= target;
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence, "Jacobi sweep budget exhausted");
  }

  std::array<std::size_t, kPairDim> order;
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  EigenDecomposition out;
  for (std::size_t k = 0; k < kPairDim; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < kPairDim; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::array<double, kPairDim> hermitian_eigenvalues(const Matrix9& mat) {
  return hermitian_eigensystem(mat).values;
}

double negativity(const AmplitudeSet& amps) {
  const Matrix9 pt = partial_transpose(build_density(amps).entries);
  double negative_sum = 0.0;
  for (double lambda : hermitian_eigenvalues(pt))
    if (lambda < 0.0) negative_sum += lambda;
  return std::clamp(-2.0 * negative_sum, 0.0, 1.0 + kNormTolerance) + 0.0;  // no -0
}

double negativity_closed_form(const AmplitudeSet& amps) {
  const Amplitudes& a = amps.amps;
  const double s1 = std::norm(a.c1a) + std::norm(a.c1b);
  const double s2 = std::norm(a.c2a) + std::norm(a.c2b);
  const double p = amps.ground_population();
  return std::sqrt(p * p + 4.0 * s1 * s2) - p;
}

}  // namespace vcavity
