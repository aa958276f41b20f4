#pragma once

#include <array>
#include <cstddef>

#include "vcavity/model.hpp"

namespace vcavity {

inline constexpr std::size_t kQutritDim = 3;
inline constexpr std::size_t kPairDim = kQutritDim * kQutritDim;

/// Dense 9x9 complex matrix on the two-qutrit space. Basis index is
/// 3 * level(atom 1) + level(atom 2) with levels ordered A, B, C, i.e.
/// {AA, AB, AC, BA, BB, BC, CA, CB, CC}.
class Matrix9 {
 public:
  Matrix9() { data_.fill(Complex{}); }

  static Matrix9 identity();

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * kPairDim + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * kPairDim + col]; }

  Complex trace() const;
  Matrix9 adjoint() const;
  double frobenius_norm() const;
  /// Largest |m(i,j) - conj(m(j,i))|.
  double hermiticity_defect() const;

  friend Matrix9 operator*(const Matrix9& lhs, const Matrix9& rhs);
  friend Matrix9 operator-(const Matrix9& lhs, const Matrix9& rhs);
  friend bool operator==(const Matrix9&, const Matrix9&) = default;

 private:
  std::array<Complex, kPairDim * kPairDim> data_;
};

inline constexpr std::size_t basis_index(std::size_t level1, std::size_t level2) {
  return level1 * kQutritDim + level2;
}

/// Reduced two-atom density matrix; the environment enters only through the
/// |C1,C2> population.
struct DensityMatrix9 {
  Matrix9 entries;
};

DensityMatrix9 build_density(const AmplitudeSet& amps);

/// Transpose on the first atom's indices: <i,j|out|k,l> = <k,j|in|i,l>.
Matrix9 partial_transpose(const Matrix9& rho);

struct EigenDecomposition {
  std::array<double, kPairDim> values;  ///< ascending
  Matrix9 vectors;                      ///< column k is the eigenvector for values[k]
};

inline constexpr int kJacobiMaxSweeps = 50;

/// Cyclic complex Jacobi. Throws NotHermitian when the input deviates from
/// Hermitian by more than 1e-12 (relative to its norm), NoConvergence when
/// the sweep budget runs out.
std::array<double, kPairDim> hermitian_eigenvalues(const Matrix9& mat);
EigenDecomposition hermitian_eigensystem(const Matrix9& mat);

/// -2 x (sum of negative eigenvalues of the partial transpose), clamped to
/// [0, 1 + 1e-9].
double negativity(const AmplitudeSet& amps);

/// Same quantity from the block structure of the single-excitation partial
/// transpose: sqrt(p^2 + 4 s1 s2) - p with s_i the excited population of atom i.
double negativity_closed_form(const AmplitudeSet& amps);

}  // namespace vcavity
