#pragma once

// Dense complex Hermitian linear algebra used throughout the simulator.
// All energies are angular frequencies with hbar = 1.

#include <complex>

#include <Eigen/Dense>

namespace cavlat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance for accepting a matrix as Hermitian (scaled by max |entry|).
inline constexpr double kHermitianTolerance = 1e-12;

/// Unitarity tolerance, scaled by the dimension.
inline constexpr double kUnitaryTolerance = 1e-12;

/// max_ij |A_ij - conj(A_ji)|.
double hermitian_violation(const ComplexMatrix& m);

/// max_ij |A_ij + conj(A_ji)|.
double antihermitian_violation(const ComplexMatrix& m);

/// Square complex matrix validated to be Hermitian on construction.
///
/// Entries within tolerance of Hermitian are accepted as-is; nothing is
/// symmetrised behind the caller's back.
class HermitianMatrix {
 public:
  /// Throws HermitianityError when the input is not Hermitian within
  /// kHermitianTolerance * max|entry|, ValidationError when not square or empty.
  explicit HermitianMatrix(ComplexMatrix entries);

  static HermitianMatrix from_real(const RealMatrix& entries);
  static HermitianMatrix identity(Eigen::Index dim);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  double frobenius_norm() const { return m_.norm(); }
  /// Diagonal entries (real by hermiticity).
  RealVector diagonal() const { return m_.diagonal().real(); }
  double trace() const { return m_.diagonal().real().sum(); }

 private:
  ComplexMatrix m_;
};

/// Square complex matrix validated to satisfy ||U^dagger U - I||_F < 1e-12 dim.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(ComplexMatrix entries);

  static UnitaryMatrix identity(Eigen::Index dim);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  /// ||U^dagger U - I||_F.
  double unitarity_defect() const;

 private:
  ComplexMatrix m_;
};

/// Eigenvalues ascending; eigenvector i is column i.
struct Spectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  Eigen::Index size() const noexcept { return eigenvalues.size(); }
  /// V diag(lambda) V^dagger.
  ComplexMatrix reconstruct() const;
};

/// Full eigendecomposition. Deterministic on a fixed platform.
Spectrum eig_hermitian(const HermitianMatrix& h);

/// Validating overload; throws HermitianityError carrying the violation.
Spectrum eig_hermitian(const ComplexMatrix& h);

/// exp(M) for anti-Hermitian M, via the spectral decomposition of iM.
UnitaryMatrix expm_antihermitian(const ComplexMatrix& generator);

/// U^dagger H U.
HermitianMatrix similarity_transform(const HermitianMatrix& h, const UnitaryMatrix& u);

/// Projector onto the span of eigenvectors [first, first + count).
ComplexMatrix spectral_projector(const Spectrum& s, Eigen::Index first, Eigen::Index count);

}  // namespace cavlat
