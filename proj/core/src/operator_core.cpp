#include "cavlat/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cavlat/errors.hpp"

namespace cavlat {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw ValidationError(os.str());
  }
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

double hermitian_violation(const ComplexMatrix& m) {
  require_square(m, "hermitian_violation");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double antihermitian_violation(const ComplexMatrix& m) {
  require_square(m, "antihermitian_violation");
  return (m + m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(ComplexMatrix entries) : m_(std::move(entries)) {
  require_square(m_, "HermitianMatrix");
  const double violation = hermitian_violation(m_);
  if (violation > kHermitianTolerance * max_abs(m_)) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max |A_ij - conj(A_ji)| = " << violation;
    throw HermitianityError(os.str(), violation);
  }
}

HermitianMatrix HermitianMatrix::from_real(const RealMatrix& entries) {
  return HermitianMatrix(entries.cast<Complex>());
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return HermitianMatrix(ComplexMatrix::Identity(dim, dim));
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix entries) : m_(std::move(entries)) {
  require_square(m_, "UnitaryMatrix");
  const double defect = unitarity_defect();
  if (!(defect < kUnitaryTolerance * static_cast<double>(dim()))) {
    std::ostringstream os;
    os << "matrix is not unitary: ||U^dagger U - I||_F = " << defect;
    throw ValidationError(os.str());
  }
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
  return UnitaryMatrix(ComplexMatrix::Identity(dim, dim));
}

double UnitaryMatrix::unitarity_defect() const {
  return (m_.adjoint() * m_ - ComplexMatrix::Identity(dim(), dim())).norm();
}

ComplexMatrix Spectrum::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

Spectrum eig_hermitian(const HermitianMatrix& h) {
  // Eigen reads only the lower triangle; the upper triangle has already been
  // checked against it in the HermitianMatrix constructor.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConsistencyError("eig_hermitian: eigensolver did not converge");
  }
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

Spectrum eig_hermitian(const ComplexMatrix& h) { return eig_hermitian(HermitianMatrix(h)); }

UnitaryMatrix expm_antihermitian(const ComplexMatrix& generator) {
  require_square(generator, "expm_antihermitian");
  const double scale = generator.norm();
  const double violation = (generator + generator.adjoint()).norm();
  if (violation > kHermitianTolerance * scale) {
    std::ostringstream os;
    os << "expm_antihermitian: generator is not anti-Hermitian, ||M + M^dagger||_F = " << violation;
    throw HermitianityError(os.str(), violation);
  }
  const Eigen::Index dim = generator.rows();
  if (scale == 0.0) {
    return UnitaryMatrix::identity(dim);
  }

  // M = -i K with K = iM Hermitian, so exp(M) = V exp(-i lambda) V^dagger.
  ComplexMatrix k = Complex(0.0, 1.0) * generator;
  k = 0.5 * (k + k.adjoint());
  const Spectrum s = eig_hermitian(HermitianMatrix(std::move(k)));
  ComplexVector phases(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    phases(i) = std::polar(1.0, -s.eigenvalues(i));
  }
  return UnitaryMatrix(s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint());
}

HermitianMatrix similarity_transform(const HermitianMatrix& h, const UnitaryMatrix& u) {
  if (h.dim() != u.dim()) {
    std::ostringstream os;
    os << "similarity_transform: dimension mismatch (" << h.dim() << " vs " << u.dim() << ")";
    throw ValidationError(os.str());
  }
  ComplexMatrix t = u.matrix().adjoint() * h.matrix() * u.matrix();
  // Remove the O(eps) anti-Hermitian rounding residue of the triple product.
  t = 0.5 * (t + t.adjoint());
  return HermitianMatrix(std::move(t));
}

ComplexMatrix spectral_projector(const Spectrum& s, Eigen::Index first, Eigen::Index count) {
  if (first < 0 || count < 0 || first + count > s.size()) {
    throw ValidationError("spectral_projector: eigenvector range out of bounds");
  }
  const auto block = s.eigenvectors.middleCols(first, count);
  return block * block.adjoint();
}

}  // namespace cavlat
