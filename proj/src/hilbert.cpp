#include "qbcharge/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qbcharge {

namespace {

constexpr double kEigHermitianTol = 1e-10;
constexpr double kDensityHermitianTol = 1e-12;
constexpr double kDensityTraceTol = 1e-10;
constexpr double kDensityEigenTol = 1e-10;

std::size_t int_pow(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int k = 0; k < exp; ++k) out *= base;
  return out;
}

void require_square(const OperatorMatrix& op, const char* what) {
  if (op.rows() == 0 || op.rows() != op.cols())
    throw std::invalid_argument(std::string(what) + ": operator must be square with dim >= 1");
}

}  // namespace

ModeLayout::ModeLayout(std::vector<std::string> labels, int cutoff)
    : labels_(std::move(labels)), cutoff_(cutoff), dimension_(0) {
  if (labels_.empty()) throw std::invalid_argument("ModeLayout: at least one mode required");
  if (cutoff_ < 1) throw std::invalid_argument("ModeLayout: cutoff must be positive");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw std::invalid_argument("ModeLayout: mode labels must be unique");
  dimension_ = int_pow(static_cast<std::size_t>(cutoff_), mode_count());
}

int ModeLayout::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::invalid_argument("ModeLayout: unknown mode label '" + label + "'");
  return static_cast<int>(it - labels_.begin());
}

OperatorMatrix destroy_op(int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("destroy_op: cutoff must be >= 2");
  OperatorMatrix a = OperatorMatrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

OperatorMatrix identity_op(std::size_t dim) {
  return OperatorMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

OperatorMatrix embed(const OperatorMatrix& local, int mode_index, const ModeLayout& layout) {
  if (local.rows() != layout.cutoff() || local.cols() != layout.cutoff())
    throw std::invalid_argument("embed: local operator dimension does not match the layout cutoff");
  if (mode_index < 0 || mode_index >= layout.mode_count())
    throw std::invalid_argument("embed: mode index out of range");

  const auto c = static_cast<Eigen::Index>(layout.cutoff());
  const auto left = static_cast<Eigen::Index>(int_pow(layout.cutoff(), mode_index));
  const auto right = static_cast<Eigen::Index>(int_pow(layout.cutoff(), layout.mode_count() - mode_index - 1));
  const auto dim = static_cast<Eigen::Index>(layout.dimension());

  OperatorMatrix out = OperatorMatrix::Zero(dim, dim);
  for (Eigen::Index l = 0; l < left; ++l) {
    for (Eigen::Index a = 0; a < c; ++a) {
      for (Eigen::Index b = 0; b < c; ++b) {
        const Complex v = local(a, b);
        if (v == Complex{}) continue;
        const Eigen::Index row0 = (l * c + a) * right;
        const Eigen::Index col0 = (l * c + b) * right;
        for (Eigen::Index r = 0; r < right; ++r) out(row0 + r, col0 + r) = v;
      }
    }
  }
  return out;
}

EigenSystem eig_hermitian(const OperatorMatrix& op) {
  require_square(op, "eig_hermitian");
  if (hermiticity_defect(op) > kEigHermitianTol)
    throw std::invalid_argument("eig_hermitian: operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(op);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: eigensolver did not converge");
  // SelfAdjointEigenSolver already returns ascending eigenvalues.
  return {solver.eigenvalues(), solver.eigenvectors()};
}

OperatorMatrix partial_trace(const OperatorMatrix& rho, int keep_index, const ModeLayout& layout) {
  if (keep_index < 0 || keep_index >= layout.mode_count())
    throw std::invalid_argument("partial_trace: mode index out of range");
  if (static_cast<std::size_t>(rho.rows()) != layout.dimension() || rho.rows() != rho.cols())
    throw std::invalid_argument("partial_trace: state dimension does not match the layout");

  const auto c = static_cast<Eigen::Index>(layout.cutoff());
  const auto left = static_cast<Eigen::Index>(int_pow(layout.cutoff(), keep_index));
  const auto right = static_cast<Eigen::Index>(int_pow(layout.cutoff(), layout.mode_count() - keep_index - 1));

  OperatorMatrix reduced = OperatorMatrix::Zero(c, c);
  for (Eigen::Index a = 0; a < c; ++a) {
    for (Eigen::Index b = 0; b < c; ++b) {
      Complex acc{};
      for (Eigen::Index l = 0; l < left; ++l) {
        const Eigen::Index row0 = (l * c + a) * right;
        const Eigen::Index col0 = (l * c + b) * right;
        for (Eigen::Index r = 0; r < right; ++r) acc += rho(row0 + r, col0 + r);
      }
      reduced(a, b) = acc;
    }
  }
  return reduced;
}

Complex expect(const OperatorMatrix& rho, const OperatorMatrix& op) {
  if (rho.rows() != op.cols() || rho.cols() != op.rows())
    throw std::invalid_argument("expect: dimension mismatch");
  // Tr(rho op) = sum_ab rho_ab op_ba
  return rho.cwiseProduct(op.transpose()).sum();
}

double hermiticity_defect(const OperatorMatrix& op) {
  if (op.rows() != op.cols()) throw std::invalid_argument("hermiticity_defect: operator must be square");
  if (op.size() == 0) return 0.0;
  return (op - op.adjoint()).cwiseAbs().maxCoeff();
}

double purity(const OperatorMatrix& rho) {
  return expect(rho, rho).real();
}

OperatorMatrix projector(const Eigen::VectorXcd& psi) {
  return psi * psi.adjoint();
}

OperatorMatrix fock_projector(const std::vector<int>& occupations, const ModeLayout& layout) {
  if (static_cast<int>(occupations.size()) != layout.mode_count())
    throw std::invalid_argument("fock_projector: one occupation per mode required");
  std::size_t index = 0;
  for (int n : occupations) {
    if (n < 0 || n >= layout.cutoff()) throw std::invalid_argument("fock_projector: occupation outside the cutoff");
    index = index * static_cast<std::size_t>(layout.cutoff()) + static_cast<std::size_t>(n);
  }
  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  OperatorMatrix out = OperatorMatrix::Zero(dim, dim);
  out(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return out;
}

DensityCheck inspect_density(const OperatorMatrix& rho) {
  require_square(rho, "inspect_density");
  DensityCheck check{};
  check.hermiticity_defect = hermiticity_defect(rho);
  check.trace_error = std::abs(rho.trace() - Complex{1.0, 0.0});
  const OperatorMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(herm, Eigen::EigenvaluesOnly);
  check.min_eigenvalue = solver.eigenvalues().minCoeff();
  return check;
}

void require_density_matrix(const OperatorMatrix& rho, const std::string& context) {
  const DensityCheck check = inspect_density(rho);
  if (check.hermiticity_defect > kDensityHermitianTol)
    throw std::invalid_argument(context + ": density matrix is not Hermitian");
  if (check.trace_error > kDensityTraceTol)
    throw std::invalid_argument(context + ": density matrix trace differs from 1");
  if (check.min_eigenvalue < -kDensityEigenTol)
    throw std::invalid_argument(context + ": density matrix has a negative eigenvalue");
}

}  // namespace qbcharge
