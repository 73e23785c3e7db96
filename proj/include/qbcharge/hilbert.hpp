#pragma once

// Truncated Fock-space operator algebra.
//
// Every mode shares one Fock cutoff. Multimode operators are ordered with
// mode 0 as the leftmost Kronecker factor, so the basis index of
// |n_0, n_1, ..., n_{M-1}> is sum_k n_k * cutoff^(M-1-k).

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace qbcharge {

using Complex = std::complex<double>;

/// Dense complex square matrix: operators, Hamiltonians and density matrices.
using OperatorMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Labels and Fock cutoff for a set of bosonic modes sharing one truncation.
class ModeLayout {
public:
  ModeLayout(std::vector<std::string> labels, int cutoff);

  int mode_count() const { return static_cast<int>(labels_.size()); }
  int cutoff() const { return cutoff_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// cutoff^mode_count
  std::size_t dimension() const { return dimension_; }

  /// Index of the mode with the given label; throws std::invalid_argument.
  int index_of(const std::string& label) const;

private:
  std::vector<std::string> labels_;
  int cutoff_;
  std::size_t dimension_;
};

/// Eigen-decomposition of a Hermitian operator. Eigenvalues ascending,
/// eigenvectors stored as the columns of `vectors`.
struct EigenSystem {
  RealVector values;
  OperatorMatrix vectors;
};

OperatorMatrix destroy_op(int cutoff);

OperatorMatrix identity_op(std::size_t dim);

/// I x ... x local x ... x I with `local` acting on `mode_index`.
OperatorMatrix embed(const OperatorMatrix& local, int mode_index, const ModeLayout& layout);

/// Throws std::invalid_argument if `op` is not Hermitian within 1e-10 entrywise.
EigenSystem eig_hermitian(const OperatorMatrix& op);

/// Reduced density matrix of a single mode.
OperatorMatrix partial_trace(const OperatorMatrix& rho, int keep_index, const ModeLayout& layout);

/// Tr(rho * op)
Complex expect(const OperatorMatrix& rho, const OperatorMatrix& op);

/// max_ij |A_ij - conj(A_ji)|
double hermiticity_defect(const OperatorMatrix& op);

/// Tr(rho^2), real part.
double purity(const OperatorMatrix& rho);

/// Pure-state projector |psi><psi| for a normalized state vector.
OperatorMatrix projector(const Eigen::VectorXcd& psi);

/// Fock basis projector |n_0 ... n_{M-1}><n_0 ... n_{M-1}|.
OperatorMatrix fock_projector(const std::vector<int>& occupations, const ModeLayout& layout);

struct DensityCheck {
  double hermiticity_defect;
  double trace_error;
  double min_eigenvalue;
};

DensityCheck inspect_density(const OperatorMatrix& rho);

/// Throws std::invalid_argument unless rho is Hermitian within 1e-12,
/// has unit trace within 1e-10 and no eigenvalue below -1e-10.
void require_density_matrix(const OperatorMatrix& rho, const std::string& context);

}  // namespace qbcharge
