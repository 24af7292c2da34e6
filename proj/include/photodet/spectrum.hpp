#pragma once

// Energy-ordered eigendecomposition with reproducible conventions:
//  * energies ascending;
//  * inside a degenerate cluster (gaps <= degeneracy_tol) vectors are
//    rotated into the parity eigenbasis when a parity operator is known,
//    then ordered by parity (+1 first) and by the index of their
//    largest-magnitude amplitude;
//  * each vector's largest-magnitude amplitude is real and positive.

#include "photodet/hilbert.hpp"
#include "photodet/models.hpp"

#include <functional>
#include <memory>
#include <utility>
#include <vector>

namespace photodet {

struct EigenSystem {
  HilbertSpace source_space;
  RealVector energies;
  Matrix states;           // column k is |E_k>
  std::vector<int> parity; // empty when unlabeled
  double degeneracy_tol = 1e-9;

  std::size_t dim() const { return static_cast<std::size_t>(energies.size()); }
  bool has_parity() const { return !parity.empty(); }
  StateVector state(std::size_t k) const;
  double transition_frequency(std::size_t upper, std::size_t lower) const {
    return energies(static_cast<Eigen::Index>(upper)) - energies(static_cast<Eigen::Index>(lower));
  }
};

using EigenSystemPtr = std::shared_ptr<const EigenSystem>;

/// Relative factor applied to the model's energy scale for degeneracy clustering.
inline constexpr double kDegeneracyRel = 1e-9;

EigenSystem diagonalize(const ModelSystem& model);
EigenSystem diagonalize(const OperatorMatrix& hamiltonian, double degeneracy_tol,
                        const OperatorMatrix* parity = nullptr);

/// Attaches parity labels, re-diagonalizing degenerate clusters in the parity
/// eigenbasis where their vectors mix sectors. Throws ValidationError if the
/// parity operator does not commute with the Hamiltonian.
EigenSystem label_parity(EigenSystem es, const OperatorMatrix& parity);

/// Half-open index ranges [first, last) of degenerate clusters.
std::vector<std::pair<std::size_t, std::size_t>> degenerate_clusters(const RealVector& energies,
                                                                     double tol);

// Invariant diagnostics.
double max_relative_residual(const EigenSystem& es, const OperatorMatrix& hamiltonian);
double orthonormality_defect(const EigenSystem& es);
Matrix reconstruct_hamiltonian(const EigenSystem& es);

struct ConvergenceReport {
  std::vector<std::size_t> truncations;
  // drifts[s][k]: relative change of level k between truncations[s] and truncations[s+1].
  std::vector<std::vector<double>> drifts;
  std::vector<double> lowest_energies;  // at the last truncation tested
  std::size_t levels = 0;
  double tolerance = 0.0;
  bool converged = false;
  std::size_t recommended_truncation = 0;

  double final_drift() const;
};

using ModelBuilder = std::function<ModelSystem(std::size_t truncation)>;

inline constexpr std::size_t kDefaultMaxDim = 4096;

/// Doubles the truncation from base_truncation until the lowest `levels`
/// energies change by less than `tol` (relative to max(|E|, energy scale))
/// between successive doublings. Stops unconverged once the next doubling
/// would exceed max_dim.
ConvergenceReport convergence_check(const ModelBuilder& builder, std::size_t base_truncation,
                                    std::size_t levels, double tol,
                                    std::size_t max_dim = kDefaultMaxDim);

}  // namespace photodet
