#include "photodet/spectrum.hpp"

#include "photodet/eigensolver.hpp"
#include "photodet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace photodet {

namespace {

using Index = Eigen::Index;

constexpr double kParityPurity = 0.999;
constexpr double kSectorLeak = 1e-8;

// First component whose magnitude is within a relative 1e-9 of the largest;
// the tolerance keeps the choice stable against eigensolver noise.
Index dominant_component(const Eigen::Ref<const Vector>& v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= peak * (1.0 - 1e-9)) return i;
  }
  return 0;
}

void fix_phase(Eigen::Ref<Vector> v) {
  const Complex c = v(dominant_component(v));
  if (std::abs(c) > 0.0) v *= std::conj(c) / std::abs(c);
}

double parity_expectation(const Matrix& parity, const Eigen::Ref<const Vector>& v) {
  return v.dot(parity * v).real();
}

// Orders the columns in [first, last) by (parity desc, dominant index asc).
void order_cluster(EigenSystem& es, std::size_t first, std::size_t last) {
  std::vector<std::size_t> perm(last - first);
  std::iota(perm.begin(), perm.end(), first);
  std::vector<Index> dom(es.dim());
  for (std::size_t k = first; k < last; ++k) dom[k] = dominant_component(es.states.col(static_cast<Index>(k)));
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (es.has_parity() && es.parity[a] != es.parity[b]) return es.parity[a] > es.parity[b];
    return dom[a] < dom[b];
  });
  const Matrix block = es.states.middleCols(static_cast<Index>(first), static_cast<Index>(last - first));
  std::vector<int> labels = es.parity;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    es.states.col(static_cast<Index>(first + i)) = block.col(static_cast<Index>(perm[i] - first));
    if (es.has_parity()) es.parity[first + i] = labels[perm[i]];
  }
}

}  // namespace

StateVector EigenSystem::state(std::size_t k) const {
  if (k >= dim()) throw std::out_of_range("eigenstate index out of range");
  return StateVector(source_space, states.col(static_cast<Index>(k)));
}

std::vector<std::pair<std::size_t, std::size_t>> degenerate_clusters(const RealVector& energies,
                                                                     double tol) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto n = static_cast<std::size_t>(energies.size());
  std::size_t first = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k == n || energies(static_cast<Index>(k)) - energies(static_cast<Index>(k - 1)) > tol) {
      out.emplace_back(first, k);
      first = k;
    }
  }
  return out;
}

EigenSystem diagonalize(const OperatorMatrix& hamiltonian, double degeneracy_tol,
                        const OperatorMatrix* parity) {
  const double scale = std::max(1.0, hamiltonian.elements().cwiseAbs().maxCoeff());
  if (hamiltonian.hermiticity_defect() > kHermitianTol * scale) {
    throw ValidationError("diagonalize: Hamiltonian is not Hermitian");
  }
  if (!(degeneracy_tol > 0.0)) throw ParameterError("degeneracy tolerance must be positive");

  auto eig = hermitian_eigen(hamiltonian.elements());
  EigenSystem es{hamiltonian.space(), std::move(eig.values), std::move(eig.vectors), {}, degeneracy_tol};
  for (Index k = 0; k < es.states.cols(); ++k) fix_phase(es.states.col(k));
  if (parity != nullptr) return label_parity(std::move(es), *parity);
  for (const auto& [first, last] : degenerate_clusters(es.energies, degeneracy_tol)) {
    if (last - first > 1) order_cluster(es, first, last);
  }
  return es;
}

EigenSystem diagonalize(const ModelSystem& model) {
  const double tol = kDegeneracyRel * model.energy_scale;
  return diagonalize(model.hamiltonian, tol, model.parity_op ? &*model.parity_op : nullptr);
}

EigenSystem label_parity(EigenSystem es, const OperatorMatrix& parity) {
  if (!(parity.space() == es.source_space)) throw IncompatibleSpaceError("parity operator space mismatch");
  const Matrix& p = parity.elements();
  const auto clusters = degenerate_clusters(es.energies, es.degeneracy_tol);

  // Commutation with H <=> V^dag P V is block diagonal over degenerate clusters.
  const Matrix projected = es.states.adjoint() * p * es.states;
  std::vector<std::size_t> cluster_of(es.dim());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (std::size_t k = clusters[c].first; k < clusters[c].second; ++k) cluster_of[k] = c;
  }
  for (Index j = 0; j < projected.cols(); ++j) {
    for (Index i = 0; i < projected.rows(); ++i) {
      if (cluster_of[static_cast<std::size_t>(i)] != cluster_of[static_cast<std::size_t>(j)] &&
          std::abs(projected(i, j)) > kSectorLeak) {
        throw ValidationError("parity operator does not commute with the Hamiltonian");
      }
    }
  }

  for (const auto& [first, last] : clusters) {
    const auto width = static_cast<Index>(last - first);
    if (width == 1) continue;
    auto block = es.states.middleCols(static_cast<Index>(first), width);
    bool mixed = false;
    for (Index k = 0; k < width; ++k) {
      if (std::abs(parity_expectation(p, block.col(k))) <= kParityPurity) mixed = true;
    }
    if (!mixed) continue;
    const Matrix sub = projected.block(static_cast<Index>(first), static_cast<Index>(first), width, width);
    const auto rot = hermitian_eigen(0.5 * (sub + sub.adjoint()));
    block = Matrix(block * rot.vectors);
    for (Index k = 0; k < width; ++k) fix_phase(block.col(k));
  }

  es.parity.assign(es.dim(), 0);
  for (std::size_t k = 0; k < es.dim(); ++k) {
    const double expect = parity_expectation(p, es.states.col(static_cast<Index>(k)));
    if (std::abs(expect) <= kParityPurity) {
      throw ValidationError("eigenvector " + std::to_string(k) + " has mixed parity (" +
                            std::to_string(expect) + ")");
    }
    es.parity[k] = expect > 0.0 ? 1 : -1;
  }
  for (const auto& [first, last] : clusters) {
    if (last - first > 1) order_cluster(es, first, last);
  }
  return es;
}

double max_relative_residual(const EigenSystem& es, const OperatorMatrix& hamiltonian) {
  const Matrix hv = hamiltonian.elements() * es.states;
  const double fro = hamiltonian.elements().norm();
  double worst = 0.0;
  for (Index k = 0; k < hv.cols(); ++k) {
    worst = std::max(worst, (hv.col(k) - es.energies(k) * es.states.col(k)).norm());
  }
  return fro > 0.0 ? worst / fro : worst;
}

double orthonormality_defect(const EigenSystem& es) {
  const auto n = static_cast<Index>(es.dim());
  return (es.states.adjoint() * es.states - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

Matrix reconstruct_hamiltonian(const EigenSystem& es) {
  return es.states * es.energies.cast<Complex>().asDiagonal() * es.states.adjoint();
}

double ConvergenceReport::final_drift() const {
  if (drifts.empty()) return std::numeric_limits<double>::infinity();
  return *std::max_element(drifts.back().begin(), drifts.back().end());
}

ConvergenceReport convergence_check(const ModelBuilder& builder, std::size_t base_truncation,
                                    std::size_t levels, double tol, std::size_t max_dim) {
  if (base_truncation < 4) throw ParameterError("convergence_check: base truncation must be >= 4");
  if (levels == 0) throw ParameterError("convergence_check: need at least one level");
  if (!(tol > 0.0)) throw ParameterError("convergence_check: tolerance must be positive");

  ConvergenceReport report;
  report.levels = levels;
  report.tolerance = tol;

  std::vector<double> previous;
  for (std::size_t n = base_truncation;; n *= 2) {
    const ModelSystem model = builder(n);
    if (model.dim() > max_dim) break;
    if (model.dim() < levels) throw ParameterError("convergence_check: more levels than basis states");
    const EigenSystem es = diagonalize(model.hamiltonian, kDegeneracyRel * model.energy_scale);
    std::vector<double> current(es.energies.data(), es.energies.data() + levels);
    report.truncations.push_back(n);
    report.lowest_energies = current;
    if (!previous.empty()) {
      std::vector<double> drift(levels);
      for (std::size_t k = 0; k < levels; ++k) {
        drift[k] = std::abs(current[k] - previous[k]) / std::max(std::abs(current[k]), model.energy_scale);
      }
      report.drifts.push_back(drift);
      if (*std::max_element(drift.begin(), drift.end()) < tol) {
        report.converged = true;
        report.recommended_truncation = n / 2;
        return report;
      }
    }
    previous = std::move(current);
  }
  report.converged = false;
  // Best available guess: twice the largest truncation that fit under the cap.
  report.recommended_truncation = report.truncations.empty() ? base_truncation * 2 : report.truncations.back() * 2;
  return report;
}

}  // namespace photodet
