#include "svl/qstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "svl/errors.hpp"

namespace svl {

namespace {

void require_qubit_count(int n, int max_qubits) {
  if (n < 1 || n > max_qubits) {
    throw InvalidArity("qubit count " + std::to_string(n) + " outside [1, " +
                       std::to_string(max_qubits) + "]");
  }
}

void require_keep(const QubitList& keep, int num_qubits) {
  if (keep.empty()) throw IndexError("keep list is empty");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= num_qubits) {
      throw IndexError("qubit " + std::to_string(keep[i]) + " out of range for " +
                       std::to_string(num_qubits) + " qubits");
    }
    if (i > 0 && keep[i] <= keep[i - 1]) throw IndexError("keep list must be strictly increasing");
  }
}

// Full-register basis index contributed by each value of a sub-register.
std::vector<std::size_t> spread_indices(const QubitList& qubits, int num_qubits) {
  const std::size_t k = qubits.size();
  std::vector<std::size_t> out(std::size_t{1} << k, 0);
  for (std::size_t local = 0; local < out.size(); ++local) {
    std::size_t full = 0;
    for (std::size_t pos = 0; pos < k; ++pos) {
      if ((local >> (k - 1 - pos)) & 1U) full |= std::size_t{1} << (num_qubits - 1 - qubits[pos]);
    }
    out[local] = full;
  }
  return out;
}

QubitList complement(const QubitList& keep, int num_qubits) {
  QubitList rest;
  for (int q = 0; q < num_qubits; ++q) {
    if (!std::binary_search(keep.begin(), keep.end(), q)) rest.push_back(q);
  }
  return rest;
}

}  // namespace

std::size_t basis_index(std::string_view bits) {
  std::size_t index = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw DomainError("basis label must contain only 0/1");
    index = (index << 1) | static_cast<std::size_t>(ch - '0');
  }
  return index;
}

PureState::PureState(int num_qubits, Amplitudes amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  require_qubit_count(num_qubits, kMaxPureQubits);
  if (static_cast<std::size_t>(amplitudes_.size()) != (std::size_t{1} << num_qubits)) {
    throw InvalidArity("amplitude vector length does not match 2^num_qubits");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kTolerances.structural) {
    throw InvalidNormalization("state vector is not normalised");
  }
}

Complex PureState::amplitude(std::string_view bits) const {
  if (static_cast<int>(bits.size()) != num_qubits_) throw InvalidArity("basis label length mismatch");
  return amplitudes_(static_cast<Eigen::Index>(basis_index(bits)));
}

DensityMatrix::DensityMatrix(Unchecked, int num_qubits, Eigen::MatrixXcd entries)
    : num_qubits_(num_qubits), entries_(std::move(entries)) {}

DensityMatrix::DensityMatrix(int num_qubits, Eigen::MatrixXcd entries)
    : num_qubits_(num_qubits), entries_(std::move(entries)) {
  require_qubit_count(num_qubits, kMaxDensityQubits);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw InvalidArity("density matrix size does not match 2^num_qubits");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kTolerances.structural) {
    throw DomainError("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - Complex{1.0, 0.0}) > kTolerances.structural) {
    throw DomainError("density matrix does not have unit trace");
  }
  const Eigen::MatrixXcd herm = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kTolerances.psd) {
    throw DomainError("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  require_qubit_count(num_qubits, kMaxDensityQubits);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
  return DensityMatrix(Unchecked{}, num_qubits, std::move(m));
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

void require_normalized(const WClassCoefficients& w, double tol) {
  if (std::abs(w.norm_squared() - 1.0) > tol) {
    throw InvalidNormalization("W-class coefficients must square-sum to 1 (got " +
                               std::to_string(w.norm_squared()) + ")");
  }
}

PureState make_gghz(int n, double theta) {
  if (n < 3) throw InvalidArity("GGHZ state needs n >= 3");
  require_qubit_count(n, kMaxPureQubits);
  Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  amps(0) = std::cos(theta);
  amps(amps.size() - 1) = std::sin(theta);
  return PureState(n, std::move(amps));
}

PureState make_ms(int n, double theta) {
  if (n < 4) throw InvalidArity("MS state needs n >= 4");
  require_qubit_count(n, kMaxPureQubits);
  Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  const double h = 1.0 / std::sqrt(2.0);
  amps(0) = h;
  amps(amps.size() - 2) = h * std::cos(theta);
  amps(amps.size() - 1) = h * std::sin(theta);
  return PureState(n, std::move(amps));
}

PureState make_wclass(const WClassCoefficients& w) {
  require_normalized(w);
  Amplitudes amps = Amplitudes::Zero(16);
  amps(static_cast<Eigen::Index>(basis_index("1000"))) = w.alpha;
  amps(static_cast<Eigen::Index>(basis_index("0100"))) = w.beta;
  amps(static_cast<Eigen::Index>(basis_index("0010"))) = w.gamma;
  amps(static_cast<Eigen::Index>(basis_index("0001"))) = w.delta;
  amps(static_cast<Eigen::Index>(basis_index("0000"))) = w.lambda;
  amps /= amps.norm();
  return PureState(4, std::move(amps));
}

PureState make_dicke(int n, int m) {
  require_qubit_count(n, kMaxPureQubits);
  if (m < 0 || m > n) throw InvalidArity("Dicke state needs 0 <= m <= n");
  const int ones = n - m;
  Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    if (std::popcount(static_cast<std::size_t>(i)) == ones) {
      amps(i) = 1.0;
      ++count;
    }
  }
  amps /= std::sqrt(static_cast<double>(count));
  return PureState(n, std::move(amps));
}

PureState make_custom(int n, std::vector<Complex> amplitudes) {
  require_qubit_count(n, kMaxPureQubits);
  if (amplitudes.size() != (std::size_t{1} << n)) {
    throw InvalidArity("CUSTOM state needs 2^n amplitudes");
  }
  Amplitudes amps = Eigen::Map<Amplitudes>(amplitudes.data(), static_cast<Eigen::Index>(amplitudes.size()));
  const double norm = amps.norm();
  if (std::abs(norm * norm - 1.0) > kTolerances.coefficient_norm) {
    throw InvalidNormalization("CUSTOM amplitudes are not normalised");
  }
  amps /= norm;
  return PureState(n, std::move(amps));
}

DensityMatrix to_density(const PureState& psi) {
  const Amplitudes& a = psi.amplitudes();
  return DensityMatrix(DensityMatrix::Unchecked{}, psi.num_qubits(), a * a.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitList& keep) {
  const int n = rho.num_qubits();
  require_keep(keep, n);
  const auto kept = spread_indices(keep, n);
  const auto rest = spread_indices(complement(keep, n), n);
  const auto dim = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      Complex sum{0.0, 0.0};
      for (std::size_t t : rest) {
        sum += rho.entries_(static_cast<Eigen::Index>(kept[i] | t), static_cast<Eigen::Index>(kept[j] | t));
      }
      out(i, j) = sum;
    }
  }
  return DensityMatrix(DensityMatrix::Unchecked{}, static_cast<int>(keep.size()), std::move(out));
}

DensityMatrix reduced_density(const PureState& psi, const QubitList& keep) {
  const int n = psi.num_qubits();
  require_keep(keep, n);
  if (static_cast<int>(keep.size()) > kMaxDensityQubits) throw InvalidArity("reduction too large for dense storage");
  const auto kept = spread_indices(keep, n);
  const auto rest = spread_indices(complement(keep, n), n);
  Eigen::MatrixXcd block(static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(rest.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t t = 0; t < rest.size(); ++t) {
      block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) =
          psi.amplitudes()(static_cast<Eigen::Index>(kept[i] | rest[t]));
    }
  }
  Eigen::MatrixXcd out = block * block.adjoint();
  return DensityMatrix(DensityMatrix::Unchecked{}, static_cast<int>(keep.size()), std::move(out));
}

std::vector<QubitList> qubit_subsets(int n, int k) {
  std::vector<QubitList> out;
  if (k < 0 || k > n) return out;
  QubitList current(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) current[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(current);
    int pos = k - 1;
    while (pos >= 0 && current[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++current[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i) current[static_cast<std::size_t>(i)] = current[static_cast<std::size_t>(i - 1)] + 1;
  }
  return out;
}

}  // namespace svl
