#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "svl/tolerances.hpp"

namespace svl {

using Complex = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;

// Ordered list of qubit positions. Qubit 0 is the leftmost (most significant)
// symbol of a computational-basis label, so |1000> has qubit 0 excited.
using QubitList = std::vector<int>;

inline constexpr int kMaxPureQubits = 24;
inline constexpr int kMaxDensityQubits = 12;

// Bit of `qubit` inside basis index `index` of an n-qubit register.
constexpr int qubit_bit(std::size_t index, int qubit, int num_qubits) {
  return static_cast<int>((index >> (num_qubits - 1 - qubit)) & 1U);
}

// Basis index for a label such as "0110". Throws DomainError on bad characters.
std::size_t basis_index(std::string_view bits);

class PureState {
 public:
  // Validates length == 2^num_qubits and unit norm within tolerance.
  PureState(int num_qubits, Amplitudes amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::string_view bits) const;

 private:
  int num_qubits_;
  Amplitudes amplitudes_;
};

class DensityMatrix {
 public:
  // Checks hermiticity, unit trace and positivity against kTolerances.
  DensityMatrix(int num_qubits, Eigen::MatrixXcd entries);

  static DensityMatrix maximally_mixed(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Complex operator()(std::size_t row, std::size_t col) const { return entries_(row, col); }

  double purity() const;

 private:
  struct Unchecked {};
  DensityMatrix(Unchecked, int num_qubits, Eigen::MatrixXcd entries);

  int num_qubits_;
  Eigen::MatrixXcd entries_;

  friend DensityMatrix to_density(const PureState&);
  friend DensityMatrix partial_trace(const DensityMatrix&, const QubitList&);
  friend DensityMatrix reduced_density(const PureState&, const QubitList&);
};

// alpha|1000> + beta|0100> + gamma|0010> + delta|0001> + lambda|0000>
struct WClassCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double lambda = 0.0;

  double norm_squared() const {
    return alpha * alpha + beta * beta + gamma * gamma + delta * delta + lambda * lambda;
  }
};

// Throws InvalidNormalization unless the squares sum to one within `tol`.
void require_normalized(const WClassCoefficients& w, double tol = kTolerances.coefficient_norm);

PureState make_gghz(int n, double theta);
PureState make_ms(int n, double theta);
PureState make_wclass(const WClassCoefficients& w);

// Equal superposition of every arrangement of m zeros and n-m ones, i.e. the
// basis states with exactly n-m excitations. make_dicke(4, 3) is the W state.
PureState make_dicke(int n, int m);

// Raw amplitudes; the norm must be one within the coefficient tolerance and is
// then renormalised exactly.
PureState make_custom(int n, std::vector<Complex> amplitudes);

DensityMatrix to_density(const PureState& psi);

// Reduced state on `keep` (strictly increasing, non-empty, in range), order preserved.
DensityMatrix partial_trace(const DensityMatrix& rho, const QubitList& keep);

// Same as partial_trace(to_density(psi), keep) without forming the full projector.
DensityMatrix reduced_density(const PureState& psi, const QubitList& keep);

// All strictly increasing k-subsets of {0..n-1}, lexicographic.
std::vector<QubitList> qubit_subsets(int n, int k);

}  // namespace svl
