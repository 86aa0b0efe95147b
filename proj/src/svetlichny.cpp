#include "svl/svetlichny.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "svl/errors.hpp"
#include "svl/nelder_mead.hpp"

namespace svl {

namespace {

Matrix8cd kron3(const Eigen::Matrix2cd& x, const Eigen::Matrix2cd& y, const Eigen::Matrix2cd& z) {
  const Eigen::Matrix4cd xy = Eigen::kroneckerProduct(x, y);
  return Eigen::kroneckerProduct(xy, z);
}

double expectation(const DensityMatrix& rho, const Matrix8cd& op) {
  return (rho.entries().array() * op.transpose().array()).sum().real();
}

void require_three_qubits(const DensityMatrix& rho) {
  if (rho.num_qubits() != 3) throw InvalidArity("Svetlichny value needs a three-qubit state");
}

// Unit vector orthogonal to `fixed`: x-hat Gram-Schmidt, falling back to y-hat.
Eigen::Vector3d orthogonal_pick(const Eigen::Vector3d& fixed) {
  for (const Eigen::Vector3d& candidate : {Eigen::Vector3d::UnitX().eval(), Eigen::Vector3d::UnitY().eval()}) {
    const Eigen::Vector3d v = candidate - candidate.dot(fixed) * fixed;
    if (v.norm() > 1e-8) return v.normalized();
  }
  return Eigen::Vector3d::UnitZ();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SvetlichnySettings canonical(const SvetlichnySettings& s) {
  auto c = [](const BlochVector& v) { return BlochVector::from_cartesian(v.cartesian()); };
  return {c(s.a), c(s.a_p), c(s.b), c(s.b_p), c(s.c), c(s.c_p)};
}

struct RestartOutcome {
  SvetlichnySettings settings;
  double value = 0.0;
  bool converged = false;
};

RestartOutcome run_restart(const DensityMatrix& rho, const CorrelationTensor3& m, const OptimizerOptions& opts,
                           int restart) {
  std::mt19937_64 rng(splitmix64(opts.seed ^ splitmix64(static_cast<std::uint64_t>(restart))));
  std::uniform_real_distribution<double> cos_theta(-1.0, 1.0);
  std::uniform_real_distribution<double> azimuth(0.0, 2.0 * std::numbers::pi);
  std::vector<double> x0(12);
  for (std::size_t v = 0; v < 6; ++v) {
    x0[2 * v] = std::acos(cos_theta(rng));
    x0[2 * v + 1] = azimuth(rng);
  }
  auto objective = [&m](std::span<const double> x) {
    return -svetlichny_value(m, SvetlichnySettings::from_angles(x.first<12>()));
  };
  NelderMeadOptions nm{opts.max_iter, opts.tol, 0.5};
  const NelderMeadResult r = nelder_mead_minimize(objective, std::move(x0), nm);
  RestartOutcome out;
  out.settings = canonical(SvetlichnySettings::from_angles(std::span<const double, 12>(r.x.data(), 12)));
  out.value = svetlichny_value(rho, out.settings);
  out.converged = r.converged;
  return out;
}

}  // namespace

Eigen::Vector3d BlochVector::cartesian() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

BlochVector BlochVector::from_cartesian(const Eigen::Vector3d& v) {
  const double rxy = std::hypot(v.x(), v.y());
  return {std::atan2(rxy, v.z()), rxy > 0.0 ? std::atan2(v.y(), v.x()) : 0.0};
}

std::array<double, 12> SvetlichnySettings::to_angles() const {
  return {a.theta, a.phi, a_p.theta, a_p.phi, b.theta, b.phi, b_p.theta, b_p.phi, c.theta, c.phi, c_p.theta, c_p.phi};
}

SvetlichnySettings SvetlichnySettings::from_angles(std::span<const double, 12> x) {
  return {{x[0], x[1]}, {x[2], x[3]}, {x[4], x[5]}, {x[6], x[7]}, {x[8], x[9]}, {x[10], x[11]}};
}

Eigen::Matrix2cd observable(const BlochVector& v) {
  const Eigen::Vector3d n = v.cartesian();
  return n.x() * pauli(0) + n.y() * pauli(1) + n.z() * pauli(2);
}

Matrix8cd svetlichny_operator(const SvetlichnySettings& s) {
  const Eigen::Matrix2cd A = observable(s.a), Ap = observable(s.a_p);
  const Eigen::Matrix2cd B = observable(s.b), Bp = observable(s.b_p);
  const Eigen::Matrix2cd C = observable(s.c), Cp = observable(s.c_p);
  const Eigen::Matrix2cd D = B + Bp, Dp = B - Bp;
  return kron3(A, D, C) + kron3(A, Dp, Cp) + kron3(Ap, Dp, C) - kron3(Ap, D, Cp);
}

double svetlichny_value(const DensityMatrix& rho, const SvetlichnySettings& s) {
  require_three_qubits(rho);
  return expectation(rho, svetlichny_operator(s));
}

double svetlichny_value(const CorrelationTensor3& m, const SvetlichnySettings& s) {
  const Eigen::Vector3d a = s.a.cartesian(), ap = s.a_p.cartesian();
  const Eigen::Vector3d b = s.b.cartesian(), bp = s.b_p.cartesian();
  const Eigen::Vector3d c = s.c.cartesian(), cp = s.c_p.cartesian();
  const Eigen::Vector3d d = b + bp, dp = b - bp;
  return m.contract(a, d, c) + m.contract(a, dp, cp) + m.contract(ap, dp, c) - m.contract(ap, d, cp);
}

double svetlichny_value_omega_form(const DensityMatrix& rho, const SvetlichnySettings& s) {
  require_three_qubits(rho);
  const BbDecomposition bb = decompose_bb(s.b, s.b_p);
  const Eigen::Matrix2cd A = observable(s.a), Ap = observable(s.a_p);
  const Eigen::Matrix2cd C = observable(s.c), Cp = observable(s.c_p);
  const Eigen::Matrix2cd D = observable(bb.d), Dp = observable(bb.d_p);
  const double cw = std::cos(bb.omega), sw = std::sin(bb.omega);
  return 2.0 * (cw * expectation(rho, kron3(A, D, C)) + sw * expectation(rho, kron3(A, Dp, Cp)) +
                sw * expectation(rho, kron3(Ap, Dp, C)) - cw * expectation(rho, kron3(Ap, D, Cp)));
}

BbDecomposition decompose_bb(const BlochVector& b, const BlochVector& b_p) {
  const Eigen::Vector3d sum = b.cartesian() + b_p.cartesian();
  const Eigen::Vector3d diff = b.cartesian() - b_p.cartesian();
  const double ns = sum.norm(), nd = diff.norm();
  Eigen::Vector3d d, dp;
  if (ns >= nd) {
    d = sum / ns;
    const Eigen::Vector3d rest = diff - diff.dot(d) * d;
    dp = rest.norm() > 1e-9 ? rest.normalized() : orthogonal_pick(d);
  } else {
    dp = diff / nd;
    const Eigen::Vector3d rest = sum - sum.dot(dp) * dp;
    d = rest.norm() > 1e-9 ? rest.normalized() : orthogonal_pick(dp);
  }
  return {BlochVector::from_cartesian(d), BlochVector::from_cartesian(dp), std::atan2(nd, ns)};
}

double lagrange_max(const std::array<double, 4>& u, const std::array<double, 4>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += u[i] * u[i] + v[i] * v[i];
  return std::sqrt(s);
}

MaximizeResult maximize_svetlichny(const DensityMatrix& rho, const OptimizerOptions& opts) {
  require_three_qubits(rho);
  if (opts.restarts < 1) throw DomainError("restarts must be positive");
  const CorrelationTensor3 m = correlation_tensor(rho);

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(opts.restarts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next.fetch_add(1); r < opts.restarts; r = next.fetch_add(1)) {
      outcomes[static_cast<std::size_t>(r)] = run_restart(rho, m, opts, r);
    }
  };
  int threads = opts.threads > 0 ? opts.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, opts.restarts);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  // Lowest index wins ties, so the result does not depend on scheduling.
  MaximizeResult best;
  for (int r = 0; r < opts.restarts; ++r) {
    const auto& o = outcomes[static_cast<std::size_t>(r)];
    if (best.best_restart < 0 || o.value > best.value) {
      best.value = o.value;
      best.argmax = o.settings;
      best.converged = o.converged;
      best.best_restart = r;
    }
  }
  return best;
}

}  // namespace svl
