// Acceptance suite: one line per criterion, "PASS" or "FAIL" plus the numbers
// behind the verdict. Run all criteria, or one with --criterion N.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "svl/correlations.hpp"
#include "svl/qstate.hpp"
#include "svl/svetlichny.hpp"
#include "svl/tradeoff.hpp"

using namespace svl;
using std::numbers::pi;

namespace {

namespace tol {
constexpr double kGhzValue = 1e-6;
constexpr double kGhzSeconds = 5.0;
constexpr double kLocalBound = 1e-6;
constexpr double kTheorem1 = 1e-6;
constexpr double kFigure1 = 1e-9;
constexpr double kTheorem2 = 1e-6;
constexpr double kC4 = 1e-9;
constexpr double kFExact = 1e-12;
constexpr double kFSearch = 1e-12;
constexpr double kFigure3 = 1e-9;
constexpr double kEqn3p = 1e-6;
constexpr double kGridFloor = 1e-9;
constexpr double kLambdaCeiling = 1e-6;
constexpr double kGridSeconds = 600.0;
constexpr double kLagrange = 1e-9;
constexpr double kChsh = 1e-9;
}  // namespace tol

const double kSqrt2 = std::sqrt(2.0);

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v, int digits = 12) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

std::vector<double> closed_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1));
  return out;
}

WClassCoefficients random_w(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  WClassCoefficients w{n01(rng), n01(rng), n01(rng), n01(rng), 0.0};
  const double s = std::sqrt(w.norm_squared());
  return {w.alpha / s, w.beta / s, w.gamma / s, w.delta / s, 0.0};
}

Outcome ghz_maximum() {
  const auto rho = to_density(make_gghz(3, pi / 4));
  OptimizerOptions opts;
  opts.restarts = 64;
  Stopwatch sw;
  const auto r = maximize_svetlichny(rho, opts);
  const double t = sw.seconds();
  const double err = std::abs(r.value - 4 * kSqrt2);
  return {err <= tol::kGhzValue && t <= tol::kGhzSeconds,
          "value=" + fmt(r.value, 16) + " |err|=" + fmt(err, 3) + " time=" + fmt(t, 3) + "s"};
}

std::vector<TradeoffReport> gghz_reports() {
  std::vector<TradeoffReport> out;
  for (double th : closed_grid(0.0, pi / 2, 50)) out.push_back(verify_tradeoff(StateSpec{GghzParams{4, th}}, Theorem::Theorem1));
  return out;
}

Outcome gghz_reductions() {
  double worst = -1.0;
  int bad = 0;
  for (const auto& r : gghz_reports())
    for (const auto& red : r.per_reduction) {
      worst = std::max(worst, red.value);
      if (red.value > 4 + tol::kLocalBound) ++bad;
    }
  return {bad == 0, "200 reductions, max value=" + fmt(worst) + " violations=" + std::to_string(bad)};
}

Outcome theorem1() {
  double worst = -1e9;
  int bad = 0;
  for (const auto& r : gghz_reports()) {
    const double excess = r.lhs - bound_theorem1(std::get<GghzParams>(r.state.params).theta);
    worst = std::max(worst, excess);
    if (excess > tol::kTheorem1) ++bad;
  }
  return {bad == 0, "50 theta, max(lhs - 16|cos2t|)=" + fmt(worst, 3) + " violations=" + std::to_string(bad)};
}

Outcome figure1() {
  const auto a = to_csv(sweep_figure(Figure::FIG1, 91));
  const auto table = sweep_figure(Figure::FIG1, 91);
  const auto b = to_csv(table);
  std::ifstream f(std::filesystem::path(SVL_GOLDEN_DIR) / "fig1_91.csv", std::ios::binary);
  const std::string golden{std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};

  int above = 0, touching = 0;
  bool touches_at_zero = false;
  for (const auto& row : table.rows) {
    if (row[1] > row[2] + tol::kFigure1) ++above;
    if (std::abs(row[2] - row[1]) <= tol::kFigure1) {
      if (row[0] == 0.0) touches_at_zero = true;
      else ++touching;
    }
  }
  const bool stable = a == b && b == golden;
  return {table.rows.size() == 91 && above == 0 && touching == 0 && touches_at_zero && stable,
          "rows=" + std::to_string(table.rows.size()) + " above=" + std::to_string(above) +
              " equal_away_from_0=" + std::to_string(touching) + " equal_at_0=" + (touches_at_zero ? "yes" : "no") +
              " csv_stable=" + (stable ? "yes" : "no")};
}

Outcome theorem2() {
  int lhs_bad = 0, c4_bad = 0;
  double worst_lhs = -1e9, worst_c4 = -1e9;
  for (int k = 1; k <= 50; ++k) {
    const double th = pi / 2 + k * pi / 51;
    const auto r = verify_tradeoff(StateSpec{MsParams{4, th}}, Theorem::Theorem2);
    worst_lhs = std::max(worst_lhs, r.lhs - r.rhs);
    if (r.lhs > r.rhs + tol::kTheorem2) ++lhs_bad;
    worst_c4 = std::max(worst_c4, bound_theorem2(th) - bound_c4(th));
    if (bound_theorem2(th) > bound_c4(th) + tol::kC4) ++c4_bad;
  }
  return {lhs_bad == 0 && c4_bad == 0,
          "50 theta in (pi/2,3pi/2): sum > theorem2 at " + std::to_string(lhs_bad) + " (max excess " +
              fmt(worst_lhs, 4) + "), theorem2 > c4 at " + std::to_string(c4_bad) + " (max excess " +
              fmt(worst_c4, 4) + ")"};
}

Outcome f_maximum() {
  const WClassCoefficients w{0.0, std::sqrt(2.0 / 7), std::sqrt(3.0 / 7), std::sqrt(2.0 / 7), 0.0};
  const double f = bound_F(w);
  const double err = std::abs(f - 704.0 / 7);
  std::mt19937_64 rng(2024);
  double best = 0.0;
  for (int t = 0; t < 100000; ++t) best = std::max(best, bound_F(random_w(rng)));
  return {err <= tol::kFExact && best <= 704.0 / 7 + tol::kFSearch,
          "F(maximiser)=" + fmt(f, 17) + " |err|=" + fmt(err, 3) + " random search max=" + fmt(best, 15)};
}

Outcome figure3() {
  const auto table = sweep_figure(Figure::FIG3, 201, {}, FormulaVariant::Verbatim);
  int violations = 0, flag_mismatch = 0;
  double worst = -1e9;
  for (const auto& row : table.rows) {
    const bool v = row[1] > row[2] + tol::kFigure3;
    violations += v;
    if ((row[3] == 1.0) != v) ++flag_mismatch;
    worst = std::max(worst, row[1] - row[2]);
  }
  return {table.rows.size() == 201 && violations == 0 && flag_mismatch == 0,
          "201 gamma: max(F - G)=" + fmt(worst, 4) + " violations=" + std::to_string(violations) +
              " flag_mismatch=" + std::to_string(flag_mismatch)};
}

Outcome eqn3p() {
  std::mt19937_64 rng(3030);
  int bad = 0;
  double worst = -1e9;
  for (int t = 0; t < 30; ++t) {
    const auto w = random_w(rng);
    const auto r = verify_tradeoff(StateSpec{w}, Theorem::Eqn3p);
    worst = std::max(worst, r.lhs - bound_F(w));
    if (r.lhs > bound_F(w) + tol::kEqn3p) ++bad;
  }
  return {bad == 0, "30 states: max(sum S^2 - F)=" + fmt(worst, 4) + " violations=" + std::to_string(bad)};
}

Outcome grid_oracle() {
  std::mt19937_64 rng(9090);
  Stopwatch sw;
  int below_grid = 0, above_ceiling = 0;
  double min_margin = 1e9;
  for (int t = 0; t < 20; ++t) {
    const auto raw = oracle::random_density(3, rng);
    const auto rho = oracle::as_density(3, raw);
    const double value = maximize_svetlichny(rho).value;
    const double grid = oracle::grid_max_svetlichny(oracle::pauli_string_tensor(raw), 8, 16);
    const double ceiling = svetlichny_upper_bound(rho);
    min_margin = std::min(min_margin, value - grid);
    if (value < grid - tol::kGridFloor) ++below_grid;
    if (value > ceiling + tol::kLambdaCeiling || grid > ceiling + tol::kLambdaCeiling) ++above_ceiling;
  }
  const double t = sw.seconds();
  return {below_grid == 0 && above_ceiling == 0 && t <= tol::kGridSeconds,
          "20 states: min(opt - grid)=" + fmt(min_margin, 4) + " below_grid=" + std::to_string(below_grid) +
              " above_4lambda1=" + std::to_string(above_ceiling) + " time=" + fmt(t, 4) + "s"};
}

Outcome lagrange() {
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    std::array<double, 4> a{}, b{};
    for (auto& v : a) v = u(rng);
    for (auto& v : b) v = u(rng);
    std::vector<double> w(a.begin(), a.end());
    w.insert(w.end(), b.begin(), b.end());
    worst = std::max(worst, std::abs(lagrange_max(a, b) - oracle::projected_gradient_max(w)));
  }
  return {worst <= tol::kLagrange, "100 draws: max |closed form - projected gradient|=" + fmt(worst, 3)};
}

Outcome chsh_tradeoff() {
  std::mt19937_64 rng(1111);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const PureState psi(3, oracle::random_pure(3, rng));
    double sum = 0.0;
    for (const auto& keep : qubit_subsets(3, 2)) {
      const double c = chsh_max(reduced_density(psi, keep));
      sum += c * c;
    }
    worst = std::max(worst, sum);
  }
  return {worst <= 12 + tol::kChsh, "100 pure states: max sum of squares=" + fmt(worst, 15)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"GHZ3 maximisation reaches 4 sqrt 2", ghz_maximum},
      {"GGHZ(4) reductions never exceed 4", gghz_reductions},
      {"GGHZ(4) sum below 16|cos 2t|", theorem1},
      {"Figure 1 ordering and golden CSV", figure1},
      {"MS(4) sum below theorem 2 bound, bound below 20cos^2", theorem2},
      {"F maximum 704/7", f_maximum},
      {"Figure 3: F <= G on the slice", figure3},
      {"W class: sum of squares below F", eqn3p},
      {"Optimiser above pi/8 grid, both below 4 lambda_1", grid_oracle},
      {"Lagrange closed form", lagrange},
      {"Three-qubit CHSH trade-off", chsh_tradeoff},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  for (std::size_t i = 0; i < criteria().size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    const auto& c = criteria()[i];
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << i + 1 << "] " << c.name << ": " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
