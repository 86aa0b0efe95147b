#include "svl/tradeoff.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "svl/correlations.hpp"
#include "svl/errors.hpp"

namespace svl {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double checked_sqrt(double radicand, const char* what) {
  if (radicand < 0.0) {
    if (radicand > -1e-12) return 0.0;
    throw DomainError(std::string("negative radicand in ") + what + " under the chosen formula reading");
  }
  return std::sqrt(radicand);
}

void require_lambda_zero(const WClassCoefficients& w) {
  if (std::abs(w.lambda) > kTolerances.structural) throw DomainError("bound requires lambda = 0");
}

void require_n_at_least_4(int n) {
  if (n < 4) throw InvalidArity("corollary bounds need n >= 4");
}

const char* reduction_name(const QubitList& q) {
  static const char* names[] = {"abc", "abd", "acd", "bcd"};
  const auto subsets = qubit_subsets(4, 3);
  for (std::size_t i = 0; i < subsets.size(); ++i)
    if (subsets[i] == q) return names[i];
  return nullptr;
}

struct TheoremContext {
  double theta = 0.0;
  int n = 0;
  WClassCoefficients w;
};

void require_compatible(const StateSpec& spec, Theorem theorem, TheoremContext& ctx) {
  const Family fam = spec.family();
  auto fail = [&](const std::string& why) {
    throw DomainError(to_string(theorem) + " does not apply to " + to_string(fam) + " state: " + why);
  };
  switch (theorem) {
    case Theorem::Theorem1:
    case Theorem::Corollary1: {
      if (fam != Family::GGHZ) fail("needs a GGHZ state");
      const auto& p = std::get<GghzParams>(spec.params);
      if (theorem == Theorem::Theorem1 && p.n != 4) fail("needs n = 4");
      if (p.n < 4) fail("needs n >= 4");
      ctx.theta = p.theta;
      ctx.n = p.n;
      return;
    }
    case Theorem::Theorem2:
    case Theorem::Corollary2: {
      if (fam != Family::MS) fail("needs an MS state");
      const auto& p = std::get<MsParams>(spec.params);
      if (theorem == Theorem::Theorem2 && p.n != 4) fail("needs n = 4");
      ctx.theta = p.theta;
      ctx.n = p.n;
      return;
    }
    case Theorem::Theorem3:
    case Theorem::Eqn3p: {
      if (fam != Family::WCLASS) fail("needs a WCLASS state");
      ctx.w = std::get<WClassCoefficients>(spec.params);
      if (theorem == Theorem::Eqn3p) require_lambda_zero(ctx.w);
      ctx.n = 4;
      return;
    }
    case Theorem::Individual:
      ctx.n = spec.num_qubits();
      if (ctx.n < 3) fail("needs at least three qubits");
      return;
  }
}

}  // namespace

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::Theorem1: return "theorem1";
    case Theorem::Corollary1: return "corollary1";
    case Theorem::Theorem2: return "theorem2";
    case Theorem::Corollary2: return "corollary2";
    case Theorem::Theorem3: return "theorem3";
    case Theorem::Eqn3p: return "eqn3p";
    case Theorem::Individual: return "individual";
  }
  return "?";
}

std::string to_string(Aggregation a) { return a == Aggregation::Sum ? "SUM" : "SUM_SQUARES"; }

std::string to_string(FormulaVariant v) { return v == FormulaVariant::Verbatim ? "verbatim" : "corrected"; }

Theorem parse_theorem(const std::string& name) {
  for (Theorem t : {Theorem::Theorem1, Theorem::Corollary1, Theorem::Theorem2, Theorem::Corollary2,
                    Theorem::Theorem3, Theorem::Eqn3p, Theorem::Individual}) {
    if (to_string(t) == name) return t;
  }
  throw DomainError("unknown theorem \"" + name + "\"");
}

FormulaVariant parse_variant(const std::string& name) {
  if (name == "verbatim") return FormulaVariant::Verbatim;
  if (name == "corrected") return FormulaVariant::Corrected;
  throw DomainError("unknown formula variant \"" + name + "\"");
}

Aggregation aggregation_for(Theorem t) { return t == Theorem::Eqn3p ? Aggregation::SumSquares : Aggregation::Sum; }

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

double bound_theorem1(double theta) { return 16.0 * std::abs(std::cos(2.0 * theta)); }

double bound_corollary1(int n, double theta) {
  require_n_at_least_4(n);
  return 4.0 * binomial(n, 3) * std::abs(std::cos(2.0 * theta));
}

double bound_theorem2(double theta) {
  const double c = std::cos(theta);
  return 4.0 * kSqrt2 * std::abs(c) + 12.0 * std::abs(c * c + 0.5 * std::sin(2.0 * theta));
}

double bound_c4(double theta) {
  const double c = std::cos(theta);
  return 20.0 * c * c;
}

double bound_corollary2(int n, double theta) {
  require_n_at_least_4(n);
  const double c = std::cos(theta);
  const int pairs = binomial(n - 1, 2);
  return 4.0 * kSqrt2 * pairs * std::abs(c) +
         4.0 * (binomial(n, 3) - pairs) * std::abs(c * c + 0.5 * std::sin(2.0 * theta));
}

double bound_theorem3(const WClassCoefficients& w, FormulaVariant variant) {
  require_normalized(w);
  const double A = w.alpha * w.alpha, B = w.beta * w.beta, G = w.gamma * w.gamma;
  const double D = w.delta * w.delta, L = w.lambda * w.lambda;
  const double last = variant == FormulaVariant::Verbatim ? D * w.beta * w.gamma : D * B * G;

  const std::array<double, 4> x = {
      (A + B + G - D - L) * (A + B + G - D - L),
      (A + B - G + D - L) * (A + B - G + D - L),
      (A - B + G + D - L) * (A - B + G + D - L),
      (-A + B + G + D - L) * (-A + B + G + D - L),
  };
  const std::array<double, 4> y = {
      B * G + A * L + 1.5 * A * B + G * L + 1.5 * A * G + B * L,
      B * G + A * L + 1.5 * A * B + D * L + 1.5 * A * D + D * B,
      1.5 * A * D + A * L + 1.5 * A * G + D * L + D * G + L * G,
      1.5 * B * G + B * L + D * G + D * L + G * L + 1.5 * last,
  };
  const std::array<double, 4> extra = {8 * B * G, 8 * B * D, 8 * D * L, 8 * D * G};

  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double base = 2.0 * x[i] + 8.0 * y[i];
    total += 2.0 * (checked_sqrt(base, "bound_theorem3") + checked_sqrt(base + extra[i], "bound_theorem3"));
  }
  return total;
}

double bound_F(const WClassCoefficients& w) {
  require_normalized(w);
  require_lambda_zero(w);
  const double A = w.alpha * w.alpha, B = w.beta * w.beta, G = w.gamma * w.gamma, D = w.delta * w.delta;
  return 64.0 * (1.0 + A * G + B * D + 2.0 * A * B + 2.0 * B * G + 2.0 * G * D);
}

double bound_G(const WClassCoefficients& w, FormulaVariant variant) {
  require_normalized(w);
  require_lambda_zero(w);
  const double a = w.alpha, b = w.beta, g = w.gamma, d = w.delta;
  // p(x, y) is the printed x*y^2; the corrected reading uses x^2*y^2.
  auto p = [variant](double x, double y) { return variant == FormulaVariant::Verbatim ? x * y * y : x * x * y * y; };
  auto sq = [](double x) { return (2.0 * x * x - 1.0) * (2.0 * x * x - 1.0); };

  const double t1 = std::abs(4.0 * (p(a, b) + p(a, g)) - 8.0 * p(b, g) - sq(d));
  const double t2 = std::abs(4.0 * (p(a, b) + p(a, d)) - 8.0 * p(b, d) - sq(g));
  const double t3 = std::abs(4.0 * (p(b, g) + p(b, d)) - 8.0 * p(g, d) - sq(a));
  const double t4 = std::abs(4.0 * (p(a, g) + p(a, d)) - 8.0 * p(g, d) - sq(b));
  const double t5 = 8.0 * (p(a, b) + p(a, g) + p(a, d) + 1.5 * p(b, g) + 1.5 * p(b, d) + 2.0 * p(g, d));
  const double t6 = sq(a) + sq(b) + sq(g) + sq(d);
  return 8.0 * (t1 + t2 + t3 + t4 + t5 + t6);
}

double gghz_quoted_reduction_bound(double theta) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  return 4.0 * std::max(c2 * c2, s2 * s2);
}

TradeoffReport verify_tradeoff(const StateSpec& spec, Aggregation mode, const OptimizerOptions& opts,
                               FormulaVariant variant) {
  Theorem theorem = Theorem::Individual;
  switch (spec.family()) {
    case Family::GGHZ:
      theorem = spec.num_qubits() == 4 ? Theorem::Theorem1 : Theorem::Corollary1;
      break;
    case Family::MS:
      theorem = spec.num_qubits() == 4 ? Theorem::Theorem2 : Theorem::Corollary2;
      break;
    case Family::WCLASS:
      theorem = mode == Aggregation::Sum ? Theorem::Theorem3 : Theorem::Eqn3p;
      break;
    default:
      break;
  }
  if (theorem != Theorem::Individual && aggregation_for(theorem) != mode) {
    throw DomainError(to_string(theorem) + " bounds a " + to_string(aggregation_for(theorem)) + ", not a " +
                      to_string(mode));
  }
  TradeoffReport report = verify_tradeoff(spec, theorem, opts, variant);
  if (theorem == Theorem::Individual && mode == Aggregation::SumSquares) {
    report.mode = mode;
    report.lhs = 0.0;
    report.rhs = 0.0;
    for (const auto& r : report.per_reduction) {
      report.lhs += r.value * r.value;
      report.rhs += r.upper_bound * r.upper_bound;
    }
    report.gap = report.rhs - report.lhs;
    report.satisfied = report.lhs <= report.rhs + kSatisfactionTolerance;
    report.reference_bounds.clear();
  }
  return report;
}

TradeoffReport verify_tradeoff(const StateSpec& spec, Theorem theorem, const OptimizerOptions& opts,
                               FormulaVariant variant) {
  TheoremContext ctx;
  require_compatible(spec, theorem, ctx);

  TradeoffReport report;
  report.state = spec;
  report.theorem = theorem;
  report.mode = aggregation_for(theorem);
  report.variant = variant;

  const PureState psi = spec.build();
  report.converged = true;
  double sum_individual = 0.0;
  for (const QubitList& triple : qubit_subsets(psi.num_qubits(), 3)) {
    const DensityMatrix rho = reduced_density(psi, triple);
    const MaximizeResult best = maximize_svetlichny(rho, opts);
    ReductionResult r{triple, best.value, svetlichny_upper_bound(rho), best.converged};
    report.converged = report.converged && r.converged;
    const bool squares = report.mode == Aggregation::SumSquares;
    report.lhs += squares ? r.value * r.value : r.value;
    sum_individual += squares ? r.upper_bound * r.upper_bound : r.upper_bound;
    report.per_reduction.push_back(std::move(r));
  }

  auto& refs = report.reference_bounds;
  switch (theorem) {
    case Theorem::Theorem1:
      report.rhs = bound_theorem1(ctx.theta);
      refs.emplace_back("quoted_lambda_bound", 4.0 * gghz_quoted_reduction_bound(ctx.theta));
      break;
    case Theorem::Corollary1:
      report.rhs = bound_corollary1(ctx.n, ctx.theta);
      break;
    case Theorem::Theorem2:
      report.rhs = bound_theorem2(ctx.theta);
      refs.emplace_back("c4", bound_c4(ctx.theta));
      refs.emplace_back("corollary2_n4", bound_corollary2(4, ctx.theta));
      break;
    case Theorem::Corollary2:
      report.rhs = bound_corollary2(ctx.n, ctx.theta);
      break;
    case Theorem::Theorem3:
      report.rhs = bound_theorem3(ctx.w, variant);
      break;
    case Theorem::Eqn3p:
      report.rhs = bound_F(ctx.w);
      refs.emplace_back("G", bound_G(ctx.w, variant));
      break;
    case Theorem::Individual:
      report.rhs = sum_individual;
      break;
  }
  if (theorem != Theorem::Individual) refs.emplace_back("sum_4lambda1", sum_individual);

  report.gap = report.rhs - report.lhs;
  report.satisfied = report.lhs <= report.rhs + kSatisfactionTolerance;
  return report;
}

nlohmann::json to_json(const TradeoffReport& report) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& r : report.per_reduction) {
    nlohmann::json item{{"qubits", r.qubits}, {"value", r.value}, {"upper_bound_4lambda1", r.upper_bound},
                        {"converged", r.converged}};
    if (report.state.num_qubits() == 4) item["label"] = reduction_name(r.qubits);
    per.push_back(std::move(item));
  }
  nlohmann::json refs = nlohmann::json::object();
  for (const auto& [name, value] : report.reference_bounds) refs[name] = value;
  return nlohmann::json{{"state", to_json(report.state)},
                        {"theorem", to_string(report.theorem)},
                        {"mode", to_string(report.mode)},
                        {"variant", to_string(report.variant)},
                        {"per_reduction", per},
                        {"lhs", report.lhs},
                        {"rhs", report.rhs},
                        {"gap", report.gap},
                        {"satisfied", report.satisfied},
                        {"converged", report.converged},
                        {"reference_bounds", refs}};
}

Figure parse_figure(const std::string& name) {
  if (name == "FIG1") return Figure::FIG1;
  if (name == "FIG2") return Figure::FIG2;
  if (name == "FIG3") return Figure::FIG3;
  if (name == "FIG4") return Figure::FIG4;
  throw DomainError("unknown figure \"" + name + "\"");
}

FigureTable sweep_figure(Figure fig, int grid_points, const OptimizerOptions& opts, FormulaVariant variant) {
  if (grid_points < 2) throw DomainError("figure sweeps need at least two grid points");
  auto grid = [grid_points](double lo, double hi, int i) {
    if (i == grid_points - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
  };
  auto w_slice = [](double gamma) {
    return WClassCoefficients{0.0, 0.0, gamma, std::sqrt(std::max(0.0, 1.0 - gamma * gamma)), 0.0};
  };

  FigureTable table;
  const double pi = std::numbers::pi;
  switch (fig) {
    case Figure::FIG1:
      table.columns = {"theta", "theorem1", "lambda_bound"};
      for (int i = 0; i < grid_points; ++i) {
        const double t = grid(0.0, pi / 4.0, i);
        table.rows.push_back({t, bound_theorem1(t), 4.0 * gghz_quoted_reduction_bound(t)});
      }
      break;
    case Figure::FIG2:
      table.columns = {"theta", "theorem2", "c4"};
      for (int i = 0; i < grid_points; ++i) {
        const double t = grid(pi / 2.0 + kOpenIntervalNudge, 3.0 * pi / 2.0 - kOpenIntervalNudge, i);
        table.rows.push_back({t, bound_theorem2(t), bound_c4(t)});
      }
      break;
    case Figure::FIG3:
      table.columns = {"gamma", "F", "G", "violation"};
      for (int i = 0; i < grid_points; ++i) {
        const double g = grid(0.0, 1.0, i);
        const double f = bound_F(w_slice(g));
        const double gg = bound_G(w_slice(g), variant);
        table.rows.push_back({g, f, gg, f > gg + kFigure3ViolationTolerance ? 1.0 : 0.0});
      }
      break;
    case Figure::FIG4:
      table.columns = {"gamma", "S2_abc", "S2_acd", "sum", "F"};
      for (int i = 0; i < grid_points; ++i) {
        const double g = grid(0.0, 1.0, i);
        const PureState psi = make_wclass(w_slice(g));
        std::array<double, 4> s2{};
        const auto triples = qubit_subsets(4, 3);
        for (std::size_t r = 0; r < triples.size(); ++r) {
          const double v = maximize_svetlichny(reduced_density(psi, triples[r]), opts).value;
          s2[r] = v * v;
        }
        table.rows.push_back({g, s2[0], s2[2], s2[0] + s2[1] + s2[2] + s2[3], bound_F(w_slice(g))});
      }
      break;
  }
  return table;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string to_csv(const FigureTable& table) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const FigureTable& table) {
  return nlohmann::json{{"columns", table.columns}, {"rows", table.rows}};
}

}  // namespace svl
