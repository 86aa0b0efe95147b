#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "svl/qstate.hpp"
#include "svl/state_spec.hpp"
#include "svl/svetlichny.hpp"

namespace svl {

// How the printed W-class formulas are read. Verbatim keeps the mixed-power
// monomials (alpha beta^2, delta^2 beta gamma, ...) exactly as printed;
// Corrected squares every odd factor so each term is a product of squares.
enum class FormulaVariant { Verbatim, Corrected };

enum class Aggregation { Sum, SumSquares };

enum class Theorem {
  Theorem1,    // GGHZ, n = 4
  Corollary1,  // GGHZ, n >= 4
  Theorem2,    // MS, n = 4
  Corollary2,  // MS, n >= 4
  Theorem3,    // W class with lambda, plain sum
  Eqn3p,       // W class, lambda = 0, sum of squares (bound F)
  Individual,  // no closed form: sum of the per-reduction 4*lambda_1 bounds
};

std::string to_string(Theorem t);
std::string to_string(Aggregation a);
std::string to_string(FormulaVariant v);
Theorem parse_theorem(const std::string& name);
FormulaVariant parse_variant(const std::string& name);
Aggregation aggregation_for(Theorem t);

int binomial(int n, int k);

// ---- closed-form bounds ----

double bound_theorem1(double theta);             // 16|cos 2t|
double bound_corollary1(int n, double theta);    // 4 C(n,3) |cos 2t|
double bound_theorem2(double theta);             // 4 sqrt2 |cos t| + 12 |cos^2 t + sin(2t)/2|
double bound_c4(double theta);                   // 20 cos^2 t
double bound_corollary2(int n, double theta);
double bound_theorem3(const WClassCoefficients& w, FormulaVariant variant = FormulaVariant::Verbatim);
double bound_F(const WClassCoefficients& w);
double bound_G(const WClassCoefficients& w, FormulaVariant variant = FormulaVariant::Verbatim);

// 4 max{cos^4 t, sin^4 t}: the single-reduction GGHZ value quoted alongside
// the singular-value bound. The singular-value bound itself evaluates to 4|cos 2t|.
double gghz_quoted_reduction_bound(double theta);

// ---- verification harness ----

struct ReductionResult {
  QubitList qubits;
  double value = 0.0;        // maximised Svetlichny value
  double upper_bound = 0.0;  // 4 lambda_1
  bool converged = false;
};

struct TradeoffReport {
  StateSpec state;
  Theorem theorem = Theorem::Individual;
  Aggregation mode = Aggregation::Sum;
  FormulaVariant variant = FormulaVariant::Verbatim;
  std::vector<ReductionResult> per_reduction;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;  // lhs <= rhs + kSatisfactionTolerance
  double gap = 0.0;        // rhs - lhs
  bool converged = false;  // every reduction converged
  // Competing bounds for the same left-hand side, by name.
  std::vector<std::pair<std::string, double>> reference_bounds;
};

inline constexpr double kSatisfactionTolerance = 1e-6;

// Picks the bound that matches the family and aggregation: GGHZ -> Theorem 1
// (n = 4) or Corollary 1, MS -> Theorem 2 or Corollary 2, WCLASS -> Theorem 3
// (Sum) or F (SumSquares), anything else -> Individual. GGHZ and MS only
// admit Sum.
TradeoffReport verify_tradeoff(const StateSpec& spec, Aggregation mode, const OptimizerOptions& opts = {},
                               FormulaVariant variant = FormulaVariant::Verbatim);

// Explicit theorem; throws DomainError when the state family or size does not match it.
TradeoffReport verify_tradeoff(const StateSpec& spec, Theorem theorem, const OptimizerOptions& opts = {},
                               FormulaVariant variant = FormulaVariant::Verbatim);

nlohmann::json to_json(const TradeoffReport& report);

// ---- figure data ----

enum class Figure { FIG1, FIG2, FIG3, FIG4 };

Figure parse_figure(const std::string& name);

struct FigureTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline constexpr int kDefaultGridPoints = 181;
inline constexpr double kOpenIntervalNudge = 1e-9;
inline constexpr double kFigure3ViolationTolerance = 1e-9;

// FIG1: theta, theorem1, lambda_bound over [0, pi/4].
// FIG2: theta, theorem2, c4 over (pi/2, 3pi/2), endpoints nudged inwards.
// FIG3: gamma, F, G, violation over [0, 1] with alpha = beta = 0, delta^2 = 1 - gamma^2;
//       violation is 1 where F > G + kFigure3ViolationTolerance.
// FIG4: gamma, S2_abc, S2_acd, sum, F on the same W-class slice, where S2 is the
//       squared maximised Svetlichny value and sum runs over all four reductions.
FigureTable sweep_figure(Figure fig, int grid_points = kDefaultGridPoints, const OptimizerOptions& opts = {},
                         FormulaVariant variant = FormulaVariant::Verbatim);

// 17 significant digits, locale-independent.
std::string format_double(double v);
std::string to_csv(const FigureTable& table);
nlohmann::json to_json(const FigureTable& table);

}  // namespace svl
