#include "svl/cli.hpp"

#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "svl/correlations.hpp"
#include "svl/errors.hpp"
#include "svl/state_spec.hpp"
#include "svl/svetlichny.hpp"
#include "svl/tradeoff.hpp"

namespace svl::cli {

namespace {

using nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 42;
  int restarts = 64;
  int max_iter = 2000;
  double tol = 1e-10;
  int threads = 0;
  std::string format = "json";
  std::string output;
  std::string variant = "verbatim";
  bool degrees = false;
  bool allow_unconverged = false;

  OptimizerOptions optimizer() const { return {restarts, max_iter, tol, seed, threads}; }
};

struct StateInput {
  std::string inline_json;
  std::string file;
};

// Raised for inconsistent flag combinations that CLI11 cannot express.
class UsageError : public Error {
 public:
  using Error::Error;
};

QubitList parse_qubits(const std::string& text) {
  QubitList out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad qubit list \"" + text + "\"");
    }
  }
  if (out.empty()) throw UsageError("empty qubit list");
  return out;
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad number list \"" + text + "\"");
    }
  }
  return out;
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError("invalid JSON in " + origin + ": " + e.what());
  }
}

// A state file may hold a bare spec or the output of `svl state`.
StateSpec load_state(const StateInput& in, bool degrees) {
  if (!in.inline_json.empty() && !in.file.empty()) throw UsageError("use only one of --state and --state-file");
  if (!in.inline_json.empty()) return parse_state_spec(parse_json_text(in.inline_json, "--state"), degrees);
  if (!in.file.empty()) {
    std::ifstream f(in.file);
    if (!f) throw UsageError("cannot read state file " + in.file);
    std::stringstream buf;
    buf << f.rdbuf();
    const json j = parse_json_text(buf.str(), in.file);
    return parse_state_spec(j.is_object() && j.contains("spec") ? j.at("spec") : j, false);
  }
  throw UsageError("a state is required (--state or --state-file)");
}

void add_state_options(CLI::App* cmd, StateInput& in) {
  cmd->add_option("--state", in.inline_json, "State spec as JSON, e.g. {\"family\":\"GGHZ\",\"n\":4,\"theta\":0.5}");
  cmd->add_option("--state-file", in.file, "File holding a state spec or the output of `svl state`");
}

DensityMatrix reduce_or_whole(const PureState& psi, const std::string& reduce_text) {
  if (reduce_text.empty()) return to_density(psi);
  return reduced_density(psi, parse_qubits(reduce_text));
}

json settings_json(const SvetlichnySettings& s) {
  auto v = [](const BlochVector& b) { return json{{"theta", b.theta}, {"phi", b.phi}}; };
  return json{{"a", v(s.a)}, {"a_p", v(s.a_p)}, {"b", v(s.b)}, {"b_p", v(s.b_p)}, {"c", v(s.c)}, {"c_p", v(s.c_p)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_format(const GlobalOptions& g) {
  if (g.format != "json" && g.format != "csv") throw UsageError("--format must be json or csv");
}

std::string cmd_state(const GlobalOptions& g, const StateInput& in) {
  const StateSpec spec = load_state(in, g.degrees);
  const PureState psi = spec.build();
  if (g.format == "csv") {
    std::string s = "index,label,re,im\n";
    for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
      std::string label;
      for (int q = 0; q < psi.num_qubits(); ++q)
        label += static_cast<char>('0' + qubit_bit(static_cast<std::size_t>(i), q, psi.num_qubits()));
      s += std::to_string(i) + "," + label + "," + format_double(psi.amplitudes()(i).real()) + "," +
           format_double(psi.amplitudes()(i).imag()) + "\n";
    }
    return s;
  }
  json amps = json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i)
    amps.push_back({psi.amplitudes()(i).real(), psi.amplitudes()(i).imag()});
  return dump(json{{"spec", to_json(spec)}, {"num_qubits", psi.num_qubits()}, {"amplitudes", amps}});
}

std::string cmd_reduce(const GlobalOptions& g, const StateInput& in, const std::string& keep_text) {
  const QubitList keep = parse_qubits(keep_text);
  const DensityMatrix rho = reduced_density(load_state(in, g.degrees).build(), keep);
  const auto dim = static_cast<Eigen::Index>(rho.dimension());
  if (g.format == "csv") {
    std::string s = "row,col,re,im\n";
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c)
        s += std::to_string(r) + "," + std::to_string(c) + "," + format_double(rho.entries()(r, c).real()) + "," +
             format_double(rho.entries()(r, c).imag()) + "\n";
    return s;
  }
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < dim; ++r) {
    json rr = json::array(), ii = json::array();
    for (Eigen::Index c = 0; c < dim; ++c) {
      rr.push_back(rho.entries()(r, c).real());
      ii.push_back(rho.entries()(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return dump(json{{"num_qubits", rho.num_qubits()}, {"keep", keep}, {"real", re}, {"imag", im}});
}

std::string cmd_bound(const GlobalOptions& g, const StateInput& in, const std::string& reduce_text,
                      const std::string& kind) {
  const StateSpec spec = load_state(in, g.degrees);
  const DensityMatrix rho = reduce_or_whole(spec.build(), reduce_text);
  json qubits = reduce_text.empty() ? json(nullptr) : json(parse_qubits(reduce_text));

  if (kind == "chsh") {
    const double v = chsh_max(rho);
    if (g.format == "csv") return "kind,value\nchsh," + format_double(v) + "\n";
    return dump(json{{"kind", "chsh"}, {"qubits", qubits}, {"value", v}, {"M", v * v / 4.0}});
  }
  if (kind != "svetlichny") throw UsageError("--kind must be svetlichny or chsh");

  const CorrelationTensor3 m = correlation_tensor(rho);
  if (g.format == "csv") {
    std::string s = "i,j,k,value\n";
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          s += std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + "," +
               format_double(m(i, j, k)) + "\n";
    return s;
  }
  const Eigen::Vector3d sv = singular_values(flatten_M(m));
  json out{{"kind", "svetlichny"},
           {"qubits", qubits},
           {"singular_values", {sv[0], sv[1], sv[2]}},
           {"lambda1", sv[0]},
           {"bound", svetlichny_upper_bound(rho)},
           {"tensor", m.m}};
  if (spec.family() == Family::GGHZ && rho.num_qubits() == 3) {
    const double quoted = gghz_quoted_reduction_bound(std::get<GghzParams>(spec.params).theta);
    out["quoted_bound"] = quoted;
    out["quoted_bound_matches"] = std::abs(quoted - out["bound"].get<double>()) <= 1e-9;
  }
  return dump(out);
}

std::string cmd_maximize(const GlobalOptions& g, const StateInput& in, const std::string& reduce_text,
                         bool& converged) {
  const StateSpec spec = load_state(in, g.degrees);
  const DensityMatrix rho = reduce_or_whole(spec.build(), reduce_text);
  const OptimizerOptions opts = g.optimizer();
  const MaximizeResult r = maximize_svetlichny(rho, opts);
  converged = r.converged;
  const double bound = svetlichny_upper_bound(rho);
  if (g.format == "csv") {
    std::string s = "key,value\n";
    s += "value," + format_double(r.value) + "\n";
    s += "upper_bound_4lambda1," + format_double(bound) + "\n";
    s += std::string("converged,") + (r.converged ? "1" : "0") + "\n";
    const auto angles = r.argmax.to_angles();
    const char* names[] = {"a", "a_p", "b", "b_p", "c", "c_p"};
    for (std::size_t v = 0; v < 6; ++v) {
      s += std::string(names[v]) + ".theta," + format_double(angles[2 * v]) + "\n";
      s += std::string(names[v]) + ".phi," + format_double(angles[2 * v + 1]) + "\n";
    }
    return s;
  }
  return dump(json{{"state", to_json(spec)},
                   {"qubits", reduce_text.empty() ? json(nullptr) : json(parse_qubits(reduce_text))},
                   {"value", r.value},
                   {"upper_bound_4lambda1", bound},
                   {"converged", r.converged},
                   {"best_restart", r.best_restart},
                   {"settings", settings_json(r.argmax)},
                   {"options", {{"restarts", opts.restarts}, {"max_iter", opts.max_iter}, {"tol", opts.tol},
                                {"seed", opts.seed}}}});
}

struct TradeoffArgs {
  std::string theorem;
  std::optional<double> theta;
  std::optional<int> n;
  std::string coeffs;
};

StateSpec tradeoff_state(const GlobalOptions& g, const StateInput& in, const TradeoffArgs& t, Theorem theorem) {
  if (!in.inline_json.empty() || !in.file.empty()) return load_state(in, g.degrees);
  const double scale = g.degrees ? std::numbers::pi / 180.0 : 1.0;
  auto need_theta = [&] {
    if (!t.theta) throw UsageError(to_string(theorem) + " needs --theta or --state");
    return *t.theta * scale;
  };
  switch (theorem) {
    case Theorem::Theorem1: return StateSpec{GghzParams{4, need_theta()}};
    case Theorem::Corollary1: return StateSpec{GghzParams{t.n.value_or(4), need_theta()}};
    case Theorem::Theorem2: return StateSpec{MsParams{4, need_theta()}};
    case Theorem::Corollary2: return StateSpec{MsParams{t.n.value_or(4), need_theta()}};
    case Theorem::Theorem3:
    case Theorem::Eqn3p: {
      const auto c = parse_numbers(t.coeffs);
      if (c.size() != 4 && c.size() != 5) throw UsageError("--coeffs needs alpha,beta,gamma,delta[,lambda]");
      WClassCoefficients w{c[0], c[1], c[2], c[3], c.size() == 5 ? c[4] : 0.0};
      require_normalized(w);
      return StateSpec{w};
    }
    case Theorem::Individual: break;
  }
  throw UsageError("individual bounds need --state");
}

std::string cmd_tradeoff(const GlobalOptions& g, const StateInput& in, const TradeoffArgs& t, bool& converged) {
  Theorem theorem;
  try {
    theorem = parse_theorem(t.theorem);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const StateSpec spec = tradeoff_state(g, in, t, theorem);
  const TradeoffReport report = verify_tradeoff(spec, theorem, g.optimizer(), parse_variant(g.variant));
  converged = report.converged;
  if (g.format == "csv") {
    std::string s = "qubits,value,upper_bound_4lambda1,converged\n";
    for (const auto& r : report.per_reduction) {
      std::string q;
      for (std::size_t i = 0; i < r.qubits.size(); ++i) q += (i ? " " : "") + std::to_string(r.qubits[i]);
      s += q + "," + format_double(r.value) + "," + format_double(r.upper_bound) + "," + (r.converged ? "1" : "0") +
           "\n";
    }
    return s;
  }
  return dump(to_json(report));
}

std::string cmd_figure(const GlobalOptions& g, const std::string& name, int points) {
  Figure fig;
  try {
    fig = parse_figure(name);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const FigureTable table = sweep_figure(fig, points, g.optimizer(), parse_variant(g.variant));
  if (g.format == "csv") return to_csv(table);
  return dump(to_json(table));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Svetlichny nonlocality of three-qubit reductions and their trade-off bounds", "svl"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for the optimiser restarts")->capture_default_str();
  app.add_option("--restarts", g.restarts, "Optimiser restarts")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--max-iter", g.max_iter, "Simplex iterations per restart")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "Simplex diameter tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads (0: all cores)")->capture_default_str()->check(CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "json or csv")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", g.output, "Write the result to this file instead of stdout");
  app.add_option("--variant", g.variant, "Reading of the W-class formulas: verbatim or corrected")
      ->capture_default_str()
      ->check(CLI::IsMember({"verbatim", "corrected"}));
  app.add_flag("--degrees", g.degrees, "Interpret theta values given on the command line in degrees");
  app.add_flag("--allow-unconverged", g.allow_unconverged, "Exit 0 even if the optimiser did not converge");

  StateInput state_in;
  std::string keep_text, reduce_text, kind = "svetlichny";
  TradeoffArgs targs;
  std::string figure_name;
  int points = kDefaultGridPoints;

  auto* state_cmd = app.add_subcommand("state", "Print the amplitudes of a state");
  add_state_options(state_cmd, state_in);

  auto* reduce_cmd = app.add_subcommand("reduce", "Partial trace onto a set of qubits");
  add_state_options(reduce_cmd, state_in);
  reduce_cmd->add_option("--keep", keep_text, "Comma-separated qubits to keep, increasing")->required();

  auto* bound_cmd = app.add_subcommand("bound", "4*lambda_1 Svetlichny bound or CHSH maximum");
  add_state_options(bound_cmd, state_in);
  bound_cmd->add_option("--reduce", reduce_text, "Reduce onto these qubits first");
  bound_cmd->add_option("--kind", kind, "svetlichny or chsh")->capture_default_str()->check(CLI::IsMember({"svetlichny", "chsh"}));

  auto* max_cmd = app.add_subcommand("maximize", "Numerically maximise the Svetlichny value");
  add_state_options(max_cmd, state_in);
  max_cmd->add_option("--reduce", reduce_text, "Reduce onto these three qubits first");

  auto* trade_cmd = app.add_subcommand("tradeoff", "Check a trade-off bound against numerical maxima");
  trade_cmd->add_option("theorem", targs.theorem, "theorem1|theorem2|theorem3|eqn3p|corollary1|corollary2")->required();
  add_state_options(trade_cmd, state_in);
  trade_cmd->add_option("--theta", targs.theta, "State angle for GGHZ/MS theorems");
  trade_cmd->add_option("--n", targs.n, "Qubit count for the corollaries");
  trade_cmd->add_option("--coeffs", targs.coeffs, "alpha,beta,gamma,delta[,lambda] for theorem3/eqn3p");

  auto* fig_cmd = app.add_subcommand("figure", "Emit figure data");
  fig_cmd->add_option("figure", figure_name, "FIG1|FIG2|FIG3|FIG4")->required();
  fig_cmd->add_option("--points", points, "Grid points")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "svl: " << e.what() << "\n";
    return kArgumentError;
  }

  bool converged = true;
  std::string result;
  try {
    require_format(g);
    if (*state_cmd) result = cmd_state(g, state_in);
    else if (*reduce_cmd) result = cmd_reduce(g, state_in, keep_text);
    else if (*bound_cmd) result = cmd_bound(g, state_in, reduce_text, kind);
    else if (*max_cmd) result = cmd_maximize(g, state_in, reduce_text, converged);
    else if (*trade_cmd) result = cmd_tradeoff(g, state_in, targs, converged);
    else if (*fig_cmd) result = cmd_figure(g, figure_name, points);
  } catch (const UsageError& e) {
    err << "svl: " << e.what() << "\n";
    return kArgumentError;
  } catch (const SpecError& e) {
    err << "svl: " << e.what() << "\n";
    return kArgumentError;
  } catch (const Error& e) {
    err << "svl: " << e.what() << "\n";
    return kDomainError;
  }

  if (g.output.empty()) {
    out << result;
  } else {
    std::ofstream f(g.output, std::ios::binary);
    if (!f || !(f << result)) {
      err << "svl: cannot write " << g.output << "\n";
      return kArgumentError;
    }
  }
  if (!converged && !g.allow_unconverged) {
    err << "svl: optimiser did not converge (use --allow-unconverged to accept the best value found)\n";
    return kUnconverged;
  }
  return kOk;
}

}  // namespace svl::cli
