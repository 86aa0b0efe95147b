#include "svl/state_spec.hpp"

#include <numbers>

namespace svl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw SpecError(std::string("state spec is missing \"") + key + "\"");
  return j.at(key);
}

double number(const nlohmann::json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) throw SpecError(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

int integer(const nlohmann::json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) throw SpecError(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* key : allowed) ok = ok || item.key() == key;
    if (!ok) throw SpecError("unknown state spec field \"" + item.key() + "\"");
  }
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::GGHZ: return "GGHZ";
    case Family::MS: return "MS";
    case Family::WCLASS: return "WCLASS";
    case Family::DICKE: return "DICKE";
    case Family::CUSTOM: return "CUSTOM";
  }
  return "?";
}

Family StateSpec::family() const {
  return std::visit(Overloaded{[](const GghzParams&) { return Family::GGHZ; },
                               [](const MsParams&) { return Family::MS; },
                               [](const WClassCoefficients&) { return Family::WCLASS; },
                               [](const DickeParams&) { return Family::DICKE; },
                               [](const CustomParams&) { return Family::CUSTOM; }},
                    params);
}

int StateSpec::num_qubits() const {
  return std::visit(Overloaded{[](const GghzParams& p) { return p.n; },
                               [](const MsParams& p) { return p.n; },
                               [](const WClassCoefficients&) { return 4; },
                               [](const DickeParams& p) { return p.n; },
                               [](const CustomParams& p) { return p.n; }},
                    params);
}

PureState StateSpec::build() const {
  return std::visit(Overloaded{[](const GghzParams& p) { return make_gghz(p.n, p.theta); },
                               [](const MsParams& p) { return make_ms(p.n, p.theta); },
                               [](const WClassCoefficients& w) { return make_wclass(w); },
                               [](const DickeParams& p) { return make_dicke(p.n, p.m); },
                               [](const CustomParams& p) { return make_custom(p.n, p.amplitudes); }},
                    params);
}

StateSpec parse_state_spec(const nlohmann::json& j, bool degrees) {
  if (!j.is_object()) throw SpecError("state spec must be a JSON object");
  const auto& fam = field(j, "family");
  if (!fam.is_string()) throw SpecError("\"family\" must be a string");
  const std::string name = fam.get<std::string>();
  const double angle_scale = degrees ? std::numbers::pi / 180.0 : 1.0;

  if (name == "GGHZ" || name == "MS") {
    reject_unknown_keys(j, {"family", "n", "theta"});
    const int n = integer(j, "n");
    const double theta = number(j, "theta") * angle_scale;
    if (name == "GGHZ") return StateSpec{GghzParams{n, theta}};
    return StateSpec{MsParams{n, theta}};
  }
  if (name == "WCLASS") {
    reject_unknown_keys(j, {"family", "n", "alpha", "beta", "gamma", "delta", "lambda"});
    if (j.contains("n") && integer(j, "n") != 4) throw InvalidArity("WCLASS states have 4 qubits");
    WClassCoefficients w{number(j, "alpha"), number(j, "beta"), number(j, "gamma"), number(j, "delta"),
                         j.contains("lambda") ? number(j, "lambda") : 0.0};
    require_normalized(w);
    return StateSpec{w};
  }
  if (name == "DICKE") {
    reject_unknown_keys(j, {"family", "n", "m"});
    return StateSpec{DickeParams{integer(j, "n"), integer(j, "m")}};
  }
  if (name == "CUSTOM") {
    reject_unknown_keys(j, {"family", "n", "amplitudes"});
    CustomParams p;
    p.n = integer(j, "n");
    const auto& arr = field(j, "amplitudes");
    if (!arr.is_array()) throw SpecError("\"amplitudes\" must be an array");
    for (const auto& a : arr) {
      if (a.is_number()) {
        p.amplitudes.emplace_back(a.get<double>(), 0.0);
      } else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
        p.amplitudes.emplace_back(a[0].get<double>(), a[1].get<double>());
      } else {
        throw SpecError("each amplitude must be a number or a [re, im] pair");
      }
    }
    return StateSpec{std::move(p)};
  }
  throw SpecError("unknown state family \"" + name + "\"");
}

nlohmann::json to_json(const StateSpec& spec) {
  return std::visit(
      Overloaded{
          [](const GghzParams& p) { return nlohmann::json{{"family", "GGHZ"}, {"n", p.n}, {"theta", p.theta}}; },
          [](const MsParams& p) { return nlohmann::json{{"family", "MS"}, {"n", p.n}, {"theta", p.theta}}; },
          [](const WClassCoefficients& w) {
            return nlohmann::json{{"family", "WCLASS"}, {"alpha", w.alpha}, {"beta", w.beta},
                                  {"gamma", w.gamma},   {"delta", w.delta}, {"lambda", w.lambda}};
          },
          [](const DickeParams& p) { return nlohmann::json{{"family", "DICKE"}, {"n", p.n}, {"m", p.m}}; },
          [](const CustomParams& p) {
            nlohmann::json amps = nlohmann::json::array();
            for (const auto& a : p.amplitudes) amps.push_back({a.real(), a.imag()});
            return nlohmann::json{{"family", "CUSTOM"}, {"n", p.n}, {"amplitudes", amps}};
          }},
      spec.params);
}

}  // namespace svl
