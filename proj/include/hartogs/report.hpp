#pragma once

#include <hartogs/certify.hpp>
#include <hartogs/polynomial.hpp>

#include <json.hpp>

#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hartogs {

using nlohmann::json;

inline json polynomial_to_json(const Polynomial& p) {
  json arr = json::array();
  for (const Rational& c : p.coefficients()) arr.push_back(to_string(c));
  return arr;
}

inline Polynomial polynomial_from_json(const json& arr) {
  std::vector<Rational> coeffs;
  for (const auto& item : arr) coeffs.push_back(parse_rational(item.get<std::string>()));
  return Polynomial(std::move(coeffs));
}

inline json domain_to_json(const Domain& inv) {
  return json{{"spec", inv.name()},   {"rank", inv.rank}, {"mult_a", inv.mult_a},
              {"mult_b", inv.mult_b}, {"dim", inv.dim},   {"genus", inv.genus},
              {"relations_hold", validate_invariants(inv)}};
}

inline json spec_to_json(const CartanHartogs& spec) {
  json factors = json::array();
  for (const Domain& f : spec.factors) factors.push_back(domain_to_json(f));
  json mu = json::array();
  for (const Rational& m : spec.mu) mu.push_back(to_string(m));
  return json{{"factors", factors},
              {"mu", mu},
              {"d0", spec.fiber_dim},
              {"base_dim", spec.base_dim()},
              {"total_dim", spec.total_dim()},
              {"mu_power_product", to_string(spec.mu_power_product())},
              {"alpha_threshold", to_string(spec.alpha_threshold())}};
}

struct ReportCheck {
  std::string name;
  bool pass = false;
  std::string measured;
  std::string tolerance;

  friend bool operator==(const ReportCheck&, const ReportCheck&) = default;
};

inline ReportCheck exact_check(const std::string& name, bool pass, const std::string& measured) {
  return {name, pass, measured, "exact"};
}

inline ReportCheck bounded_check(const std::string& name, double measured, double bound,
                                 bool below = true) {
  std::ostringstream m, t;
  m << std::scientific << std::setprecision(6) << measured;
  t << (below ? "< " : "> ") << std::scientific << std::setprecision(3) << bound;
  return {name, below ? measured < bound : measured > bound, m.str(), t.str()};
}

/// Machine-readable outcome of one CLI job. The JSON schema is versioned and
/// closed: re-parsing rejects unknown fields.
struct JobReport {
  static constexpr int kVersion = 1;

  std::string command;
  json inputs = json::object();
  json result = json::object();
  std::vector<ReportCheck> checks;
  std::optional<std::uint64_t> seed;

  bool all_checks_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  json to_json() const {
    json checks_json = json::array();
    for (const auto& c : checks)
      checks_json.push_back(json{{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}, {"tolerance", c.tolerance}});
    json out{{"version", kVersion},
             {"command", command},
             {"inputs", inputs},
             {"result", result},
             {"checks", checks_json}};
    if (seed) out["seed"] = *seed;
    return out;
  }

  static JobReport from_json(const json& j) {
    auto fail = [](const std::string& why) {
      throw std::invalid_argument("invalid job report: " + why);
    };
    if (!j.is_object()) fail("not an object");
    static const std::vector<std::string> known{"version", "command", "inputs",
                                                "result",  "checks",  "seed"};
    for (const auto& [key, value] : j.items()) {
      (void)value;
      if (std::find(known.begin(), known.end(), key) == known.end())
        fail("unknown field '" + key + "'");
    }
    for (const auto& key : {"version", "command", "inputs", "result", "checks"})
      if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
    if (!j["version"].is_number_integer() || j["version"].get<int>() != kVersion)
      fail("unsupported version");
    JobReport rep;
    rep.command = j["command"].get<std::string>();
    rep.inputs = j["inputs"];
    rep.result = j["result"];
    for (const auto& c : j["checks"]) {
      static const std::vector<std::string> check_keys{"name", "pass", "measured", "tolerance"};
      for (const auto& [key, value] : c.items()) {
        (void)value;
        if (std::find(check_keys.begin(), check_keys.end(), key) == check_keys.end())
          fail("unknown check field '" + key + "'");
      }
      for (const auto& key : check_keys)
        if (!c.contains(key)) fail("missing check field '" + key + "'");
      rep.checks.push_back({c["name"].get<std::string>(), c["pass"].get<bool>(),
                            c["measured"].get<std::string>(), c["tolerance"].get<std::string>()});
    }
    if (j.contains("seed")) rep.seed = j["seed"].get<std::uint64_t>();
    return rep;
  }

  void print_table(std::ostream& os) const {
    os << "command: " << command << "\n";
    if (seed) os << "seed: " << *seed << "\n";
    for (const auto& [key, value] : result.items()) {
      if (value.is_array() && !value.empty() && value[0].is_object()) {
        os << key << ":\n";
        for (const auto& item : value) os << "  - " << item.dump() << "\n";
      } else if (value.is_array()) {
        os << key << ": ";
        bool first = true;
        for (const auto& item : value) {
          os << (first ? "" : ", ") << (item.is_string() ? item.get<std::string>() : item.dump());
          first = false;
        }
        os << "\n";
      } else if (value.is_string()) {
        os << key << ": " << value.get<std::string>() << "\n";
      } else {
        os << key << ": " << value.dump() << "\n";
      }
    }
    if (!checks.empty()) {
      os << "checks:\n";
      for (const auto& c : checks)
        os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << "  measured=" << c.measured
           << "  tolerance=" << c.tolerance << "\n";
    }
  }
};

}  // namespace hartogs
