#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "pbr/cli/cli.hpp"
#include "pbr/cli/commands.hpp"

namespace pbr::cli {

namespace {

using nlohmann::json;

std::vector<CommandSpec> build_specs() {
  const std::vector<Key> witness_keys{
      {"delta", 0.05, "spacing of c1 < c2 < c3 < c4"},
      {"c1", 125.0, "left end of the construction core"},
      {"kappa", 0.0, "alpha half-width; 0 computes it from the lemma"},
      {"w0", 1.05, "level of w on c1 and c4"},
      {"a0", 1.1, "a(c1)"},
      {"gamma", 1.63, "gamma of the lemma"},
      {"w_tail", 120.0, "length of the slow tails of w"},
      {"a_taper", 40.0, "length of the tapers of a"},
  };
  auto with = [](std::vector<Key> base, std::vector<Key> more) {
    base.insert(base.end(), more.begin(), more.end());
    return base;
  };
  const Key fields{"fields", "sin-sin", "field pair: sin-sin, witness[:N], or two of zero, p, q, sin-p, sin-q, "
                                        "cos-p, cos-q, random[:k], FILE.csv"};
  return {
      {"bch", "Exact Lie-series expansion of a flow word",
       "JSON: word, T, coefficients[{tau_power, terms[{lyndon, num, den}]}], match, mismatches",
       {{"which", "commutator", "flow word: commutator or double"}, {"T", 5, "truncation order 1..8"}}},
      {"lemma-r", "Values and extrema of r(alpha, gamma, z) = (alpha z + 1)^2 - gamma (alpha + z)",
       "JSON: r_minus_one, r_one, critical_z, critical_value, critical_inside, max_abs, bound, kappa",
       {{"alpha", 1.1, "alpha"}, {"gamma", 1.63, "gamma"}, {"bound", 0.99, "bound on max |r| over z in [-1, 1]"}}},
      {"witness-build", "Build the counterexample splines and check their invariants",
       "JSON: witness{config, splines}, kappa, invariants[{name, value, bound, pass}]", witness_keys},
      {"witness-verify", "Double brackets of the perturbed pair against u'^2 R",
       "CSV: N,ratio_max,ratio_min,residual,maxR",
       with(witness_keys, {{"N", json::array({100, 1000, 10000}), "comma-separated N values"},
                           {"n", 2048, "fine patch nodes per axis"},
                           {"coarse_n", 512, "coarse patch nodes per axis"}})},
      {"lh-check", "Landau-Hadamard type inequality for a pair", "JSON: lhs, rhs, margin, tol, pass",
       {fields, {"n", 256, "nodes per axis"}, {"tol", -1.0, "tolerance; negative selects 10 h^2"}}},
      {"kolmogorov", "Oscillation ratio of an iterated bracket", "JSON: word, osc, ratio",
       {fields, {"n", 128, "nodes per axis"}, {"N", 2, "power of ad_F"},
        {"k", 0, "k > 0 selects (ad_H)^m G with H = (ad_G)^k F"}, {"m", 1, "outer power with k"}}},
      {"integral-identity", "Integration-by-parts identity and the Psi identity",
       "JSON: identity{lhs, rhs, rel_err}, square_sum{lhs, rhs, rel_err}, psi, zero_mean_residual, tol, pass",
       {fields, {"R", "cos-p", "third field of the identity"}, {"n", 256, "nodes per axis"},
        {"tol", 1e-6, "relative tolerance"}}},
      {"y-bound", "Bound on Y for a scaled pair via flows", "JSON: maxY, bound, slack, tol, pass",
       {fields, {"n", 64, "nodes per axis"}, {"s", 0.1, "scale of F"}, {"t", 0.1, "scale of G"},
        {"steps", 64, "RK4 steps per unit time"}, {"tol", 1e-4, "slack tolerance"}}},
      {"symmetry", "Dihedral and scaling symmetries of Phi^v",
       "JSON: checks[{relation, lhs, rhs, rel_err, pass}], pass",
       {fields, {"n", 128, "nodes per axis"}, {"v", json::array({1.0, 1.0, 1.0, 1.0}), "weights v1,v2,v3,v4"},
        {"alpha", 2.0, "scale of F"}, {"beta", 3.0, "scale of G"}, {"tol", 1e-12, "relative tolerance"}}},
      {"rate-scan", "Upper bounds on the perturbed infimum and power-law fits",
       "CSV: eps,best_phi,decrease,family,params; JSON (same name, .json): C, exponent, residual, "
       "reference_exponents, checks",
       {fields, {"which", "maxFG", "maxFG or double"}, {"eps_min", 1e-4, "smallest radius"},
        {"eps_max", 1e-1, "largest radius"}, {"points", 10, "log-spaced radii"},
        {"budget", 64, "Phi evaluations per family and radius"}, {"n", 256, "nodes per axis of reported values"},
        {"search_n", 128, "nodes per axis during the search"},
        {"families", "oscillatory,modulated,random-fourier", "comma-separated families"}}},
      {"bracket-eval", "Node values of an iterated bracket", "CSV: field layout n,h,kind / metadata / n rows",
       {fields, {"word", "{F,G}", "bracket word in F and G, at most 5 letters"}, {"n", 128, "nodes per axis"}}},
  };
}

const std::vector<Key>& common_keys() {
  static const std::vector<Key> k{{"seed", 0, "seed for random fields and searches"},
                                  {"threads", 0, "worker thread cap (0 = all cores); never changes results"}};
  return k;
}

[[noreturn]] void usage(const std::string& msg) { throw CliError(kUsage, msg); }

double parse_number(const std::string& key, const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) usage("--" + key + ": not a number: '" + s + "'");
  return v;
}

json parse_scalar(const std::string& key, const std::string& s, const json& def) {
  if (def.is_string()) return s;
  const double v = parse_number(key, s);
  if (def.is_number_integer()) {
    if (v != std::floor(v) || std::abs(v) > 9e15) usage("--" + key + ": expected an integer, got '" + s + "'");
    return static_cast<std::int64_t>(v);
  }
  return v;
}

json parse_flag(const std::string& key, const std::string& s, const json& def) {
  if (!def.is_array()) return parse_scalar(key, s, def);
  json out = json::array();
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_scalar(key, item, def.front()));
  if (out.empty()) usage("--" + key + ": empty list");
  return out;
}

json coerce_scalar(const std::string& key, const json& v, const json& def) {
  if (def.is_string()) {
    if (!v.is_string()) usage("config key '" + key + "' must be a string");
    return v;
  }
  if (!v.is_number()) usage("config key '" + key + "' must be a number");
  if (def.is_number_integer()) {
    if (!v.is_number_integer()) usage("config key '" + key + "' must be an integer");
    return v.get<std::int64_t>();
  }
  return v.get<double>();
}

json coerce(const std::string& key, const json& v, const json& def) {
  if (!def.is_array()) return coerce_scalar(key, v, def);
  if (!v.is_array()) return json::array({coerce_scalar(key, v, def.front())});
  if (v.empty()) usage("config key '" + key + "' must be a non-empty list");
  json out = json::array();
  for (const json& x : v) out.push_back(coerce_scalar(key, x, def.front()));
  return out;
}

bool is_file_spec(const std::string& token) {
  return token.size() > 4 && token.compare(token.size() - 4, 4, ".csv") == 0;
}

std::string default_out(const std::string& command, const std::string& ext) {
  const char* dir = std::getenv("PBR_OUT_DIR");
  const std::filesystem::path base = dir && *dir ? dir : ".";
  return (base / (command + ext)).string();
}

}  // namespace

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> s = build_specs();
  return s;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& c : command_specs()) n.push_back(c.name);
    return n;
  }();
  return names;
}

json RunConfig::normalized() const {
  json j = options;
  j["command"] = command;
  return j;
}

RunConfig parse_config(const std::vector<std::string>& args, std::ostream& help) {
  CLI::App app{"pbr: Poisson-bracket functionals, Lie-series checks and the lower-semicontinuity witness", "pbr"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", version());

  struct Slot {
    const CommandSpec* spec;
    CLI::App* sub;
    std::map<std::string, std::string> values;
    std::string config, out;
  };
  std::vector<Slot> slots;
  slots.reserve(command_specs().size());
  for (const CommandSpec& c : command_specs()) {
    CLI::App* sub = app.add_subcommand(c.name, c.description);
    sub->footer("Output schema: " + c.schema);
    slots.push_back({&c, sub, {}, {}, {}});
  }
  for (Slot& s : slots) {
    std::vector<Key> keys = s.spec->keys;
    keys.insert(keys.end(), common_keys().begin(), common_keys().end());
    for (const Key& k : keys) {
      const std::string names = k.name == "T" ? "-T,--T" : "--" + k.name;
      s.sub->add_option(names, s.values[k.name], k.help + " (default " + k.def.dump() + ")");
    }
    s.sub->add_option("--config", s.config, "JSON file of option values; flags win");
    s.sub->add_option("--out", s.out, "artifact path (default $PBR_OUT_DIR/<command>.<ext>)");
  }

  if (!args.empty() && !args.front().empty() && args.front()[0] != '-') {
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), args.front()) == names.end()) usage("unknown command '" + args.front() + "'");
  }
  std::vector<const char*> argv{"pbr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, help, help);
    return {};
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, help, help);
    return {};
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    usage(msg.str().empty() ? std::string(e.what()) : msg.str());
  }

  for (Slot& s : slots) {
    if (!s.sub->parsed()) continue;
    RunConfig cfg;
    cfg.command = s.spec->name;
    std::vector<Key> keys = s.spec->keys;
    keys.insert(keys.end(), common_keys().begin(), common_keys().end());
    std::map<std::string, const Key*> by_name;
    for (const Key& k : keys) by_name[k.name] = &k;
    for (const Key& k : keys) cfg.options[k.name] = k.def;

    if (!s.config.empty()) {
      std::ifstream in(s.config);
      if (!in) throw CliError(kIoError, "cannot open config file " + s.config);
      json file;
      try {
        file = json::parse(in);
      } catch (const json::parse_error& e) {
        usage("config file " + s.config + ": " + e.what());
      }
      if (!file.is_object()) usage("config file " + s.config + " must hold a JSON object");
      for (const auto& [key, v] : file.items()) {
        if (key == "command") {
          if (v != cfg.command) usage("config file is for command " + v.dump() + ", not " + cfg.command);
          continue;
        }
        const auto it = by_name.find(key);
        if (it == by_name.end()) usage("unknown config key '" + key + "' for " + cfg.command);
        cfg.options[key] = coerce(key, v, it->second->def);
      }
    }
    for (const Key& k : keys) {
      if (s.sub->count(k.name == "T" ? "-T" : "--" + k.name)) {
        cfg.options[k.name] = parse_flag(k.name, s.values[k.name], k.def);
      }
    }

    // referenced files must exist now
    for (const char* key : {"fields", "R"}) {
      if (!cfg.options.contains(key)) continue;
      std::stringstream ss(cfg.options[key].get<std::string>());
      std::string token;
      while (std::getline(ss, token, ',')) {
        if (is_file_spec(token) && !std::filesystem::exists(token))
          throw CliError(kIoError, "field file not found: " + token);
      }
    }
    const std::string ext = s.spec->schema.rfind("CSV", 0) == 0 ? ".csv" : ".json";
    cfg.out = s.out.empty() ? default_out(cfg.command, ext) : s.out;
    return cfg;
  }
  usage("no command given");
}

}  // namespace pbr::cli
