#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "pbr/cli/cli.hpp"
#include "pbr/cli/commands.hpp"
#include "pbr/cli/json_writer.hpp"
#include "pbr/errors.hpp"
#include "pbr/field/advect.hpp"
#include "pbr/field/csv_io.hpp"
#include "pbr/field/functionals.hpp"
#include "pbr/field/grid.hpp"
#include "pbr/lie/expansion.hpp"
#include "pbr/rate/rate_scan.hpp"
#include "pbr/witness/lemma.hpp"
#include "pbr/witness/verify.hpp"

#ifndef PBR_VERSION
#define PBR_VERSION "0.0.0"
#endif

namespace pbr::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Artifacts are staged in memory and written at the end, each through a
// temporary file and a rename.  On failure the ones already written are
// removed.
class Artifacts {
 public:
  void add(std::string path, std::string content) { files_.emplace_back(std::move(path), std::move(content)); }
  void commit(std::ostream& log) {
    std::vector<std::string> done;
    try {
      for (const auto& [path, content] : files_) {
        const std::string tmp = path + ".tmp";
        {
          std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
          if (!out) throw CliError(kIoError, "cannot write " + path);
          out << content;
          out.flush();
          if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw CliError(kIoError, "write failed for " + path);
          }
        }
        std::error_code ec;
        fs::rename(tmp, path, ec);
        if (ec) {
          fs::remove(tmp, ec);
          throw CliError(kIoError, "cannot move artifact into place: " + path);
        }
        done.push_back(path);
        log << "wrote " << path << "\n";
      }
    } catch (...) {
      for (const auto& p : done) {
        std::error_code ec;
        fs::remove(p, ec);
      }
      throw;
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

std::string csv_provenance(const RunConfig& cfg) {
  return "# pbr " + version() + " config=" + dump_json(cfg.normalized(), -1) + "\n";
}

json with_provenance(const RunConfig& cfg, json body) {
  body["config"] = cfg.normalized();
  body["version"] = version();
  return body;
}

std::string num(double x) { return field::format_double(x); }

int status(bool pass) { return pass ? kPass : kCheckFailed; }

struct Ctx {
  const RunConfig& cfg;
  std::ostream& log;
  Artifacts& art;
  const json& o() const { return cfg.options; }
  int i(const char* k) const { return o().at(k).get<int>(); }
  double d(const char* k) const { return o().at(k).get<double>(); }
  std::string s(const char* k) const { return o().at(k).get<std::string>(); }
  std::uint64_t seed() const { return o().at("seed").get<std::uint64_t>(); }
  FieldSet fields(std::size_t count = 2) const { return parse_fields(s("fields"), i("n"), seed(), count); }
  void json_out(const json& body) const { art.add(cfg.out, dump_json(with_provenance(cfg, body))); }
};

witness::WitnessConfig witness_config(const Ctx& c) {
  witness::WitnessConfig w;
  w.delta = c.d("delta");
  w.c1 = c.d("c1");
  w.kappa = c.d("kappa");
  w.w0 = c.d("w0");
  w.a0 = c.d("a0");
  w.gamma = c.d("gamma");
  w.w_tail = c.d("w_tail");
  w.a_taper = c.d("a_taper");
  if (c.o().contains("N")) w.N_list = c.o().at("N").get<std::vector<int>>();
  if (c.o().contains("n")) w.grid_n = c.i("n");
  if (c.o().contains("coarse_n")) w.coarse_n = c.i("coarse_n");
  return w;
}

int cmd_bch(const Ctx& c) {
  const std::string which = c.s("which");
  lie::ExpansionReport r;
  if (which == "commutator") {
    r = lie::verify_commutator_expansion(c.i("T"));
  } else if (which == "double") {
    r = lie::verify_double_bracket_expansion(c.i("T"));
  } else {
    throw CliError(kUsage, "--which must be commutator or double");
  }
  c.json_out(lie::to_json(r));
  c.log << "bch " << which << " T=" << r.T << ": " << (r.match ? "match" : "MISMATCH") << "\n";
  for (const auto& m : r.mismatches) c.log << "  " << m << "\n";
  return status(r.match);
}

int cmd_lemma_r(const Ctx& c) {
  const double alpha = c.d("alpha"), gamma = c.d("gamma"), bound = c.d("bound");
  const witness::RExtrema e = witness::r_extrema(alpha, gamma);
  json body{{"r_minus_one", e.at_minus_one},
            {"r_one", e.at_one},
            {"critical_z", e.critical_z},
            {"critical_value", e.critical_value},
            {"critical_inside", e.critical_inside},
            {"max_abs", e.max_abs},
            {"bound", bound},
            {"kappa", nullptr}};
  const bool pass = e.max_abs < bound;
  if (pass && bound < 1) body["kappa"] = witness::kappa_search(gamma, bound, alpha);
  c.json_out(body);
  c.log << "r(-1) = " << num(e.at_minus_one) << ", r(1) = " << num(e.at_one) << ", critical value "
        << num(e.critical_value) << ", max|r| " << num(e.max_abs) << (pass ? " < " : " >= ") << num(bound) << "\n";
  return status(pass);
}

int cmd_witness_build(const Ctx& c) {
  const witness::WitnessFields f = witness::build_witness(witness_config(c));
  json inv = json::array();
  bool pass = true;
  for (const auto& k : witness::check_invariants(f)) {
    inv.push_back({{"name", k.name}, {"value", k.value}, {"bound", k.bound}, {"pass", k.pass}});
    pass = pass && k.pass;
    if (!k.pass) c.log << "invariant failed: " << k.name << " (" << num(k.value) << ")\n";
  }
  c.json_out({{"witness", f.to_json()}, {"kappa", f.kappa()}, {"invariants", inv}, {"pass", pass}});
  c.log << "witness kappa " << num(f.kappa()) << ", invariants " << (pass ? "pass" : "FAIL") << "\n";
  return status(pass);
}

int cmd_witness_verify(const Ctx& c) {
  const witness::WitnessConfig wc = witness_config(c);
  const witness::WitnessFields f = witness::build_witness(wc);
  const witness::VerifyReport r = witness::verify_witness(f, wc.N_list, wc.grid_n, wc.coarse_n);
  std::string csv = csv_provenance(c.cfg) + "N,ratio_max,ratio_min,residual,maxR\n";
  for (const auto& row : r.rows) {
    csv += std::to_string(row.N) + "," + num(row.ratio_max) + "," + num(row.ratio_min) + "," + num(row.residual) +
           "," + num(row.maxR) + "\n";
    c.log << "N=" << row.N << " ratio_max " << num(row.ratio_max) << " ratio_min " << num(row.ratio_min)
          << " residual " << num(row.residual) << " maxR " << num(row.maxR) << "\n";
  }
  c.art.add(c.cfg.out, csv);
  c.log << "max {{F,G},F} = " << num(r.base_max) << "; residual*N spread " << num(r.residual_spread) << "; "
        << (r.pass() ? "pass" : "FAIL") << "\n";
  return status(r.pass());
}

int cmd_lh_check(const Ctx& c) {
  const FieldSet fs = c.fields();
  const field::LhReport r = field::lh_check(fs.fields[0], fs.fields[1], c.d("tol"));
  c.json_out({{"lhs", r.lhs}, {"rhs", r.rhs}, {"margin", r.margin}, {"tol", r.tol}, {"pass", r.pass}});
  c.log << "lh-check lhs " << num(r.lhs) << " rhs " << num(r.rhs) << " margin " << num(r.margin) << ": "
        << (r.pass ? "pass" : "FAIL") << "\n";
  return status(r.pass);
}

int cmd_kolmogorov(const Ctx& c) {
  const FieldSet fs = c.fields();
  const int k = c.i("k");
  const field::KolmogorovReport r = k > 0 ? field::kolmogorov_ratio(fs.fields[0], fs.fields[1], k, c.i("m"))
                                          : field::kolmogorov_ratio(fs.fields[0], fs.fields[1], c.i("N"));
  c.json_out({{"word", r.word}, {"osc", r.osc_value}, {"ratio", r.ratio}});
  c.log << r.word << ": osc " << num(r.osc_value) << " ratio " << num(r.ratio) << "\n";
  return kPass;
}

int cmd_integral_identity(const Ctx& c) {
  const FieldSet fs = parse_fields(c.s("fields") + "," + c.s("R"), c.i("n"), c.seed(), 3);
  const auto& F = fs.fields[0];
  const auto& G = fs.fields[1];
  const field::IdentityReport id = field::integral_identity_check(F, G, fs.fields[2]);
  const field::IdentityReport cor = field::square_sum_identity(F, G);
  const double tol = c.d("tol");
  const bool pass = id.rel_err <= tol && cor.rel_err <= tol;
  auto rep = [](const field::IdentityReport& r) { return json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"rel_err", r.rel_err}}; };
  c.json_out({{"identity", rep(id)},
              {"square_sum", rep(cor)},
              {"psi", field::psi(F, G)},
              {"zero_mean_residual", field::zero_mean_residual(F, G)},
              {"tol", tol},
              {"pass", pass}});
  c.log << "integral identity rel_err " << num(id.rel_err) << ", Psi identity rel_err " << num(cor.rel_err) << ": "
        << (pass ? "pass" : "FAIL") << "\n";
  return status(pass);
}

int cmd_y_bound(const Ctx& c) {
  const FieldSet fs = c.fields();
  const field::YBoundReport r =
      field::y_bound_check(fs.fields[0], fs.fields[1], c.d("s"), c.d("t"), c.i("steps"), c.d("tol"));
  c.json_out({{"maxY", r.maxY}, {"bound", r.bound}, {"slack", r.slack}, {"tol", r.tol}, {"pass", r.pass}});
  c.log << "max Y " << num(r.maxY) << " bound " << num(r.bound) << " slack " << num(r.slack) << ": "
        << (r.pass ? "pass" : "FAIL") << "\n";
  return status(r.pass);
}

int cmd_symmetry(const Ctx& c) {
  const FieldSet fs = c.fields();
  const auto v = c.o().at("v").get<std::vector<double>>();
  if (v.size() != 4) throw CliError(kUsage, "--v needs four weights");
  const field::FunctionalVector fv(v[0], v[1], v[2], v[3]);
  const double tol = c.d("tol");
  std::vector<field::SymmetryReport> reps;
  for (auto e : {field::SymmetryElement::A, field::SymmetryElement::B, field::SymmetryElement::C})
    reps.push_back(field::symmetry_check(fv, fs.fields[0], fs.fields[1], e, tol));
  reps.push_back(field::symmetry_check(fv, fs.fields[0], fs.fields[1], c.d("alpha"), c.d("beta"), tol));
  json checks = json::array();
  bool pass = true;
  for (const auto& r : reps) {
    checks.push_back({{"relation", r.relation}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"rel_err", r.rel_err}, {"pass", r.pass}});
    pass = pass && r.pass;
    c.log << r.relation << ": rel_err " << num(r.rel_err) << (r.pass ? "" : " FAIL") << "\n";
  }
  c.json_out({{"checks", checks}, {"pass", pass}});
  return status(pass);
}

int cmd_rate_scan(const Ctx& c) {
  const FieldSet fs = c.fields();
  rate::RateOptions opt;
  opt.search.budget = c.i("budget");
  opt.search.search.n = c.i("search_n");
  opt.search.final.n = c.i("n");
  opt.search.seed = c.seed();
  opt.families.clear();
  std::stringstream ss(c.s("families"));
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name == "oscillatory") {
      opt.families.push_back(rate::FamilyKind::oscillatory);
    } else if (name == "modulated") {
      opt.families.push_back(rate::FamilyKind::modulated);
    } else if (name == "random-fourier") {
      opt.families.push_back(rate::FamilyKind::random_fourier);
    } else {
      throw CliError(kUsage, "unknown family '" + name + "'");
    }
  }
  const std::string which = c.s("which");
  if (which != "maxFG" && which != "double") throw CliError(kUsage, "--which must be maxFG or double");
  const rate::PhiKind kind = which == "maxFG" ? rate::PhiKind::max_bracket : rate::PhiKind::double_bracket;
  const auto eps = rate::log_grid(c.d("eps_min"), c.d("eps_max"), c.i("points"));
  const rate::RateScanReport r = rate::rate_report(fs.fields[0], fs.fields[1], eps, kind, opt);

  std::string csv = csv_provenance(c.cfg) + "eps,best_phi,decrease,family,params\n";
  for (const auto& row : r.rows) {
    csv += num(row.eps) + "," + num(row.best_phi) + "," + num(row.decrease) + "," + rate::family_name(row.family) +
           "," + row.params + "\n";
  }
  json summary{{"which", which},
               {"baseline", r.baseline},
               {"psi", r.psi},
               {"psi_zero", r.psi_zero},
               {"C", r.fit.C},
               {"exponent", r.fit.exponent},
               {"residual", r.fit.residual},
               {"max_residual", r.fit.max_residual},
               {"fit_ok", r.fit_ok},
               {"fit_warnings", r.fit.warnings},
               {"reference_exponents", {1.0 / 3, 0.5, 2.0 / 3}},
               {"nearest_reference", r.nearest_reference},
               {"one_sided", "best values are upper bounds on the perturbed infimum; decreases are lower bounds"},
               {"family_design", "heuristic families; no optimality claim"},
               {"pass", r.pass()}};
  if (kind == rate::PhiKind::max_bracket) {
    summary["checks"] = {{"strict_decreases", r.strict_decreases},
                         {"exponent_at_least", opt.min_exponent},
                         {"exponent_ok", r.exponent_ok},
                         {"two_thirds_factor", opt.two_thirds_factor},
                         {"two_thirds_ok", r.two_thirds_ok}};
  } else {
    summary["checks"] = {{"C_one_third", r.C_one_third}, {"one_third_ok", r.one_third_ok}};
  }
  c.art.add(c.cfg.out, csv);
  c.art.add(fs::path(c.cfg.out).replace_extension(".json").string(), dump_json(with_provenance(c.cfg, summary)));
  c.log << "rate-scan " << which << ": exponent " << num(r.fit.exponent) << " C " << num(r.fit.C) << " residual "
        << num(r.fit.residual) << " (nearest " << r.nearest_reference << "): " << (r.pass() ? "pass" : "FAIL")
        << "\n";
  return status(r.pass());
}

int cmd_bracket_eval(const Ctx& c) {
  const FieldSet fs = c.fields();
  const field::BracketWord w = field::BracketWord::parse(c.s("word"));
  const field::JetField X = field::iterated_bracket(w, fs.fields[0], fs.fields[1]);
  const Eigen::ArrayXXd v = field::sample(X);
  std::ostringstream os;
  field::write_field_csv(os, fs.domain, v);
  c.art.add(c.cfg.out, csv_provenance(c.cfg) + os.str());
  c.log << w.to_string() << ": max " << num(v.maxCoeff()) << " min " << num(v.minCoeff()) << "\n";
  return kPass;
}

}  // namespace

std::string version() { return PBR_VERSION; }

int run(const RunConfig& cfg, std::ostream& log) {
  static const std::map<std::string, std::function<int(const Ctx&)>> table{
      {"bch", cmd_bch},
      {"lemma-r", cmd_lemma_r},
      {"witness-build", cmd_witness_build},
      {"witness-verify", cmd_witness_verify},
      {"lh-check", cmd_lh_check},
      {"kolmogorov", cmd_kolmogorov},
      {"integral-identity", cmd_integral_identity},
      {"y-bound", cmd_y_bound},
      {"symmetry", cmd_symmetry},
      {"rate-scan", cmd_rate_scan},
      {"bracket-eval", cmd_bracket_eval},
  };
  const auto it = table.find(cfg.command);
  if (it == table.end()) throw CliError(kUsage, "unknown command '" + cfg.command + "'");
  const int threads = cfg.options.at("threads").get<int>();
  if (threads < 0) throw CliError(kUsage, "--threads must be >= 0");
  field::set_thread_count(threads);
  Artifacts art;
  const int code = it->second(Ctx{cfg, log, art});
  art.commit(log);
  return code;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = parse_config(args, out);
    if (cfg.command.empty()) return kPass;
    const auto t0 = std::chrono::steady_clock::now();
    const int code = run(cfg, out);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", secs);
    out << cfg.command << " finished in " << buf << " s, exit " << code << "\n";
    return code;
  } catch (const CliError& e) {
    err << "pbr: " << e.what() << "\n";
    return e.code();
  } catch (const CheckFailure& e) {
    err << "pbr: check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::ios_base::failure& e) {
    err << "pbr: " << e.what() << "\n";
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "pbr: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    // preconditions, bounds, domain mismatches and malformed values
    err << "pbr: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace pbr::cli
