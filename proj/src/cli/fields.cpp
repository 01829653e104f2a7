#include <optional>
#include <sstream>

#include "pbr/cli/cli.hpp"
#include "pbr/cli/commands.hpp"
#include "pbr/errors.hpp"
#include "pbr/field/csv_io.hpp"
#include "pbr/field/trig.hpp"
#include "pbr/witness/verify.hpp"

namespace pbr::cli {

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string t;
  while (std::getline(ss, t, ',')) out.push_back(t);
  return out;
}

bool is_file(const std::string& t) { return t.size() > 4 && t.compare(t.size() - 4, 4, ".csv") == 0; }

// The witness patch over the whole support, padded by a margin band.
field::Domain2 witness_domain(const witness::WitnessFields& w, int n) {
  const double pp = 0.1 * (w.p_support_end() - w.p_support_begin());
  const double pq = 0.1 * (w.q_support_end() - w.q_support_begin());
  return field::Domain2::rectangle(n, w.p_support_begin() - pp, w.p_support_end() + pp, w.q_support_begin() - pq,
                                   w.q_support_end() + pq);
}

}  // namespace

FieldSet parse_fields(const std::string& spec, int n, std::uint64_t seed, std::size_t expect) {
  std::vector<std::string> tokens;
  std::optional<int> witness_N;
  bool witness = false;
  for (const std::string& t : split(spec)) {
    if (t == "sin-sin") {
      tokens.insert(tokens.end(), {"sin-p", "sin-q"});
    } else if (t == "witness" || t.rfind("witness:", 0) == 0) {
      witness = true;
      if (t.size() > 8) witness_N = std::stoi(t.substr(8));
      tokens.insert(tokens.end(), {"witness-F", "witness-G"});
    } else {
      tokens.push_back(t);
    }
  }
  if (tokens.size() != expect) {
    throw CliError(kUsage, "field spec '" + spec + "' gives " + std::to_string(tokens.size()) + " fields, expected " +
                               std::to_string(expect));
  }

  FieldSet set;
  std::optional<field::Domain2> fixed;
  std::vector<std::optional<field::FieldGrid>> grids(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!is_file(tokens[i])) continue;
    grids[i] = field::read_field_csv_file(tokens[i]);
    if (fixed && !(*fixed == grids[i]->domain)) throw DomainMismatch("field files live on different grids");
    fixed = grids[i]->domain;
  }
  std::optional<witness::WitnessFields> wf;
  if (witness) {
    wf = witness::build_witness();
    const field::Domain2 d = witness_domain(*wf, n);
    if (fixed && !(*fixed == d)) throw DomainMismatch("the witness pair cannot be combined with field files");
    fixed = d;
  }
  set.domain = fixed ? *fixed : field::Domain2::torus(n);
  const field::Domain2& d = set.domain;

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (grids[i]) {
      set.fields.push_back(field::sampled_field(d, grids[i]->values));
    } else if (t == "witness-F") {
      set.fields.push_back(witness_N ? wf->F_N(d, *witness_N) : wf->F(d));
    } else if (t == "witness-G") {
      set.fields.push_back(wf->G(d));
    } else if (t == "zero") {
      set.fields.push_back(field::constant(d, 0));
    } else if (t == "p") {
      set.fields.push_back(field::coord_p(d));
    } else if (t == "q") {
      set.fields.push_back(field::coord_q(d));
    } else if (t == "sin-p") {
      set.fields.push_back(field::sin(field::coord_p(d)));
    } else if (t == "sin-q") {
      set.fields.push_back(field::sin(field::coord_q(d)));
    } else if (t == "cos-p") {
      set.fields.push_back(field::cos(field::coord_p(d)));
    } else if (t == "cos-q") {
      set.fields.push_back(field::cos(field::coord_q(d)));
    } else if (t == "random" || t.rfind("random:", 0) == 0) {
      const std::uint64_t k = t.size() > 7 ? std::stoull(t.substr(7)) : 0;
      set.fields.push_back(field::trig_field(d, field::random_trig_terms(seed * 1000003ULL + k)));
    } else {
      throw CliError(kUsage, "unknown field '" + t + "'");
    }
  }
  return set;
}

}  // namespace pbr::cli
