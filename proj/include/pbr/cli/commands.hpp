#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "pbr/field/jet_field.hpp"

namespace pbr::cli {

struct Key {
  std::string name;
  nlohmann::json def;  // its type fixes the accepted type
  std::string help;
};

struct CommandSpec {
  std::string name, description, schema;
  std::vector<Key> keys;
};

const std::vector<CommandSpec>& command_specs();

struct FieldSet {
  field::Domain2 domain;
  std::vector<field::JetField> fields;
};

/// Resolves a comma-separated field spec.  Named fields live on the torus
/// with n nodes unless a CSV file or the witness pair fixes the domain.
/// Throws CliError(kUsage) when the count differs from `expect`.
FieldSet parse_fields(const std::string& spec, int n, std::uint64_t seed, std::size_t expect);

}  // namespace pbr::cli
