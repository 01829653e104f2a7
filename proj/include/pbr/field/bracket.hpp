#pragma once

#include <memory>
#include <string>

#include "pbr/field/jet_field.hpp"

namespace pbr::field {

/// {F,G} = F_q G_p - F_p G_q, so that {p, q} = -1.
///
/// The result's jet of order k is assembled from order-(k+1) jets of the
/// inputs, so its available order is one less than theirs.  `order_out`
/// caps the result order (default: as high as the inputs allow).
JetField poisson(const JetField& F, const JetField& G, int order_out = -1);

/// Nesting pattern of an iterated bracket over the symbols F and G.
class BracketWord {
 public:
  enum class Letter { F, G };

  static BracketWord letter(Letter l);
  static BracketWord bracket(const BracketWord& a, const BracketWord& b);
  /// Parses e.g. "{{F,G},F}"; whitespace is ignored.
  static BracketWord parse(const std::string& text);
  /// (ad_F)^N G = {...{{G,F},F}...,F}.
  static BracketWord ad_power(int N);
  /// (ad_H)^m G with H = (ad_G)^k F.
  static BracketWord ad_iterated(int k, int m);

  bool is_letter() const;
  int letter_count() const;
  std::string to_string() const;

  /// Evaluates the pattern on fields by nested poisson calls.
  JetField evaluate(const JetField& F, const JetField& G) const;

 private:
  struct Node;
  explicit BracketWord(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Letter count at most 5 (order-4 jets allow four nested brackets).
JetField iterated_bracket(const BracketWord& word, const JetField& F, const JetField& G);

}  // namespace pbr::field
