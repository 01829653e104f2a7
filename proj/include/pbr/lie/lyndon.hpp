#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pbr::lie {

/// Largest degree the Lyndon machinery is asked to enumerate.
inline constexpr int kMaxLyndonDegree = 12;

/// True when `w` is a nonempty word over {F, G} that is strictly smaller than
/// each of its proper rotations.
bool is_lyndon(std::string_view w);

/// A Lyndon word over the ordered alphabet F < G.
class LyndonWord {
 public:
  /// Throws std::invalid_argument unless `letters` is a Lyndon word.
  explicit LyndonWord(std::string letters);

  const std::string& str() const { return letters_; }
  int degree() const { return static_cast<int>(letters_.size()); }
  bool is_letter() const { return letters_.size() == 1; }

  /// Plain lexicographic comparison of the underlying words.
  friend auto operator<=>(const LyndonWord&, const LyndonWord&) = default;
  friend bool operator==(const LyndonWord&, const LyndonWord&) = default;

 private:
  std::string letters_;
};

/// Orders words by degree first, then lexicographically.  Used for output.
struct DegLexLess {
  bool operator()(const LyndonWord& a, const LyndonWord& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.str() < b.str();
  }
};

/// All Lyndon words of degree <= max_degree in (degree, lexicographic) order.
/// Throws BoundsError unless 1 <= max_degree <= 12.
std::vector<LyndonWord> lyndon_basis(int max_degree);

/// Two-letter Witt number: dimension of the degree-d part of the free Lie
/// algebra on two generators.
long witt_number(int degree);

/// Standard factorization w = uv, v the longest proper Lyndon suffix.
/// Requires degree >= 2.
std::pair<LyndonWord, LyndonWord> standard_factorization(const LyndonWord& w);

}  // namespace pbr::lie
