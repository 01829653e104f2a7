#include "pbr/lie/lyndon.hpp"

#include <algorithm>
#include <stdexcept>

#include "pbr/errors.hpp"

namespace pbr::lie {

bool is_lyndon(std::string_view w) {
  if (w.empty()) return false;
  for (char c : w) {
    if (c != 'F' && c != 'G') return false;
  }
  const std::size_t n = w.size();
  std::string doubled(w);
  doubled += w;
  for (std::size_t k = 1; k < n; ++k) {
    if (!(w < std::string_view(doubled).substr(k, n))) return false;
  }
  return true;
}

LyndonWord::LyndonWord(std::string letters) : letters_(std::move(letters)) {
  if (!is_lyndon(letters_)) {
    throw std::invalid_argument("not a Lyndon word over {F,G}: '" + letters_ + "'");
  }
}

std::vector<LyndonWord> lyndon_basis(int max_degree) {
  if (max_degree < 1 || max_degree > kMaxLyndonDegree) {
    throw BoundsError("lyndon_basis: max_degree must lie in [1, 12], got " +
                      std::to_string(max_degree));
  }
  std::vector<LyndonWord> out;
  for (int d = 1; d <= max_degree; ++d) {
    // Words of length d enumerated as bit patterns; F=0 < G=1 keeps
    // numeric order equal to lexicographic order.
    for (unsigned long bits = 0; bits < (1ul << d); ++bits) {
      std::string w(static_cast<std::size_t>(d), 'F');
      for (int i = 0; i < d; ++i) {
        if (bits & (1ul << (d - 1 - i))) w[static_cast<std::size_t>(i)] = 'G';
      }
      if (is_lyndon(w)) out.emplace_back(std::move(w));
    }
  }
  return out;
}

namespace {

int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

long witt_number(int degree) {
  if (degree < 1) throw BoundsError("witt_number: degree must be positive");
  long sum = 0;
  for (int e = 1; e <= degree; ++e) {
    if (degree % e == 0) sum += moebius(degree / e) * (1l << e);
  }
  return sum / degree;
}

std::pair<LyndonWord, LyndonWord> standard_factorization(const LyndonWord& w) {
  const std::string& s = w.str();
  if (s.size() < 2) {
    throw std::invalid_argument("standard_factorization: letters have no factorization");
  }
  for (std::size_t k = 1; k < s.size(); ++k) {
    const std::string suffix = s.substr(k);
    if (is_lyndon(suffix)) {
      return {LyndonWord(s.substr(0, k)), LyndonWord(suffix)};
    }
  }
  throw std::logic_error("Lyndon word without a Lyndon suffix");  // unreachable
}

}  // namespace pbr::lie
