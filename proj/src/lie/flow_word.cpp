#include "pbr/lie/flow_word.hpp"

#include <sstream>
#include <stdexcept>

#include "pbr/errors.hpp"

namespace pbr::lie {

struct FlowWord::Node {
  Kind kind;
  LiePoly generator{1};
  TimePoly time;
  std::vector<FlowWord> children;
};

FlowWord FlowWord::factor(const LiePoly& generator, TimePoly time) {
  if (generator.is_zero() || !generator.is_homogeneous(1)) {
    throw std::invalid_argument("FlowWord::factor: generator must be a nonzero degree-1 element");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::factor;
  node->generator = generator.truncated(1);
  for (auto& c : time) c.canonicalize();
  node->time = std::move(time);
  return FlowWord(std::move(node));
}

FlowWord FlowWord::product(std::vector<FlowWord> children) {
  if (children.empty()) throw std::invalid_argument("FlowWord::product: empty product");
  auto node = std::make_shared<Node>();
  node->kind = Kind::product;
  node->children = std::move(children);
  return FlowWord(std::move(node));
}

FlowWord FlowWord::inverse(const FlowWord& child) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::inverse;
  node->children = {child};
  return FlowWord(std::move(node));
}

FlowWord FlowWord::conjugate(const FlowWord& child, const FlowWord& by) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::conjugate;
  node->children = {child, by};
  return FlowWord(std::move(node));
}

FlowWord::Kind FlowWord::kind() const { return node_->kind; }

const LiePoly& FlowWord::generator() const {
  if (node_->kind != Kind::factor) throw std::logic_error("FlowWord::generator on non-factor");
  return node_->generator;
}

const TimePoly& FlowWord::time() const {
  if (node_->kind != Kind::factor) throw std::logic_error("FlowWord::time on non-factor");
  return node_->time;
}

const std::vector<FlowWord>& FlowWord::children() const { return node_->children; }

FlowWord FlowWord::normalized() const {
  switch (node_->kind) {
    case Kind::factor:
      return *this;
    case Kind::product: {
      std::vector<FlowWord> kids;
      kids.reserve(node_->children.size());
      for (const auto& c : node_->children) kids.push_back(c.normalized());
      return product(std::move(kids));
    }
    case Kind::inverse:
      return inverse(node_->children[0].normalized());
    case Kind::conjugate: {
      const FlowWord a = node_->children[0].normalized();
      const FlowWord c = node_->children[1].normalized();
      return product({c, a, inverse(c)});
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

std::string time_string(const TimePoly& t) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] == 0) continue;
    const Rational mag = abs(t[k]);
    if (any) {
      os << (t[k] < 0 ? "-" : "+");
    } else if (t[k] < 0) {
      os << "-";
    }
    if (k == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "tau";
      if (k > 1) os << "^" << k;
    }
    any = true;
  }
  return any ? os.str() : "0";
}

}  // namespace

std::string FlowWord::to_string() const {
  switch (node_->kind) {
    case Kind::factor:
      return "phi[" + time_string(node_->time) + "](" + node_->generator.to_string() + ")";
    case Kind::product: {
      std::string s = "(";
      for (std::size_t i = 0; i < node_->children.size(); ++i) {
        if (i) s += " ";
        s += node_->children[i].to_string();
      }
      return s + ")";
    }
    case Kind::inverse:
      return node_->children[0].to_string() + "^-1";
    case Kind::conjugate:
      return "conj(" + node_->children[0].to_string() + " by " +
             node_->children[1].to_string() + ")";
  }
  throw std::logic_error("unreachable");
}

namespace {

// P_0..P_order of the pullback operator of A applied to a tau-independent X:
//   (j+1) P_{j+1} = -sum_{i+l=j} [P_i, A_l].
std::vector<LiePoly> pullback_terms(const LieSeries& A, const LiePoly& X, int order) {
  const int deg = A.order() + 1;
  std::vector<LiePoly> P;
  P.reserve(static_cast<std::size_t>(order) + 1);
  P.push_back(X.truncated(deg));
  for (int j = 0; j < order; ++j) {
    LiePoly next(deg);
    for (int i = 0; i <= j; ++i) {
      const int l = j - i;
      if (l > A.order()) continue;
      next -= bracket(P[static_cast<std::size_t>(i)], A[l], deg);
    }
    next *= Rational(1, j + 1);
    P.push_back(std::move(next));
  }
  return P;
}

// A path tau -> a_tau with a_0 not necessarily the identity.  `generator` is
// the right-invariant generator A(tau); `base` lists Y_1..Y_n with
// H o a_0^{-1} = exp(ad Y_1) ... exp(ad Y_n) H.
struct PathData {
  LieSeries generator;
  std::vector<LiePoly> base;
};

// exp(ad Y) X = sum_n ad_Y^n X / n!, ad_Y X = [Y, X]; terminates by degree.
LiePoly exp_ad(const LiePoly& Y, const LiePoly& X) {
  LiePoly out = X;
  LiePoly term = X;
  for (int n = 1; !term.is_zero(); ++n) {
    term = Rational(1, n) * bracket(Y, term, X.max_degree());
    out += term;
  }
  return out;
}

LiePoly apply_base(const std::vector<LiePoly>& base, LiePoly X) {
  for (auto it = base.rbegin(); it != base.rend(); ++it) X = exp_ad(*it, X);
  return X;
}

LieSeries apply_base(const std::vector<LiePoly>& base, const LieSeries& H) {
  if (base.empty()) return H;
  LieSeries out(H.order());
  for (int k = 0; k <= H.order(); ++k) out.coeff(k) = apply_base(base, H[k]);
  return out;
}

std::vector<LiePoly> inverse_base(const std::vector<LiePoly>& base) {
  std::vector<LiePoly> out;
  out.reserve(base.size());
  for (auto it = base.rbegin(); it != base.rend(); ++it) out.push_back(-*it);
  return out;
}

PathData path_of(const FlowWord& w, int T) {
  switch (w.kind()) {
    case FlowWord::Kind::factor: {
      PathData d{LieSeries(T), {}};
      const TimePoly& c = w.time();
      const LiePoly X = w.generator().truncated(T + 1);
      for (int k = 0; k <= T && k + 1 < static_cast<int>(c.size()); ++k) {
        d.generator.coeff(k) = (Rational(k + 1) * c[static_cast<std::size_t>(k) + 1]) * X;
      }
      if (!c.empty() && c[0] != 0) d.base.push_back(c[0] * X);
      return d;
    }
    case FlowWord::Kind::product: {
      const auto& kids = w.children();
      // gen(a b) = A + Pi^a(B); fold from the right so that a is the prefix.
      PathData acc = path_of(kids.back(), T);
      for (std::size_t i = kids.size() - 1; i-- > 0;) {
        PathData a = path_of(kids[i], T);
        acc.generator = a.generator + pullback(a.generator, apply_base(a.base, acc.generator));
        a.base.insert(a.base.end(), acc.base.begin(), acc.base.end());
        acc.base = std::move(a.base);
      }
      return acc;
    }
    case FlowWord::Kind::inverse: {
      const PathData a = path_of(w.children()[0], T);
      const std::vector<LiePoly> inv = inverse_base(a.base);
      return {apply_base(inv, inverse_generator(a.generator)), inv};
    }
    case FlowWord::Kind::conjugate:
      return path_of(w.normalized(), T);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

LieSeries pullback(const LieSeries& A, const LieSeries& H) {
  const int T = std::min(A.order(), H.order());
  LieSeries out(T);
  for (int m = 0; m <= T; ++m) {
    if (H[m].is_zero()) continue;
    const auto P = pullback_terms(A, H[m], T - m);
    for (int j = 0; j + m <= T; ++j) out.coeff(m + j) += P[static_cast<std::size_t>(j)];
  }
  return out;
}

LieSeries inverse_generator(const LieSeries& A) {
  const int T = A.order();
  LieSeries inv(T);
  std::vector<std::vector<LiePoly>> terms;  // pullback terms of each solved coefficient
  for (int k = 0; k <= T; ++k) {
    LiePoly c = -A[k];
    for (int m = 0; m < k; ++m) {
      c -= terms[static_cast<std::size_t>(m)][static_cast<std::size_t>(k - m)];
    }
    inv.coeff(k) = c;
    terms.push_back(pullback_terms(A, c, T - k));
  }
  return inv;
}

LieSeries path_generator(const FlowWord& word, int T) {
  if (T < 1 || T > kMaxSeriesOrder) {
    throw BoundsError("path_generator: truncation order must lie in [1, 8], got " +
                      std::to_string(T));
  }
  return path_of(word, T).generator;
}

}  // namespace pbr::lie
