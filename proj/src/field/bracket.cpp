#include "pbr/field/bracket.hpp"

#include <cctype>

#include "pbr/errors.hpp"

namespace pbr::field {

JetField poisson(const JetField& F, const JetField& G, int order_out) {
  require_same_domain(F, G);
  const int available = std::min(F.max_order(), G.max_order()) - 1;
  if (available < 0) throw BoundsError("poisson: inputs carry no derivative information");
  if (order_out > available) {
    throw BoundsError("poisson: output jet order " + std::to_string(order_out) +
                      " needs input jets of order " + std::to_string(order_out + 1));
  }
  const int order = order_out < 0 ? available : order_out;
  const Provenance prov =
      F.analytic() && G.analytic() ? Provenance::analytic : Provenance::sampled;
  return JetField(
      F.domain(),
      [F, G](double p, double q, int k) {
        const Jet f = F.jet(p, q, k + 1);
        const Jet g = G.jet(p, q, k + 1);
        return f.dq() * g.dp() - f.dp() * g.dq();
      },
      prov, order);
}

struct BracketWord::Node {
  Letter letter = Letter::F;
  std::shared_ptr<const Node> left, right;  // both null for a letter
};

BracketWord BracketWord::letter(Letter l) {
  auto n = std::make_shared<Node>();
  n->letter = l;
  return BracketWord(n);
}

BracketWord BracketWord::bracket(const BracketWord& a, const BracketWord& b) {
  auto n = std::make_shared<Node>();
  n->left = a.node_;
  n->right = b.node_;
  return BracketWord(n);
}

namespace {

struct Parser {
  std::string s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw PreconditionError("malformed bracket word '" + s + "' at position " + std::to_string(pos) +
                            ": " + what);
  }
  char peek() const { return pos < s.size() ? s[pos] : '\0'; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  BracketWord word() {
    const char c = peek();
    if (c == 'F' || c == 'G') {
      ++pos;
      return BracketWord::letter(c == 'F' ? BracketWord::Letter::F : BracketWord::Letter::G);
    }
    expect('{');
    BracketWord a = word();
    expect(',');
    BracketWord b = word();
    expect('}');
    return BracketWord::bracket(a, b);
  }
};

}  // namespace

BracketWord BracketWord::parse(const std::string& text) {
  Parser p;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) p.s += c;
  BracketWord w = p.word();
  if (p.pos != p.s.size()) p.fail("trailing characters");
  return w;
}

BracketWord BracketWord::ad_power(int N) {
  if (N < 0) throw BoundsError("ad power must be non-negative");
  BracketWord w = letter(Letter::G);
  for (int i = 0; i < N; ++i) w = bracket(w, letter(Letter::F));
  return w;
}

BracketWord BracketWord::ad_iterated(int k, int m) {
  if (k < 0 || m < 1) throw BoundsError("ad_iterated needs k >= 0 and m >= 1");
  BracketWord H = letter(Letter::F);
  for (int i = 0; i < k; ++i) H = bracket(H, letter(Letter::G));
  BracketWord w = letter(Letter::G);
  for (int i = 0; i < m; ++i) w = bracket(w, H);
  return w;
}

bool BracketWord::is_letter() const { return !node_->left; }

int BracketWord::letter_count() const {
  if (is_letter()) return 1;
  return BracketWord(node_->left).letter_count() + BracketWord(node_->right).letter_count();
}

std::string BracketWord::to_string() const {
  if (is_letter()) return node_->letter == Letter::F ? "F" : "G";
  return "{" + BracketWord(node_->left).to_string() + "," + BracketWord(node_->right).to_string() + "}";
}

JetField BracketWord::evaluate(const JetField& F, const JetField& G) const {
  if (is_letter()) return node_->letter == Letter::F ? F : G;
  return poisson(BracketWord(node_->left).evaluate(F, G), BracketWord(node_->right).evaluate(F, G));
}

JetField iterated_bracket(const BracketWord& word, const JetField& F, const JetField& G) {
  if (word.letter_count() > 5) {
    throw BoundsError("bracket word " + word.to_string() + " has " + std::to_string(word.letter_count()) +
                      " letters; order-4 jets support at most 5");
  }
  require_same_domain(F, G);
  return word.evaluate(F, G);
}

}  // namespace pbr::field
