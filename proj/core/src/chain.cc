#include "dinv/chain.h"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace dinv {

std::string to_string(const Operator& op) {
  return std::string(op.kind == OpKind::F ? "F" : "G") + "(" + std::to_string(op.p) + "," +
         std::to_string(op.q) + ")";
}

std::vector<int> OperatorChain::usage() const {
  std::vector<int> u(static_cast<std::size_t>(std::max(n, 0)), 0);
  for (const auto& op : ops) {
    if (op.p >= 1 && op.p <= n) ++u[op.p - 1];
    if (op.q >= 1 && op.q <= n) ++u[op.q - 1];
  }
  return u;
}

int OperatorChain::order() const {
  const auto u = usage();
  return u.empty() ? 0 : *std::max_element(u.begin(), u.end());
}

int OperatorChain::f_count() const {
  return static_cast<int>(std::count_if(ops.begin(), ops.end(), [](const Operator& o) { return o.kind == OpKind::F; }));
}

int OperatorChain::g_count() const { return static_cast<int>(ops.size()) - f_count(); }

bool OperatorChain::covers_all_points() const {
  const auto u = usage();
  return std::all_of(u.begin(), u.end(), [](int c) { return c > 0; });
}

namespace {

class ChainParser {
 public:
  explicit ChainParser(std::string_view s) : s_(s) {}

  OperatorChain parse() {
    OperatorChain chain;
    skip();
    if (pos_ == s_.size()) fail("empty chain");
    while (true) {
      term(chain);
      skip();
      if (pos_ == s_.size()) break;
      expect('.');
    }
    for (const auto& op : chain.ops) chain.n = std::max({chain.n, op.p, op.q});
    return chain;
  }

 private:
  void term(OperatorChain& chain) {
    skip();
    Operator op;
    if (peek() == 'F') {
      op.kind = OpKind::F;
    } else if (peek() == 'G') {
      op.kind = OpKind::G;
    } else {
      fail("expected 'F' or 'G'");
    }
    ++pos_;
    expect('(');
    op.p = integer();
    expect(',');
    op.q = integer();
    expect(')');
    int reps = 1;
    skip();
    if (peek() == '^') {
      ++pos_;
      reps = integer();
    }
    if (op.p < 1 || op.q < 1) fail("point indices start at 1");
    if (reps < 1) fail("repeat count must be positive");
    if (op.kind == OpKind::G && op.p == op.q) fail("identically zero operator " + to_string(op));
    chain.ops.insert(chain.ops.end(), static_cast<std::size_t>(reps), op);
  }

  int integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 6) fail("expected integer");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("chain parse error at offset " + std::to_string(pos_) + ": " + what +
                                " in '" + std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// Orders G indices and sorts; returns the sign change.
int normalize(std::vector<Operator>& ops) {
  int sign = 1;
  for (auto& op : ops) {
    if (op.p > op.q) {
      std::swap(op.p, op.q);
      if (op.kind == OpKind::G) sign = -sign;
    }
  }
  std::sort(ops.begin(), ops.end());
  return sign;
}

}  // namespace

OperatorChain parse_chain(std::string_view text) { return ChainParser(text).parse(); }

std::string to_string(const OperatorChain& chain) {
  std::string out = chain.sign < 0 ? "-" : "";
  for (std::size_t k = 0; k < chain.ops.size();) {
    std::size_t e = 1;
    while (k + e < chain.ops.size() && chain.ops[k + e] == chain.ops[k]) ++e;
    if (k > 0) out += ".";
    out += to_string(chain.ops[k]);
    if (e > 1) out += "^" + std::to_string(e);
    k += e;
  }
  return out;
}

OperatorChain canonical_chain(const OperatorChain& chain) {
  // Compact the used labels to 1..k in increasing order.
  int maxlabel = chain.n;
  for (const auto& op : chain.ops) maxlabel = std::max({maxlabel, op.p, op.q});
  std::vector<int> compact(static_cast<std::size_t>(maxlabel) + 1, 0);
  for (const auto& op : chain.ops) compact[op.p] = compact[op.q] = 1;
  int k = 0;
  for (auto& c : compact)
    if (c) c = ++k;

  std::vector<Operator> base = chain.ops;
  for (auto& op : base) {
    op.p = compact[op.p];
    op.q = compact[op.q];
  }

  OperatorChain best;
  best.n = k;
  if (k <= 8) {
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 1);
    bool have = false;
    do {
      std::vector<Operator> ops = base;
      for (auto& op : ops) {
        op.p = perm[op.p - 1];
        op.q = perm[op.q - 1];
      }
      const int s = normalize(ops);
      if (!have || ops < best.ops) {
        best.ops = std::move(ops);
        best.sign = chain.sign * s;
        have = true;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!have) best.sign = chain.sign;
    return best;
  }

  std::vector<Operator> ops = base;
  int s = normalize(ops);
  std::vector<int> relabel(static_cast<std::size_t>(k) + 1, 0);
  int next = 0;
  for (const auto& op : ops) {
    if (!relabel[op.p]) relabel[op.p] = ++next;
    if (!relabel[op.q]) relabel[op.q] = ++next;
  }
  for (auto& op : ops) {
    op.p = relabel[op.p];
    op.q = relabel[op.q];
  }
  s *= normalize(ops);
  best.ops = std::move(ops);
  best.sign = chain.sign * s;
  return best;
}

}  // namespace dinv
