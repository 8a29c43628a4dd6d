#include "pellbaker/expr.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <sstream>

namespace pellbaker {
namespace {

struct Node {
  std::function<RealBall(long)> eval;
  std::optional<BigRat> exact;
};

Node constant(const BigRat& v) {
  return {[v](long prec) { return RealBall(v, prec); }, v};
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Node parse() {
    Node n = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression \"" + s_ + "\": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string word() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(b, pos_ - b);
  }

  // Integer, decimal or scientific literal (no sign, no '/').
  BigRat number() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
            s_[pos_] == 'e' || s_[pos_] == 'E' ||
            ((s_[pos_] == '+' || s_[pos_] == '-') && pos_ > b &&
             (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E')))) {
      ++pos_;
    }
    if (b == pos_) fail("expected a number");
    return parse_big_rat(s_.substr(b, pos_ - b));
  }

  // Signed rational with an optional "/q", used inside log( ) and sqrt( ).
  BigRat rational() {
    bool neg = eat('-');
    BigRat v = number();
    if (eat('/')) v /= number();
    return neg ? BigRat(-v) : v;
  }

  Node sum() {
    Node n = product();
    for (;;) {
      if (eat('+')) {
        n = combine(n, product(), '+');
      } else if (eat('-')) {
        n = combine(n, product(), '-');
      } else {
        return n;
      }
    }
  }

  Node product() {
    Node n = unary();
    for (;;) {
      if (eat('*')) {
        n = combine(n, unary(), '*');
      } else if (eat('/')) {
        n = combine(n, unary(), '/');
      } else {
        return n;
      }
    }
  }

  Node unary() {
    if (eat('-')) {
      Node n = unary();
      auto f = n.eval;
      Node out{[f](long p) { return -f(p); }, std::nullopt};
      if (n.exact) out.exact = -*n.exact;
      return out;
    }
    return atom();
  }

  static Node combine(const Node& x, const Node& y, char op) {
    if (x.exact && y.exact) {
      BigRat a = *x.exact, b = *y.exact;
      switch (op) {
        case '+': return constant(a + b);
        case '-': return constant(a - b);
        case '*': return constant(a * b);
        default:
          if (b == 0) throw DivisionByZero("division by zero in expression");
          return constant(a / b);
      }
    }
    auto f = x.eval, g = y.eval;
    switch (op) {
      case '+': return {[f, g](long p) { return f(p) + g(p); }, std::nullopt};
      case '-': return {[f, g](long p) { return f(p) - g(p); }, std::nullopt};
      case '*': return {[f, g](long p) { return f(p) * g(p); }, std::nullopt};
      default: return {[f, g](long p) { return f(p) / g(p); }, std::nullopt};
    }
  }

  Node log_of(const QuadraticValue& q) {
    if (q.sign() <= 0) throw NonPositiveInput("log of a non-positive value: " + q.to_string());
    if (q.is_rational() && q.a() == 1) return constant(BigRat(0));
    return {[q](long p) { return log_ball(q, p); }, std::nullopt};
  }

  Node atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      Node n = sum();
      expect(')');
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.') {
      return constant(number());
    }
    std::string w = word();
    if (w == "log2") return log_of(QuadraticValue(BigRat(2)));
    if (w == "log4") return log_of(QuadraticValue(BigRat(4)));
    if (w == "logalpha") return log_of(QuadraticValue(BigRat(1), BigRat(1), BigInt(2)));
    if (w == "log") {
      expect('(');
      skip();
      QuadraticValue q;
      if (s_.compare(pos_, 4, "quad") == 0) {
        pos_ += 4;
        BigRat a = rational(), b = rational();
        BigRat D = rational();
        if (D.get_den() != 1) fail("quad radicand must be an integer");
        q = QuadraticValue(a, b, D.get_num());
      } else {
        q = QuadraticValue(rational());
      }
      expect(')');
      return log_of(q);
    }
    if (w == "sqrt") {
      expect('(');
      BigRat v = rational();
      expect(')');
      if (v < 0) throw NonPositiveInput("sqrt of a negative value");
      BigInt n = v.get_num(), d = v.get_den();
      if (is_perfect_square(n) && is_perfect_square(d)) return constant(make_rat(isqrt(n), isqrt(d)));
      // sqrt(n/d) = sqrt(n d)/d.
      QuadraticValue q(BigRat(0), make_rat(1, d), n * d);
      return {[q](long p) { return eval(q, p); }, std::nullopt};
    }
    fail("unknown atom '" + w + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

RealOracle parse_real_expr(const std::string& text) {
  Node n = Parser(text).parse();
  return RealOracle{n.eval, n.exact};
}

LLLInstance parse_lll_instance(const std::string& text) {
  LLLInstance inst;
  std::optional<BigInt> default_x;
  std::vector<std::optional<BigInt>> xs;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
    if (key == "C") {
      inst.C = parse_big_int(rest.substr(rest.find_first_not_of(" \t")));
    } else if (key == "X") {
      default_x = parse_big_int(rest.substr(rest.find_first_not_of(" \t")));
    } else if (key == "tau") {
      // Optional trailing bound after the last whitespace, when it parses as an integer.
      std::string expr = rest;
      std::optional<BigInt> xi;
      expr.erase(0, std::min(expr.size(), expr.find_first_not_of(" \t")));
      auto end = expr.find_last_not_of(" \t");
      if (end == std::string::npos) throw ParseError(where() + "tau needs an expression");
      expr.erase(end + 1);
      auto sp = expr.find_last_of(" \t");
      if (sp != std::string::npos) {
        std::string tail = expr.substr(sp + 1);
        try {
          BigInt v = parse_big_int(tail);
          std::string head = expr.substr(0, sp);
          // "log(quad 1 1 2)" also ends in an integer-looking token, so require balanced parens.
          if (!head.empty() && std::count(head.begin(), head.end(), '(') == std::count(head.begin(), head.end(), ')')) {
            xi = v;
            expr = head;
          }
        } catch (const std::exception&) {
        }
      }
      inst.tau.push_back(parse_real_expr(expr));
      xs.push_back(xi);
    } else {
      throw ParseError(where() + "unknown key '" + key + "'");
    }
  }
  if (inst.tau.empty()) throw ParseError("LLL instance has no tau lines");
  for (auto& x : xs) {
    if (!x && !default_x) throw ParseError("missing X bound for a tau line");
    inst.X.push_back(x ? *x : *default_x);
  }
  if (inst.C == 0) inst.C = default_lll_C(inst.X);
  return inst;
}

}  // namespace pellbaker
