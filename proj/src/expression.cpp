#include "smurf/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <system_error>

#include "smurf/errors.hpp"

namespace smurf {

struct Expression::Node {
  enum class Kind { number, variable, negate, add, sub, mul, div, pow, call };
  Kind kind;
  double value = 0.0;  // number
  int var = 0;         // variable (1-based)
  int func = -1;       // call
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = Expression::Node;
using Kind = Node::Kind;
using NodePtr = std::shared_ptr<const Node>;

struct Function {
  std::string_view name;
  double (*apply)(double);
};

constexpr std::array<Function, 10> kFunctions{{
    {"exp", [](double x) { return std::exp(x); }},
    {"log", [](double x) { return std::log(x); }},
    {"sin", [](double x) { return std::sin(x); }},
    {"cos", [](double x) { return std::cos(x); }},
    {"tan", [](double x) { return std::tan(x); }},
    {"tanh", [](double x) { return std::tanh(x); }},
    {"sqrt", [](double x) { return std::sqrt(x); }},
    {"abs", [](double x) { return std::abs(x); }},
    {"cas", [](double x) { return std::sin(x) + std::cos(x); }},
    {"sigmoid", [](double x) { return 1.0 / (1.0 + std::exp(-x)); }},
}};

NodePtr make(Kind k, std::vector<NodePtr> args = {}) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  NodePtr parse_all() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    auto e = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return e;
  }

  int max_var() const noexcept { return max_var_; }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Kind::add, {lhs, term()});
      } else if (accept('-')) {
        lhs = make(Kind::sub, {lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Kind::mul, {lhs, unary()});
      } else if (accept('/')) {
        lhs = make(Kind::div, {lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::negate, {unary()});
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (accept('^')) return make(Kind::pow, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc{}) throw ParseError("malformed number", start);
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    auto n = std::make_shared<Node>();
    n->kind = Kind::number;
    n->value = v;
    return n;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = s_.substr(start, pos_ - start);

    if (accept('(')) {
      int f = -1;
      for (std::size_t i = 0; i < kFunctions.size(); ++i) {
        if (kFunctions[i].name == name) f = static_cast<int>(i);
      }
      if (f < 0) throw ParseError("unknown function '" + std::string(name) + "'", start);
      std::vector<NodePtr> args;
      if (!accept(')')) {
        args.push_back(expr());
        while (accept(',')) args.push_back(expr());
        expect(')');
      }
      if (args.size() != 1) {
        throw ParseError("function '" + std::string(name) + "' takes 1 argument, got " +
                             std::to_string(args.size()),
                         start);
      }
      auto n = make(Kind::call, std::move(args));
      std::const_pointer_cast<Node>(n)->func = f;
      return n;
    }

    if (name == "pi" || name == "e") {
      auto n = std::make_shared<Node>();
      n->kind = Kind::number;
      n->value = name == "pi" ? std::numbers::pi : std::numbers::e;
      return n;
    }
    if (name.size() >= 2 && name[0] == 'x') {
      int idx = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      if (ec == std::errc{} && ptr == name.data() + name.size() && idx >= 1 && name[1] != '0') {
        auto n = std::make_shared<Node>();
        n->kind = Kind::variable;
        n->var = idx;
        max_var_ = std::max(max_var_, idx);
        return n;
      }
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int max_var_ = 0;
};

double eval(const Node& n, std::span<const double> vars) {
  switch (n.kind) {
    case Kind::number: return n.value;
    case Kind::variable:
      if (static_cast<std::size_t>(n.var) > vars.size()) {
        throw ConfigError("expression uses x" + std::to_string(n.var) + " but only " +
                          std::to_string(vars.size()) + " inputs were given");
      }
      return vars[n.var - 1];
    case Kind::negate: return -eval(*n.args[0], vars);
    case Kind::add: return eval(*n.args[0], vars) + eval(*n.args[1], vars);
    case Kind::sub: return eval(*n.args[0], vars) - eval(*n.args[1], vars);
    case Kind::mul: return eval(*n.args[0], vars) * eval(*n.args[1], vars);
    case Kind::div: return eval(*n.args[0], vars) / eval(*n.args[1], vars);
    case Kind::pow: return std::pow(eval(*n.args[0], vars), eval(*n.args[1], vars));
    case Kind::call: return kFunctions[n.func].apply(eval(*n.args[0], vars));
  }
  return 0.0;
}

int precedence(const Node& n) {
  switch (n.kind) {
    case Kind::add:
    case Kind::sub: return 1;
    case Kind::mul:
    case Kind::div: return 2;
    case Kind::negate: return 3;
    case Kind::pow: return 4;
    default: return 5;
  }
}

void print(const Node& n, std::string& out);

void print_wrapped(const Node& n, bool parens, std::string& out) {
  if (parens) out += '(';
  print(n, out);
  if (parens) out += ')';
}

void print(const Node& n, std::string& out) {
  const int p = precedence(n);
  switch (n.kind) {
    case Kind::number: {
      std::array<char, 32> buf{};
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), n.value);
      out.append(buf.data(), ptr);
      return;
    }
    case Kind::variable:
      out += 'x';
      out += std::to_string(n.var);
      return;
    case Kind::negate:
      out += '-';
      print_wrapped(*n.args[0], precedence(*n.args[0]) < 3, out);
      return;
    case Kind::pow:
      print_wrapped(*n.args[0], precedence(*n.args[0]) <= p, out);
      out += '^';
      print_wrapped(*n.args[1], precedence(*n.args[1]) < 3, out);
      return;
    case Kind::call:
      out += kFunctions[n.func].name;
      out += '(';
      print(*n.args[0], out);
      out += ')';
      return;
    default: {
      static constexpr std::array<const char*, 4> ops{" + ", " - ", " * ", " / "};
      const int op = static_cast<int>(n.kind) - static_cast<int>(Kind::add);
      print_wrapped(*n.args[0], precedence(*n.args[0]) < p, out);
      out += ops[op];
      print_wrapped(*n.args[1], precedence(*n.args[1]) <= p, out);
      return;
    }
  }
}

}  // namespace

Expression::Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

Expression Expression::parse(std::string_view text) {
  Parser parser(text);
  auto root = parser.parse_all();
  Expression e(std::move(root));
  e.max_var_ = parser.max_var();
  return e;
}

double Expression::evaluate(std::span<const double> vars) const { return eval(*root_, vars); }

std::string Expression::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

}  // namespace smurf
