#include "egregium/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "egregium/error.hpp"

namespace egregium {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Sinh, Cosh, Exp, Sqrt, Log };

struct Expression::Node {
  Op op = Op::Const;
  double value = 0.0;
  int index = -1;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_const(double v) {
  auto n = std::make_shared<Expression::Node>();
  n->op = Op::Const;
  n->value = v;
  return n;
}

NodePtr make_var(int i) {
  auto n = std::make_shared<Expression::Node>();
  n->op = Op::Var;
  n->index = i;
  return n;
}

bool is_const(const NodePtr& n, double v) { return n->op == Op::Const && n->value == v; }

NodePtr make_unary(Op op, NodePtr a) {
  if (a->op == Op::Const) {
    const double x = a->value;
    switch (op) {
      case Op::Neg: return make_const(-x);
      case Op::Sin: return make_const(std::sin(x));
      case Op::Cos: return make_const(std::cos(x));
      case Op::Sinh: return make_const(std::sinh(x));
      case Op::Cosh: return make_const(std::cosh(x));
      case Op::Exp: return make_const(std::exp(x));
      case Op::Sqrt: return make_const(std::sqrt(x));
      case Op::Log: return make_const(std::log(x));
      default: break;
    }
  }
  if (op == Op::Neg && a->op == Op::Neg) return a->lhs;
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->lhs = std::move(a);
  return n;
}

NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
  if (a->op == Op::Const && b->op == Op::Const) {
    const double x = a->value, y = b->value;
    switch (op) {
      case Op::Add: return make_const(x + y);
      case Op::Sub: return make_const(x - y);
      case Op::Mul: return make_const(x * y);
      case Op::Div: return make_const(x / y);
      case Op::Pow: return make_const(std::pow(x, y));
      default: break;
    }
  }
  switch (op) {
    case Op::Add:
      if (is_const(a, 0.0)) return b;
      if (is_const(b, 0.0)) return a;
      break;
    case Op::Sub:
      if (is_const(b, 0.0)) return a;
      if (is_const(a, 0.0)) return make_unary(Op::Neg, b);
      break;
    case Op::Mul:
      if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
      if (is_const(a, 1.0)) return b;
      if (is_const(b, 1.0)) return a;
      break;
    case Op::Div:
      if (is_const(a, 0.0)) return make_const(0.0);
      if (is_const(b, 1.0)) return a;
      break;
    case Op::Pow:
      if (is_const(b, 0.0)) return make_const(1.0);
      if (is_const(b, 1.0)) return a;
      break;
    default: break;
  }
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

double eval(const Expression::Node& n, std::span<const double> v) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return v[n.index];
    case Op::Add: return eval(*n.lhs, v) + eval(*n.rhs, v);
    case Op::Sub: return eval(*n.lhs, v) - eval(*n.rhs, v);
    case Op::Mul: return eval(*n.lhs, v) * eval(*n.rhs, v);
    case Op::Div: return eval(*n.lhs, v) / eval(*n.rhs, v);
    case Op::Pow: {
      const double base = eval(*n.lhs, v);
      if (n.rhs->op == Op::Const) {
        const double e = n.rhs->value;
        if (e == 2.0) return base * base;
        if (e == 3.0) return base * base * base;
        return std::pow(base, e);
      }
      return std::pow(base, eval(*n.rhs, v));
    }
    case Op::Neg: return -eval(*n.lhs, v);
    case Op::Sin: return std::sin(eval(*n.lhs, v));
    case Op::Cos: return std::cos(eval(*n.lhs, v));
    case Op::Sinh: return std::sinh(eval(*n.lhs, v));
    case Op::Cosh: return std::cosh(eval(*n.lhs, v));
    case Op::Exp: return std::exp(eval(*n.lhs, v));
    case Op::Sqrt: return std::sqrt(eval(*n.lhs, v));
    case Op::Log: return std::log(eval(*n.lhs, v));
  }
  return 0.0;
}

NodePtr diff(const NodePtr& n, int var) {
  auto d = [var](const NodePtr& m) { return diff(m, var); };
  switch (n->op) {
    case Op::Const: return make_const(0.0);
    case Op::Var: return make_const(n->index == var ? 1.0 : 0.0);
    case Op::Add: return make_binary(Op::Add, d(n->lhs), d(n->rhs));
    case Op::Sub: return make_binary(Op::Sub, d(n->lhs), d(n->rhs));
    case Op::Mul:
      return make_binary(Op::Add, make_binary(Op::Mul, d(n->lhs), n->rhs),
                         make_binary(Op::Mul, n->lhs, d(n->rhs)));
    case Op::Div: {
      // (a/b)' = a'/b - a b' / b^2
      auto first = make_binary(Op::Div, d(n->lhs), n->rhs);
      auto second = make_binary(Op::Div, make_binary(Op::Mul, n->lhs, d(n->rhs)),
                                make_binary(Op::Pow, n->rhs, make_const(2.0)));
      return make_binary(Op::Sub, first, second);
    }
    case Op::Pow: {
      if (n->rhs->op == Op::Const) {
        const double e = n->rhs->value;
        return make_binary(
            Op::Mul,
            make_binary(Op::Mul, make_const(e), make_binary(Op::Pow, n->lhs, make_const(e - 1.0))),
            d(n->lhs));
      }
      // a^b (b' log a + b a' / a)
      auto inner = make_binary(
          Op::Add, make_binary(Op::Mul, d(n->rhs), make_unary(Op::Log, n->lhs)),
          make_binary(Op::Div, make_binary(Op::Mul, n->rhs, d(n->lhs)), n->lhs));
      return make_binary(Op::Mul, n, inner);
    }
    case Op::Neg: return make_unary(Op::Neg, d(n->lhs));
    case Op::Sin: return make_binary(Op::Mul, make_unary(Op::Cos, n->lhs), d(n->lhs));
    case Op::Cos:
      return make_unary(Op::Neg, make_binary(Op::Mul, make_unary(Op::Sin, n->lhs), d(n->lhs)));
    case Op::Sinh: return make_binary(Op::Mul, make_unary(Op::Cosh, n->lhs), d(n->lhs));
    case Op::Cosh: return make_binary(Op::Mul, make_unary(Op::Sinh, n->lhs), d(n->lhs));
    case Op::Exp: return make_binary(Op::Mul, n, d(n->lhs));
    case Op::Sqrt:
      return make_binary(Op::Div, d(n->lhs), make_binary(Op::Mul, make_const(2.0), n));
    case Op::Log: return make_binary(Op::Div, d(n->lhs), n->lhs);
  }
  return make_const(0.0);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render(const Expression::Node& n, const std::vector<std::string>* names) {
  auto sub = [names](const NodePtr& m) { return render(*m, names); };
  switch (n.op) {
    case Op::Const: return format_number(n.value);
    case Op::Var: return "v" + std::to_string(n.index + 1);
    case Op::Add: return "(" + sub(n.lhs) + " + " + sub(n.rhs) + ")";
    case Op::Sub: return "(" + sub(n.lhs) + " - " + sub(n.rhs) + ")";
    case Op::Mul: return "(" + sub(n.lhs) + " * " + sub(n.rhs) + ")";
    case Op::Div: return "(" + sub(n.lhs) + " / " + sub(n.rhs) + ")";
    case Op::Pow: return "(" + sub(n.lhs) + " ^ " + sub(n.rhs) + ")";
    case Op::Neg: return "(-" + sub(n.lhs) + ")";
    case Op::Sin: return "sin(" + sub(n.lhs) + ")";
    case Op::Cos: return "cos(" + sub(n.lhs) + ")";
    case Op::Sinh: return "sinh(" + sub(n.lhs) + ")";
    case Op::Cosh: return "cosh(" + sub(n.lhs) + ")";
    case Op::Exp: return "exp(" + sub(n.lhs) + ")";
    case Op::Sqrt: return "sqrt(" + sub(n.lhs) + ")";
    case Op::Log: return "log(" + sub(n.lhs) + ")";
  }
  return "?";
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::SpecParse, "expression '" + std::string(text_) + "' at column " +
                                          std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make_binary(Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(Op::Mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make_binary(Op::Div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_unary(Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make_binary(Op::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(text_.substr(pos_));
      char* end = nullptr;
      const double v = std::strtod(rest.c_str(), &end);
      if (end == rest.c_str()) fail("bad number");
      pos_ += static_cast<std::size_t>(end - rest.c_str());
      return make_const(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      static const std::pair<const char*, Op> functions[] = {
          {"sin", Op::Sin},   {"cos", Op::Cos}, {"sinh", Op::Sinh},
          {"cosh", Op::Cosh}, {"exp", Op::Exp}, {"sqrt", Op::Sqrt}};
      for (const auto& [fname, op] : functions) {
        if (name == fname) {
          if (!accept('(')) fail("expected '(' after " + name);
          NodePtr arg = expr();
          if (!accept(')')) fail("expected ')'");
          return make_unary(op, arg);
        }
      }
      if (name == "pi") return make_const(std::numbers::pi);
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == name) return make_var(static_cast<int>(i));
      }
      fail("unknown identifier '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text, const std::vector<std::string>& variables) {
  return Expression(Parser(text, variables).run());
}

Expression Expression::constant(double value) { return Expression(make_const(value)); }
Expression Expression::variable(int index) { return Expression(make_var(index)); }

double Expression::evaluate(std::span<const double> values) const { return eval(*root_, values); }

Expression Expression::derivative(int variable) const { return Expression(diff(root_, variable)); }

std::string Expression::to_string() const { return render(*root_, nullptr); }

std::vector<std::string> indexed_names(std::string_view stem, int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back(std::string(stem) + std::to_string(i));
  return out;
}

namespace {

// All symbolic partials of one expression up to order 3, indexed densely.
struct DerivativeTable {
  int arity = 0;
  Expression value = Expression::constant(0.0);
  std::vector<Expression> first;
  std::vector<Expression> second;  // arity^2
  std::vector<Expression> third;   // arity^3

  DerivativeTable(const Expression& e, int n) : arity(n), value(e) {
    for (int i = 0; i < n; ++i) first.push_back(e.derivative(i));
    second.assign(n * n, Expression::constant(0.0));
    third.assign(n * n * n, Expression::constant(0.0));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Expression dij = first[i].derivative(j);
        second[i * n + j] = dij;
        second[j * n + i] = dij;
        for (int k = j; k < n; ++k) {
          Expression dijk = dij.derivative(k);
          const int perms[6][3] = {{i, j, k}, {i, k, j}, {j, i, k}, {j, k, i}, {k, i, j}, {k, j, i}};
          for (const auto& p : perms) third[(p[0] * n + p[1]) * n + p[2]] = dijk;
        }
      }
  }
};

}  // namespace

ScalarField scalar_field_from_expression(const Expression& expr, int arity) {
  auto table = std::make_shared<const DerivativeTable>(expr, arity);
  ScalarField f;
  f.arity = arity;
  f.provided_order = 3;
  f.evaluate = [table](const Eigen::VectorXd& x, int order) {
    const int n = table->arity;
    std::span<const double> v(x.data(), x.size());
    ScalarJet out;
    out.value = table->value.evaluate(v);
    if (order >= 1) {
      out.gradient.resize(n);
      for (int i = 0; i < n; ++i) out.gradient(i) = table->first[i].evaluate(v);
    }
    if (order >= 2) {
      out.hessian.resize(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.hessian(i, j) = table->second[i * n + j].evaluate(v);
    }
    if (order >= 3) {
      out.third = Array3({std::size_t(n), std::size_t(n), std::size_t(n)});
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            out.third(i, j, k) = table->third[(i * n + j) * n + k].evaluate(v);
    }
    return out;
  };
  return f;
}

VectorMap vector_map_from_expressions(const std::vector<Expression>& components, int arity) {
  std::vector<ScalarField> fields;
  for (const auto& c : components) fields.push_back(scalar_field_from_expression(c, arity));
  VectorMap m;
  m.arity = arity;
  m.outputs = static_cast<int>(components.size());
  m.provided_order = 3;
  m.evaluate = [fields = std::move(fields)](const Eigen::VectorXd& x, int order) {
    const std::size_t M = fields.size();
    const std::size_t n = x.size();
    MapJet out;
    out.value.resize(M);
    if (order >= 1) out.first.resize(M, n);
    if (order >= 2) out.second = Array3({M, n, n});
    if (order >= 3) out.third = Array4({M, n, n, n});
    for (std::size_t a = 0; a < M; ++a) {
      const ScalarJet s = fields[a].jet(x, order);
      out.value(a) = s.value;
      if (order >= 1) out.first.row(a) = s.gradient.transpose();
      if (order >= 2)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) out.second(a, i, j) = s.hessian(i, j);
      if (order >= 3)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) out.third(a, i, j, k) = s.third(i, j, k);
    }
    return out;
  };
  return m;
}

}  // namespace egregium
