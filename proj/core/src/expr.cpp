#include "gcyl/expr.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace gcyl {

struct Expr::Node {
  Op op;
  double value = 0.0;
  int index = 0;
  std::vector<Expr> args;
};

namespace {

const std::map<Expr::Op, std::string>& op_names() {
  static const std::map<Expr::Op, std::string> names{
      {Expr::Op::Const, "const"}, {Expr::Op::Coord, "coord"}, {Expr::Op::Time, "t"},
      {Expr::Op::Add, "add"},     {Expr::Op::Sub, "sub"},     {Expr::Op::Mul, "mul"},
      {Expr::Op::Div, "div"},     {Expr::Op::Pow, "pow"},     {Expr::Op::Neg, "neg"},
      {Expr::Op::Sin, "sin"},     {Expr::Op::Cos, "cos"},     {Expr::Op::Sinh, "sinh"},
      {Expr::Op::Cosh, "cosh"},   {Expr::Op::Exp, "exp"},     {Expr::Op::Sqrt, "sqrt"},
      {Expr::Op::Log, "log"}};
  return names;
}

int arity(Expr::Op op) {
  switch (op) {
    case Expr::Op::Const:
    case Expr::Op::Coord:
    case Expr::Op::Time: return 0;
    case Expr::Op::Add:
    case Expr::Op::Sub:
    case Expr::Op::Mul:
    case Expr::Op::Div:
    case Expr::Op::Pow: return 2;
    default: return 1;
  }
}

}  // namespace

Expr::Expr(double c) : node_(std::make_shared<Node>(Node{Op::Const, c, 0, {}})) {}

Expr Expr::coord(int i) {
  if (i < 0) throw SchemaError("negative coordinate index");
  return Expr(std::make_shared<Node>(Node{Op::Coord, 0.0, i, {}}));
}

Expr Expr::time() { return Expr(std::make_shared<Node>(Node{Op::Time, 0.0, 0, {}})); }

Expr Expr::make(Op op, std::vector<Expr> args) {
  if (static_cast<int>(args.size()) != arity(op)) throw SchemaError("wrong number of operands for " + op_names().at(op));
  bool all_const = !args.empty();
  for (auto& a : args) all_const = all_const && a.is_const();
  auto node = std::make_shared<Node>(Node{op, 0.0, 0, std::move(args)});
  Expr e(node);
  if (all_const) return Expr(e.eval(static_cast<const double*>(nullptr), 0.0));
  return e;
}

Expr::Op Expr::op() const { return node_->op; }
double Expr::value() const { return node_->value; }
int Expr::index() const { return node_->index; }
const std::vector<Expr>& Expr::args() const { return node_->args; }

double Expr::eval(const double* x, double t) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Coord: return x[n.index];
    case Op::Time: return t;
    case Op::Add: return n.args[0].eval(x, t) + n.args[1].eval(x, t);
    case Op::Sub: return n.args[0].eval(x, t) - n.args[1].eval(x, t);
    case Op::Mul: return n.args[0].eval(x, t) * n.args[1].eval(x, t);
    case Op::Div: return n.args[0].eval(x, t) / n.args[1].eval(x, t);
    case Op::Pow: {
      const Expr& ex = n.args[1];
      double b = n.args[0].eval(x, t);
      if (ex.is_const(2.0)) return b * b;
      return std::pow(b, ex.eval(x, t));
    }
    case Op::Neg: return -n.args[0].eval(x, t);
    case Op::Sin: return std::sin(n.args[0].eval(x, t));
    case Op::Cos: return std::cos(n.args[0].eval(x, t));
    case Op::Sinh: return std::sinh(n.args[0].eval(x, t));
    case Op::Cosh: return std::cosh(n.args[0].eval(x, t));
    case Op::Exp: return std::exp(n.args[0].eval(x, t));
    case Op::Sqrt: return std::sqrt(n.args[0].eval(x, t));
    case Op::Log: return std::log(n.args[0].eval(x, t));
  }
  return 0.0;
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_const(0.0)) return b;
  if (b.is_const(0.0)) return a;
  return Expr::make(Expr::Op::Add, {a, b});
}
Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_const(0.0)) return a;
  if (a.is_const(0.0)) return -b;
  return Expr::make(Expr::Op::Sub, {a, b});
}
Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_const(0.0) || b.is_const(0.0)) return Expr(0.0);
  if (a.is_const(1.0)) return b;
  if (b.is_const(1.0)) return a;
  if (a.is_const(-1.0)) return -b;
  if (b.is_const(-1.0)) return -a;
  return Expr::make(Expr::Op::Mul, {a, b});
}
Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_const(0.0)) return Expr(0.0);
  if (b.is_const(1.0)) return a;
  return Expr::make(Expr::Op::Div, {a, b});
}
Expr operator-(const Expr& a) {
  if (a.op() == Expr::Op::Neg) return a.args()[0];
  return Expr::make(Expr::Op::Neg, {a});
}
Expr pow(const Expr& a, const Expr& b) {
  if (b.is_const(0.0)) return Expr(1.0);
  if (b.is_const(1.0)) return a;
  return Expr::make(Expr::Op::Pow, {a, b});
}
Expr sin(const Expr& a) { return Expr::make(Expr::Op::Sin, {a}); }
Expr cos(const Expr& a) { return Expr::make(Expr::Op::Cos, {a}); }
Expr sinh(const Expr& a) { return Expr::make(Expr::Op::Sinh, {a}); }
Expr cosh(const Expr& a) { return Expr::make(Expr::Op::Cosh, {a}); }
Expr exp(const Expr& a) { return Expr::make(Expr::Op::Exp, {a}); }
Expr sqrt(const Expr& a) { return Expr::make(Expr::Op::Sqrt, {a}); }
Expr log(const Expr& a) { return Expr::make(Expr::Op::Log, {a}); }

namespace {

// d/dv of e where leaf_d gives the derivative of each leaf.
Expr differentiate(const Expr& e, const std::function<Expr(const Expr&)>& leaf_d) {
  using Op = Expr::Op;
  const auto& a = e.args();
  auto d = [&](int k) { return differentiate(a[k], leaf_d); };
  switch (e.op()) {
    case Op::Const:
    case Op::Coord:
    case Op::Time: return leaf_d(e);
    case Op::Add: return d(0) + d(1);
    case Op::Sub: return d(0) - d(1);
    case Op::Mul: return d(0) * a[1] + a[0] * d(1);
    case Op::Div: return (d(0) * a[1] - a[0] * d(1)) / (a[1] * a[1]);
    case Op::Pow: {
      Expr db = d(1);
      if (db.is_const(0.0)) return a[1] * pow(a[0], a[1] - Expr(1.0)) * d(0);
      return e * (db * log(a[0]) + a[1] * d(0) / a[0]);
    }
    case Op::Neg: return -d(0);
    case Op::Sin: return cos(a[0]) * d(0);
    case Op::Cos: return -(sin(a[0]) * d(0));
    case Op::Sinh: return cosh(a[0]) * d(0);
    case Op::Cosh: return sinh(a[0]) * d(0);
    case Op::Exp: return e * d(0);
    case Op::Sqrt: return d(0) / (Expr(2.0) * e);
    case Op::Log: return d(0) / a[0];
  }
  return Expr(0.0);
}

}  // namespace

Expr Expr::diff_time() const {
  return differentiate(*this, [](const Expr& leaf) { return Expr(leaf.op() == Op::Time ? 1.0 : 0.0); });
}

Expr Expr::diff_coord(int i) const {
  return differentiate(*this, [i](const Expr& leaf) {
    return Expr(leaf.op() == Op::Coord && leaf.index() == i ? 1.0 : 0.0);
  });
}

Expr Expr::remap(const std::function<Expr(int)>& coord_map, const Expr& time_value) const {
  switch (op()) {
    case Op::Const: return *this;
    case Op::Coord: return coord_map(index());
    case Op::Time: return time_value;
    default: {
      std::vector<Expr> mapped;
      for (auto& a : args()) mapped.push_back(a.remap(coord_map, time_value));
      return make(op(), std::move(mapped));
    }
  }
}

bool Expr::uses_time() const {
  if (op() == Op::Time) return true;
  for (auto& a : args())
    if (a.uses_time()) return true;
  return false;
}

int Expr::max_coord() const {
  int m = op() == Op::Coord ? index() : -1;
  for (auto& a : args()) m = std::max(m, a.max_coord());
  return m;
}

std::size_t Expr::node_count() const {
  std::size_t c = 1;
  for (auto& a : args()) c += a.node_count();
  return c;
}

nlohmann::json Expr::to_json() const {
  nlohmann::json j;
  j["op"] = op_names().at(op());
  if (op() == Op::Const) j["value"] = value();
  if (op() == Op::Coord) j["index"] = index();
  if (!args().empty()) {
    j["args"] = nlohmann::json::array();
    for (auto& a : args()) j["args"].push_back(a.to_json());
  }
  return j;
}

Expr Expr::from_json(const nlohmann::json& j) {
  if (j.is_number()) return Expr(j.get<double>());
  if (j.is_string()) return parse(j.get<std::string>());
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) throw SchemaError("expression must be a number, string or {\"op\":...}");
  const std::string name = j["op"].get<std::string>();
  for (auto& [op, nm] : op_names()) {
    if (nm != name) continue;
    if (op == Op::Const) {
      if (!j.contains("value") || !j["value"].is_number()) throw SchemaError("const needs a numeric value");
      return Expr(j["value"].get<double>());
    }
    if (op == Op::Coord) {
      if (!j.contains("index") || !j["index"].is_number_integer()) throw SchemaError("coord needs an integer index");
      return coord(j["index"].get<int>());
    }
    if (op == Op::Time) return time();
    if (!j.contains("args") || !j["args"].is_array()) throw SchemaError(name + " needs args");
    std::vector<Expr> args;
    for (auto& a : j["args"]) args.push_back(from_json(a));
    return make(op, std::move(args));
  }
  throw SchemaError("unknown expression op '" + name + "'");
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Expr run() {
    Expr e = sum();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw SchemaError("expression parse error at " + std::to_string(pos_) + ": " + why + " in '" + s_ + "'");
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
  Expr sum() {
    Expr e = product();
    for (;;) {
      if (eat('+')) e = e + product();
      else if (eat('-')) e = e - product();
      else return e;
    }
  }
  Expr product() {
    Expr e = unary();
    for (;;) {
      if (eat('*')) e = e * unary();
      else if (eat('/')) e = e / unary();
      else return e;
    }
  }
  Expr unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    Expr base = primary();
    if (eat('^')) return pow(base, unary());
    return base;
  }
  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (eat('(')) {
      Expr e = sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = std::stod(s_.substr(pos_), &used);
      pos_ += used;
      return Expr(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string word = s_.substr(start, pos_ - start);
      if (word == "t") return Expr::time();
      if (word == "pi") return Expr(3.14159265358979323846);
      if (word.size() > 1 && word[0] == 'x' && word.find_first_not_of("0123456789", 1) == std::string::npos)
        return Expr::coord(std::stoi(word.substr(1)));
      static const std::map<std::string, Expr (*)(const Expr&)> funcs{
          {"sin", &gcyl::sin}, {"cos", &gcyl::cos}, {"sinh", &gcyl::sinh}, {"cosh", &gcyl::cosh},
          {"exp", &gcyl::exp}, {"sqrt", &gcyl::sqrt}, {"log", &gcyl::log}};
      auto it = funcs.find(word);
      if (it == funcs.end()) fail("unknown identifier '" + word + "'");
      if (!eat('(')) fail("expected '(' after " + word);
      Expr arg = sum();
      if (!eat(')')) fail("expected ')'");
      return it->second(arg);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Expr Expr::parse(const std::string& text) { return Parser(text).run(); }

std::string Expr::str() const {
  std::ostringstream os;
  os.precision(17);
  switch (op()) {
    case Op::Const:
      if (value() < 0) os << "(" << value() << ")";
      else os << value();
      break;
    case Op::Coord: os << "x" << index(); break;
    case Op::Time: os << "t"; break;
    case Op::Add: os << "(" << args()[0].str() << " + " << args()[1].str() << ")"; break;
    case Op::Sub: os << "(" << args()[0].str() << " - " << args()[1].str() << ")"; break;
    case Op::Mul: os << "(" << args()[0].str() << " * " << args()[1].str() << ")"; break;
    case Op::Div: os << "(" << args()[0].str() << " / " << args()[1].str() << ")"; break;
    case Op::Pow: os << "(" << args()[0].str() << ")^(" << args()[1].str() << ")"; break;
    case Op::Neg: os << "(-" << args()[0].str() << ")"; break;
    default: os << op_names().at(op()) << "(" << args()[0].str() << ")"; break;
  }
  return os.str();
}

ExprMatrix::ExprMatrix(int rows, int cols, const Expr& fill)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {}

ExprMatrix ExprMatrix::identity(int n) {
  ExprMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Expr(1.0);
  return m;
}

ExprMatrix ExprMatrix::constant(const Mat& m) {
  ExprMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = Expr(m(i, j));
  return out;
}

Mat ExprMatrix::eval(const double* x, double t) const {
  Mat m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).eval(x, t);
  return m;
}

ExprMatrix ExprMatrix::operator*(const ExprMatrix& o) const {
  if (cols_ != o.rows_) throw PreconditionError("expression matrix shape mismatch");
  ExprMatrix out(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      Expr acc(0.0);
      for (int k = 0; k < cols_; ++k) acc = acc + (*this)(i, k) * o(k, j);
      out(i, j) = acc;
    }
  return out;
}

ExprMatrix ExprMatrix::operator+(const ExprMatrix& o) const {
  ExprMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] + o.data_[k];
  return out;
}

ExprMatrix ExprMatrix::operator-(const ExprMatrix& o) const {
  ExprMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] - o.data_[k];
  return out;
}

ExprMatrix ExprMatrix::scaled(const Expr& c) const {
  ExprMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = c * data_[k];
  return out;
}

ExprMatrix ExprMatrix::transpose() const {
  ExprMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ExprMatrix ExprMatrix::diff_time() const {
  ExprMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k].diff_time();
  return out;
}

ExprMatrix ExprMatrix::remap(const std::function<Expr(int)>& coord_map, const Expr& time_value) const {
  ExprMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k].remap(coord_map, time_value);
  return out;
}

bool ExprMatrix::uses_time() const {
  for (auto& e : data_)
    if (e.uses_time()) return true;
  return false;
}

int ExprMatrix::max_coord() const {
  int m = -1;
  for (auto& e : data_) m = std::max(m, e.max_coord());
  return m;
}

nlohmann::json ExprMatrix::to_json() const {
  auto j = nlohmann::json::array();
  for (int i = 0; i < rows_; ++i) {
    auto row = nlohmann::json::array();
    for (int k = 0; k < cols_; ++k) row.push_back((*this)(i, k).to_json());
    j.push_back(row);
  }
  return j;
}

ExprMatrix ExprMatrix::from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw SchemaError("matrix must be a nested array");
  const int rows = static_cast<int>(j.size()), cols = static_cast<int>(j[0].size());
  ExprMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) throw SchemaError("ragged matrix");
    for (int k = 0; k < cols; ++k) m(i, k) = Expr::from_json(j[i][k]);
  }
  return m;
}

}  // namespace gcyl
