#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gcyl/common.hpp"

namespace gcyl {

// Immutable expression tree in the chart coordinates x0, x1, ... and the family
// parameter t. Builders fold constants so composed metrics stay small.
class Expr {
 public:
  enum class Op { Const, Coord, Time, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Sinh, Cosh, Exp, Sqrt, Log };

  Expr(double c = 0.0);  // NOLINT: numbers convert implicitly
  static Expr coord(int i);
  static Expr time();
  static Expr make(Op op, std::vector<Expr> args);

  Op op() const;
  double value() const;  // Const
  int index() const;     // Coord
  const std::vector<Expr>& args() const;

  bool is_const() const { return op() == Op::Const; }
  bool is_const(double c) const { return is_const() && value() == c; }

  double eval(const double* x, double t) const;
  double eval(const Vec& x, double t = 0.0) const { return eval(x.data(), t); }

  Expr diff_time() const;
  Expr diff_coord(int i) const;
  // Rewrites leaves: coordinates through coord_map, t through time_value.
  Expr remap(const std::function<Expr(int)>& coord_map, const Expr& time_value) const;

  bool uses_time() const;
  int max_coord() const;  // -1 if none
  std::size_t node_count() const;

  nlohmann::json to_json() const;
  static Expr from_json(const nlohmann::json& j);
  // Infix syntax: + - * / ^, sin cos sinh cosh exp sqrt log, x0 x1 ..., t, pi.
  static Expr parse(const std::string& text);
  std::string str() const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& a, const Expr& b);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr sinh(const Expr& a);
Expr cosh(const Expr& a);
Expr exp(const Expr& a);
Expr sqrt(const Expr& a);
Expr log(const Expr& a);

class ExprMatrix {
 public:
  ExprMatrix() = default;
  ExprMatrix(int rows, int cols, const Expr& fill = Expr(0.0));
  static ExprMatrix identity(int n);
  static ExprMatrix constant(const Mat& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Expr& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Expr& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

  Mat eval(const double* x, double t) const;
  Mat eval(const Vec& x, double t = 0.0) const { return eval(x.data(), t); }

  ExprMatrix operator*(const ExprMatrix& o) const;
  ExprMatrix operator+(const ExprMatrix& o) const;
  ExprMatrix operator-(const ExprMatrix& o) const;
  ExprMatrix scaled(const Expr& c) const;
  ExprMatrix transpose() const;
  ExprMatrix diff_time() const;
  ExprMatrix remap(const std::function<Expr(int)>& coord_map, const Expr& time_value) const;
  bool uses_time() const;
  int max_coord() const;

  nlohmann::json to_json() const;
  static ExprMatrix from_json(const nlohmann::json& j);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Expr> data_;
};

}  // namespace gcyl
