#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cubint {

enum class Op : std::uint8_t { Num, Pi, E, X, Y, Sin, Cos, Tan, Exp, Ln, Sinh, Cosh, Tanh, Pow, Mul, Add };
enum class Var : std::uint8_t { X = 0, Y = 1 };

struct Node;

// Hash-consed immutable expression. Equality is pointer equality of the interned node.
class Expr {
 public:
  Expr();
  Expr(long v);
  Expr(int v) : Expr(static_cast<long>(v)) {}
  Expr(const mpq_class& q);
  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  static Expr x();
  static Expr y();
  static Expr var(Var v) { return v == Var::X ? x() : y(); }
  static Expr pi();
  static Expr e();

  Op op() const;
  const mpq_class& q() const;  // value of Num, exponent of Pow
  const std::vector<Expr>& args() const;
  std::uint64_t hash() const;
  const Node* get() const { return n_.get(); }
  const std::shared_ptr<const Node>& ptr() const { return n_; }

  bool is_num() const { return op() == Op::Num; }
  bool is_zero() const;
  bool is_one() const;

  friend bool operator==(const Expr& a, const Expr& b) { return a.n_ == b.n_; }
  friend bool operator!=(const Expr& a, const Expr& b) { return a.n_ != b.n_; }

 private:
  std::shared_ptr<const Node> n_;
};

struct Node {
  Op op;
  std::uint64_t h;
  mpq_class q;
  std::vector<Expr> a;
  mutable std::shared_ptr<const Node> d[2];
};

struct SyntaxError : std::runtime_error {
  std::size_t offset;
  SyntaxError(const std::string& m, std::size_t off)
      : std::runtime_error(m + " at offset " + std::to_string(off)), offset(off) {}
};
struct UnknownIdentifier : SyntaxError {
  using SyntaxError::SyntaxError;
};
struct EvalDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr pow(const Expr& b, const mpq_class& e);
Expr apply(Op f, const Expr& u);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr& operator+=(Expr& a, const Expr& b);
Expr& operator-=(Expr& a, const Expr& b);
Expr& operator*=(Expr& a, const Expr& b);

Expr sin(const Expr& u);
Expr cos(const Expr& u);
Expr tan(const Expr& u);
Expr exp(const Expr& u);
Expr ln(const Expr& u);
Expr sqrt(const Expr& u);
Expr sinh(const Expr& u);
Expr cosh(const Expr& u);
Expr tanh(const Expr& u);
Expr rat(long p, long q);

// Total order used for printing and canonical symbol ordering.
int compare(const Expr& a, const Expr& b);
std::size_t dag_size(const Expr& e);
bool depends_on(const Expr& e, Var v);

Expr diff(const Expr& e, Var v);
inline Expr dx(const Expr& e) { return diff(e, Var::X); }
inline Expr dy(const Expr& e) { return diff(e, Var::Y); }

std::string to_string(const Expr& e);
Expr parse(std::string_view text);

struct Simplified {
  Expr expr;
  std::vector<std::string> notes;  // removable singularities cancelled during normalization
  bool complete = true;            // false when the size budget stopped normalization
};
Simplified simplify_ex(const Expr& e, std::size_t term_budget = 20000);
Expr simplify(const Expr& e);

double eval_at(const Expr& e, double x, double y);

// ---- numeric probing -------------------------------------------------------

struct Box {
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
};

struct ZeroTestConfig {
  int samples = 64;
  int seeds = 3;
  std::uint64_t seed = 20240917;
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double max_domain_failure = 0.5;
  std::size_t symbolic_limit = 600;  // dag size above which the symbolic pass is skipped
};

struct ZeroVerdict {
  enum Kind { Zero, NonZero, Unknown } kind = Unknown;
  double wx = 0, wy = 0, value = 0, threshold = 0;
  bool symbolic = false;
  std::string reason;

  bool zero() const { return kind == Zero; }
  bool nonzero() const { return kind == NonZero; }
  bool unknown() const { return kind == Unknown; }
};
std::string to_string(ZeroVerdict::Kind k);

// Flattened evaluator for one or more expressions sharing a DAG.
class Tape {
 public:
  explicit Tape(const std::vector<Expr>& roots);
  explicit Tape(const Expr& root) : Tape(std::vector<Expr>{root}) {}
  // Throws EvalDomainError. Fills values (and magnitude bounds if requested) of every root.
  void eval(long double x, long double y, std::vector<long double>& out,
            std::vector<long double>* mag = nullptr) const;
  long double eval1(long double x, long double y) const;
  std::size_t size() const { return ins_.size(); }

 private:
  struct Ins {
    Op op;
    std::uint32_t first = 0, count = 0;
    long double c = 0;
    long num = 0, den = 1;
  };
  std::vector<Ins> ins_;
  std::vector<std::uint32_t> argv_;
  std::vector<std::uint32_t> roots_;
  mutable std::vector<long double> v_, m_;
};

ZeroVerdict is_zero(const Expr& e, const Box& box, const ZeroTestConfig& cfg = {});
std::vector<std::pair<double, double>> probe_points(const Box& box, std::uint64_t seed, int n);

}  // namespace cubint
