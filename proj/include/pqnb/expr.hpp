#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pqnb/rational.hpp"

namespace pqnb {

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

struct ExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by eval() when a divisor falls below the guard threshold.
struct NearSingularError : ExprError {
  using ExprError::ExprError;
};

struct ParseError : ExprError {
  size_t position;
  ParseError(const std::string& msg, size_t pos) : ExprError(msg), position(pos) {}
};

struct SamplingError : ExprError {
  using ExprError::ExprError;
};

namespace detail {

using VarId = int;

// Sparse monomial: sorted (variable, exponent) pairs, exponents > 0.
struct Monomial {
  std::vector<std::pair<VarId, int>> factors;

  int degree() const;
  bool operator==(const Monomial& o) const { return factors == o.factors; }
  bool operator<(const Monomial& o) const;  // graded order, leading terms last
  static Monomial var(VarId v, int exp = 1);
  Monomial times(const Monomial& o) const;
  std::optional<Monomial> divide(const Monomial& o) const;
};

// Multivariate polynomial: sorted term list, no zero coefficients.
struct Poly {
  std::vector<std::pair<Monomial, Rational>> terms;

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;
  static Poly zero() { return {}; }
  static Poly constant(Rational c);
  static Poly var(VarId v);

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly pow(int e) const;
  bool operator==(const Poly& o) const { return terms == o.terms; }

  void add_term(const Monomial& m, const Rational& c);
  void for_each_var(const std::function<void(VarId)>& f) const;
};

struct RatFunc {
  Poly num;
  Poly den;  // normalized: integer coprime coefficients across num/den, positive den lead

  bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
};

enum class KernelFn { Exp, Sin, Cos };

struct Kernel {
  KernelFn fn;
  RatFunc arg;
};

}  // namespace detail

// A coordinate chart: ordered coordinate names plus the registry of
// transcendental kernels (exp/sin/cos of canonical arguments) discovered
// while building expressions on it.
class Chart {
 public:
  explicit Chart(std::vector<std::string> coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<std::string>& coords() const { return coords_; }
  int coord_index(const std::string& name) const;  // -1 if unknown

  // Kernel ids start at dim(); registration is append-only.
  int ensure_kernel(detail::KernelFn fn, const detail::RatFunc& arg) const;
  const detail::Kernel& kernel(int var_id) const;
  bool is_kernel(int var_id) const { return var_id >= dim(); }

 private:
  std::vector<std::string> coords_;
  mutable std::deque<detail::Kernel> kernels_;
  mutable std::mutex mutex_;
};

ChartPtr make_chart(std::vector<std::string> coords);
bool same_chart(const ChartPtr& a, const ChartPtr& b);

// Symbolic scalar function on a chart, kept in canonical form: a single
// numerator/denominator pair of expanded multivariate polynomials over the
// coordinates and opaque transcendental kernels.
class Expr {
 public:
  Expr() = default;

  static Expr constant(ChartPtr chart, Rational c);
  static Expr coordinate(ChartPtr chart, int index);
  static Expr coordinate(ChartPtr chart, const std::string& name);

  const ChartPtr& chart() const { return chart_; }
  bool is_structural_zero() const;
  bool is_rational() const;  // no transcendental kernels anywhere
  std::optional<Rational> as_rational_constant() const;

  Expr operator-() const;
  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr operator*(const Expr& o) const;
  Expr operator/(const Expr& o) const;
  Expr pow(int e) const;
  bool operator==(const Expr& o) const;
  bool operator!=(const Expr& o) const { return !(*this == o); }

  Expr diff(int coord) const;
  Expr diff(const std::string& coord) const;

  // IEEE double evaluation; divisors with |value| < guard raise NearSingularError.
  double eval(const std::vector<double>& point, double guard = 1e-12) const;
  // Evaluation together with a cancellation-aware magnitude scale (>= |value|).
  std::pair<double, double> eval_with_mag(const std::vector<double>& point, double guard = 1e-12) const;

  // Substitute coordinates by expressions (unmapped coordinates stay themselves).
  Expr subst(const std::map<int, Expr>& map) const;
  // Rebuild on another chart, matching coordinates by name.
  Expr transport(const ChartPtr& dst) const;

  std::string to_string() const;

  const detail::RatFunc& rep() const { return rf_; }
  Expr(ChartPtr chart, detail::RatFunc rf);

 private:
  ChartPtr chart_;
  detail::RatFunc rf_{detail::Poly::zero(), detail::Poly::constant(Rational(1))};
};

Expr exp(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr operator*(const Rational& c, const Expr& e);

// Idempotent by construction: expressions are kept canonical eagerly.
inline Expr canonicalize(const Expr& e) { return e; }

// Recursive-descent parser for the expression grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ['-'] base ('^' integer)?
//   base   := integer | symbol | '(' expr ')' | ('exp'|'sin'|'cos') '(' expr ')'
Expr parse_expr(const std::string& text, const ChartPtr& chart);

struct SamplingPolicy {
  int points = 16;
  int range = 2;           // coordinates sampled as rationals in [-range, range]
  double tolerance = 1e-9;
  double guard = 1e-6;     // nonvanishing / divisor admissibility threshold
  uint64_t seed = 42;
};

struct ZeroVerdict {
  enum class Kind { ZeroExact, ZeroNumeric, NonZero };
  Kind kind = Kind::ZeroExact;
  double residual = 0.0;             // max |value| seen (NonZero: witness value)
  std::vector<double> witness;       // evaluation point for NonZero

  bool is_zero() const { return kind != Kind::NonZero; }
  static ZeroVerdict exact() { return {}; }
  static ZeroVerdict numeric(double r) { return {Kind::ZeroNumeric, r, {}}; }
  static ZeroVerdict nonzero(double r, std::vector<double> w) { return {Kind::NonZero, r, std::move(w)}; }
  // Combine componentwise verdicts: NonZero dominates, then ZeroNumeric.
  ZeroVerdict merge(const ZeroVerdict& o) const;
  std::string to_string() const;
};

// Two-tier zero test: exact via the canonical form for kernel-free
// expressions, seeded numeric sampling otherwise. Sample points where any
// declared nonvanishing expression dips below the guard are rejected.
ZeroVerdict is_zero(const Expr& e, const SamplingPolicy& policy,
                    const std::vector<Expr>& nonvanishing = {});

}  // namespace pqnb
