#include "pqnb/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <sstream>
#include <tuple>

namespace pqnb {
namespace detail {

int Monomial::degree() const {
  int d = 0;
  for (auto& [v, e] : factors) d += e;
  return d;
}

bool Monomial::operator<(const Monomial& o) const {
  int da = degree(), db = o.degree();
  if (da != db) return da < db;
  return factors < o.factors;
}

Monomial Monomial::var(VarId v, int exp) {
  Monomial m;
  if (exp > 0) m.factors.emplace_back(v, exp);
  return m;
}

Monomial Monomial::times(const Monomial& o) const {
  Monomial r;
  size_t i = 0, j = 0;
  while (i < factors.size() || j < o.factors.size()) {
    if (j == o.factors.size() || (i < factors.size() && factors[i].first < o.factors[j].first)) {
      r.factors.push_back(factors[i++]);
    } else if (i == factors.size() || o.factors[j].first < factors[i].first) {
      r.factors.push_back(o.factors[j++]);
    } else {
      r.factors.emplace_back(factors[i].first, factors[i].second + o.factors[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
  Monomial r;
  size_t j = 0;
  for (auto& [v, e] : factors) {
    if (j < o.factors.size() && o.factors[j].first < v) return std::nullopt;
    if (j < o.factors.size() && o.factors[j].first == v) {
      if (o.factors[j].second > e) return std::nullopt;
      if (o.factors[j].second < e) r.factors.emplace_back(v, e - o.factors[j].second);
      ++j;
    } else {
      r.factors.emplace_back(v, e);
    }
  }
  if (j != o.factors.size()) return std::nullopt;
  return r;
}

bool Poly::is_constant() const {
  return terms.empty() || (terms.size() == 1 && terms[0].first.factors.empty());
}

Poly Poly::constant(Rational c) {
  Poly p;
  if (!c.is_zero()) p.terms.emplace_back(Monomial{}, std::move(c));
  return p;
}

Poly Poly::var(VarId v) {
  Poly p;
  p.terms.emplace_back(Monomial::var(v), Rational(1));
  return p;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms) t.second = -t.second;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.terms.reserve(terms.size() + o.terms.size());
  size_t i = 0, j = 0;
  while (i < terms.size() || j < o.terms.size()) {
    if (j == o.terms.size() || (i < terms.size() && terms[i].first < o.terms[j].first)) {
      r.terms.push_back(terms[i++]);
    } else if (i == terms.size() || o.terms[j].first < terms[i].first) {
      r.terms.push_back(o.terms[j++]);
    } else {
      Rational c = terms[i].second + o.terms[j].second;
      if (!c.is_zero()) r.terms.emplace_back(terms[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  std::map<Monomial, Rational> acc;
  for (auto& [ma, ca] : terms) {
    for (auto& [mb, cb] : o.terms) {
      Monomial m = ma.times(mb);
      auto [it, fresh] = acc.try_emplace(std::move(m), Rational(0));
      it->second += ca * cb;
    }
  }
  Poly r;
  r.terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) r.terms.emplace_back(m, c);
  return r;
}

Poly Poly::pow(int e) const {
  Poly r = Poly::constant(Rational(1));
  Poly b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto it = std::lower_bound(terms.begin(), terms.end(), m,
                             [](const auto& t, const Monomial& k) { return t.first < k; });
  if (it != terms.end() && it->first == m) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  } else {
    terms.emplace(it, m, c);
  }
}

void Poly::for_each_var(const std::function<void(VarId)>& f) const {
  for (auto& [m, c] : terms)
    for (auto& [v, e] : m.factors) f(v);
}

namespace {

// Greatest common monomial divisor across all terms of both polynomials.
Monomial common_monomial(const Poly& a, const Poly& b) {
  Monomial g;
  bool first = true;
  auto fold = [&](const Poly& p) {
    for (auto& [m, c] : p.terms) {
      if (first) {
        g = m;
        first = false;
        continue;
      }
      Monomial next;
      size_t i = 0;
      for (auto& [v, e] : g.factors) {
        while (i < m.factors.size() && m.factors[i].first < v) ++i;
        if (i < m.factors.size() && m.factors[i].first == v)
          next.factors.emplace_back(v, std::min(e, m.factors[i].second));
      }
      g = std::move(next);
      if (g.factors.empty()) return;
    }
  };
  fold(a);
  if (!g.factors.empty() || first) fold(b);
  return first ? Monomial{} : g;
}

Poly divide_monomial(const Poly& p, const Monomial& m) {
  if (m.factors.empty()) return p;
  Poly r;
  r.terms.reserve(p.terms.size());
  for (auto& [mm, c] : p.terms) {
    auto q = mm.divide(m);
    r.terms.emplace_back(std::move(*q), c);
  }
  std::sort(r.terms.begin(), r.terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

// Scale num/den by a common rational so coefficients become coprime integers
// with a positive leading denominator coefficient. Together with the monomial
// cancellation this fixes a unique representative per construction route.
void normalize(RatFunc& f) {
  if (f.den.is_zero()) throw ExprError("division by zero expression");
  if (f.num.is_zero()) {
    f.den = Poly::constant(Rational(1));
    return;
  }
  Monomial g = common_monomial(f.num, f.den);
  if (!g.factors.empty()) {
    f.num = divide_monomial(f.num, g);
    f.den = divide_monomial(f.den, g);
  }
  BigInt lcm(1);
  auto fold_lcm = [&](const Poly& p) {
    for (auto& [m, c] : p.terms) {
      BigInt d = c.den();
      lcm = lcm / BigInt::gcd(lcm, d) * d;
    }
  };
  fold_lcm(f.num);
  fold_lcm(f.den);
  BigInt content(0);
  auto fold_content = [&](const Poly& p) {
    for (auto& [m, c] : p.terms) content = BigInt::gcd(content, c.num() * (lcm / c.den()));
  };
  fold_content(f.num);
  fold_content(f.den);
  Rational scale(lcm, content);
  if (f.den.terms.back().second.sign() < 0) scale = -scale;
  if (!scale.is_one()) {
    for (auto& t : f.num.terms) t.second *= scale;
    for (auto& t : f.den.terms) t.second *= scale;
  }
}

RatFunc rf_constant(Rational c) {
  RatFunc r{Poly::constant(std::move(c)), Poly::constant(Rational(1))};
  normalize(r);
  return r;
}

RatFunc rf_add(const RatFunc& a, const RatFunc& b) {
  RatFunc r{a.num * b.den + b.num * a.den, a.den * b.den};
  normalize(r);
  return r;
}

RatFunc rf_mul(const RatFunc& a, const RatFunc& b) {
  RatFunc r{a.num * b.num, a.den * b.den};
  normalize(r);
  return r;
}

RatFunc rf_div(const RatFunc& a, const RatFunc& b) {
  RatFunc r{a.num * b.den, a.den * b.num};
  normalize(r);
  return r;
}

RatFunc rf_neg(const RatFunc& a) { return {-a.num, a.den}; }

}  // namespace
}  // namespace detail

using detail::Kernel;
using detail::KernelFn;
using detail::Monomial;
using detail::Poly;
using detail::RatFunc;
using detail::VarId;

Chart::Chart(std::vector<std::string> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw ExprError("chart needs at least one coordinate");
  for (size_t i = 0; i < coords_.size(); ++i)
    for (size_t j = i + 1; j < coords_.size(); ++j)
      if (coords_[i] == coords_[j]) throw ExprError("duplicate coordinate name: " + coords_[i]);
}

int Chart::coord_index(const std::string& name) const {
  for (size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] == name) return static_cast<int>(i);
  return -1;
}

int Chart::ensure_kernel(KernelFn fn, const RatFunc& arg) const {
  std::lock_guard<std::mutex> lock(mutex_);
  for (size_t i = 0; i < kernels_.size(); ++i)
    if (kernels_[i].fn == fn && kernels_[i].arg == arg) return dim() + static_cast<int>(i);
  kernels_.push_back(Kernel{fn, arg});
  return dim() + static_cast<int>(kernels_.size()) - 1;
}

const Kernel& Chart::kernel(int var_id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return kernels_.at(static_cast<size_t>(var_id - dim()));
}

ChartPtr make_chart(std::vector<std::string> coords) {
  return std::make_shared<Chart>(std::move(coords));
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a == b) return true;
  return a && b && a->coords() == b->coords();
}

Expr::Expr(ChartPtr chart, RatFunc rf) : chart_(std::move(chart)), rf_(std::move(rf)) {}

Expr Expr::constant(ChartPtr chart, Rational c) {
  return Expr(std::move(chart), detail::rf_constant(std::move(c)));
}

Expr Expr::coordinate(ChartPtr chart, int index) {
  if (index < 0 || index >= chart->dim()) throw ExprError("coordinate index out of range");
  RatFunc rf{Poly::var(index), Poly::constant(Rational(1))};
  return Expr(std::move(chart), std::move(rf));
}

Expr Expr::coordinate(ChartPtr chart, const std::string& name) {
  int i = chart->coord_index(name);
  if (i < 0) throw ExprError("unknown coordinate: " + name);
  return coordinate(std::move(chart), i);
}

bool Expr::is_structural_zero() const { return rf_.num.is_zero(); }

namespace {

bool poly_has_kernel(const Poly& p, const Chart& chart) {
  for (auto& [m, c] : p.terms)
    for (auto& [v, e] : m.factors)
      if (chart.is_kernel(v)) return true;
  return false;
}

bool rf_rational(const RatFunc& rf, const Chart& chart) {
  return !poly_has_kernel(rf.num, chart) && !poly_has_kernel(rf.den, chart);
}

void require_same_chart(const Expr& a, const Expr& b) {
  if (!same_chart(a.chart(), b.chart())) throw ExprError("chart mismatch in expression arithmetic");
}

}  // namespace

bool Expr::is_rational() const {
  if (!chart_) return true;
  return rf_rational(rf_, *chart_);
}

std::optional<Rational> Expr::as_rational_constant() const {
  if (!rf_.num.is_constant() || !rf_.den.is_constant()) return std::nullopt;
  Rational n = rf_.num.terms.empty() ? Rational(0) : rf_.num.terms[0].second;
  Rational d = rf_.den.terms[0].second;
  return n / d;
}

Expr Expr::operator-() const { return Expr(chart_, detail::rf_neg(rf_)); }

namespace {

// Kernel ids are registered per chart instance; operands living on a
// different (equal-named) instance must be rebuilt before mixing.
detail::RatFunc aligned_rep(const Expr& target, const Expr& o) {
  if (target.chart().get() == o.chart().get()) return o.rep();
  return o.transport(target.chart()).rep();
}

}  // namespace

Expr Expr::operator+(const Expr& o) const {
  require_same_chart(*this, o);
  return Expr(chart_, detail::rf_add(rf_, aligned_rep(*this, o)));
}

Expr Expr::operator-(const Expr& o) const {
  require_same_chart(*this, o);
  return Expr(chart_, detail::rf_add(rf_, detail::rf_neg(aligned_rep(*this, o))));
}

Expr Expr::operator*(const Expr& o) const {
  require_same_chart(*this, o);
  return Expr(chart_, detail::rf_mul(rf_, aligned_rep(*this, o)));
}

Expr Expr::operator/(const Expr& o) const {
  require_same_chart(*this, o);
  if (o.is_structural_zero()) throw ExprError("division by zero expression");
  return Expr(chart_, detail::rf_div(rf_, aligned_rep(*this, o)));
}

Expr Expr::pow(int e) const {
  if (e == 0) return Expr::constant(chart_, Rational(1));
  if (e < 0) {
    if (is_structural_zero()) throw ExprError("zero raised to a negative power");
    RatFunc inv{rf_.den, rf_.num};
    detail::normalize(inv);
    RatFunc r{inv.num.pow(-e), inv.den.pow(-e)};
    detail::normalize(r);
    return Expr(chart_, std::move(r));
  }
  RatFunc r{rf_.num.pow(e), rf_.den.pow(e)};
  detail::normalize(r);
  return Expr(chart_, std::move(r));
}

bool Expr::operator==(const Expr& o) const {
  if (!same_chart(chart_, o.chart_)) return false;
  return rf_ == aligned_rep(*this, o);
}

Expr operator*(const Rational& c, const Expr& e) {
  return Expr::constant(e.chart(), c) * e;
}

namespace {

Expr make_kernel(KernelFn fn, const Expr& e) {
  // Fold constant arguments with an exact value, if any.
  if (auto c = e.as_rational_constant()) {
    if (c->is_zero()) {
      switch (fn) {
        case KernelFn::Exp:
        case KernelFn::Cos:
          return Expr::constant(e.chart(), Rational(1));
        case KernelFn::Sin:
          return Expr::constant(e.chart(), Rational(0));
      }
    }
  }
  int id = e.chart()->ensure_kernel(fn, e.rep());
  RatFunc rf{Poly::var(id), Poly::constant(Rational(1))};
  return Expr(e.chart(), std::move(rf));
}

}  // namespace

Expr exp(const Expr& e) { return make_kernel(KernelFn::Exp, e); }
Expr sin(const Expr& e) { return make_kernel(KernelFn::Sin, e); }
Expr cos(const Expr& e) { return make_kernel(KernelFn::Cos, e); }

// --- differentiation -------------------------------------------------------

namespace {

Expr diff_var(const ChartPtr& chart, VarId v, int coord);

Expr diff_poly(const ChartPtr& chart, const Poly& p, int coord) {
  Expr acc = Expr::constant(chart, Rational(0));
  for (auto& [m, c] : p.terms) {
    for (size_t k = 0; k < m.factors.size(); ++k) {
      auto [v, e] = m.factors[k];
      // d(v^e)/dx * (other factors)
      Expr dv = diff_var(chart, v, coord);
      if (dv.is_structural_zero()) continue;
      Monomial rest;
      for (size_t j = 0; j < m.factors.size(); ++j) {
        if (j == k) {
          if (e > 1) rest.factors.emplace_back(v, e - 1);
        } else {
          rest.factors.push_back(m.factors[j]);
        }
      }
      Poly restp;
      restp.terms.emplace_back(std::move(rest), c * Rational(e));
      RatFunc rrf{std::move(restp), Poly::constant(Rational(1))};
      acc = acc + Expr(chart, std::move(rrf)) * dv;
    }
  }
  return acc;
}

Expr diff_var(const ChartPtr& chart, VarId v, int coord) {
  if (!chart->is_kernel(v))
    return Expr::constant(chart, Rational(v == coord ? 1 : 0));
  const Kernel& k = chart->kernel(v);
  Expr arg(chart, k.arg);
  Expr darg = arg.diff(coord);
  if (darg.is_structural_zero()) return darg;
  switch (k.fn) {
    case KernelFn::Exp:
      return Expr(chart, RatFunc{Poly::var(v), Poly::constant(Rational(1))}) * darg;
    case KernelFn::Sin:
      return cos(arg) * darg;
    case KernelFn::Cos:
      return -(sin(arg) * darg);
  }
  throw ExprError("unreachable kernel kind");
}

}  // namespace

Expr Expr::diff(int coord) const {
  if (coord < 0 || coord >= chart_->dim()) throw ExprError("diff: coordinate out of range");
  Expr dn = diff_poly(chart_, rf_.num, coord);
  Expr dd = diff_poly(chart_, rf_.den, coord);
  Expr den(chart_, RatFunc{rf_.den, Poly::constant(Rational(1))});
  Expr num(chart_, RatFunc{rf_.num, Poly::constant(Rational(1))});
  return (dn * den - num * dd) / (den * den);
}

Expr Expr::diff(const std::string& coord) const {
  int i = chart_->coord_index(coord);
  if (i < 0) throw ExprError("diff: unknown coordinate " + coord);
  return diff(i);
}

// --- evaluation -------------------------------------------------------------

namespace {

struct EvalCtx {
  const Chart& chart;
  const std::vector<double>& point;
  double guard;
  // memo of kernel values by kernel slot
  std::vector<std::optional<std::pair<double, double>>> kmemo;

  std::pair<double, double> var_value(VarId v) {
    if (!chart.is_kernel(v)) {
      double x = point[static_cast<size_t>(v)];
      return {x, std::abs(x)};
    }
    size_t slot = static_cast<size_t>(v - chart.dim());
    if (slot >= kmemo.size()) kmemo.resize(slot + 1);
    if (!kmemo[slot]) {
      const Kernel& k = chart.kernel(v);
      auto [av, am] = eval_rf(k.arg);
      double val = 0;
      switch (k.fn) {
        case KernelFn::Exp: val = std::exp(av); break;
        case KernelFn::Sin: val = std::sin(av); break;
        case KernelFn::Cos: val = std::cos(av); break;
      }
      kmemo[slot] = {val, std::max(std::abs(val), 1.0)};
    }
    return *kmemo[slot];
  }

  std::pair<double, double> eval_poly(const Poly& p) {
    double val = 0, mag = 0;
    for (auto& [m, c] : p.terms) {
      double tv = c.to_double();
      double tm = std::abs(tv);
      for (auto& [v, e] : m.factors) {
        auto [vv, vm] = var_value(v);
        for (int i = 0; i < e; ++i) {
          tv *= vv;
          tm *= vm;
        }
      }
      val += tv;
      mag += tm;
    }
    return {val, mag};
  }

  std::pair<double, double> eval_rf(const RatFunc& rf) {
    auto [nv, nm] = eval_poly(rf.num);
    auto [dv, dm] = eval_poly(rf.den);
    if (std::abs(dv) < guard)
      throw NearSingularError("near-singular division during evaluation");
    return {nv / dv, nm / std::abs(dv)};
  }
};

}  // namespace

std::pair<double, double> Expr::eval_with_mag(const std::vector<double>& point, double guard) const {
  if (static_cast<int>(point.size()) != chart_->dim())
    throw ExprError("eval: point dimension does not match chart");
  EvalCtx ctx{*chart_, point, guard, {}};
  return ctx.eval_rf(rf_);
}

double Expr::eval(const std::vector<double>& point, double guard) const {
  return eval_with_mag(point, guard).first;
}

// --- substitution / transport ----------------------------------------------

namespace {

Expr rebuild_rf(const RatFunc& rf, const ChartPtr& src, const ChartPtr& dst,
                const std::function<Expr(VarId)>& map_coord);

Expr rebuild_poly(const Poly& p, const ChartPtr& src, const ChartPtr& dst,
                  const std::function<Expr(VarId)>& map_coord) {
  Expr acc = Expr::constant(dst, Rational(0));
  for (auto& [m, c] : p.terms) {
    Expr term = Expr::constant(dst, c);
    for (auto& [v, e] : m.factors) {
      Expr base;
      if (src->is_kernel(v)) {
        const Kernel& k = src->kernel(v);
        Expr arg = rebuild_rf(k.arg, src, dst, map_coord);
        switch (k.fn) {
          case KernelFn::Exp: base = exp(arg); break;
          case KernelFn::Sin: base = sin(arg); break;
          case KernelFn::Cos: base = cos(arg); break;
        }
      } else {
        base = map_coord(v);
      }
      term = term * base.pow(e);
    }
    acc = acc + term;
  }
  return acc;
}

Expr rebuild_rf(const RatFunc& rf, const ChartPtr& src, const ChartPtr& dst,
                const std::function<Expr(VarId)>& map_coord) {
  Expr n = rebuild_poly(rf.num, src, dst, map_coord);
  Expr d = rebuild_poly(rf.den, src, dst, map_coord);
  return n / d;
}

}  // namespace

Expr Expr::subst(const std::map<int, Expr>& map) const {
  for (auto& [v, e] : map) {
    if (v < 0 || v >= chart_->dim()) throw ExprError("subst: coordinate out of range");
    if (!same_chart(e.chart(), chart_)) throw ExprError("subst: replacement on a different chart");
  }
  auto map_coord = [&](VarId v) -> Expr {
    auto it = map.find(v);
    if (it != map.end()) return it->second;
    return Expr::coordinate(chart_, v);
  };
  return rebuild_rf(rf_, chart_, chart_, map_coord);
}

Expr Expr::transport(const ChartPtr& dst) const {
  auto map_coord = [&](VarId v) -> Expr {
    const std::string& name = chart_->coords()[static_cast<size_t>(v)];
    int i = dst->coord_index(name);
    if (i < 0) throw ExprError("transport: coordinate " + name + " missing on target chart");
    return Expr::coordinate(dst, i);
  };
  return rebuild_rf(rf_, chart_, dst, map_coord);
}

// --- printing ----------------------------------------------------------------

namespace {

std::string kernel_name(KernelFn fn) {
  switch (fn) {
    case KernelFn::Exp: return "exp";
    case KernelFn::Sin: return "sin";
    case KernelFn::Cos: return "cos";
  }
  return "?";
}

std::string print_rf(const RatFunc& rf, const Chart& chart);

std::string print_poly(const Poly& p, const Chart& chart, const Rational& divisor = Rational(1)) {
  if (p.terms.empty()) return "0";
  std::string out;
  // print leading terms (highest order) first
  for (size_t idx = p.terms.size(); idx-- > 0;) {
    const auto& [m, raw] = p.terms[idx];
    Rational c = raw / divisor;
    Rational ac = c.abs();
    bool neg = c.sign() < 0;
    std::string term;
    bool coeff_printed = false;
    if (m.factors.empty() || !ac.is_one()) {
      term += ac.to_string();
      coeff_printed = true;
    }
    for (auto& [v, e] : m.factors) {
      if (coeff_printed || !term.empty()) term += "*";
      if (chart.is_kernel(v)) {
        const Kernel& k = chart.kernel(v);
        term += kernel_name(k.fn) + "(" + print_rf(k.arg, chart) + ")";
      } else {
        term += chart.coords()[static_cast<size_t>(v)];
      }
      if (e != 1) term += "^" + std::to_string(e);
      coeff_printed = true;
    }
    if (out.empty()) {
      out = neg ? "-" + term : term;
    } else {
      out += neg ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

std::string print_rf(const RatFunc& rf, const Chart& chart) {
  // a constant denominator folds into the coefficients
  if (rf.den.is_constant()) return print_poly(rf.num, chart, rf.den.terms[0].second);
  std::string n = print_poly(rf.num, chart);
  std::string d = print_poly(rf.den, chart);
  return "(" + n + ")/(" + d + ")";
}

}  // namespace

std::string Expr::to_string() const {
  if (!chart_) return "0";
  return print_rf(rf_, *chart_);
}

// --- parser -------------------------------------------------------------------

namespace {

struct Parser {
  const std::string& text;
  const ChartPtr& chart;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos != text.size()) fail("unexpected trailing input");
    return e;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (eat('+')) {
        e = e + term();
      } else if (eat('-')) {
        e = e - term();
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (eat('*')) {
        e = e * factor();
      } else if (eat('/')) {
        Expr d = factor();
        if (d.is_structural_zero()) fail("division by zero");
        e = e / d;
      } else {
        return e;
      }
    }
  }

  Expr factor() {
    skip_ws();
    bool neg = false;
    while (eat('-')) neg = !neg;
    Expr b = base();
    skip_ws();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      int e = integer();
      if (b.is_structural_zero() && e < 0) fail("zero raised to a negative power");
      b = b.pow(e);
    }
    return neg ? -b : b;
  }

  int integer() {
    skip_ws();
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail("expected integer exponent");
    long long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1000) fail("exponent too large");
      ++pos;
    }
    return static_cast<int>(neg ? -v : v);
  }

  Expr base() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Expr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      return Expr::constant(chart, Rational(BigInt::from_string(text.substr(start, pos - start)), BigInt(1)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      std::string name = text.substr(start, pos - start);
      if (name == "exp" || name == "sin" || name == "cos") {
        if (!eat('(')) fail("expected '(' after function name");
        Expr arg = expr();
        if (!eat(')')) fail("expected ')'");
        if (name == "exp") return pqnb::exp(arg);
        if (name == "sin") return pqnb::sin(arg);
        return pqnb::cos(arg);
      }
      int idx = chart->coord_index(name);
      if (idx < 0) {
        pos = start;
        fail("unknown symbol '" + name + "'");
      }
      return Expr::coordinate(chart, idx);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Expr parse_expr(const std::string& text, const ChartPtr& chart) {
  Parser p{text, chart};
  return p.parse();
}

// --- zero test -----------------------------------------------------------------

ZeroVerdict ZeroVerdict::merge(const ZeroVerdict& o) const {
  if (kind == Kind::NonZero) return *this;
  if (o.kind == Kind::NonZero) return o;
  if (kind == Kind::ZeroNumeric || o.kind == Kind::ZeroNumeric)
    return numeric(std::max(residual, o.residual));
  return exact();
}

std::string ZeroVerdict::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::ZeroExact:
      os << "zero (exact)";
      break;
    case Kind::ZeroNumeric:
      os << "zero (numeric, max residual " << residual << ")";
      break;
    case Kind::NonZero: {
      os << "NONZERO (residual " << residual << " at point [";
      for (size_t i = 0; i < witness.size(); ++i) os << (i ? ", " : "") << witness[i];
      os << "])";
      break;
    }
  }
  return os.str();
}

namespace {

std::vector<double> sample_point(std::mt19937_64& rng, int dim, int range) {
  std::vector<double> p(static_cast<size_t>(dim));
  std::uniform_int_distribution<int> den_dist(1, 8);
  for (auto& x : p) {
    int den = den_dist(rng);
    std::uniform_int_distribution<int> num_dist(-range * den, range * den);
    x = static_cast<double>(num_dist(rng)) / den;
  }
  return p;
}

bool admissible(const std::vector<double>& p, const SamplingPolicy& policy,
                const std::vector<Expr>& nonvanishing) {
  for (const Expr& g : nonvanishing) {
    try {
      if (std::abs(g.eval(p, policy.guard)) < policy.guard) return false;
    } catch (const NearSingularError&) {
      return false;
    }
  }
  return true;
}

}  // namespace

ZeroVerdict is_zero(const Expr& e, const SamplingPolicy& policy,
                    const std::vector<Expr>& nonvanishing) {
  if (e.is_structural_zero()) return ZeroVerdict::exact();
  if (policy.points < 1 || policy.tolerance <= 0 || policy.guard <= 0)
    throw ExprError("invalid sampling policy");

  std::mt19937_64 rng(policy.seed);
  const int dim = e.chart()->dim();
  const int max_attempts = 64 * std::max(policy.points, 1);
  const bool exact_path = e.is_rational();

  int found = 0, attempts = 0;
  double max_residual = 0;
  while (found < policy.points && attempts < max_attempts) {
    ++attempts;
    std::vector<double> p = sample_point(rng, dim, policy.range);
    if (!admissible(p, policy, nonvanishing)) continue;
    double val, mag;
    try {
      std::tie(val, mag) = e.eval_with_mag(p, policy.guard);
    } catch (const NearSingularError&) {
      continue;
    }
    ++found;
    double r = std::abs(val);
    if (r > policy.tolerance * (1.0 + mag)) return ZeroVerdict::nonzero(r, p);
    max_residual = std::max(max_residual, r);
    // On the exact path the canonical numerator is a nonzero polynomial, so
    // the only acceptable outcome is a witness; keep searching.
    if (exact_path) --found;
  }
  if (exact_path)
    throw SamplingError("no admissible witness point found; nonvanishing set may be ill-posed");
  if (found < policy.points)
    throw SamplingError("could not collect enough admissible sample points");
  return ZeroVerdict::numeric(max_residual);
}

}  // namespace pqnb
