#pragma once

// Shared instance generators for the test suites: seeded random polynomial
// tensors and the worked structures used across modules.

#include <random>

#include "pqnb/gauge.hpp"
#include "pqnb/structures.hpp"

namespace ts {

using namespace pqnb;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(uint64_t seed) : rng(seed) {}

  int uniform(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng);
  }

  Rational rat(int maxnum = 3, int maxden = 2) {
    int num = uniform(-maxnum, maxnum);
    int den = uniform(1, maxden);
    return Rational(num, den);
  }

  Rational rat_nonzero(int maxnum = 3, int maxden = 2) {
    Rational r = rat(maxnum, maxden);
    return r.is_zero() ? Rational(1, 1) : r;
  }

  // Random polynomial with small rational coefficients.
  Expr poly(const ManifoldPtr& man, int maxdeg, int terms) {
    Expr acc = Expr::constant(man->chart, rat());
    for (int t = 0; t < terms; ++t) {
      Expr mono = Expr::constant(man->chart, rat_nonzero());
      int deg = uniform(0, maxdeg);
      for (int d = 0; d < deg; ++d)
        mono = mono * Expr::coordinate(man->chart, uniform(0, man->dim() - 1));
      acc = acc + mono;
    }
    return acc;
  }

  // Occasionally multiplies in an exponential factor to exercise the numeric
  // zero-test path.
  Expr scalar(const ManifoldPtr& man, int maxdeg, int terms, bool allow_exp = false) {
    Expr p = poly(man, maxdeg, terms);
    if (allow_exp && uniform(0, 3) == 0)
      p = p * exp(Expr::coordinate(man->chart, uniform(0, man->dim() - 1)));
    return p;
  }

  TensorField form(const ManifoldPtr& man, int k, int maxdeg, bool allow_exp = false) {
    TensorField t = TensorField::form(man, k);
    for (size_t r = 0; r < t.comp_count(); ++r) t.set_comp_at(r, scalar(man, maxdeg, 2, allow_exp));
    return t;
  }

  TensorField multivector(const ManifoldPtr& man, int k, int maxdeg, bool allow_exp = false) {
    TensorField t = TensorField::multivector(man, k);
    for (size_t r = 0; r < t.comp_count(); ++r) t.set_comp_at(r, scalar(man, maxdeg, 2, allow_exp));
    return t;
  }

  TensorField endo(const ManifoldPtr& man, int maxdeg, bool allow_exp = false) {
    TensorField t = TensorField::endomorphism(man);
    for (int i = 0; i < man->dim(); ++i)
      for (int j = 0; j < man->dim(); ++j) t.set_entry(i, j, scalar(man, maxdeg, 1, allow_exp));
    return t;
  }

  TensorField vf(const ManifoldPtr& man, int maxdeg, bool allow_exp = false) {
    return multivector(man, 1, maxdeg, allow_exp);
  }

  TensorField oneform(const ManifoldPtr& man, int maxdeg, bool allow_exp = false) {
    return form(man, 1, maxdeg, allow_exp);
  }

  GeneralizedSection section(const ManifoldPtr& man, int maxdeg, bool allow_exp = false) {
    return GeneralizedSection(vf(man, maxdeg, allow_exp), oneform(man, maxdeg, allow_exp));
  }
};

inline ManifoldPtr r2() { return make_manifold({"x1", "x2"}); }
inline ManifoldPtr r3() { return make_manifold({"x1", "x2", "x3"}); }
inline ManifoldPtr r4() { return make_manifold({"x1", "x2", "x3", "x4"}); }

inline Expr cst(const ManifoldPtr& man, long long n, long long d = 1) {
  return Expr::constant(man->chart, Rational(n, d));
}
inline Expr coord(const ManifoldPtr& man, const std::string& name) {
  return Expr::coordinate(man->chart, name);
}

// Basis helpers.
inline TensorField dd(const ManifoldPtr& man, int i) { return frame_vf(man, i); }
inline TensorField dx(const ManifoldPtr& man, int i) { return coframe_1f(man, i); }

inline TensorField bivector_comp(const ManifoldPtr& man, int i, int j, const Expr& e) {
  TensorField t = TensorField::multivector(man, 2);
  t.set_comp({i, j}, e);
  return t;
}
inline TensorField form2_comp(const ManifoldPtr& man, int i, int j, const Expr& e) {
  TensorField t = TensorField::form(man, 2);
  t.set_comp({i, j}, e);
  return t;
}
inline TensorField form3_comp(const ManifoldPtr& man, int i, int j, int k, const Expr& e) {
  TensorField t = TensorField::form(man, 3);
  t.set_comp({i, j, k}, e);
  return t;
}

// The published quadruple on R^3 instantiated with f = 1 + x1^2, g = x3:
//   P = f d1^d2, A = g Id, H = -(1/f) dg/dx3 dx1^dx2^dx3, phi = -2 g H.
inline PqNbStructure ex1_structure() {
  ChartPtr chart = make_chart({"x1", "x2", "x3"});
  Expr f = parse_expr("1 + x1^2", chart);
  ManifoldPtr man = make_manifold(chart, {f});
  Expr g = Expr::coordinate(chart, 2);
  TensorField P = bivector_comp(man, 0, 1, f);
  TensorField A = g * TensorField::identity_endo(man);
  TensorField H = form3_comp(man, 0, 1, 2, -(cst(man, 1) / f));
  TensorField phi = cst(man, -2) * (g * H);
  return PqNbStructure(man, P, A, phi, H);
}

// The PN pair on R^3: P = d1^d2, A = e^{x3}(Id + x2 d2 (x) dx3).
inline std::pair<TensorField, TensorField> pn_example() {
  ManifoldPtr man = r3();
  TensorField P = bivector_comp(man, 0, 1, cst(man, 1));
  Expr e3 = exp(coord(man, "x3"));
  TensorField A = e3 * TensorField::identity_endo(man);
  A.set_entry(1, 2, e3 * coord(man, "x2"));
  return {P, A};
}

// Base Poisson bivectors for the instance sweeps: a constant symplectic one,
// a variable-coefficient rank-2 one, and a degenerate one on R^4.
inline TensorField base_poisson(int which) {
  switch (which % 3) {
    case 0: {
      ManifoldPtr man = r4();
      TensorField P = TensorField::multivector(man, 2);
      P.set_comp({0, 1}, cst(man, 1));
      P.set_comp({2, 3}, cst(man, 1));
      return P;
    }
    case 1: {
      ManifoldPtr man = r3();
      return bivector_comp(man, 0, 1, cst(man, 1) + coord(man, "x3") * coord(man, "x3"));
    }
    default: {
      ManifoldPtr man = r4();
      return bivector_comp(man, 0, 1, cst(man, 1));
    }
  }
}

inline SamplingPolicy policy(uint64_t seed = 42) {
  SamplingPolicy p;
  p.seed = seed;
  return p;
}

}  // namespace ts
