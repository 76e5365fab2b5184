#include "pqnb/calculus.hpp"

namespace pqnb {

namespace {

Expr zero_expr(const ManifoldPtr& man) { return Expr::constant(man->chart, Rational(0)); }

TensorField form0(const ManifoldPtr& man, const Expr& f) {
  TensorField t = TensorField::form(man, 0);
  t.set_comp({}, f);
  return t;
}

void require_same(const TensorField& a, const TensorField& b) {
  if (!same_manifold(a.manifold(), b.manifold())) throw TensorError("chart mismatch");
}

}  // namespace

Tensor12 Tensor12::zero(ManifoldPtr man) {
  size_t n = static_cast<size_t>(man->dim());
  Tensor12 t{man, {}};
  t.entries.assign(n * n * n, zero_expr(man));
  return t;
}

const Expr& Tensor12::at(int out, int i, int j) const {
  const size_t n = static_cast<size_t>(man->dim());
  return entries[(static_cast<size_t>(out) * n + static_cast<size_t>(i)) * n + static_cast<size_t>(j)];
}

void Tensor12::set(int out, int i, int j, Expr e) {
  const size_t n = static_cast<size_t>(man->dim());
  entries[(static_cast<size_t>(out) * n + static_cast<size_t>(i)) * n + static_cast<size_t>(j)] =
      std::move(e);
}

ZeroVerdict tensor12_is_zero(const Tensor12& t, const SamplingPolicy& policy) {
  ZeroVerdict v = ZeroVerdict::exact();
  for (const Expr& e : t.entries) v = v.merge(is_zero(e, policy, t.man->nonvanishing));
  return v;
}

TensorField ext_d(const TensorField& w) {
  if (!w.is_form()) throw TensorError("ext_d acts on forms");
  const int n = w.dim();
  const int k = w.degree();
  TensorField r = TensorField::form(w.manifold(), k + 1);
  if (k + 1 > n) return r;
  for (const auto& K : increasing_tuples(n, k + 1)) {
    Expr acc = zero_expr(w.manifold());
    for (int m = 0; m <= k; ++m) {
      std::vector<int> rest;
      rest.reserve(static_cast<size_t>(k));
      for (int j = 0; j <= k; ++j)
        if (j != m) rest.push_back(K[static_cast<size_t>(j)]);
      Expr d = w.comp(rest).diff(K[static_cast<size_t>(m)]);
      acc = (m % 2 == 0) ? acc + d : acc - d;
    }
    r.set_comp(K, acc);
  }
  return r;
}

TensorField ext_d_scalar(const ManifoldPtr& man, const Expr& f) {
  TensorField r = TensorField::form(man, 1);
  for (int i = 0; i < man->dim(); ++i) r.set_comp({i}, f.diff(i));
  return r;
}

Expr lie_scalar(const TensorField& X, const Expr& f) {
  if (!X.is_multivector() || X.degree() != 1) throw TensorError("lie_scalar needs a vector field");
  Expr acc = zero_expr(X.manifold());
  for (int i = 0; i < X.dim(); ++i) acc = acc + X.comp({i}) * f.diff(i);
  return acc;
}

TensorField vf_bracket(const TensorField& X, const TensorField& Y) {
  require_same(X, Y);
  if (!X.is_multivector() || X.degree() != 1 || !Y.is_multivector() || Y.degree() != 1)
    throw TensorError("vf_bracket needs vector fields");
  const int n = X.dim();
  TensorField r = TensorField::multivector(X.manifold(), 1);
  for (int i = 0; i < n; ++i) {
    Expr acc = zero_expr(X.manifold());
    for (int j = 0; j < n; ++j)
      acc = acc + X.comp({j}) * Y.comp({i}).diff(j) - Y.comp({j}) * X.comp({i}).diff(j);
    r.set_comp({i}, acc);
  }
  return r;
}

TensorField lie_derivative(const TensorField& X, const TensorField& w) {
  require_same(X, w);
  if (!X.is_multivector() || X.degree() != 1) throw TensorError("lie_derivative needs a vector field");
  if (w.is_multivector() && w.degree() == 1) return vf_bracket(X, w);
  if (!w.is_form()) throw TensorError("lie_derivative acts on forms or vector fields");
  if (w.degree() == 0) return form0(w.manifold(), lie_scalar(X, w.comp({})));
  return interior_vf(X, ext_d(w)) + ext_d(interior_vf(X, w));
}

TensorField deformed_vf_bracket(const TensorField& A, const TensorField& X, const TensorField& Y) {
  return vf_bracket(endo_apply(A, X), Y) + vf_bracket(X, endo_apply(A, Y)) -
         endo_apply(A, vf_bracket(X, Y));
}

TensorField oneform_bracket(const TensorField& Q, const TensorField& alpha, const TensorField& beta) {
  TensorField qa = sharp(Q, alpha);
  TensorField qb = sharp(Q, beta);
  return lie_derivative(qa, beta) - lie_derivative(qb, alpha) -
         ext_d_scalar(Q.manifold(), biv_apply(Q, alpha, beta));
}

TensorField d_A(const TensorField& A, const TensorField& w) {
  return i_A(A, ext_d(w)) - ext_d(i_A(A, w));
}

TensorField d_A_scalar(const TensorField& A, const Expr& f) {
  return i_A(A, ext_d_scalar(A.manifold(), f));
}

TensorField lie_A(const TensorField& A, const TensorField& X, const TensorField& w) {
  if (w.degree() == 0) return interior_vf(X, d_A_scalar(A, w.comp({})));
  return interior_vf(X, d_A(A, w)) + d_A(A, interior_vf(X, w));
}

TensorField oneform_bracket_A(const TensorField& Q, const TensorField& A,
                              const TensorField& alpha, const TensorField& beta) {
  TensorField qa = sharp(Q, alpha);
  TensorField qb = sharp(Q, beta);
  return lie_A(A, qa, beta) - lie_A(A, qb, alpha) - d_A_scalar(A, biv_apply(Q, alpha, beta));
}

TensorField deformed_oneform_bracket(const TensorField& Q, const TensorField& A,
                                     const TensorField& alpha, const TensorField& beta) {
  TensorField ata = endo_transpose_apply(A, alpha);
  TensorField atb = endo_transpose_apply(A, beta);
  return oneform_bracket(Q, ata, beta) + oneform_bracket(Q, alpha, atb) -
         endo_transpose_apply(A, oneform_bracket(Q, alpha, beta));
}

TensorField nijenhuis_pair(const TensorField& A, const TensorField& X, const TensorField& Y) {
  TensorField ax = endo_apply(A, X);
  TensorField ay = endo_apply(A, Y);
  return vf_bracket(ax, ay) -
         endo_apply(A, vf_bracket(ax, Y) + vf_bracket(X, ay) - endo_apply(A, vf_bracket(X, Y)));
}

Tensor12 nijenhuis_torsion(const TensorField& A) {
  if (!A.is_endomorphism()) throw TensorError("nijenhuis_torsion needs an endomorphism");
  const int n = A.dim();
  Tensor12 t = Tensor12::zero(A.manifold());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      TensorField ei = TensorField::multivector(A.manifold(), 1);
      ei.set_comp({i}, Expr::constant(A.manifold()->chart, Rational(1)));
      TensorField ej = TensorField::multivector(A.manifold(), 1);
      ej.set_comp({j}, Expr::constant(A.manifold()->chart, Rational(1)));
      TensorField nij = nijenhuis_pair(A, ei, ej);
      for (int out = 0; out < n; ++out) {
        t.set(out, i, j, nij.comp({out}));
        t.set(out, j, i, -nij.comp({out}));
      }
    }
  return t;
}

TensorField concomitant(const TensorField& P, const TensorField& A,
                        const TensorField& alpha, const TensorField& beta) {
  TensorField pa = sharp(P, alpha);
  TensorField pb = sharp(P, beta);
  TensorField ata = endo_transpose_apply(A, alpha);
  TensorField atb = endo_transpose_apply(A, beta);
  const ManifoldPtr& man = P.manifold();
  return lie_derivative(pb, ata) - lie_derivative(pa, atb) +
         endo_transpose_apply(A, lie_derivative(pa, beta)) -
         endo_transpose_apply(A, lie_derivative(pb, alpha)) +
         ext_d_scalar(man, biv_apply(P, ata, beta)) -
         endo_transpose_apply(A, ext_d_scalar(man, biv_apply(P, alpha, beta)));
}

Trilinear cyclic_mixed(const TensorField& T, const TensorField& S, const TensorField& U) {
  if (!T.is_form() || T.degree() != 3) throw TensorError("cyclic_mixed needs a 3-form");
  require_same(T, S);
  require_same(T, U);
  const int n = T.dim();
  Trilinear out = Trilinear::zero(T.manifold());
  Trilinear tf = Trilinear::from_form(T);
  // single cyclic term (a,b,c) -> T(S e_a, U e_b, e_c)
  auto term = [&](int a, int b, int c) {
    Expr acc = zero_expr(T.manifold());
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const Expr& tpqc = tf.at(p, q, c);
        if (tpqc.is_structural_zero()) continue;
        acc = acc + S.entry(p, a) * U.entry(q, b) * tpqc;
      }
    return acc;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        out.set(i, j, k, term(i, j, k) + term(j, k, i) + term(k, i, j));
  return out;
}

TensorField hcal(const TensorField& H, const TensorField& A) {
  return cyclic_mixed(H, A, A).to_form();
}

TensorField schouten_self(const TensorField& P) {
  if (!P.is_multivector() || P.degree() != 2) throw TensorError("schouten_self needs a bivector");
  const int n = P.dim();
  TensorField r = TensorField::multivector(P.manifold(), 3);
  for (const auto& K : increasing_tuples(n, 3)) {
    const int i = K[0], j = K[1], k = K[2];
    Expr acc = zero_expr(P.manifold());
    for (int l = 0; l < n; ++l) {
      acc = acc + P.component({i, l}) * P.component({j, k}).diff(l) +
            P.component({j, l}) * P.component({k, i}).diff(l) +
            P.component({k, l}) * P.component({i, j}).diff(l);
    }
    r.set_comp(K, Rational(2) * acc);
  }
  return r;
}

}  // namespace pqnb
