#include "pqnb/structures.hpp"

namespace pqnb {

namespace {

Expr one_expr(const ManifoldPtr& man) { return Expr::constant(man->chart, Rational(1)); }

void expect(bool cond, const char* what) {
  if (!cond) throw TensorError(what);
}

ZeroVerdict expr_zero(const Expr& e, const SamplingPolicy& policy, const ManifoldPtr& man) {
  return is_zero(e, policy, man->nonvanishing);
}

}  // namespace

TensorField frame_vf(const ManifoldPtr& man, int i) {
  TensorField t = TensorField::multivector(man, 1);
  t.set_comp({i}, one_expr(man));
  return t;
}

TensorField coframe_1f(const ManifoldPtr& man, int i) {
  TensorField t = TensorField::form(man, 1);
  t.set_comp({i}, one_expr(man));
  return t;
}

PqNbStructure::PqNbStructure(ManifoldPtr m, TensorField P_, TensorField A_, TensorField phi_,
                             TensorField H_)
    : man(std::move(m)), P(std::move(P_)), A(std::move(A_)), phi(std::move(phi_)), H(std::move(H_)) {
  expect(P.is_multivector() && P.degree() == 2, "P must be a bivector");
  expect(A.is_endomorphism(), "A must be a (1,1)-tensor");
  expect(phi.is_form() && phi.degree() == 3, "phi must be a 3-form");
  expect(H.is_form() && H.degree() == 3, "H must be a 3-form");
  expect(same_manifold(P.manifold(), man) && same_manifold(A.manifold(), man) &&
             same_manifold(phi.manifold(), man) && same_manifold(H.manifold(), man),
         "all tensors must live on one chart");
}

PqNbStructure PqNbStructure::from_poisson(const TensorField& P) {
  const ManifoldPtr& man = P.manifold();
  return PqNbStructure(man, P, TensorField::endomorphism(man), TensorField::form(man, 3),
                       TensorField::form(man, 3));
}

GcStructure::GcStructure(ManifoldPtr m, TensorField A_, TensorField P_, TensorField sigma_,
                         TensorField H_)
    : man(std::move(m)), A(std::move(A_)), P(std::move(P_)), sigma(std::move(sigma_)), H(std::move(H_)) {
  expect(A.is_endomorphism(), "A must be a (1,1)-tensor");
  expect(P.is_multivector() && P.degree() == 2, "P must be a bivector");
  expect(sigma.is_form() && sigma.degree() == 2, "sigma must be a 2-form");
  expect(H.is_form() && H.degree() == 3, "H must be a 3-form");
  expect(same_manifold(A.manifold(), man) && same_manifold(P.manifold(), man) &&
             same_manifold(sigma.manifold(), man) && same_manifold(H.manifold(), man),
         "all tensors must live on one chart");
}

VerificationReport check_poisson(const TensorField& P, const SamplingPolicy& policy) {
  VerificationReport rep;
  rep.subject = "poisson";
  rep.policy = policy;
  rep.add("poisson", "[P,P] = 0", field_is_zero(schouten_self(P), policy));
  return rep;
}

namespace {

// Items shared between the PqNb axioms and the gc characterization.
void add_sharp_compat(VerificationReport& rep, const TensorField& P, const TensorField& A,
                      const SamplingPolicy& policy) {
  const ManifoldPtr& man = P.manifold();
  ZeroVerdict v = ZeroVerdict::exact();
  for (int k = 0; k < man->dim(); ++k) {
    TensorField dk = coframe_1f(man, k);
    TensorField lhs = endo_apply(A, sharp(P, dk));
    TensorField rhs = sharp(P, endo_transpose_apply(A, dk));
    v = v.merge(field_is_zero(lhs - rhs, policy));
  }
  rep.add("compat_sharp", "A o P# = P# o A^t", v);
}

void add_concomitant_compat(VerificationReport& rep, const TensorField& P, const TensorField& A,
                            const TensorField& H, const SamplingPolicy& policy) {
  const ManifoldPtr& man = P.manifold();
  ZeroVerdict v = ZeroVerdict::exact();
  for (int i = 0; i < man->dim(); ++i)
    for (int j = i + 1; j < man->dim(); ++j) {
      TensorField a = coframe_1f(man, i);
      TensorField b = coframe_1f(man, j);
      TensorField lhs = concomitant(P, A, a, b);
      TensorField rhs = interior_pair(sharp(P, a), sharp(P, b), H);
      v = v.merge(field_is_zero(lhs + rhs, policy));
    }
  rep.add("compat_concomitant", "C_{P,A}(a,b) + i_{P#a ^ P#b} H = 0", v);
}

void add_torsion_compat(VerificationReport& rep, const TensorField& P, const TensorField& A,
                        const TensorField& phi, const TensorField& H, const SamplingPolicy& policy) {
  const ManifoldPtr& man = P.manifold();
  ZeroVerdict v = ZeroVerdict::exact();
  for (int i = 0; i < man->dim(); ++i)
    for (int j = i + 1; j < man->dim(); ++j) {
      TensorField X = frame_vf(man, i);
      TensorField Y = frame_vf(man, j);
      TensorField lhs = nijenhuis_pair(A, X, Y);
      TensorField rhs = sharp(P, interior_pair(X, Y, phi) + interior_pair(endo_apply(A, X), Y, H) +
                                     interior_pair(X, endo_apply(A, Y), H));
      v = v.merge(field_is_zero(lhs - rhs, policy));
    }
  rep.add("compat_torsion", "N_A(X,Y) = P#(i_{X^Y} phi + i_{AX^Y} H + i_{X^AY} H)", v);
}

}  // namespace

VerificationReport check_pqnb(const PqNbStructure& s, const SamplingPolicy& policy) {
  VerificationReport rep;
  rep.subject = "pqnb";
  rep.policy = policy;
  rep.add("phi_closed", "d phi = 0", field_is_zero(ext_d(s.phi), policy));
  rep.add("H_closed", "d H = 0", field_is_zero(ext_d(s.H), policy));
  rep.add("poisson", "[P,P] = 0", field_is_zero(schouten_self(s.P), policy));
  add_sharp_compat(rep, s.P, s.A, policy);
  add_concomitant_compat(rep, s.P, s.A, s.H, policy);
  add_torsion_compat(rep, s.P, s.A, s.phi, s.H, policy);
  rep.add("compat_dA_phi", "d_A phi = d Hcal",
          field_is_zero(d_A(s.A, s.phi) - ext_d(hcal(s.H, s.A)), policy));
  return rep;
}

VerificationReport check_pqn(const TensorField& P, const TensorField& A, const TensorField& phi,
                             const SamplingPolicy& policy) {
  PqNbStructure s(P.manifold(), P, A, phi, TensorField::form(P.manifold(), 3));
  VerificationReport rep = check_pqnb(s, policy);
  rep.subject = "pqn";
  return rep;
}

VerificationReport check_pn(const TensorField& P, const TensorField& A, const SamplingPolicy& policy) {
  PqNbStructure s(P.manifold(), P, A, TensorField::form(P.manifold(), 3),
                  TensorField::form(P.manifold(), 3));
  VerificationReport rep = check_pqnb(s, policy);
  rep.subject = "pn";
  return rep;
}

GeneralizedSection courant_bracket(const GeneralizedSection& mu, const GeneralizedSection& nu) {
  const ManifoldPtr& man = mu.vec.manifold();
  TensorField X = mu.vec, Y = nu.vec;
  TensorField a = mu.cov, b = nu.cov;
  TensorField vec = vf_bracket(X, Y);
  Expr half = Expr::constant(man->chart, Rational(1, 2));
  TensorField cov = lie_derivative(X, b) - lie_derivative(Y, a) +
                    half * ext_d_scalar(man, pairing(a, Y) - pairing(b, X));
  return GeneralizedSection(std::move(vec), std::move(cov));
}

GeneralizedSection courant_bracket_H(const GeneralizedSection& mu, const GeneralizedSection& nu,
                                     const TensorField& H) {
  GeneralizedSection r = courant_bracket(mu, nu);
  r.cov = r.cov - interior_pair(mu.vec, nu.vec, H);
  return r;
}

GeneralizedSection bfield_map(const TensorField& B, const GeneralizedSection& mu) {
  return GeneralizedSection(mu.vec, mu.cov + flat(B, mu.vec));
}

GeneralizedSection gc_apply(const GcStructure& J, const GeneralizedSection& mu) {
  TensorField vec = endo_apply(J.A, mu.vec) + sharp(J.P, mu.cov);
  TensorField cov = flat(J.sigma, mu.vec) - endo_transpose_apply(J.A, mu.cov);
  return GeneralizedSection(std::move(vec), std::move(cov));
}

VerificationReport check_gc_background(const GcStructure& J, const SamplingPolicy& policy) {
  VerificationReport rep;
  rep.subject = "gc";
  rep.policy = policy;
  const ManifoldPtr& man = J.man;
  const TensorField dsigma = ext_d(J.sigma);

  rep.add("H_closed", "d H = 0", field_is_zero(ext_d(J.H), policy));
  rep.add("poisson", "[P,P] = 0", field_is_zero(schouten_self(J.P), policy));
  add_sharp_compat(rep, J.P, J.A, policy);
  add_concomitant_compat(rep, J.P, J.A, J.H, policy);
  add_torsion_compat(rep, J.P, J.A, dsigma, J.H, policy);

  Bilinear sigA = form_left(J.sigma, J.A);
  ZeroVerdict anti = ZeroVerdict::exact();
  for (int i = 0; i < man->dim(); ++i)
    for (int j = i; j < man->dim(); ++j)
      anti = anti.merge(expr_zero(sigA.at(i, j) + sigA.at(j, i), policy, man));
  rep.add("sigmaA_antisym", "sigma(A.,.) antisymmetric", anti);

  TensorField sigA_form = as_form2(sigA);
  rep.add("sigmaA_balance", "d sigma_A + H - i_A d sigma - Hcal = 0",
          field_is_zero(ext_d(sigA_form) + J.H - i_A(J.A, dsigma) - hcal(J.H, J.A), policy));

  ZeroVerdict sq = ZeroVerdict::exact();
  for (int i = 0; i < man->dim(); ++i) {
    TensorField ei = frame_vf(man, i);
    TensorField lhs = endo_apply(J.A, endo_apply(J.A, ei)) + ei + sharp(J.P, flat(J.sigma, ei));
    sq = sq.merge(field_is_zero(lhs, policy));
  }
  rep.add("square_identity", "A^2 = -Id - P# o sigma_flat", sq);
  return rep;
}

VerificationReport check_gc_integrability_direct(const GcStructure& J, const SamplingPolicy& policy) {
  VerificationReport rep;
  rep.subject = "gc_direct";
  rep.policy = policy;
  const ManifoldPtr& man = J.man;
  const int n = man->dim();

  // Under the pinned sharp/flat/interior conventions, the integrability
  // operator for background H uses the bracket whose covector term is
  // +H(X,Y,.); the gauged corpus separates the two sign choices and only
  // this one matches the tensor characterization.
  const TensorField Ht = -J.H;

  std::vector<GeneralizedSection> basis;
  for (int i = 0; i < n; ++i)
    basis.emplace_back(frame_vf(man, i), TensorField::form(man, 1));
  for (int i = 0; i < n; ++i)
    basis.emplace_back(TensorField::multivector(man, 1), coframe_1f(man, i));

  ZeroVerdict sq = ZeroVerdict::exact();
  for (const auto& mu : basis) {
    GeneralizedSection jj = gc_apply(J, gc_apply(J, mu)) + mu;
    sq = sq.merge(field_is_zero(jj.vec, policy)).merge(field_is_zero(jj.cov, policy));
  }
  rep.add("square_identity", "J^2 = -Id on coordinate sections", sq);

  ZeroVerdict integ = ZeroVerdict::exact();
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = a + 1; b < basis.size(); ++b) {
      const GeneralizedSection& mu = basis[a];
      const GeneralizedSection& nu = basis[b];
      GeneralizedSection jmu = gc_apply(J, mu);
      GeneralizedSection jnu = gc_apply(J, nu);
      GeneralizedSection t = courant_bracket_H(jmu, jnu, Ht) -
                             gc_apply(J, courant_bracket_H(jmu, nu, Ht)) -
                             gc_apply(J, courant_bracket_H(mu, jnu, Ht)) -
                             courant_bracket_H(mu, nu, Ht);
      integ = integ.merge(field_is_zero(t.vec, policy)).merge(field_is_zero(t.cov, policy));
    }
  rep.add("courant_integrability",
          "[Jm,Jn]_H - J[Jm,n]_H - J[m,Jn]_H - [m,n]_H = 0 on coordinate sections", integ);
  return rep;
}

bool check_sigma_shift(const GcStructure& J, const TensorField& omega, const SamplingPolicy& policy) {
  if (!omega.is_form() || omega.degree() != 2) throw TensorError("sigma shift needs a 2-form");
  if (!field_is_zero(ext_d(omega), policy).is_zero())
    throw TensorError("sigma shift needs a closed 2-form");
  const ManifoldPtr& man = J.man;

  Bilinear omA = form_left(omega, J.A);
  ZeroVerdict anti = ZeroVerdict::exact();
  for (int i = 0; i < man->dim(); ++i)
    for (int j = i; j < man->dim(); ++j)
      anti = anti.merge(expr_zero(omA.at(i, j) + omA.at(j, i), policy, man));
  if (!anti.is_zero()) return false;

  if (!field_is_zero(ext_d(as_form2(omA)), policy).is_zero()) return false;

  for (int i = 0; i < man->dim(); ++i) {
    TensorField v = sharp(J.P, flat(omega, frame_vf(man, i)));
    if (!field_is_zero(v, policy).is_zero()) return false;
  }
  return true;
}

}  // namespace pqnb
