#include "pqnb/reduction.hpp"

#include <algorithm>

namespace pqnb {

namespace {

std::string coord_name(const ManifoldPtr& man, int i) {
  return man->chart->coords()[static_cast<size_t>(i)];
}

}  // namespace

AdaptedReductionSetup AdaptedReductionSetup::make(ManifoldPtr man, std::vector<int> q,
                                                  std::vector<int> s, std::vector<int> c,
                                                  std::vector<Rational> c0) {
  AdaptedReductionSetup r;
  r.man = std::move(man);
  r.q = std::move(q);
  r.s = std::move(s);
  r.c = std::move(c);
  r.c0 = std::move(c0);
  const int n = r.man->dim();
  std::vector<int> seen(static_cast<size_t>(n), 0);
  for (int i : r.q) seen.at(static_cast<size_t>(i))++;
  for (int i : r.s) seen.at(static_cast<size_t>(i))++;
  for (int i : r.c) seen.at(static_cast<size_t>(i))++;
  for (int i = 0; i < n; ++i)
    if (seen[static_cast<size_t>(i)] != 1)
      throw ReductionError("q/s/c blocks must partition the chart coordinates");
  if (r.q.empty()) throw ReductionError("quotient block must be nonempty");
  if (r.c0.size() != r.c.size()) throw ReductionError("c0 must match the c block");

  std::vector<std::string> qnames;
  for (int i : r.q) qnames.push_back(coord_name(r.man, i));
  ChartPtr qchart = make_chart(qnames);
  std::vector<Expr> qnv;
  for (const Expr& g : r.man->nonvanishing) {
    // restrict guards to the slice c = c0, s = 0; drop those that vanish there
    std::map<int, Expr> sub;
    for (size_t k = 0; k < r.c.size(); ++k)
      sub.emplace(r.c[k], Expr::constant(r.man->chart, r.c0[k]));
    for (int a : r.s) sub.emplace(a, Expr::constant(r.man->chart, Rational(0)));
    Expr g0 = g.subst(sub);
    bool pure_q = true;
    try {
      Expr gq = g0.transport(qchart);
      if (!gq.is_structural_zero()) qnv.push_back(gq);
    } catch (const ExprError&) {
      pure_q = false;  // still depends on non-q coordinates; not usable downstairs
    }
    (void)pure_q;
  }
  r.quotient_ = make_manifold(qchart, std::move(qnv));
  return r;
}

AdaptedReductionSetup AdaptedReductionSetup::make_by_names(const ManifoldPtr& man,
                                                           const std::vector<std::string>& q,
                                                           const std::vector<std::string>& s,
                                                           const std::vector<std::string>& c,
                                                           std::vector<Rational> c0) {
  auto lookup = [&](const std::vector<std::string>& names) {
    std::vector<int> idx;
    for (const auto& n : names) {
      int i = man->chart->coord_index(n);
      if (i < 0) throw ReductionError("unknown coordinate in reduction block: " + n);
      idx.push_back(i);
    }
    return idx;
  };
  return make(man, lookup(q), lookup(s), lookup(c), std::move(c0));
}

Expr AdaptedReductionSetup::restrict_to_N(const Expr& e) const {
  std::map<int, Expr> sub;
  for (size_t k = 0; k < c.size(); ++k)
    sub.emplace(c[k], Expr::constant(man->chart, c0[k]));
  return e.subst(sub);
}

AdaptedReductionSetup::Projection AdaptedReductionSetup::project(const Expr& e,
                                                                 const SamplingPolicy& policy) const {
  Projection out;
  Expr en = restrict_to_N(e);
  for (int a : s) {
    if (!is_zero(en.diff(a), policy, man->nonvanishing).is_zero()) {
      out.residual = coord_name(man, a);
      return out;
    }
  }
  std::map<int, Expr> sub;
  for (int a : s) sub.emplace(a, Expr::constant(man->chart, Rational(0)));
  out.value = en.subst(sub).transport(quotient_->chart);
  return out;
}

namespace {

bool in_block(const std::vector<int>& block, int i) {
  return std::find(block.begin(), block.end(), i) != block.end();
}

// Merge of restriction-to-N zero tests over a list of expressions.
ZeroVerdict all_zero_on_N(const AdaptedReductionSetup& setup, const std::vector<Expr>& exprs,
                          const SamplingPolicy& policy) {
  ZeroVerdict v = ZeroVerdict::exact();
  for (const Expr& e : exprs)
    v = v.merge(is_zero(setup.restrict_to_N(e), policy, setup.man->nonvanishing));
  return v;
}

// Components of a 3-form required to vanish on N: one index along E and the
// remaining two along TN, i.e. at most one c index and at least one s/c index.
ZeroVerdict form3_condition(const AdaptedReductionSetup& setup, const TensorField& w,
                            const SamplingPolicy& policy) {
  std::vector<Expr> bad;
  for (const auto& T : increasing_tuples(setup.man->dim(), 3)) {
    int nc = 0, ns = 0;
    for (int i : T) {
      if (in_block(setup.c, i)) ++nc;
      if (in_block(setup.s, i)) ++ns;
    }
    if (nc <= 1 && nc + ns >= 1) bad.push_back(w.comp(T));
  }
  return all_zero_on_N(setup, bad, policy);
}

}  // namespace

VerificationReport check_reduction_hypotheses(const AdaptedReductionSetup& setup,
                                              const PqNbStructure& S, const SamplingPolicy& policy) {
  if (!same_manifold(setup.man, S.man)) throw ReductionError("chart mismatch");
  VerificationReport rep;
  rep.subject = "reduction-hypotheses";
  rep.policy = policy;

  std::vector<Expr> cond_i;
  for (int a : setup.s)
    for (size_t i = 0; i < setup.q.size(); ++i)
      for (size_t j = i + 1; j < setup.q.size(); ++j)
        cond_i.push_back(S.P.component({setup.q[i], setup.q[j]}).diff(a));
  rep.add("i", "d/ds P^{q q} = 0 on N (sufficient surrogate)", all_zero_on_N(setup, cond_i, policy));

  std::vector<Expr> cond_ii;
  for (int i : setup.q)
    for (int b : setup.c) cond_ii.push_back(S.P.component({i, b}));
  rep.add("ii", "P^{q c} = 0 on N", all_zero_on_N(setup, cond_ii, policy));

  std::vector<Expr> cond_iii;
  for (int out : setup.c) {
    for (int in : setup.q) cond_iii.push_back(S.A.entry(out, in));
    for (int in : setup.s) cond_iii.push_back(S.A.entry(out, in));
  }
  for (int out : setup.q) {
    for (int in : setup.s) cond_iii.push_back(S.A.entry(out, in));
    for (int in : setup.c) cond_iii.push_back(S.A.entry(out, in));
  }
  for (int a : setup.s)
    for (int i : setup.q)
      for (int j : setup.q) cond_iii.push_back(S.A.entry(i, j).diff(a));
  rep.add("iii", "A(TN) in TN, A(E) in E, d/ds A^{q}_{q} = 0 on N",
          all_zero_on_N(setup, cond_iii, policy));

  rep.add("iv", "i_N^*(i_X phi) = 0 = i_N^*(i_X H) for X along E",
          form3_condition(setup, S.phi, policy).merge(form3_condition(setup, S.H, policy)));
  return rep;
}

namespace {

struct ProjectedTensors {
  std::optional<TensorField> value;
  std::string failure;
};

ProjectedTensors project_bivector(const AdaptedReductionSetup& setup, const TensorField& P,
                                  const SamplingPolicy& policy) {
  const int m = setup.m();
  TensorField out = TensorField::multivector(setup.quotient(), 2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      auto pr = setup.project(P.component({setup.q[static_cast<size_t>(i)],
                                           setup.q[static_cast<size_t>(j)]}),
                              policy);
      if (!pr.value) return {std::nullopt, "residual " + pr.residual + "-dependence in P"};
      out.set_comp({i, j}, *pr.value);
    }
  return {out, ""};
}

ProjectedTensors project_endo(const AdaptedReductionSetup& setup, const TensorField& A,
                              const SamplingPolicy& policy) {
  const int m = setup.m();
  TensorField out = TensorField::endomorphism(setup.quotient());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto pr = setup.project(A.entry(setup.q[static_cast<size_t>(i)],
                                      setup.q[static_cast<size_t>(j)]),
                              policy);
      if (!pr.value) return {std::nullopt, "residual " + pr.residual + "-dependence in A"};
      out.set_entry(i, j, *pr.value);
    }
  return {out, ""};
}

ProjectedTensors project_form(const AdaptedReductionSetup& setup, const TensorField& w, int deg,
                              const SamplingPolicy& policy, const std::string& name) {
  const int m = setup.m();
  TensorField out = TensorField::form(setup.quotient(), deg);
  for (const auto& T : increasing_tuples(m, deg)) {
    std::vector<int> up;
    for (int i : T) up.push_back(setup.q[static_cast<size_t>(i)]);
    auto pr = setup.project(w.component(up), policy);
    if (!pr.value) return {std::nullopt, "residual " + pr.residual + "-dependence in " + name};
    out.set_comp(T, *pr.value);
  }
  return {out, ""};
}

}  // namespace

TensorField project_2form(const AdaptedReductionSetup& setup, const TensorField& B,
                          const SamplingPolicy& policy) {
  auto pr = project_form(setup, B, 2, policy, "B");
  if (!pr.value) throw ReductionError(pr.failure);
  return *pr.value;
}

ReduceOutcome reduce(const AdaptedReductionSetup& setup, const PqNbStructure& S,
                     const SamplingPolicy& policy) {
  ReduceOutcome out;
  out.hypotheses = check_reduction_hypotheses(setup, S, policy);
  if (!out.hypotheses.passed()) {
    for (const auto& it : out.hypotheses.items)
      if (!it.verdict.is_zero()) {
        out.failure = "hypothesis (" + it.label + ") failed";
        break;
      }
    return out;
  }
  auto P = project_bivector(setup, S.P, policy);
  auto A = project_endo(setup, S.A, policy);
  auto phi = project_form(setup, S.phi, 3, policy, "phi");
  auto H = project_form(setup, S.H, 3, policy, "H");
  for (const auto* t : {&P, &A, &phi, &H})
    if (!t->value) {
      out.failure = t->failure;
      return out;
    }
  out.reduced = PqNbStructure(setup.quotient(), *P.value, *A.value, *phi.value, *H.value);
  return out;
}

ReduceGcOutcome reduce_gc(const AdaptedReductionSetup& setup, const GcStructure& J,
                          const SamplingPolicy& policy) {
  if (!same_manifold(setup.man, J.man)) throw ReductionError("chart mismatch");
  ReduceGcOutcome out;
  // (i)-(iii) on the underlying (P, A); (iv) replaced by the sigma conditions
  PqNbStructure carrier(J.man, J.P, J.A, ext_d(J.sigma), J.H);
  VerificationReport base = check_reduction_hypotheses(setup, carrier, policy);
  out.hypotheses.subject = "gc-reduction-hypotheses";
  out.hypotheses.policy = policy;
  for (const auto& it : base.items)
    if (it.label != "iv") out.hypotheses.items.push_back(it);

  std::vector<Expr> cond_a;
  for (int t : setup.q) {
    for (int u : setup.s) cond_a.push_back(J.sigma.component({t, u}));
    for (int u : setup.c) cond_a.push_back(J.sigma.component({t, u}));
  }
  for (int t : setup.s) {
    for (int u : setup.s)
      if (t < u) cond_a.push_back(J.sigma.component({t, u}));
    for (int u : setup.c) cond_a.push_back(J.sigma.component({t, u}));
  }
  out.hypotheses.add("a", "sigma_flat(TN) in E^0 on N", all_zero_on_N(setup, cond_a, policy));

  out.hypotheses.add("b", "i_N^*(i_X d sigma) = 0 = i_N^*(i_X H) for X along E",
                     form3_condition(setup, ext_d(J.sigma), policy)
                         .merge(form3_condition(setup, J.H, policy)));

  if (!out.hypotheses.passed()) {
    for (const auto& it : out.hypotheses.items)
      if (!it.verdict.is_zero()) {
        out.failure = "hypothesis (" + it.label + ") failed";
        break;
      }
    return out;
  }

  auto P = project_bivector(setup, J.P, policy);
  auto A = project_endo(setup, J.A, policy);
  auto sigma = project_form(setup, J.sigma, 2, policy, "sigma");
  auto H = project_form(setup, J.H, 3, policy, "H");
  for (const auto* t : {&P, &A, &sigma, &H})
    if (!t->value) {
      out.failure = t->failure;
      return out;
    }
  out.reduced = GcStructure(setup.quotient(), *A.value, *P.value, *sigma.value, *H.value);
  return out;
}

CommuteOutcome gauge_reduce_commute(const AdaptedReductionSetup& setup, const PqNbStructure& S,
                                    const TensorField& B, const SamplingPolicy& policy) {
  CommuteOutcome out;
  out.preconditions.subject = "commute-preconditions";
  out.preconditions.policy = policy;

  std::vector<Expr> cond_a;
  for (int t : setup.q) {
    for (int u : setup.s) cond_a.push_back(B.component({t, u}));
    for (int u : setup.c) cond_a.push_back(B.component({t, u}));
  }
  for (int t : setup.s) {
    for (int u : setup.s)
      if (t < u) cond_a.push_back(B.component({t, u}));
    for (int u : setup.c) cond_a.push_back(B.component({t, u}));
  }
  out.preconditions.add("a", "B_flat(TN) in E^0 on N", all_zero_on_N(setup, cond_a, policy));

  std::vector<Expr> cond_b;
  for (int a : setup.s)
    for (size_t i = 0; i < setup.q.size(); ++i)
      for (size_t j = i + 1; j < setup.q.size(); ++j)
        cond_b.push_back(B.component({setup.q[i], setup.q[j]}).diff(a));
  out.preconditions.add("b", "B projectable: d/ds B^{q q} = 0 on N",
                        all_zero_on_N(setup, cond_b, policy));

  if (!out.preconditions.passed()) {
    out.failure = "B precondition failed";
    return out;
  }

  PqNbStructure gauged = gauge_transform(B, S, policy, /*trust=*/true);
  ReduceOutcome path1 = reduce(setup, gauged, policy);
  if (!path1.ok()) {
    out.failure = "gauge-then-reduce: " + path1.failure;
    return out;
  }
  ReduceOutcome path2base = reduce(setup, S, policy);
  if (!path2base.ok()) {
    out.failure = "reduce: " + path2base.failure;
    return out;
  }
  TensorField Bq = project_2form(setup, B, policy);
  PqNbStructure path2 = gauge_transform(Bq, *path2base.reduced, policy, /*trust=*/true);

  out.gauge_then_reduce = *path1.reduced;
  out.reduce_then_gauge = path2;

  ZeroVerdict v = ZeroVerdict::exact();
  v = v.merge(field_is_zero(path1.reduced->P - path2.P, policy));
  v = v.merge(field_is_zero(path1.reduced->A - path2.A, policy));
  v = v.merge(field_is_zero(path1.reduced->phi - path2.phi, policy));
  v = v.merge(field_is_zero(path1.reduced->H - path2.H, policy));
  out.equality = v;
  return out;
}

}  // namespace pqnb
