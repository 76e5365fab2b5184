#include "pqnb/gauge.hpp"

#include <map>

namespace pqnb {

namespace {

void require_same(const TensorField& a, const TensorField& b) {
  if (!same_manifold(a.manifold(), b.manifold())) throw GaugeError("chart mismatch");
}

void require_2form(const TensorField& B) {
  if (!B.is_form() || B.degree() != 2) throw GaugeError("gauge form must be a 2-form");
}

}  // namespace

TensorField sharp_flat_endo(const TensorField& P, const TensorField& B) {
  require_same(P, B);
  require_2form(B);
  const ManifoldPtr& man = P.manifold();
  const int n = man->dim();
  TensorField C = TensorField::endomorphism(man);
  for (int j = 0; j < n; ++j) {
    TensorField col = sharp(P, flat(B, frame_vf(man, j)));
    for (int i = 0; i < n; ++i) C.set_entry(i, j, col.comp({i}));
  }
  return C;
}

PqNbStructure gauge_transform(const TensorField& B, const PqNbStructure& s,
                              const SamplingPolicy& policy, bool trust) {
  require_same(B, s.P);
  require_2form(B);
  TensorField C = sharp_flat_endo(s.P, B);
  TensorField B_C = as_form2(form_left(B, C));
  PqNbStructure out(s.man, s.P, s.A + C, s.phi - ext_d(B_C) - ext_d(i_A(s.A, B)), s.H + ext_d(B));
  if (!trust) {
    VerificationReport rep = check_pqnb(out, policy);
    if (!rep.passed()) throw VerificationFailure(std::move(rep));
  }
  return out;
}

PqNbStructure gauge_of_poisson(const TensorField& P, const TensorField& B,
                               const SamplingPolicy& policy, bool trust) {
  require_same(P, B);
  require_2form(B);
  if (!trust) {
    VerificationReport rep = check_poisson(P, policy);
    if (!rep.passed()) throw VerificationFailure(std::move(rep));
  }
  TensorField C = sharp_flat_endo(P, B);
  TensorField B_C = as_form2(form_left(B, C));
  return PqNbStructure(P.manifold(), P, C, -ext_d(B_C), ext_d(B));
}

PqnFromForm pqn_from_form(const TensorField& P, const TensorField& B, const SamplingPolicy& policy) {
  require_same(P, B);
  require_2form(B);
  const ManifoldPtr& man = P.manifold();
  TensorField dB = ext_d(B);
  for (int i = 0; i < man->dim(); ++i)
    for (int j = i + 1; j < man->dim(); ++j) {
      TensorField a = coframe_1f(man, i);
      TensorField b = coframe_1f(man, j);
      TensorField obstruction = interior_pair(sharp(P, a), sharp(P, b), dB);
      if (!field_is_zero(obstruction, policy).is_zero()) {
        PqnFromForm r;
        r.violation = "i_{P#d" + man->chart->coords()[static_cast<size_t>(i)] + " ^ P#d" +
                      man->chart->coords()[static_cast<size_t>(j)] + "} dB != 0";
        return r;
      }
    }
  TensorField C = sharp_flat_endo(P, B);
  TensorField B_C = as_form2(form_left(B, C));
  PqnFromForm r;
  r.structure = PqNbStructure(man, P, C, -ext_d(B_C), TensorField::form(man, 3));
  return r;
}

TensorField compose_gauges(const TensorField& B1, const TensorField& B2) {
  require_same(B1, B2);
  require_2form(B1);
  require_2form(B2);
  return B1 + B2;
}

TensorField inverse_gauge(const TensorField& B) {
  require_2form(B);
  return -B;
}

ConformalChange conformal_change(const TensorField& P, const Expr& f, const SamplingPolicy& policy) {
  if (!P.is_multivector() || P.degree() != 2) throw GaugeError("conformal change needs a bivector");
  const ManifoldPtr& man = P.manifold();
  TensorField pdf = sharp(P, ext_d_scalar(man, f));

  ConformalChange out{exp(f) * P, {}, {}};
  out.casimir.subject = "casimir";
  out.casimir.policy = policy;
  for (int i = 0; i < man->dim(); ++i) {
    ZeroVerdict v = is_zero(pdf.comp({i}), policy, man->nonvanishing);
    out.casimir.add("casimir_" + man->chart->coords()[static_cast<size_t>(i)],
                    "(P# df)^" + man->chart->coords()[static_cast<size_t>(i)] + " = 0", v);
    if (!v.is_zero())
      throw GaugeError("conformal change: f is not a Casimir, P#(df) has a nonzero " +
                       man->chart->coords()[static_cast<size_t>(i)] + "-component");
  }
  out.poisson = check_poisson(out.scaled, policy);
  return out;
}

std::pair<PqNbStructure, PqNbStructure> conformal_gauge_variants(const TensorField& P, const Expr& f,
                                                                 const TensorField& B,
                                                                 const SamplingPolicy& policy) {
  require_same(P, B);
  ConformalChange cc = conformal_change(P, f, policy);  // validates the Casimir
  const ManifoldPtr& man = P.manifold();
  TensorField C = sharp_flat_endo(P, B);
  TensorField B_C = as_form2(form_left(B, C));
  TensorField dB_C = ext_d(B_C);
  TensorField dB = ext_d(B);
  TensorField df = ext_d_scalar(man, f);
  Expr ef = exp(f);
  Expr emf = exp(-f);

  PqNbStructure first(man, cc.scaled, C, emf * (-dB_C + wedge(df, B_C)), emf * (dB - wedge(df, B)));
  PqNbStructure second(man, cc.scaled, ef * C, ef * (-dB_C - wedge(df, B_C)), dB);
  return {std::move(first), std::move(second)};
}

GcStructure gauge_gc(const TensorField& B, const GcStructure& J) {
  require_2form(B);
  if (!same_manifold(B.manifold(), J.man)) throw GaugeError("chart mismatch");
  TensorField C = sharp_flat_endo(J.P, B);
  TensorField B_C = as_form2(form_left(B, C));
  return GcStructure(J.man, J.A + C, J.P, J.sigma - B_C - i_A(J.A, B), J.H + ext_d(B));
}

namespace {

// Determinant of an Expr matrix by minor expansion with memoization on the
// active column mask. Chart dimensions in scope are small.
struct DetCtx {
  const std::vector<std::vector<Expr>>& m;
  int n;
  std::map<uint64_t, Expr> memo;
  ChartPtr chart;

  Expr det(int row, uint64_t mask) {
    if (row == n) return Expr::constant(chart, Rational(1));
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    Expr acc = Expr::constant(chart, Rational(0));
    int pos = 0;
    for (int col = 0; col < n; ++col) {
      if (!(mask & (uint64_t(1) << col))) continue;
      Expr sub = det(row + 1, mask & ~(uint64_t(1) << col));
      Expr term = m[static_cast<size_t>(row)][static_cast<size_t>(col)] * sub;
      acc = (pos % 2 == 0) ? acc + term : acc - term;
      ++pos;
    }
    memo.emplace(mask, acc);
    return acc;
  }
};

}  // namespace

ClassifyResult pqnb_nondegenerate_classify(const TensorField& P, const TensorField& A,
                                           const SamplingPolicy& policy) {
  require_same(P, A);
  if (!P.is_multivector() || P.degree() != 2) throw GaugeError("classify needs a bivector");
  if (!A.is_endomorphism()) throw GaugeError("classify needs a (1,1)-tensor");
  const ManifoldPtr& man = P.manifold();
  const int n = man->dim();

  std::vector<std::vector<Expr>> pm(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    pm[static_cast<size_t>(j)].reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) pm[static_cast<size_t>(j)].push_back(P.component({j, k}));
  }
  DetCtx ctx{pm, n, {}, man->chart};
  Expr det = ctx.det(0, (uint64_t(1) << n) - 1);
  if (is_zero(det, policy, man->nonvanishing).is_zero())
    throw GaugeError("classify: P is degenerate (det of the component matrix vanishes)");

  // adjugate: inv[j][k] = cofactor(k, j) / det
  std::vector<std::vector<Expr>> inv(static_cast<size_t>(n),
                                     std::vector<Expr>(static_cast<size_t>(n), det));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      std::vector<std::vector<Expr>> minor;
      minor.reserve(static_cast<size_t>(n) - 1);
      for (int i = 0; i < n; ++i) {
        if (i == r) continue;
        std::vector<Expr> rowv;
        for (int j = 0; j < n; ++j)
          if (j != c) rowv.push_back(pm[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        minor.push_back(std::move(rowv));
      }
      Expr md = Expr::constant(man->chart, Rational(1));
      if (n > 1) {
        DetCtx mctx{minor, n - 1, {}, man->chart};
        md = mctx.det(0, (uint64_t(1) << (n - 1)) - 1);
      }
      Expr cof = ((r + c) % 2 == 0) ? md : -md;
      inv[static_cast<size_t>(c)][static_cast<size_t>(r)] = cof / det;
    }

  // B_{ij} = sum_k A^k_i inv[k][j]   (from [A]^t = [B][P])
  std::vector<std::vector<Expr>> bm(static_cast<size_t>(n),
                                    std::vector<Expr>(static_cast<size_t>(n), det));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Expr acc = Expr::constant(man->chart, Rational(0));
      for (int k = 0; k < n; ++k)
        acc = acc + A.entry(k, i) * inv[static_cast<size_t>(k)][static_cast<size_t>(j)];
      bm[static_cast<size_t>(i)][static_cast<size_t>(j)] = acc;
    }

  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Expr sym = bm[static_cast<size_t>(i)][static_cast<size_t>(j)] +
                 bm[static_cast<size_t>(j)][static_cast<size_t>(i)];
      std::vector<Expr> guards = man->nonvanishing;
      guards.push_back(det);
      if (!is_zero(sym, policy, guards).is_zero())
        throw GaugeError("classify: recovered B is not antisymmetric; A does not intertwine with P#");
    }

  std::vector<Expr> nv = man->nonvanishing;
  nv.push_back(det);
  ManifoldPtr aug = make_manifold(man->chart, std::move(nv));
  TensorField B = TensorField::form(aug, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) B.set_comp({i, j}, bm[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  return ClassifyResult{std::move(B), std::move(aug), std::move(det)};
}

}  // namespace pqnb
