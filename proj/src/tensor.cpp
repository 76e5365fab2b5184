#include "pqnb/tensor.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace pqnb {

ManifoldPtr make_manifold(ChartPtr chart, std::vector<Expr> nonvanishing) {
  for (const Expr& e : nonvanishing)
    if (!same_chart(e.chart(), chart)) throw TensorError("nonvanishing expression on a different chart");
  return std::make_shared<ChartManifold>(ChartManifold{std::move(chart), std::move(nonvanishing)});
}

ManifoldPtr make_manifold(std::vector<std::string> coords) {
  return make_manifold(make_chart(std::move(coords)));
}

bool same_manifold(const ManifoldPtr& a, const ManifoldPtr& b) {
  if (a == b) return true;
  return a && b && same_chart(a->chart, b->chart);
}

const std::vector<std::vector<int>>& increasing_tuples(int n, int k) {
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<int>> out;
  if (k == 0) {
    out.push_back({});
  } else if (k > 0 && k <= n) {
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    for (;;) {
      out.push_back(idx);
      int pos = k - 1;
      while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - k + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<size_t>(pos)];
      for (int j = pos + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
    }
  }
  return cache.emplace(key, std::move(out)).first->second;
}

int sort_tuple(std::vector<int>& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i) {
    size_t j = i;
    while (j > 0 && idx[j - 1] > idx[j]) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
      --j;
    }
  }
  for (size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

namespace {

size_t tuple_rank(int n, int k, const std::vector<int>& idx) {
  const auto& all = increasing_tuples(n, k);
  auto it = std::lower_bound(all.begin(), all.end(), idx);
  if (it == all.end() || *it != idx) throw TensorError("bad index tuple");
  return static_cast<size_t>(it - all.begin());
}

Expr zero_expr(const ManifoldPtr& man) { return Expr::constant(man->chart, Rational(0)); }

void require_same(const TensorField& a, const TensorField& b) {
  if (!same_manifold(a.manifold(), b.manifold())) throw TensorError("chart mismatch");
}

}  // namespace

TensorField::TensorField(ManifoldPtr man, TensorKind kind, int degree)
    : man_(std::move(man)), kind_(kind), degree_(degree) {
  const int n = man_->dim();
  if (kind_ == TensorKind::Endomorphism) {
    comps_.assign(static_cast<size_t>(n) * n, zero_expr(man_));
  } else {
    if (degree_ < 0) throw TensorError("negative tensor degree");
    comps_.assign(increasing_tuples(n, degree_).size(), zero_expr(man_));
  }
}

TensorField TensorField::multivector(ManifoldPtr man, int k) {
  return TensorField(std::move(man), TensorKind::Multivector, k);
}
TensorField TensorField::form(ManifoldPtr man, int k) {
  return TensorField(std::move(man), TensorKind::Form, k);
}
TensorField TensorField::endomorphism(ManifoldPtr man) {
  return TensorField(std::move(man), TensorKind::Endomorphism, -1);
}
TensorField TensorField::identity_endo(ManifoldPtr man) {
  TensorField t = endomorphism(man);
  for (int i = 0; i < t.dim(); ++i) t.set_entry(i, i, Expr::constant(t.man_->chart, Rational(1)));
  return t;
}

const Expr& TensorField::comp(const std::vector<int>& increasing) const {
  return comps_[tuple_rank(dim(), degree_, increasing)];
}

void TensorField::set_comp(const std::vector<int>& increasing, Expr e) {
  if (!same_chart(e.chart(), man_->chart)) throw TensorError("component on a different chart");
  comps_[tuple_rank(dim(), degree_, increasing)] = std::move(e);
}

void TensorField::set_comp_at(size_t rank, Expr e) {
  if (!same_chart(e.chart(), man_->chart)) throw TensorError("component on a different chart");
  comps_.at(rank) = std::move(e);
}

Expr TensorField::component(std::vector<int> indices) const {
  if (kind_ == TensorKind::Endomorphism) throw TensorError("component() is for forms/multivectors");
  if (static_cast<int>(indices.size()) != degree_) throw TensorError("component arity mismatch");
  int sign = sort_tuple(indices);
  if (sign == 0) return zero_expr(man_);
  const Expr& c = comp(indices);
  return sign > 0 ? c : -c;
}

const Expr& TensorField::entry(int i, int j) const {
  return comps_[static_cast<size_t>(i) * dim() + j];
}

void TensorField::set_entry(int i, int j, Expr e) {
  if (!same_chart(e.chart(), man_->chart)) throw TensorError("component on a different chart");
  comps_[static_cast<size_t>(i) * dim() + j] = std::move(e);
}

TensorField TensorField::operator+(const TensorField& o) const {
  require_same(*this, o);
  if (kind_ != o.kind_ || degree_ != o.degree_) throw TensorError("kind mismatch in tensor sum");
  TensorField r = *this;
  for (size_t i = 0; i < comps_.size(); ++i) r.comps_[i] = comps_[i] + o.comps_[i];
  return r;
}

TensorField TensorField::operator-(const TensorField& o) const { return *this + (-o); }

TensorField TensorField::operator-() const {
  TensorField r = *this;
  for (auto& c : r.comps_) c = -c;
  return r;
}

bool TensorField::operator==(const TensorField& o) const {
  if (!same_manifold(man_, o.man_) || kind_ != o.kind_ || degree_ != o.degree_) return false;
  for (size_t i = 0; i < comps_.size(); ++i)
    if (!(comps_[i] == o.comps_[i])) return false;
  return true;
}

bool TensorField::is_structural_zero() const {
  for (const auto& c : comps_)
    if (!c.is_structural_zero()) return false;
  return true;
}

std::string TensorField::to_string(const std::string& name) const {
  std::ostringstream os;
  if (!name.empty()) os << name << " = ";
  bool any = false;
  if (kind_ == TensorKind::Endomorphism) {
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        if (!entry(i, j).is_structural_zero()) {
          if (any) os << " + ";
          os << "(" << entry(i, j).to_string() << ") d/d" << man_->chart->coords()[static_cast<size_t>(i)]
             << "(x)d" << man_->chart->coords()[static_cast<size_t>(j)];
          any = true;
        }
  } else {
    const auto& tuples = increasing_tuples(dim(), degree_);
    for (size_t r = 0; r < tuples.size(); ++r) {
      if (comps_[r].is_structural_zero()) continue;
      if (any) os << " + ";
      os << "(" << comps_[r].to_string() << ")";
      for (int i : tuples[r]) {
        os << (kind_ == TensorKind::Form ? " d" : " d/d") << man_->chart->coords()[static_cast<size_t>(i)];
        if (i != tuples[r].back()) os << "^";
      }
      any = true;
    }
  }
  if (!any) os << "0";
  return os.str();
}

TensorField operator*(const Expr& f, const TensorField& t) {
  TensorField r = t;
  if (t.kind() == TensorKind::Endomorphism) {
    for (int i = 0; i < t.dim(); ++i)
      for (int j = 0; j < t.dim(); ++j) r.set_entry(i, j, f * t.entry(i, j));
  } else {
    for (size_t k = 0; k < t.comp_count(); ++k) r.set_comp_at(k, f * t.comp_at(k));
  }
  return r;
}

TensorField operator*(const Rational& c, const TensorField& t) {
  return Expr::constant(t.manifold()->chart, c) * t;
}

GeneralizedSection::GeneralizedSection(TensorField v, TensorField a)
    : vec(std::move(v)), cov(std::move(a)) {
  if (!vec.is_multivector() || vec.degree() != 1 || !cov.is_form() || cov.degree() != 1)
    throw TensorError("generalized section needs a vector field and a 1-form");
  if (!same_manifold(vec.manifold(), cov.manifold())) throw TensorError("chart mismatch");
}

GeneralizedSection GeneralizedSection::zero(ManifoldPtr man) {
  return GeneralizedSection(TensorField::multivector(man, 1), TensorField::form(man, 1));
}

GeneralizedSection GeneralizedSection::operator+(const GeneralizedSection& o) const {
  return GeneralizedSection(vec + o.vec, cov + o.cov);
}
GeneralizedSection GeneralizedSection::operator-(const GeneralizedSection& o) const {
  return GeneralizedSection(vec - o.vec, cov - o.cov);
}
GeneralizedSection GeneralizedSection::operator-() const { return GeneralizedSection(-vec, -cov); }

Bilinear Bilinear::zero(ManifoldPtr man) {
  size_t n = static_cast<size_t>(man->dim());
  Bilinear b{man, {}};
  b.entries.assign(n * n, zero_expr(man));
  return b;
}

const Expr& Bilinear::at(int i, int j) const {
  return entries[static_cast<size_t>(i) * man->dim() + j];
}
void Bilinear::set(int i, int j, Expr e) {
  entries[static_cast<size_t>(i) * man->dim() + j] = std::move(e);
}
Bilinear Bilinear::operator+(const Bilinear& o) const {
  Bilinear r = *this;
  for (size_t i = 0; i < entries.size(); ++i) r.entries[i] = entries[i] + o.entries[i];
  return r;
}
Bilinear Bilinear::operator-(const Bilinear& o) const {
  Bilinear r = *this;
  for (size_t i = 0; i < entries.size(); ++i) r.entries[i] = entries[i] - o.entries[i];
  return r;
}

bool Bilinear::is_antisymmetric() const {
  const int n = man->dim();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (!(at(i, j) + at(j, i)).is_structural_zero()) return false;
  return true;
}

TensorField Bilinear::to_form() const {
  if (!is_antisymmetric()) throw TensorError("bilinear tensor is not antisymmetric");
  TensorField w = TensorField::form(man, 2);
  const int n = man->dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) w.set_comp({i, j}, at(i, j));
  return w;
}

Bilinear Bilinear::from_form(const TensorField& w) {
  if (!w.is_form() || w.degree() != 2) throw TensorError("expected a 2-form");
  Bilinear b = Bilinear::zero(w.manifold());
  const int n = w.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) b.set(i, j, w.component({i, j}));
  return b;
}

Trilinear Trilinear::zero(ManifoldPtr man) {
  size_t n = static_cast<size_t>(man->dim());
  Trilinear t{man, {}};
  t.entries.assign(n * n * n, zero_expr(man));
  return t;
}

const Expr& Trilinear::at(int i, int j, int k) const {
  const size_t n = static_cast<size_t>(man->dim());
  return entries[(static_cast<size_t>(i) * n + static_cast<size_t>(j)) * n + static_cast<size_t>(k)];
}
void Trilinear::set(int i, int j, int k, Expr e) {
  const size_t n = static_cast<size_t>(man->dim());
  entries[(static_cast<size_t>(i) * n + static_cast<size_t>(j)) * n + static_cast<size_t>(k)] = std::move(e);
}
Trilinear Trilinear::operator+(const Trilinear& o) const {
  Trilinear r = *this;
  for (size_t i = 0; i < entries.size(); ++i) r.entries[i] = entries[i] + o.entries[i];
  return r;
}
Trilinear Trilinear::operator-(const Trilinear& o) const {
  Trilinear r = *this;
  for (size_t i = 0; i < entries.size(); ++i) r.entries[i] = entries[i] - o.entries[i];
  return r;
}

bool Trilinear::is_antisymmetric() const {
  const int n = man->dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) {
          if (!at(i, j, k).is_structural_zero()) return false;
          continue;
        }
        // compare against sorted representative
        std::vector<int> s{i, j, k};
        int sign = sort_tuple(s);
        Expr ref = at(s[0], s[1], s[2]);
        Expr val = sign > 0 ? ref : -ref;
        if (!(at(i, j, k) - val).is_structural_zero()) return false;
      }
  return true;
}

TensorField Trilinear::to_form() const {
  if (!is_antisymmetric()) throw TensorError("trilinear tensor is not antisymmetric");
  TensorField w = TensorField::form(man, 3);
  for (const auto& t : increasing_tuples(man->dim(), 3)) w.set_comp(t, at(t[0], t[1], t[2]));
  return w;
}

Trilinear Trilinear::from_form(const TensorField& w) {
  if (!w.is_form() || w.degree() != 3) throw TensorError("expected a 3-form");
  Trilinear t = Trilinear::zero(w.manifold());
  const int n = w.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (i != j && j != k && i != k) t.set(i, j, k, w.component({i, j, k}));
  return t;
}

// --- pointwise algebra -------------------------------------------------------

TensorField wedge(const TensorField& a, const TensorField& b) {
  require_same(a, b);
  if (a.kind() != b.kind() || a.is_endomorphism())
    throw TensorError("wedge needs two forms or two multivectors");
  const int n = a.dim();
  const int p = a.degree(), q = b.degree();
  TensorField r = a.is_form() ? TensorField::form(a.manifold(), p + q)
                              : TensorField::multivector(a.manifold(), p + q);
  if (p + q > n) return r;
  for (const auto& K : increasing_tuples(n, p + q)) {
    Expr acc = zero_expr(a.manifold());
    // sum over p-subsets S of K with shuffle sign
    for (const auto& sel : increasing_tuples(p + q, p)) {
      std::vector<int> S, T;
      std::vector<bool> in_s(static_cast<size_t>(p + q), false);
      for (int pos : sel) in_s[static_cast<size_t>(pos)] = true;
      for (int m = 0; m < p + q; ++m)
        (in_s[static_cast<size_t>(m)] ? S : T).push_back(K[static_cast<size_t>(m)]);
      // sign of the permutation (S, T) of K
      std::vector<int> perm = S;
      perm.insert(perm.end(), T.begin(), T.end());
      int inv = 0;
      for (size_t x = 0; x < perm.size(); ++x)
        for (size_t y = x + 1; y < perm.size(); ++y)
          if (perm[x] > perm[y]) ++inv;
      Expr term = a.comp(S) * b.comp(T);
      acc = (inv % 2 == 0) ? acc + term : acc - term;
    }
    r.set_comp(K, acc);
  }
  return r;
}

TensorField interior_vf(const TensorField& X, const TensorField& w) {
  require_same(X, w);
  if (!X.is_multivector() || X.degree() != 1) throw TensorError("interior product needs a vector field");
  if (!w.is_form() || w.degree() < 1) throw TensorError("interior product needs a form of degree >= 1");
  const int n = w.dim();
  const int k = w.degree();
  TensorField r = TensorField::form(w.manifold(), k - 1);
  if (k - 1 > n) return r;
  for (const auto& J : increasing_tuples(n, k - 1)) {
    Expr acc = zero_expr(w.manifold());
    for (int i = 0; i < n; ++i) {
      std::vector<int> full{i};
      full.insert(full.end(), J.begin(), J.end());
      acc = acc + X.comp({i}) * w.component(std::move(full));
    }
    r.set_comp(J, acc);
  }
  return r;
}

TensorField interior_pair(const TensorField& X, const TensorField& Y, const TensorField& w) {
  if (w.degree() < 2) throw TensorError("interior_pair needs a form of degree >= 2");
  return interior_vf(Y, interior_vf(X, w));
}

TensorField sharp(const TensorField& P, const TensorField& alpha) {
  require_same(P, alpha);
  if (!P.is_multivector() || P.degree() != 2) throw TensorError("sharp needs a bivector");
  if (!alpha.is_form() || alpha.degree() != 1) throw TensorError("sharp needs a 1-form");
  const int n = P.dim();
  TensorField r = TensorField::multivector(P.manifold(), 1);
  // (P# a)^j = sum_i a_i P^{ij}
  for (int j = 0; j < n; ++j) {
    Expr acc = zero_expr(P.manifold());
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      acc = acc + alpha.comp({i}) * P.component({i, j});
    }
    r.set_comp({j}, acc);
  }
  return r;
}

TensorField flat(const TensorField& B, const TensorField& X) {
  require_same(B, X);
  if (!B.is_form() || B.degree() != 2) throw TensorError("flat needs a 2-form");
  if (!X.is_multivector() || X.degree() != 1) throw TensorError("flat needs a vector field");
  return interior_vf(X, B);
}

Expr pairing(const TensorField& alpha, const TensorField& X) {
  require_same(alpha, X);
  if (!alpha.is_form() || alpha.degree() != 1 || !X.is_multivector() || X.degree() != 1)
    throw TensorError("pairing needs a 1-form and a vector field");
  Expr acc = zero_expr(alpha.manifold());
  for (int i = 0; i < alpha.dim(); ++i) acc = acc + alpha.comp({i}) * X.comp({i});
  return acc;
}

Expr biv_apply(const TensorField& P, const TensorField& alpha, const TensorField& beta) {
  return pairing(beta, sharp(P, alpha));
}

Expr form_apply(const TensorField& w, const std::vector<TensorField>& vecs) {
  if (static_cast<int>(vecs.size()) != w.degree()) throw TensorError("form_apply arity mismatch");
  TensorField cur = w;
  for (const auto& v : vecs) {
    if (cur.degree() == 0) break;
    cur = interior_vf(v, cur);
  }
  return cur.comp({});
}

TensorField endo_compose(const TensorField& A, const TensorField& B) {
  require_same(A, B);
  if (!A.is_endomorphism() || !B.is_endomorphism()) throw TensorError("endo_compose needs endomorphisms");
  const int n = A.dim();
  TensorField r = TensorField::endomorphism(A.manifold());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Expr acc = zero_expr(A.manifold());
      for (int k = 0; k < n; ++k) acc = acc + A.entry(i, k) * B.entry(k, j);
      r.set_entry(i, j, acc);
    }
  return r;
}

TensorField endo_apply(const TensorField& A, const TensorField& X) {
  require_same(A, X);
  if (!A.is_endomorphism()) throw TensorError("endo_apply needs an endomorphism");
  if (!X.is_multivector() || X.degree() != 1) throw TensorError("endo_apply needs a vector field");
  const int n = A.dim();
  TensorField r = TensorField::multivector(A.manifold(), 1);
  for (int i = 0; i < n; ++i) {
    Expr acc = zero_expr(A.manifold());
    for (int j = 0; j < n; ++j) acc = acc + A.entry(i, j) * X.comp({j});
    r.set_comp({i}, acc);
  }
  return r;
}

TensorField endo_transpose_apply(const TensorField& A, const TensorField& alpha) {
  require_same(A, alpha);
  if (!A.is_endomorphism()) throw TensorError("endo_transpose_apply needs an endomorphism");
  if (!alpha.is_form() || alpha.degree() != 1) throw TensorError("endo_transpose_apply needs a 1-form");
  const int n = A.dim();
  TensorField r = TensorField::form(A.manifold(), 1);
  for (int j = 0; j < n; ++j) {
    Expr acc = zero_expr(A.manifold());
    for (int i = 0; i < n; ++i) acc = acc + alpha.comp({i}) * A.entry(i, j);
    r.set_comp({j}, acc);
  }
  return r;
}

Bilinear form_left(const TensorField& B, const TensorField& S) {
  require_same(B, S);
  if (!B.is_form() || B.degree() != 2 || !S.is_endomorphism())
    throw TensorError("form_left needs a 2-form and an endomorphism");
  const int n = B.dim();
  Bilinear r = Bilinear::zero(B.manifold());
  // T(e_j, e_k) = B(S e_j, e_k) = sum_i S^i_j B_{ik}
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Expr acc = zero_expr(B.manifold());
      for (int i = 0; i < n; ++i) {
        if (i == k) continue;
        acc = acc + S.entry(i, j) * B.component({i, k});
      }
      r.set(j, k, acc);
    }
  return r;
}

Bilinear form_both(const TensorField& B, const TensorField& S, const TensorField& T) {
  require_same(B, S);
  require_same(B, T);
  if (!B.is_form() || B.degree() != 2 || !S.is_endomorphism() || !T.is_endomorphism())
    throw TensorError("form_both needs a 2-form and two endomorphisms");
  const int n = B.dim();
  Bilinear r = Bilinear::zero(B.manifold());
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Expr acc = zero_expr(B.manifold());
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
          if (i == l) continue;
          acc = acc + S.entry(i, j) * T.entry(l, k) * B.component({i, l});
        }
      r.set(j, k, acc);
    }
  return r;
}

TensorField i_A(const TensorField& A, const TensorField& w) {
  require_same(A, w);
  if (!A.is_endomorphism()) throw TensorError("i_A needs an endomorphism");
  if (!w.is_form()) throw TensorError("i_A acts on forms");
  const int n = w.dim();
  const int k = w.degree();
  TensorField r = TensorField::form(w.manifold(), k);
  if (k == 0 || k > n) return r;  // derivation of degree 0 kills functions
  for (const auto& K : increasing_tuples(n, k)) {
    Expr acc = zero_expr(w.manifold());
    for (int slot = 0; slot < k; ++slot) {
      for (int j = 0; j < n; ++j) {
        std::vector<int> idx = K;
        idx[static_cast<size_t>(slot)] = j;
        acc = acc + A.entry(j, K[static_cast<size_t>(slot)]) * w.component(std::move(idx));
      }
    }
    r.set_comp(K, acc);
  }
  return r;
}

TensorField as_form2(const Bilinear& b) {
  if (b.is_antisymmetric()) return b.to_form();
  TensorField w = TensorField::form(b.man, 2);
  Rational half(1, 2);
  const int n = b.man->dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) w.set_comp({i, j}, half * (b.at(i, j) - b.at(j, i)));
  return w;
}

TensorField with_manifold(const TensorField& t, const ManifoldPtr& man) {
  if (!same_manifold(t.manifold(), man)) throw TensorError("with_manifold: chart mismatch");
  TensorField r = t.is_endomorphism()
                      ? TensorField::endomorphism(man)
                      : (t.is_form() ? TensorField::form(man, t.degree())
                                     : TensorField::multivector(man, t.degree()));
  const bool same_instance = t.manifold()->chart.get() == man->chart.get();
  if (t.is_endomorphism()) {
    for (int i = 0; i < t.dim(); ++i)
      for (int j = 0; j < t.dim(); ++j)
        r.set_entry(i, j, same_instance ? t.entry(i, j) : t.entry(i, j).transport(man->chart));
  } else {
    for (size_t k = 0; k < t.comp_count(); ++k)
      r.set_comp_at(k, same_instance ? t.comp_at(k) : t.comp_at(k).transport(man->chart));
  }
  return r;
}

ZeroVerdict field_is_zero(const TensorField& t, const SamplingPolicy& policy) {
  ZeroVerdict v = ZeroVerdict::exact();
  for (size_t i = 0; i < t.comp_count(); ++i)
    v = v.merge(is_zero(t.comp_at(i), policy, t.manifold()->nonvanishing));
  return v;
}

ZeroVerdict bilinear_is_zero(const Bilinear& t, const SamplingPolicy& policy) {
  ZeroVerdict v = ZeroVerdict::exact();
  for (const Expr& e : t.entries) v = v.merge(is_zero(e, policy, t.man->nonvanishing));
  return v;
}

ZeroVerdict trilinear_is_zero(const Trilinear& t, const SamplingPolicy& policy) {
  ZeroVerdict v = ZeroVerdict::exact();
  for (const Expr& e : t.entries) v = v.merge(is_zero(e, policy, t.man->nonvanishing));
  return v;
}

}  // namespace pqnb
