#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pqnb/expr.hpp"

namespace pqnb {

// A chart of R^n together with the user-declared nonvanishing expressions
// (denominators and other guards honoured by numeric sampling).
struct ChartManifold {
  ChartPtr chart;
  std::vector<Expr> nonvanishing;

  int dim() const { return chart->dim(); }
};

using ManifoldPtr = std::shared_ptr<const ChartManifold>;

ManifoldPtr make_manifold(ChartPtr chart, std::vector<Expr> nonvanishing = {});
ManifoldPtr make_manifold(std::vector<std::string> coords);
bool same_manifold(const ManifoldPtr& a, const ManifoldPtr& b);

struct TensorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TensorKind { Multivector, Form, Endomorphism };

// Enumeration of strictly increasing index tuples of length k out of 0..n-1,
// in lexicographic order. Shared by all antisymmetric component storage.
const std::vector<std::vector<int>>& increasing_tuples(int n, int k);
// Sort an arbitrary tuple: returns permutation sign (0 if repeated indices).
int sort_tuple(std::vector<int>& idx);

// Chart-resident tensor field. Multivectors and forms store components on
// strictly increasing tuples; endomorphisms store the full n x n matrix with
// entry (i,j) the coefficient of d/dx_i (x) dx^j.
class TensorField {
 public:
  static TensorField multivector(ManifoldPtr man, int k);
  static TensorField form(ManifoldPtr man, int k);
  static TensorField endomorphism(ManifoldPtr man);
  static TensorField identity_endo(ManifoldPtr man);

  const ManifoldPtr& manifold() const { return man_; }
  TensorKind kind() const { return kind_; }
  int degree() const { return degree_; }
  int dim() const { return man_->dim(); }
  bool is_form() const { return kind_ == TensorKind::Form; }
  bool is_multivector() const { return kind_ == TensorKind::Multivector; }
  bool is_endomorphism() const { return kind_ == TensorKind::Endomorphism; }

  // Antisymmetric storage access (forms / multivectors).
  const Expr& comp(const std::vector<int>& increasing) const;
  void set_comp(const std::vector<int>& increasing, Expr e);
  Expr component(std::vector<int> indices) const;  // any order, sign applied
  size_t comp_count() const { return comps_.size(); }
  const Expr& comp_at(size_t rank) const { return comps_[rank]; }
  void set_comp_at(size_t rank, Expr e);

  // Endomorphism entries.
  const Expr& entry(int i, int j) const;
  void set_entry(int i, int j, Expr e);

  TensorField operator+(const TensorField& o) const;
  TensorField operator-(const TensorField& o) const;
  TensorField operator-() const;
  bool operator==(const TensorField& o) const;
  bool is_structural_zero() const;

  std::string to_string(const std::string& name = "") const;

 private:
  TensorField(ManifoldPtr man, TensorKind kind, int degree);
  ManifoldPtr man_;
  TensorKind kind_;
  int degree_;
  std::vector<Expr> comps_;
};

TensorField operator*(const Expr& f, const TensorField& t);
TensorField operator*(const Rational& c, const TensorField& t);

// Section of TM (+) T*M: a vector field plus a 1-form on one chart.
struct GeneralizedSection {
  TensorField vec;    // Multivector(1)
  TensorField cov;    // Form(1)

  GeneralizedSection(TensorField v, TensorField a);
  static GeneralizedSection zero(ManifoldPtr man);
  GeneralizedSection operator+(const GeneralizedSection& o) const;
  GeneralizedSection operator-(const GeneralizedSection& o) const;
  GeneralizedSection operator-() const;
};

// Full (not necessarily antisymmetric) (0,2)-tensor, entry (i,j) = T(e_i, e_j).
struct Bilinear {
  ManifoldPtr man;
  std::vector<Expr> entries;  // n*n row-major

  static Bilinear zero(ManifoldPtr man);
  const Expr& at(int i, int j) const;
  void set(int i, int j, Expr e);
  Bilinear operator+(const Bilinear& o) const;
  Bilinear operator-(const Bilinear& o) const;
  bool is_antisymmetric() const;       // structural, exact
  TensorField to_form() const;         // requires antisymmetry
  static Bilinear from_form(const TensorField& w);
};

// Full (0,3)-tensor, entry (i,j,k) = T(e_i, e_j, e_k).
struct Trilinear {
  ManifoldPtr man;
  std::vector<Expr> entries;  // n^3

  static Trilinear zero(ManifoldPtr man);
  const Expr& at(int i, int j, int k) const;
  void set(int i, int j, int k, Expr e);
  Trilinear operator+(const Trilinear& o) const;
  Trilinear operator-(const Trilinear& o) const;
  bool is_antisymmetric() const;
  TensorField to_form() const;
  static Trilinear from_form(const TensorField& w);
};

// --- pointwise algebra -------------------------------------------------------

// Exterior product of two forms or two multivectors.
TensorField wedge(const TensorField& a, const TensorField& b);

// Interior products. Convention: i_{X^Y} w = i_Y i_X w.
TensorField interior_vf(const TensorField& X, const TensorField& w);
TensorField interior_pair(const TensorField& X, const TensorField& Y, const TensorField& w);

// Musical maps. Conventions pinned by the published gauge examples:
//   <beta, P#(alpha)> = P(alpha, beta)   and   B_flat(X) = i_X B.
TensorField sharp(const TensorField& P, const TensorField& alpha);
TensorField flat(const TensorField& B, const TensorField& X);

// Pairings.
Expr pairing(const TensorField& alpha, const TensorField& X);       // alpha(X)
Expr biv_apply(const TensorField& P, const TensorField& alpha, const TensorField& beta);
Expr form_apply(const TensorField& w, const std::vector<TensorField>& vecs);

// (1,1)-tensor algebra. (A^t alpha)(X) = alpha(AX).
TensorField endo_compose(const TensorField& A, const TensorField& B);
TensorField endo_apply(const TensorField& A, const TensorField& X);
TensorField endo_transpose_apply(const TensorField& A, const TensorField& alpha);

// (X,Y) -> B(SX, Y) and (X,Y) -> B(SX, TY).
Bilinear form_left(const TensorField& B, const TensorField& S);
Bilinear form_both(const TensorField& B, const TensorField& S, const TensorField& T);

// Degree-0 derivation i_A on forms: sum over slots of A insertions.
TensorField i_A(const TensorField& A, const TensorField& w);

// Form(2) from a bilinear tensor: used directly when structurally
// antisymmetric, otherwise the antisymmetric part is taken (callers record a
// separate antisymmetry verdict when that matters).
TensorField as_form2(const Bilinear& b);

// Copy of a tensor onto an equal chart under a different manifold value
// (e.g. with extra nonvanishing declarations).
TensorField with_manifold(const TensorField& t, const ManifoldPtr& man);

// Merge of is_zero over every component, using the manifold's nonvanishing set.
ZeroVerdict field_is_zero(const TensorField& t, const SamplingPolicy& policy);
ZeroVerdict bilinear_is_zero(const Bilinear& t, const SamplingPolicy& policy);
ZeroVerdict trilinear_is_zero(const Trilinear& t, const SamplingPolicy& policy);

}  // namespace pqnb
