#pragma once

#include <optional>

#include "pqnb/gauge.hpp"
#include "pqnb/structures.hpp"

namespace pqnb {

struct ReductionError : TensorError {
  using TensorError::TensorError;
};

// Adapted chart for reduction data (N, E, pi): coordinates split into
//   q — quotient block (m >= 1), carried to the reduced chart,
//   s — collapsed leaf directions (E  cap TN),
//   c — transverse constraint directions, pinned to c0 on N = {c = c0}.
// Derived data: TN = span(dq, ds), E = span(ds, dc), E^0 = span(dq),
// pi(q, s) = q, i_N(q, s) = (q, s, c0).
struct AdaptedReductionSetup {
  ManifoldPtr man;
  std::vector<int> q, s, c;   // index blocks into the chart of M
  std::vector<Rational> c0;

  int m() const { return static_cast<int>(q.size()); }
  const ManifoldPtr& quotient() const { return quotient_; }

  static AdaptedReductionSetup make(ManifoldPtr man, std::vector<int> q, std::vector<int> s,
                                    std::vector<int> c, std::vector<Rational> c0);
  static AdaptedReductionSetup make_by_names(const ManifoldPtr& man,
                                             const std::vector<std::string>& q,
                                             const std::vector<std::string>& s,
                                             const std::vector<std::string>& c,
                                             std::vector<Rational> c0);

  // Restriction to N: substitute c -> c0.
  Expr restrict_to_N(const Expr& e) const;
  // Projection to the quotient chart: restrict to N, certify s-independence,
  // substitute s = 0, transport. Returns the failing direction on residual
  // s-dependence.
  struct Projection {
    std::optional<Expr> value;
    std::string residual;  // nonempty when s-dependence survives
  };
  Projection project(const Expr& e, const SamplingPolicy& policy) const;

 private:
  ManifoldPtr quotient_;
};

// Pointwise adapted-chart surrogates for the reduction hypotheses:
//  (i)   d/ds P^{q q} = 0 on N                     (bracket condition, sufficient surrogate)
//  (ii)  P^{q c} = 0 on N                          (P#(E^0) tangent to N)
//  (iii) A-blocks: A(TN) in TN, A(E) in E, d/ds A^{q}_{q} = 0 on N
//  (iv)  phi/H components with one index along E and the rest along TN vanish on N
VerificationReport check_reduction_hypotheses(const AdaptedReductionSetup& setup,
                                              const PqNbStructure& S, const SamplingPolicy& policy);

struct ReduceOutcome {
  VerificationReport hypotheses;
  std::optional<PqNbStructure> reduced;
  std::string failure;  // empty on success
  bool ok() const { return reduced.has_value(); }
};
ReduceOutcome reduce(const AdaptedReductionSetup& setup, const PqNbStructure& S,
                     const SamplingPolicy& policy);

struct ReduceGcOutcome {
  VerificationReport hypotheses;
  std::optional<GcStructure> reduced;
  std::string failure;
  bool ok() const { return reduced.has_value(); }
};
// Conditions (i)-(iii) plus the gc-specific surrogates:
//  (a) sigma_flat(TN) in E^0: sigma components pairing {q,s} with {s,c} vanish on N
//  (b) as (iv) with d sigma in place of phi
ReduceGcOutcome reduce_gc(const AdaptedReductionSetup& setup, const GcStructure& J,
                          const SamplingPolicy& policy);

struct CommuteOutcome {
  VerificationReport preconditions;  // B-form conditions (a), (b)
  std::optional<PqNbStructure> gauge_then_reduce;
  std::optional<PqNbStructure> reduce_then_gauge;
  ZeroVerdict equality;
  std::string failure;
  bool ok() const { return failure.empty() && equality.is_zero(); }
};
// Runs both orders of gauge transformation and reduction and compares the
// two reduced quadruples componentwise. Preconditions on B:
//  (a) B_flat(dq), B_flat(ds) lie in span(dq) on N
//  (b) B is projectable: pure-q components s-independent on N
CommuteOutcome gauge_reduce_commute(const AdaptedReductionSetup& setup, const PqNbStructure& S,
                                    const TensorField& B, const SamplingPolicy& policy);

// Projection of a 2-form to the quotient (used for B in the commuting square).
TensorField project_2form(const AdaptedReductionSetup& setup, const TensorField& B,
                          const SamplingPolicy& policy);

}  // namespace pqnb
