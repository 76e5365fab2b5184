#pragma once

#include <optional>
#include <utility>

#include "pqnb/structures.hpp"

namespace pqnb {

struct GaugeError : TensorError {
  using TensorError::TensorError;
};

// Verification failure wrapper: carries the offending report.
struct VerificationFailure : GaugeError {
  VerificationReport report;
  explicit VerificationFailure(VerificationReport r)
      : GaugeError("verification failed:\n" + r.to_text()), report(std::move(r)) {}
};

// The (1,1)-tensor C = P# o B_flat.
TensorField sharp_flat_endo(const TensorField& P, const TensorField& B);

// Gauge transformation of a quadruple by a 2-form B:
//   (P, A, phi, H) -> (P, A + C, phi - d B_C - d(i_A B), H + dB),  C = P# B_flat.
// The output is re-verified by default; set trust = true for sweeps.
PqNbStructure gauge_transform(const TensorField& B, const PqNbStructure& s,
                              const SamplingPolicy& policy, bool trust = false);

// Gauge image of a bare Poisson structure: (P, C, -d B_C, dB).
// The Poisson precondition is checked unless trust = true.
PqNbStructure gauge_of_poisson(const TensorField& P, const TensorField& B,
                               const SamplingPolicy& policy, bool trust = false);

// (P, C, -d B_C) when i_{P#a ^ P#b} dB = 0 on all coframe pairs; otherwise
// reports the violated pair.
struct PqnFromForm {
  std::optional<PqNbStructure> structure;
  std::string violation;  // empty on success
  bool ok() const { return structure.has_value(); }
};
PqnFromForm pqn_from_form(const TensorField& P, const TensorField& B, const SamplingPolicy& policy);

// The gauge group is (Omega^2, +).
TensorField compose_gauges(const TensorField& B1, const TensorField& B2);
TensorField inverse_gauge(const TensorField& B);

// Conformal change e^f P for a Casimir f (P#(df) = 0, checked).
struct ConformalChange {
  TensorField scaled;            // e^f P
  VerificationReport casimir;    // P#(df) = 0, componentwise
  VerificationReport poisson;    // certificate for e^f P
};
ConformalChange conformal_change(const TensorField& P, const Expr& f, const SamplingPolicy& policy);

// The two conformal/gauge combinations built from a Casimir f and a 2-form B:
//   (e^f P, C,     e^{-f}(-d B_C + df ^ B_C), e^{-f}(dB - df ^ B))
//   (e^f P, e^f C, e^{f}(-d B_C - df ^ B_C),  dB)
std::pair<PqNbStructure, PqNbStructure> conformal_gauge_variants(const TensorField& P, const Expr& f,
                                                                 const TensorField& B,
                                                                 const SamplingPolicy& policy);

// Gauge action on gc structures: (A + C, P, sigma - B_C - i_A B), background H + dB.
GcStructure gauge_gc(const TensorField& B, const GcStructure& J);

// For nondegenerate P: the unique B with B_flat = (P#)^{-1} A. The returned
// 2-form lives on a manifold with det(P) added to the nonvanishing set.
struct ClassifyResult {
  TensorField B;
  ManifoldPtr man;  // original manifold + det(P) nonvanishing
  Expr det;
};
ClassifyResult pqnb_nondegenerate_classify(const TensorField& P, const TensorField& A,
                                           const SamplingPolicy& policy);

}  // namespace pqnb
