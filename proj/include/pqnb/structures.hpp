#pragma once

#include "pqnb/calculus.hpp"
#include "pqnb/report.hpp"

namespace pqnb {

// Quadruple (P, A, phi, H): Poisson bivector candidate, (1,1)-tensor and two
// 3-forms (phi and the background H). check_pqnb certifies the axioms.
struct PqNbStructure {
  ManifoldPtr man;
  TensorField P;    // Multivector(2)
  TensorField A;    // Endomorphism
  TensorField phi;  // Form(3)
  TensorField H;    // Form(3)

  PqNbStructure(ManifoldPtr m, TensorField P_, TensorField A_, TensorField phi_, TensorField H_);
  static PqNbStructure from_poisson(const TensorField& P);
};

// Block map on TM (+) T*M determined by (A, P, sigma) with background H.
struct GcStructure {
  ManifoldPtr man;
  TensorField A;      // Endomorphism
  TensorField P;      // Multivector(2)
  TensorField sigma;  // Form(2)
  TensorField H;      // Form(3)

  GcStructure(ManifoldPtr m, TensorField A_, TensorField P_, TensorField sigma_, TensorField H_);
};

VerificationReport check_poisson(const TensorField& P, const SamplingPolicy& policy);
VerificationReport check_pqnb(const PqNbStructure& s, const SamplingPolicy& policy);
VerificationReport check_pqn(const TensorField& P, const TensorField& A, const TensorField& phi,
                             const SamplingPolicy& policy);
VerificationReport check_pn(const TensorField& P, const TensorField& A, const SamplingPolicy& policy);

// Courant bracket on sections of TM (+) T*M and its background deformation:
// [X+a, Y+b] = [X,Y] + L_X b - L_Y a + 1/2 d(a(Y) - b(X)),
// [m, n]_H = [m, n] - i_{X^Y} H on the covector part.
GeneralizedSection courant_bracket(const GeneralizedSection& mu, const GeneralizedSection& nu);
GeneralizedSection courant_bracket_H(const GeneralizedSection& mu, const GeneralizedSection& nu,
                                     const TensorField& H);

// B-field automorphism X + a -> X + a + i_X B.
GeneralizedSection bfield_map(const TensorField& B, const GeneralizedSection& mu);

// Apply the block map of a GcStructure to a section.
GeneralizedSection gc_apply(const GcStructure& J, const GeneralizedSection& mu);

// Tensorial characterization of generalized complex structures with background.
VerificationReport check_gc_background(const GcStructure& J, const SamplingPolicy& policy);
// Direct route: J^2 = -Id plus the Courant integrability operator on all
// pairs of coordinate sections. Cross-validates check_gc_background.
VerificationReport check_gc_integrability_direct(const GcStructure& J, const SamplingPolicy& policy);

// True iff replacing sigma by sigma + omega (omega closed) leaves a gc
// structure with the same background: omega_A antisymmetric, d(omega_A) = 0,
// P# o omega_flat = 0. Throws on non-closed omega.
bool check_sigma_shift(const GcStructure& J, const TensorField& omega, const SamplingPolicy& policy);

// Shared helpers for the checkers.
TensorField frame_vf(const ManifoldPtr& man, int i);   // d/dx_i
TensorField coframe_1f(const ManifoldPtr& man, int i); // dx^i

}  // namespace pqnb
