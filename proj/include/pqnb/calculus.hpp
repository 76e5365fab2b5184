#pragma once

#include "pqnb/tensor.hpp"

namespace pqnb {

// (1,2)-tensor materialized over the coordinate frame:
// entry (out, i, j) is the out-component of T(e_i, e_j).
struct Tensor12 {
  ManifoldPtr man;
  std::vector<Expr> entries;

  static Tensor12 zero(ManifoldPtr man);
  const Expr& at(int out, int i, int j) const;
  void set(int out, int i, int j, Expr e);
};

ZeroVerdict tensor12_is_zero(const Tensor12& t, const SamplingPolicy& policy);

// Exterior derivative; d of a degree-n form is the zero (n+1)-form.
TensorField ext_d(const TensorField& w);
TensorField ext_d_scalar(const ManifoldPtr& man, const Expr& f);

// Lie derivatives. On forms via Cartan's formula, on vector fields the bracket.
TensorField lie_derivative(const TensorField& X, const TensorField& w);
Expr lie_scalar(const TensorField& X, const Expr& f);

// [X, Y] and the bracket deformed by a (1,1)-tensor:
// [X,Y]_A = [AX,Y] + [X,AY] - A[X,Y].
TensorField vf_bracket(const TensorField& X, const TensorField& Y);
TensorField deformed_vf_bracket(const TensorField& A, const TensorField& X, const TensorField& Y);

// 1-form bracket determined by a bivector:
// [a,b]_Q = L_{Q#a} b - L_{Q#b} a - d(Q(a,b)).
TensorField oneform_bracket(const TensorField& Q, const TensorField& alpha, const TensorField& beta);

// d_A = i_A o d - d o i_A, a derivation of degree 1.
TensorField d_A(const TensorField& A, const TensorField& w);
TensorField d_A_scalar(const TensorField& A, const Expr& f);

// L^A_X = i_X o d_A + d_A o i_X.
TensorField lie_A(const TensorField& A, const TensorField& X, const TensorField& w);

// The 1-form bracket with d replaced by d_A and L by L^A.
TensorField oneform_bracket_A(const TensorField& Q, const TensorField& A,
                              const TensorField& alpha, const TensorField& beta);
// [,]_Q deformed by A^t: [A^t a, b]_Q + [a, A^t b]_Q - A^t [a,b]_Q.
TensorField deformed_oneform_bracket(const TensorField& Q, const TensorField& A,
                                     const TensorField& alpha, const TensorField& beta);

// Nijenhuis torsion N_A(X,Y) = [AX,AY] - A([AX,Y] + [X,AY] - A[X,Y]).
TensorField nijenhuis_pair(const TensorField& A, const TensorField& X, const TensorField& Y);
Tensor12 nijenhuis_torsion(const TensorField& A);

// Concomitant of a bivector and a (1,1)-tensor, the six-term formula:
// C_{P,A}(a,b) = L_{P#b}(A^t a) - L_{P#a}(A^t b) + A^t L_{P#a} b - A^t L_{P#b} a
//               + d(P(A^t a, b)) - A^t d(P(a,b)).
TensorField concomitant(const TensorField& P, const TensorField& A,
                        const TensorField& alpha, const TensorField& beta);

// Cyclic sums of a 3-form with endomorphism insertions:
// (X,Y,Z) -> sum_cyc T(SX, UY, Z).
Trilinear cyclic_mixed(const TensorField& T, const TensorField& S, const TensorField& U);
// The 3-form (X,Y,Z) -> sum_cyc H(AX, AY, Z); antisymmetry is asserted.
TensorField hcal(const TensorField& H, const TensorField& A);

// Schouten self-bracket of a bivector; vanishes iff P is Poisson.
// [P,P]^{ijk} = 2 sum_l (P^{il} d_l P^{jk} + P^{jl} d_l P^{ki} + P^{kl} d_l P^{ij}).
TensorField schouten_self(const TensorField& P);

}  // namespace pqnb
