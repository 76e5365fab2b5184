#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pqnb/reduction.hpp"
#include "pqnb/structures.hpp"

namespace pqnb {

struct StructFileError : std::runtime_error {
  int line;
  StructFileError(const std::string& msg, int line_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ")"), line(line_) {}
};

struct ReductionBlock {
  std::vector<std::string> q, s, c;
  std::vector<Rational> c0;
};

// Parsed structure file: a manifold, the standard named tensors, optional
// gauge 2-forms, an optional reduction block and the sampling policy.
//
// Format (named blocks, line breaks insignificant, '#' starts a comment):
//   manifold dim=3 coords=x1,x2,x3 nonvanishing="1+x1^2"
//   bivector P { [1,2] = "1+x1^2" }
//   endo A { [1,1]="x3" [2,2]="x3" [3,3]="x3" }
//   form phi deg=3 { [1,2,3]="2*x3/(1+x1^2)" }
//   form H deg=3 { [1,2,3]="-1/(1+x1^2)" }
//   form sigma deg=2 { [1,2]="1" }
//   gauge B { [2,3]="1" }
//   reduction { q=q1,q2 s=s1 c=c1 c0=0 }
//   policy { seed=42 points=16 tol=1e-9 guard=1e-6 }
// Indices are 1-based; form/bivector assignments must use strictly
// increasing tuples (duplicates and permutations are hard errors).
struct StructureFile {
  ManifoldPtr man;
  std::optional<TensorField> P;
  std::optional<TensorField> A;
  std::optional<TensorField> phi;
  std::optional<TensorField> H;
  std::optional<TensorField> sigma;
  std::vector<std::pair<std::string, TensorField>> gauges;
  std::optional<ReductionBlock> reduction;
  SamplingPolicy policy;

  const TensorField* gauge(const std::string& name) const;

  // Tensors with defaults for absent blocks.
  TensorField bivector_or_zero() const;
  TensorField endo_or_zero() const;
  TensorField form_or_zero(const std::string& which, int deg) const;

  PqNbStructure as_pqnb() const;
  GcStructure as_gc() const;
  AdaptedReductionSetup reduction_setup() const;
};

StructureFile parse_structure_file(const std::string& text);
StructureFile load_structure_file(const std::string& path);

// Canonical emitter: fixed block order, sorted tuples, canonical expression
// strings. emit(parse(emit(x))) == emit(x).
std::string emit_structure_file(const StructureFile& f);

}  // namespace pqnb
