#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace pqnb;
using namespace ts;

TEST_CASE("gauge transformation of the published quadruple only moves A") {
  SamplingPolicy pol = policy();
  PqNbStructure s = ex1_structure();
  const auto& man = s.man;
  TensorField B = form2_comp(man, 1, 2, cst(man, 1));

  PqNbStructure out = gauge_transform(B, s, pol);  // re-verified inside
  CHECK((out.P - s.P).is_structural_zero());
  CHECK((out.phi - s.phi).is_structural_zero());
  CHECK((out.H - s.H).is_structural_zero());

  TensorField diff = out.A - s.A;
  Expr f = cst(man, 1) + coord(man, "x1") * coord(man, "x1");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == 0 && j == 2)
        CHECK(diff.entry(i, j) == f);
      else
        CHECK(diff.entry(i, j).is_structural_zero());
    }
}

TEST_CASE("zero gauge form is the identity") {
  SamplingPolicy pol = policy();
  PqNbStructure s = ex1_structure();
  PqNbStructure out = gauge_transform(TensorField::form(s.man, 2), s, pol, /*trust=*/true);
  CHECK((out.A - s.A).is_structural_zero());
  CHECK((out.phi - s.phi).is_structural_zero());
  CHECK((out.H - s.H).is_structural_zero());
}

TEST_CASE("exponential gauge form preserves the PN class") {
  SamplingPolicy pol = policy();
  auto [P, A] = pn_example();
  const auto& man = P.manifold();
  TensorField B = form2_comp(man, 1, 2, exp(coord(man, "x2")));

  CHECK(field_is_zero(ext_d(B), pol).is_zero());
  TensorField C = sharp_flat_endo(P, B);
  CHECK((C.entry(0, 2) - exp(coord(man, "x2"))).is_structural_zero());
  CHECK(field_is_zero(as_form2(form_left(B, C)), pol).is_zero());
  CHECK(field_is_zero(ext_d(i_A(A, B)), pol).is_zero());

  PqNbStructure s(man, P, A, TensorField::form(man, 3), TensorField::form(man, 3));
  PqNbStructure out = gauge_transform(B, s, pol, /*trust=*/true);
  CHECK(out.phi.is_structural_zero());
  CHECK(out.H.is_structural_zero());
  CHECK(check_pn(out.P, out.A, pol).passed());
}

TEST_CASE("gauge image of a bare Poisson bivector") {
  SamplingPolicy pol = policy();
  auto man = r3();
  TensorField P = bivector_comp(man, 0, 1, cst(man, 1));
  TensorField B = coord(man, "x1") * form2_comp(man, 0, 2, cst(man, 1));

  PqNbStructure out = gauge_of_poisson(P, B, pol);
  CHECK(check_pqnb(out, pol).passed());
  // C = -x1 d2 (x) dx3, read off by hand from the sharp/flat conventions
  TensorField C_expected = TensorField::endomorphism(man);
  C_expected.set_entry(1, 2, -coord(man, "x1"));
  CHECK((out.A - C_expected).is_structural_zero());

  PqNbStructure zero = gauge_of_poisson(P, TensorField::form(man, 2), pol);
  CHECK(zero.A.is_structural_zero());
  CHECK(zero.phi.is_structural_zero());
  CHECK(zero.H.is_structural_zero());

  TensorField notP = bivector_comp(man, 0, 1, coord(man, "x2")) +
                     bivector_comp(man, 0, 2, coord(man, "x1")) +
                     bivector_comp(man, 1, 2, coord(man, "x3"));
  CHECK_THROWS_AS(gauge_of_poisson(notP, B, pol), VerificationFailure);
}

TEST_CASE("pqn_from_form") {
  SamplingPolicy pol = policy();
  auto man = r3();
  TensorField P = bivector_comp(man, 0, 1, cst(man, 1));

  // closed B always passes
  TensorField Bc = form2_comp(man, 0, 1, coord(man, "x1"));
  PqnFromForm ok = pqn_from_form(P, Bc, pol);
  REQUIRE(ok.ok());
  CHECK(check_pqn(ok.structure->P, ok.structure->A, ok.structure->phi, pol).passed());
  // matches the bare gauge construction with the background dropped
  PqNbStructure via_gauge = gauge_of_poisson(P, Bc, pol, true);
  CHECK((ok.structure->A - via_gauge.A).is_structural_zero());
  CHECK((ok.structure->phi - via_gauge.phi).is_structural_zero());

  // obstruction: dB pairs nontrivially with P# directions
  TensorField Bbad = coord(man, "x3") * form2_comp(man, 0, 1, cst(man, 1));
  PqnFromForm rej = pqn_from_form(P, Bbad, pol);
  CHECK(!rej.ok());
  CHECK(!rej.violation.empty());

  // degenerate bivector on R^4 with a closed B
  auto m4 = r4();
  TensorField P4 = bivector_comp(m4, 0, 1, cst(m4, 1));
  TensorField B4 = coord(m4, "x3") * form2_comp(m4, 2, 3, cst(m4, 1));
  CHECK(field_is_zero(ext_d(B4), pol).is_zero());
  CHECK(pqn_from_form(P4, B4, pol).ok());
}

TEST_CASE("gauge group laws") {
  SamplingPolicy pol = policy();
  Gen g(401);
  PqNbStructure s = ex1_structure();
  const auto& man = s.man;

  TensorField B = g.form(man, 2, 2);
  PqNbStructure round = gauge_transform(inverse_gauge(B), gauge_transform(B, s, pol, true), pol, true);
  CHECK(field_is_zero(round.A - s.A, pol).is_zero());
  CHECK(field_is_zero(round.phi - s.phi, pol).is_zero());
  CHECK(field_is_zero(round.H - s.H, pol).is_zero());

  for (int rep = 0; rep < 5; ++rep) {
    TensorField P = base_poisson(rep);
    const auto& m = P.manifold();
    Gen gg(500 + static_cast<uint64_t>(rep));
    TensorField B1 = gg.form(m, 2, 2);
    TensorField B2 = gg.form(m, 2, 2);
    PqNbStructure base = gauge_of_poisson(P, gg.form(m, 2, 2), pol, true);

    PqNbStructure seq = gauge_transform(B1, gauge_transform(B2, base, pol, true), pol, true);
    PqNbStructure comb = gauge_transform(compose_gauges(B1, B2), base, pol, true);
    CHECK(field_is_zero(seq.A - comb.A, pol).is_zero());
    CHECK(field_is_zero(seq.phi - comb.phi, pol).is_zero());
    CHECK(field_is_zero(seq.H - comb.H, pol).is_zero());
    CHECK((seq.P - comb.P).is_structural_zero());

    // commutativity
    PqNbStructure seq21 = gauge_transform(B2, gauge_transform(B1, base, pol, true), pol, true);
    CHECK(field_is_zero(seq.A - seq21.A, pol).is_zero());
    CHECK(field_is_zero(seq.phi - seq21.phi, pol).is_zero());
    CHECK(field_is_zero(seq.H - seq21.H, pol).is_zero());
  }
}

TEST_CASE("gauge closure sweep") {
  SamplingPolicy pol = policy();
  for (int rep = 0; rep < 6; ++rep) {
    TensorField P = base_poisson(rep);
    Gen g(600 + static_cast<uint64_t>(rep));
    TensorField B1 = g.form(P.manifold(), 2, 2);
    TensorField B2 = g.form(P.manifold(), 2, 2);
    PqNbStructure s1 = gauge_of_poisson(P, B1, pol, true);
    CHECK(check_pqnb(s1, pol).passed());
    PqNbStructure s2 = gauge_transform(B2, s1, pol, true);
    CHECK(check_pqnb(s2, pol).passed());
    CHECK((s2.P - P).is_structural_zero());
  }
}

TEST_CASE("closed gauge forms preserve the background-free class") {
  SamplingPolicy pol = policy();
  auto man = r4();
  TensorField P = TensorField::multivector(man, 2);
  P.set_comp({0, 1}, cst(man, 1));
  P.set_comp({2, 3}, cst(man, 1));
  // exact 2-form d(x1 x3 dx2) produces a background-free instance with phi != 0
  TensorField B0 = coord(man, "x3") * form2_comp(man, 0, 1, cst(man, 1)) -
                   coord(man, "x1") * form2_comp(man, 1, 2, cst(man, 1));
  REQUIRE(ext_d(B0).is_structural_zero());
  PqnFromForm base = pqn_from_form(P, B0, pol);
  REQUIRE(base.ok());
  REQUIRE(!base.structure->phi.is_structural_zero());

  TensorField B = form2_comp(man, 0, 2, coord(man, "x3")) +
                  form2_comp(man, 1, 3, coord(man, "x2"));  // another closed 2-form
  REQUIRE(ext_d(B).is_structural_zero());
  PqNbStructure out = gauge_transform(B, *base.structure, pol, true);
  CHECK(out.H.is_structural_zero());
  CHECK(check_pqn(out.P, out.A, out.phi, pol).passed());
}

TEST_CASE("conformal change") {
  SamplingPolicy pol = policy();
  auto man = r3();
  TensorField P = bivector_comp(man, 0, 1, cst(man, 1));

  ConformalChange cc = conformal_change(P, coord(man, "x3"), pol);
  CHECK(cc.poisson.passed());
  CHECK((cc.scaled - exp(coord(man, "x3")) * P).is_structural_zero());

  CHECK_THROWS_WITH_AS(conformal_change(P, coord(man, "x1"), pol),
                       doctest::Contains("x2-component"), GaugeError);

  // Casimir built from the kernel directions of a degenerate bivector
  auto m4 = r4();
  TensorField P4 = bivector_comp(m4, 0, 1, cst(m4, 1) + coord(m4, "x4") * coord(m4, "x4"));
  Expr f = coord(m4, "x3") * coord(m4, "x3") + coord(m4, "x4");
  ConformalChange cc4 = conformal_change(P4, f, pol);
  CHECK(cc4.poisson.passed());
}

TEST_CASE("conformal gauge variants") {
  SamplingPolicy pol = policy();
  auto man = r3();
  TensorField P = bivector_comp(man, 0, 1, cst(man, 1));
  TensorField B = form2_comp(man, 1, 2, cst(man, 1));
  Expr f = coord(man, "x3");

  auto [first, second] = conformal_gauge_variants(P, f, B, pol);
  CHECK(check_pqnb(first, pol).passed());
  CHECK(check_pqnb(second, pol).passed());

  // first route: bare gauge of e^f P by e^{-f} B
  PqNbStructure alt1 = gauge_of_poisson(first.P, exp(-f) * B, pol, true);
  CHECK(field_is_zero(first.A - alt1.A, pol).is_zero());
  CHECK(field_is_zero(first.phi - alt1.phi, pol).is_zero());
  CHECK(field_is_zero(first.H - alt1.H, pol).is_zero());

  // second route: bare gauge of e^f P by B itself; background stays dB
  PqNbStructure alt2 = gauge_of_poisson(second.P, B, pol, true);
  CHECK(field_is_zero(second.A - alt2.A, pol).is_zero());
  CHECK(field_is_zero(second.phi - alt2.phi, pol).is_zero());
  CHECK(field_is_zero(second.H - alt2.H, pol).is_zero());
  CHECK((second.H - ext_d(B)).is_structural_zero());

  // f = 0 collapses both variants
  auto [fz, sz] = conformal_gauge_variants(P, cst(man, 0), B, pol);
  PqNbStructure plain = gauge_of_poisson(P, B, pol, true);
  CHECK(field_is_zero(fz.A - plain.A, pol).is_zero());
  CHECK(field_is_zero(sz.A - plain.A, pol).is_zero());
  CHECK(field_is_zero(fz.phi - plain.phi, pol).is_zero());
  CHECK(field_is_zero(sz.phi - plain.phi, pol).is_zero());
}

TEST_CASE("gauge action on gc structures") {
  SamplingPolicy pol = policy();
  auto man = r4();
  TensorField P = TensorField::multivector(man, 2);
  P.set_comp({0, 1}, cst(man, 1));
  P.set_comp({2, 3}, cst(man, 1));
  TensorField sigma = TensorField::form(man, 2);
  sigma.set_comp({0, 1}, cst(man, 1));
  sigma.set_comp({2, 3}, cst(man, 1));
  GcStructure J(man, TensorField::endomorphism(man), P, sigma, TensorField::form(man, 3));
  REQUIRE(check_gc_background(J, pol).passed());

  GcStructure same = gauge_gc(TensorField::form(man, 2), J);
  CHECK((same.sigma - J.sigma).is_structural_zero());
  CHECK((same.A - J.A).is_structural_zero());

  Gen g(402);
  TensorField B = g.form(man, 2, 1);
  GcStructure img = gauge_gc(B, J);
  CHECK(check_gc_background(img, pol).passed());
  CHECK((img.H - ext_d(B)).is_structural_zero());

  // forgetting sigma reproduces the quadruple gauge transformation
  PqNbStructure quad(man, J.P, J.A, ext_d(J.sigma), J.H);
  PqNbStructure quad_gauged = gauge_transform(B, quad, pol, true);
  CHECK(field_is_zero(img.A - quad_gauged.A, pol).is_zero());
  CHECK(field_is_zero(ext_d(img.sigma) - quad_gauged.phi, pol).is_zero());
  CHECK(field_is_zero(img.H - quad_gauged.H, pol).is_zero());
}

TEST_CASE("classification over a nondegenerate bivector") {
  SamplingPolicy pol = policy();
  auto man = r2();
  TensorField P = bivector_comp(man, 0, 1, cst(man, 1));

  TensorField A = coord(man, "x1") * TensorField::identity_endo(man);
  ClassifyResult res = pqnb_nondegenerate_classify(P, A, pol);
  TensorField P2 = with_manifold(P, res.man);
  PqNbStructure rebuilt = gauge_of_poisson(P2, res.B, pol, true);
  CHECK(field_is_zero(rebuilt.A - with_manifold(A, res.man), pol).is_zero());
  CHECK(check_pqnb(rebuilt, pol).passed());

  ClassifyResult zero = pqnb_nondegenerate_classify(P, TensorField::endomorphism(man), pol);
  CHECK(zero.B.is_structural_zero());

  // A that does not intertwine with P#
  TensorField bad = TensorField::endomorphism(man);
  bad.set_entry(0, 0, cst(man, 1));
  CHECK_THROWS_WITH_AS(pqnb_nondegenerate_classify(P, bad, pol),
                       doctest::Contains("antisymmetric"), GaugeError);

  // degenerate P on R^4
  auto m4 = r4();
  TensorField P4 = bivector_comp(m4, 0, 1, cst(m4, 1));
  CHECK_THROWS_WITH_AS(pqnb_nondegenerate_classify(P4, TensorField::endomorphism(m4), pol),
                       doctest::Contains("degenerate"), GaugeError);
}

TEST_CASE("degenerate bivector admits several backgrounds") {
  SamplingPolicy pol = policy();
  auto man = r4();
  TensorField P = bivector_comp(man, 0, 1, cst(man, 1));
  Gen g(403);
  TensorField B = g.form(man, 2, 2);

  // extra closed background annihilated by every P#-pair
  TensorField H = TensorField::form(man, 3);
  H.set_comp({0, 2, 3}, cst(man, 2));
  H.set_comp({1, 2, 3}, cst(man, -3));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      CHECK(interior_pair(sharp(P, dx(man, i)), sharp(P, dx(man, j)), H).is_structural_zero());

  PqNbStructure base = gauge_of_poisson(P, B, pol, true);
  CHECK(check_pqnb(base, pol).passed());
  PqNbStructure twisted(man, base.P, base.A, base.phi, base.H + H);
  CHECK(check_pqnb(twisted, pol).passed());
}

TEST_CASE("null bivector cannot absorb a non-Nijenhuis tensor") {
  SamplingPolicy pol = policy();
  auto man = r3();
  TensorField P = TensorField::multivector(man, 2);
  TensorField A = TensorField::endomorphism(man);
  A.set_entry(0, 0, coord(man, "x2"));

  Gen g(404);
  for (int rep = 0; rep < 5; ++rep) {
    TensorField phi = g.form(man, 3, 2);
    TensorField H = g.form(man, 3, 2);
    VerificationReport rep_out = check_pqnb(PqNbStructure(man, P, A, phi, H), pol);
    CHECK(!rep_out.passed());
    CHECK(!rep_out.find("compat_torsion")->verdict.is_zero());
  }
}
