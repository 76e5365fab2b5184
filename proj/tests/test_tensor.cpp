#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace pqnb;
using namespace ts;

TEST_CASE("wedge") {
  auto man = r3();
  TensorField w = wedge(dx(man, 0), dx(man, 1));
  CHECK(w.degree() == 2);
  CHECK(w.comp({0, 1}) == cst(man, 1));
  CHECK(w.comp({0, 2}).is_structural_zero());

  CHECK(wedge(dx(man, 0), dx(man, 0)).is_structural_zero());

  TensorField f1 = coord(man, "x3") * dd(man, 0);
  TensorField m = wedge(f1, dd(man, 1));
  CHECK(m.is_multivector());
  CHECK(m.comp({0, 1}) == coord(man, "x3"));

  Gen g(101);
  for (int rep = 0; rep < 20; ++rep) {
    int p = g.uniform(0, 2), q = g.uniform(0, 2);
    TensorField a = g.form(man, p, 2), b = g.form(man, q, 2);
    TensorField lhs = wedge(a, b);
    TensorField rhs = wedge(b, a);
    if ((p * q) % 2 == 1) rhs = -rhs;
    CHECK((lhs - rhs).is_structural_zero());
  }
  CHECK_THROWS_AS(wedge(dx(man, 0), dd(man, 1)), TensorError);
}

TEST_CASE("interior products") {
  auto man = r3();
  TensorField w23 = wedge(dx(man, 1), dx(man, 2));
  CHECK(interior_vf(dd(man, 1), w23) == dx(man, 2));
  CHECK(interior_vf(dd(man, 2), w23) == -dx(man, 1));

  TensorField vol = coord(man, "x1") * wedge(wedge(dx(man, 0), dx(man, 1)), dx(man, 2));
  CHECK(interior_vf(dd(man, 0), vol) == coord(man, "x1") * wedge(dx(man, 1), dx(man, 2)));

  TensorField vol1 = wedge(wedge(dx(man, 0), dx(man, 1)), dx(man, 2));
  CHECK(interior_pair(dd(man, 0), dd(man, 1), vol1) == dx(man, 2));
  CHECK(interior_pair(dd(man, 1), dd(man, 0), vol1) == -dx(man, 2));

  CHECK_THROWS_AS(interior_vf(dd(man, 0), TensorField::form(man, 0)), TensorError);
  CHECK_THROWS_AS(interior_pair(dd(man, 0), dd(man, 1), dx(man, 0)), TensorError);

  // antiderivation law
  Gen g(102);
  for (int rep = 0; rep < 20; ++rep) {
    int p = g.uniform(1, 2), q = g.uniform(0, 1);
    TensorField a = g.form(man, p, 2), b = g.form(man, q, 2);
    TensorField X = g.vf(man, 2);
    TensorField lhs = interior_vf(X, wedge(a, b));
    TensorField rhs = wedge(interior_vf(X, a), b);
    TensorField second = q >= 1 ? wedge(a, interior_vf(X, b)) : TensorField::form(man, p + q - 1);
    rhs = (p % 2 == 0) ? rhs + second : rhs - second;
    CHECK((lhs - rhs).is_structural_zero());
  }
}

TEST_CASE("sharp convention anchors") {
  auto man = r3();
  TensorField P = bivector_comp(man, 0, 1, cst(man, 1));
  CHECK(sharp(P, dx(man, 0)) == dd(man, 1));
  CHECK(sharp(P, dx(man, 1)) == -dd(man, 0));

  TensorField Pf = bivector_comp(man, 0, 1, cst(man, 1) + coord(man, "x1") * coord(man, "x1"));
  CHECK(sharp(Pf, dx(man, 2)).is_structural_zero());

  Gen g(103);
  for (int rep = 0; rep < 30; ++rep) {
    TensorField Q = g.multivector(man, 2, 2);
    TensorField a = g.oneform(man, 2), b = g.oneform(man, 2);
    Expr skew = pairing(b, sharp(Q, a)) + pairing(a, sharp(Q, b));
    CHECK(skew.is_structural_zero());
    // <b, Q#a> = Q(a, b)
    CHECK((pairing(b, sharp(Q, a)) - biv_apply(Q, a, b)).is_structural_zero());
  }
}

TEST_CASE("flat convention anchors") {
  auto man = r3();
  TensorField B = form2_comp(man, 1, 2, cst(man, 1));
  CHECK(flat(B, dd(man, 1)) == dx(man, 2));
  CHECK(flat(B, dd(man, 0)).is_structural_zero());

  TensorField Be = form2_comp(man, 1, 2, exp(coord(man, "x2")));
  CHECK(flat(Be, dd(man, 2)) == -(exp(coord(man, "x2")) * dx(man, 1)));

  Gen g(104);
  for (int rep = 0; rep < 30; ++rep) {
    TensorField W = g.form(man, 2, 2);
    TensorField X = g.vf(man, 2), Y = g.vf(man, 2);
    Expr skew = pairing(flat(W, X), Y) + pairing(flat(W, Y), X);
    CHECK(skew.is_structural_zero());
  }
}

TEST_CASE("endomorphism algebra") {
  auto man = r3();
  Gen g(105);
  Expr gf = coord(man, "x3");
  TensorField A = gf * TensorField::identity_endo(man);
  TensorField X = g.vf(man, 2);
  CHECK((endo_apply(A, X) - gf * X).is_structural_zero());

  // transpose anchor: A = f d1 (x) dx3 has A^t dx1 = f dx3
  TensorField Af = TensorField::endomorphism(man);
  Expr f = cst(man, 1) + coord(man, "x1") * coord(man, "x1");
  Af.set_entry(0, 2, f);
  CHECK(endo_transpose_apply(Af, dx(man, 0)) == f * dx(man, 2));

  for (int rep = 0; rep < 100; ++rep) {
    TensorField S = g.endo(man, 1), T = g.endo(man, 1);
    TensorField a = g.oneform(man, 1);
    // (ST)^t a = T^t S^t a
    TensorField lhs = endo_transpose_apply(endo_compose(S, T), a);
    TensorField rhs = endo_transpose_apply(T, endo_transpose_apply(S, a));
    CHECK((lhs - rhs).is_structural_zero());
  }

  // (A^t a)(X) = a(AX)
  for (int rep = 0; rep < 20; ++rep) {
    TensorField S = g.endo(man, 2);
    TensorField a = g.oneform(man, 2);
    TensorField X = g.vf(man, 2);
    CHECK((pairing(endo_transpose_apply(S, a), X) - pairing(a, endo_apply(S, X)))
              .is_structural_zero());
  }
}

TEST_CASE("form_left and form_both") {
  auto man = r3();
  // gauge example data: B = dx2^dx3, C = f d1 (x) dx3 gives B(C.,.) = 0
  TensorField B = form2_comp(man, 1, 2, cst(man, 1));
  TensorField C = TensorField::endomorphism(man);
  C.set_entry(0, 2, cst(man, 1) + coord(man, "x1") * coord(man, "x1"));
  Bilinear bc = form_left(B, C);
  for (const Expr& e : bc.entries) CHECK(e.is_structural_zero());

  Bilinear bid = form_left(B, TensorField::identity_endo(man));
  CHECK(bid.is_antisymmetric());
  CHECK(bid.to_form() == B);

  Gen g(106);
  SUBCASE("form_both") {
    TensorField W = form2_comp(man, 0, 1, cst(man, 1));
    TensorField Id = TensorField::identity_endo(man);
    CHECK(form_both(W, Id, Id).to_form() == W);

    Expr gf = coord(man, "x3");
    Bilinear s = form_both(W, gf * Id, gf * Id);
    CHECK(as_form2(s) == (gf * gf) * W);

    for (int rep = 0; rep < 100; ++rep) {
      TensorField Wr = g.form(man, 2, 1);
      TensorField S = g.endo(man, 1), T = g.endo(man, 1);
      Bilinear lhs = form_left(Wr, endo_compose(S, T));
      Bilinear rhs = form_both(Wr, endo_compose(S, T), TensorField::identity_endo(man));
      Bilinear diff = lhs - rhs;
      for (const Expr& e : diff.entries) CHECK(e.is_structural_zero());
    }
  }

  SUBCASE("B(C.,.) is a 2-form when C = P# B_flat") {
    for (int rep = 0; rep < 30; ++rep) {
      TensorField P = g.multivector(man, 2, 2);
      TensorField W = g.form(man, 2, 2);
      TensorField Cr = TensorField::endomorphism(man);
      for (int j = 0; j < man->dim(); ++j) {
        TensorField col = sharp(P, flat(W, dd(man, j)));
        for (int i = 0; i < man->dim(); ++i) Cr.set_entry(i, j, col.comp({i}));
      }
      CHECK(form_left(W, Cr).is_antisymmetric());
    }
  }
}

TEST_CASE("degree-0 derivation i_A") {
  auto man = r3();
  Gen g(107);
  Expr gf = coord(man, "x3");
  TensorField gid = gf * TensorField::identity_endo(man);
  TensorField W = g.form(man, 2, 2);
  CHECK((i_A(gid, W) - (cst(man, 2) * gf) * W).is_structural_zero());

  // i_A B = 2 e^{x3} B for the published PN pair and B = e^{x2} dx2^dx3
  auto [P, A] = pn_example();
  auto man3 = P.manifold();
  TensorField B = form2_comp(man3, 1, 2, exp(coord(man3, "x2")));
  TensorField expt = (cst(man3, 2) * exp(coord(man3, "x3"))) * B;
  CHECK((i_A(A, B) - expt).is_structural_zero());

  for (int k = 1; k <= 3; ++k) {
    TensorField Wk = g.form(man, k, 1);
    CHECK((i_A(TensorField::identity_endo(man), Wk) - cst(man, k) * Wk).is_structural_zero());
  }

  // derivation law over the wedge
  for (int rep = 0; rep < 20; ++rep) {
    TensorField S = g.endo(man, 1);
    TensorField a = g.form(man, 1, 1), b = g.form(man, g.uniform(1, 2), 1);
    TensorField lhs = i_A(S, wedge(a, b));
    TensorField rhs = wedge(i_A(S, a), b) + wedge(a, i_A(S, b));
    CHECK((lhs - rhs).is_structural_zero());
  }
}

TEST_CASE("published data: interior pair against the background") {
  // i_{P#a ^ P#b} H = -(dg/dx3) P(a,b) dx3 for the worked quadruple
  PqNbStructure s = ex1_structure();
  const auto& man = s.man;
  TensorField a = dx(man, 0), b = dx(man, 1);
  TensorField lhs = interior_pair(sharp(s.P, a), sharp(s.P, b), s.H);
  Expr f = cst(man, 1) + coord(man, "x1") * coord(man, "x1");
  TensorField expected = -(f * dx(man, 2));  // dg/dx3 = 1, P(a,b) = f
  CHECK((lhs - expected).is_structural_zero());
}

TEST_CASE("generalized sections") {
  auto man = r3();
  GeneralizedSection mu(dd(man, 0), dx(man, 1));
  GeneralizedSection nu = mu + mu;
  CHECK(nu.vec.comp({0}) == cst(man, 2));
  CHECK_THROWS_AS(GeneralizedSection(dx(man, 0), dx(man, 1)), TensorError);
}

TEST_CASE("with_manifold carries components to an augmented manifold") {
  auto man = r3();
  Expr f = cst(man, 1) + coord(man, "x1") * coord(man, "x1");
  auto aug = make_manifold(man->chart, {f});
  TensorField P = bivector_comp(man, 0, 1, f);
  TensorField P2 = with_manifold(P, aug);
  CHECK(P2.manifold() == aug);
  CHECK(P2.comp({0, 1}) == f);
}
