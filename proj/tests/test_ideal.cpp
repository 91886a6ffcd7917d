#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rrlab/ideal.hpp"
#include "rrlab/rng.hpp"
#include "rrlab/staircase.hpp"

using namespace rrlab;

namespace {

RingPtr ring2(long long p = 32003) { return make_ring({"x", "y"}, p); }

IdealHandle I(const RingPtr& r, const std::vector<std::string>& gens) {
  std::vector<Polynomial> g;
  for (auto& s : gens) g.push_back(parse_poly(s, *r));
  return IdealHandle(r, std::move(g));
}

IdealHandle from_stair(const RingPtr& r, const Staircase& s) {
  std::vector<Polynomial> g;
  for (auto& e : s.gens) g.push_back(Polynomial::term(Monomial::of(e), r->c_one()));
  return IdealHandle(r, std::move(g));
}

Staircase random_stair(Mcg64& rng, int extra = 3, int maxe = 8) {
  std::vector<std::vector<int>> exps = {{1 + static_cast<int>(rng.below(maxe)), 0},
                                        {0, 1 + static_cast<int>(rng.below(maxe))}};
  for (int g = 0; g < extra; ++g)
    exps.push_back(
        {1 + static_cast<int>(rng.below(maxe)), 1 + static_cast<int>(rng.below(maxe))});
  return Staircase::make(2, exps);
}

}  // namespace

TEST_CASE("sum, product, power") {
  auto r = ring2();
  CHECK(ideal_equal(ideal_sum(I(r, {"x"}), I(r, {"y"})), I(r, {"x", "y"})));
  CHECK(ideal_equal(ideal_product(I(r, {"x", "y"}), I(r, {"x", "y"})),
                    I(r, {"x^2", "x*y", "y^2"})));
  // J * I^0 = J
  IdealHandle J = I(r, {"x^2", "y^2"});
  CHECK(ideal_equal(ideal_product(J, ideal_power(I(r, {"x", "y"}), 0)), J));
  CHECK(ideal_equal(ideal_power(I(r, {"x", "y"}), 2), I(r, {"x^2", "x*y", "y^2"})));
  IdealHandle A = I(r, {"x+y", "x*y"});
  CHECK(ideal_equal(ideal_power(A, 1), A));
  // (m^2)^2 = m^4 semantically
  CHECK(ideal_equal(ideal_power(I(r, {"x^2", "x*y", "y^2"}), 2),
                    ideal_power(I(r, {"x", "y"}), 4)));
}

TEST_CASE("intersection") {
  auto r = ring2();
  CHECK(ideal_equal(ideal_intersect(I(r, {"x"}), I(r, {"y"})), I(r, {"x*y"})));
  IdealHandle A = I(r, {"x^2+y", "x*y"});
  CHECK(ideal_equal(ideal_intersect(A, A), A));
  CHECK(ideal_equal(ideal_intersect(I(r, {"x^2", "y"}), I(r, {"x"})), I(r, {"x^2", "x*y"})));
}

TEST_CASE("colon") {
  auto r = ring2();
  CHECK(ideal_equal(ideal_colon(I(r, {"x^2"}), I(r, {"x"})), I(r, {"x"})));
  CHECK(ideal_equal(ideal_colon(I(r, {"x*y"}), I(r, {"x"})), I(r, {"y"})));
  // cross-check a non-principal colon against the staircase oracle
  Staircase a = Staircase::make(2, {{4, 0}, {3, 1}, {1, 3}, {0, 4}});
  Staircase b = Staircase::make(2, {{2, 2}});
  Staircase q = stair_op(a, b, StairOp::colon);
  CHECK(ideal_equal(ideal_colon(from_stair(r, a), from_stair(r, b)), from_stair(r, q)));
  // colon by the zero ideal is the unit ideal
  CHECK(ideal_equal(ideal_colon(I(r, {"x"}), IdealHandle::zero(r)), IdealHandle::unit(r)));
}

TEST_CASE("equality and membership") {
  auto r = ring2();
  CHECK(ideal_equal(I(r, {"x", "y"}), I(r, {"y", "x"})));
  CHECK(ideal_member(parse_poly("x^2+x*y", *r), I(r, {"x"})));
  CHECK(!ideal_equal(ideal_sum(I(r, {"x"}), I(r, {"y"})), I(r, {"x+y"})));
  CHECK_THROWS_AS(ideal_equal(I(r, {"x"}), I(ring2(101), {"x"})), Failure);
}

TEST_CASE("eliminate") {
  auto r3 = make_ring({"t", "x", "y"}, 32003);
  IdealHandle A = I(r3, {"t*x", "y-t*y"});  // t*x and (1-t)*y
  IdealHandle E = eliminate(A, {0});
  CHECK(ideal_equal(E, I(r3, {"x*y"})));

  auto r = ring2();
  CHECK(eliminate(I(r, {"x-y"}), {0}).gens().empty());

  auto rxyz = make_ring({"x", "y", "z"}, 32003);
  CHECK(ideal_equal(eliminate(I(rxyz, {"x-y^2", "y-z"}), {1}), I(rxyz, {"x-z^2"})));
}

TEST_CASE("quotient contexts") {
  auto r = ring2();
  auto rq = quotient_ctx(r, {parse_poly("x", *r)});
  CHECK(rq->ambient.size() == 1);
  // composition: quotient by x then y equals quotient by {x, y}
  auto rq2 = quotient_ctx(rq, {parse_poly("y", *r)});
  auto rboth = quotient_ctx(r, {parse_poly("x", *r), parse_poly("y", *r)});
  CHECK(ideal_equal(IdealHandle::zero(rq2), IdealHandle::zero(rboth)));
  CHECK_THROWS_AS(quotient_ctx(r, {parse_poly("x+1", *r)}), Failure);

  // Example 3.4 ambient context parses and builds
  auto r5 = make_ring({"x", "y", "z", "u", "v"}, 32003);
  std::vector<Polynomial> amb = {parse_poly("x^2+y^5", *r5), parse_poly("x*y+u^4", *r5),
                                 parse_poly("x*z+v^3", *r5)};
  auto R = quotient_ctx(r5, amb);
  CHECK(R->ambient.size() == 3);
}

TEST_CASE("containment lattice properties on random monomial ideals") {
  auto r = ring2();
  Mcg64 rng(17);
  for (int it = 0; it < 20; ++it) {
    IdealHandle A = from_stair(r, random_stair(rng));
    IdealHandle B = from_stair(r, random_stair(rng));
    IdealHandle C = ideal_colon(A, B);
    CHECK(ideal_contains(A, ideal_product(C, B)));
    IdealHandle X = ideal_intersect(A, B);
    CHECK(ideal_contains(A, X));
    CHECK(ideal_contains(B, X));
    CHECK(ideal_contains(ideal_sum(A, B), A));
    CHECK(ideal_contains(X, ideal_product(A, B)));
  }
}

TEST_CASE("power additivity") {
  auto r = ring2();
  Mcg64 rng(19);
  for (int it = 0; it < 5; ++it) {
    IdealHandle A = from_stair(r, random_stair(rng, 2, 4));
    for (int m = 0; m <= 3; ++m)
      for (int n = 0; m + n <= 5 && n <= 3; ++n)
        CHECK(ideal_equal(ideal_power(A, m + n),
                          ideal_product(ideal_power(A, m), ideal_power(A, n))));
  }
}

TEST_CASE("modular and rational bases agree termwise at this scale") {
  auto rq = ring2(0);
  auto rp = ring2(32003);
  Mcg64 rng(29);
  for (int it = 0; it < 20; ++it) {
    std::vector<Polynomial> gq, gp;
    int ng = 2 + static_cast<int>(rng.below(2));
    for (int i = 0; i < ng; ++i) {
      std::vector<Term> tq, tp;
      int nt = 2 + static_cast<int>(rng.below(3));
      for (int t = 0; t < nt; ++t) {
        std::vector<int> e = {static_cast<int>(rng.below(4)), static_cast<int>(rng.below(4))};
        long long c = static_cast<long long>(rng.below(9)) - 4;
        if (c == 0) c = 1;
        tq.push_back({Monomial::of(e), rq->c(c)});
        tp.push_back({Monomial::of(e), rp->c(c)});
      }
      gq.push_back(Polynomial::from_terms(std::move(tq)));
      gp.push_back(Polynomial::from_terms(std::move(tp)));
    }
    GroebnerBasis Gq = reduced_groebner(gq, MonomialOrder::grevlex(), 2);
    GroebnerBasis Gp = reduced_groebner(gp, MonomialOrder::grevlex(), 2);
    REQUIRE(Gq.gens.size() == Gp.gens.size());
    for (size_t i = 0; i < Gq.gens.size(); ++i) {
      REQUIRE(Gq.gens[i].nterms() == Gp.gens[i].nterms());
      for (int t = 0; t < Gq.gens[i].nterms(); ++t) {
        const Term& a = Gq.gens[i].terms()[t];
        const Term& b = Gp.gens[i].terms()[t];
        CHECK(a.m == b.m);
        // map the rational coefficient into F_p and compare
        Rational q = a.c.rat();
        long long num = static_cast<long long>(boost::multiprecision::numerator(q) % 32003);
        long long den = static_cast<long long>(boost::multiprecision::denominator(q) % 32003);
        Coeff mapped = Coeff::integer(num, 32003) * Coeff::integer(den, 32003).inv();
        CHECK(mapped == b.c);
      }
    }
  }
}
