#include "doctest.h"
#include "support.hpp"

using namespace alloyfa;
using namespace testsupport;
using fa::Op;

namespace {

fa::Expr R() { return fa::rel("R", 2); }
fa::Expr S() { return fa::rel("S", 2); }
fa::Expr T() { return fa::rel("T", 3); }

oracle::FiniteModel someModel(const oracle::Vocabulary& v, int n, std::uint64_t seed) {
  std::uint64_t st = seed;
  return oracle::randomModel(v, n, st);
}

}  // namespace

TEST_CASE("projX unfolds by its recursive definition") {
  CHECK(fa::equal(fa::projX(3, 2), fa::comp(fa::pi1(), fa::pi2())));
  CHECK(fa::projX(1, 1)->op == Op::Id);
  CHECK(fa::projX(4, 1)->op == Op::Pi1);
  CHECK(fa::equal(fa::projX(2, 2), fa::pi2()));
  CHECK_THROWS_AS(fa::projX(3, 4), fa::ArityError);
  CHECK_THROWS_AS(fa::projX(0, 1), fa::ArityError);
}

TEST_CASE("projX selects the i-th component of a right-nested tuple") {
  auto v = untyped({});
  for (int n = 1; n <= 3; ++n) {
    oracle::FiniteModel m = someModel(v, n, 1);
    for (int len = 1; len <= 4; ++len)
      for (int i = 1; i <= len; ++i) {
        auto mat = evalShaped(fa::projX(len, i), m, 1, len);
        for (const auto& t : allTuples(n, len))
          for (int a = 0; a < n; ++a)
            CHECK(mat.get(static_cast<std::size_t>(a), tupleIndex(t, n)) ==
                  (t[static_cast<std::size_t>(i - 1)] == a));
      }
  }
}

TEST_CASE("rotate of a binary relation is its converse") {
  CHECK(fa::equal(fa::rotate(R()), fa::conv(R())));
  CHECK(fa::equal(fa::rotateN(R(), 1), fa::conv(R())));
  CHECK(fa::equal(fa::rotateN(R(), 2), R()));
}

TEST_CASE("rotate of a ternary relation matches its unfolded definition") {
  auto expected = fa::comp(fa::projX(2, 2), fa::conv(fa::fork(T(), fa::projX(2, 1))));
  CHECK(fa::equal(fa::rotate(T()), expected));
  CHECK(fa::arityOf(fa::rotate(T())) == 3);
  CHECK_THROWS_AS(fa::rotate(fa::coref("A")), fa::ArityError);
}

TEST_CASE("rotation moves the last column to the front") {
  auto v = untyped({{"T", 3}});
  for (int n = 1; n <= 3; ++n)
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto m = someModel(v, n, seed);
      auto mat = evalShaped(fa::rotate(T()), m, 1, 2);
      for (const auto& t : allTuples(n, 3)) {
        bool in = m.rels[0].has(t);
        // x3 rot(T) (x1,x2)
        CHECK(mat.get(static_cast<std::size_t>(t[2]), tupleIndex({t[0], t[1]}, n)) == in);
      }
    }
}

TEST_CASE("n rotations give back the relation") {
  auto v = untyped({{"T", 3}, {"Q", 4}});
  CHECK(checkAll(fa::equation(fa::rotateN(T(), 3), T()), v, 2) > 0);
  auto Q = fa::rel("Q", 4);
  auto four = fa::rotateNode(fa::rotateNode(fa::rotateNode(fa::rotateNode(Q))));
  CHECK(checkAll(fa::equation(four, Q), v, 2, 50) > 0);
  CHECK(checkAll(fa::equation(fa::rotateN(T(), 1), T()), v, 2) < 0);
}

TEST_CASE("ncomp joins through the last column") {
  CHECK(fa::equal(fa::ncomp(R(), S()), fa::comp(R(), S())));
  CHECK(fa::equal(fa::ncomp(T(), fa::id()), T()));
  auto e = fa::ncomp(T(), S());
  CHECK(e->op == Op::NComp);
  CHECK(e->n == 3);
  CHECK(fa::arityOf(e) == 3);

  auto v = untyped({{"T", 3}, {"S", 2}});
  for (int n = 1; n <= 3; ++n)
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto m = someModel(v, n, seed);
      auto mat = evalShaped(e, m, 1, 2);
      for (const auto& t : allTuples(n, 3)) {
        bool want = false;
        for (int k = 0; k < n; ++k)
          want = want || (m.rels[0].has({t[0], t[1], k}) && m.rels[1].has({k, t[2]}));
        CHECK(mat.get(static_cast<std::size_t>(t[0]), tupleIndex({t[1], t[2]}, n)) == want);
      }
    }
}

TEST_CASE("cut drops the last component of a tuple") {
  auto v = untyped({});
  for (int len = 2; len <= 4; ++len) {
    auto m = someModel(v, 2, 3);
    auto mat = evalShaped(fa::cut(len), m, len, len - 1);
    for (const auto& t : allTuples(2, len))
      for (const auto& s : allTuples(2, len - 1)) {
        bool want = std::equal(s.begin(), s.end(), t.begin());
        CHECK(mat.get(tupleIndex(t, 2), tupleIndex(s, 2)) == want);
      }
  }
  CHECK(fa::equal(fa::cut(2), fa::fork(fa::id(), fa::top())));
}

TEST_CASE("parallel product and divisions have the documented orientation") {
  auto v = untyped({{"R", 2}, {"S", 2}});
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    int n = 2 + static_cast<int>(seed % 2);
    auto m = someModel(v, n, seed);
    auto r = m.rels[0], s = m.rels[1];
    auto px = evalShaped(fa::prod(R(), S()), m, 2, 2);
    auto ld = evalShaped(fa::ldiv(R(), S()), m, 1, 1);
    auto rd = evalShaped(fa::rdiv(R(), S()), m, 1, 1);
    for (const auto& q : allTuples(n, 4)) {
      int a = q[0], b = q[1], c = q[2], d = q[3];
      CHECK(px.get(tupleIndex({a, b}, n), tupleIndex({c, d}, n)) == (r.has({a, c}) && s.has({b, d})));
    }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        bool l = true, rr = true;
        for (int w = 0; w < n; ++w) {
          if (r.has({w, x}) && !s.has({w, y})) l = false;
          if (r.has({x, w}) && !s.has({y, w})) rr = false;
        }
        CHECK(ld.get(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) == l);
        CHECK(rd.get(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) == rr);
      }
  }
}

TEST_CASE("fork, projections and star behave as specified") {
  auto v = untyped({{"R", 2}, {"S", 2}});
  // π1°·R ∩ π2°·S = R ∇ S
  auto lhs = fa::inter(fa::comp(fa::conv(fa::pi1()), R()), fa::comp(fa::conv(fa::pi2()), S()));
  CHECK(checkAll(fa::equation(lhs, fa::fork(R(), S())), v, 3) > 0);
  // R* = id ∪ R*·R
  auto st = fa::star(R());
  CHECK(checkAll(fa::equation(st, fa::uni(fa::id(), fa::comp(st, R()))), v, 3) > 0);
  // π1 ∇ π2 = id on pairs
  auto m = someModel(v, 2, 0);
  auto f = evalShaped(fa::fork(fa::pi1(), fa::pi2()), m, 2, 2);
  oracle::Matrix eye;
  oracle::identity(4, eye);
  CHECK(f == eye);
}

TEST_CASE("canonicalize sorts union and intersection operands") {
  auto a = fa::uni(fa::uni(S(), R()), fa::coref("A"));
  auto b = fa::uni(fa::coref("A"), fa::uni(R(), S()));
  CHECK(fa::equal(fa::canonicalize(a), fa::canonicalize(b)));
  CHECK(fa::equal(fa::canonicalize(fa::canonicalize(a)), fa::canonicalize(a)));
  CHECK_FALSE(fa::equal(fa::canonicalize(fa::comp(R(), S())), fa::canonicalize(fa::comp(S(), R()))));
  auto v = untyped({{"R", 2}, {"S", 2}});
  oracle::Vocabulary vs = v;
  vs.sigs.push_back({"A", -1, false});
  CHECK(checkAll(fa::equation(a, fa::canonicalize(a)), vs, 3) > 0);
}

TEST_CASE("operator count and printing") {
  auto f = fa::inclusion(fa::id(), fa::comp(R(), fa::conv(S())));
  CHECK(fa::countOps(f) == 2);
  CHECK(fa::toString(f) == "id ⊆ R·S°");
  CHECK(fa::toString(fa::comp(fa::top(), fa::inter(fa::pi1(), fa::comp(R(), fa::pi2())))) ==
        "⊤·(π₁ ∩ R·π₂)");
  CHECK(fa::toString(fa::projNode(2, 1)) == "X²₁");
  CHECK(fa::toString(fa::compl_(fa::conv(R()))) == "‾(R°)");
}

TEST_CASE("global converse flips binary relation names only") {
  auto e = fa::comp(R(), fa::conv(S()));
  auto g = fa::globalConverse(e);
  CHECK(fa::equal(g, fa::comp(fa::conv(R()), fa::conv(fa::conv(S())))));
  CHECK(fa::equal(fa::globalConverse(T()), T()));
}
