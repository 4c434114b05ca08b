#include "alloyfa/laws.hpp"

namespace alloyfa::laws {

using namespace fa;

const char* toString(Group g) {
  switch (g) {
    case Group::RelationAlgebra: return "relation-algebra";
    case Group::Fork: return "fork";
    case Group::Definition: return "definition";
    case Group::Lemma: return "lemma";
    default: return "n-ary";
  }
}

namespace {

Expr R() { return meta("R"); }
Expr S() { return meta("S"); }
Expr T() { return meta("T"); }
Expr Q() { return meta("Q"); }

Expr first() { return fork(id(), top()); }   // π₁°
Expr second() { return fork(top(), id()); }  // π₂°

Law eq(std::string name, Group g, Expr l, Expr r) { return {std::move(name), g, equation(l, r), {}}; }
Law sub(std::string name, Group g, Expr l, Expr r) { return {std::move(name), g, inclusion(l, r), {}}; }

Expr rotations(Expr e, int k) {
  for (int j = 0; j < k; ++j) e = rotateNode(e);
  return e;
}

oracle::MetaShape shape(int arity) { return {1, arity - 1}; }

}  // namespace

std::vector<Law> library() {
  const auto ra = Group::RelationAlgebra, fk = Group::Fork, df = Group::Definition, lm = Group::Lemma;
  return {
      eq("join-commutative", ra, uni(R(), S()), uni(S(), R())),
      eq("join-associative", ra, uni(R(), uni(S(), T())), uni(uni(R(), S()), T())),
      eq("huntington", ra, uni(compl_(uni(compl_(R()), S())), compl_(uni(compl_(R()), compl_(S())))), R()),
      eq("meet", ra, inter(R(), S()), compl_(uni(compl_(R()), compl_(S())))),
      eq("top", ra, top(), uni(R(), compl_(R()))),
      eq("bottom", ra, bot(), compl_(top())),
      eq("comp-associative", ra, comp(R(), comp(S(), T())), comp(comp(R(), S()), T())),
      eq("comp-identity", ra, comp(R(), id()), R()),
      eq("converse-involution", ra, conv(conv(R())), R()),
      eq("converse-join", ra, conv(uni(R(), S())), uni(conv(R()), conv(S()))),
      eq("converse-comp", ra, conv(comp(R(), S())), comp(conv(S()), conv(R()))),
      eq("comp-join", ra, comp(uni(R(), S()), T()), uni(comp(R(), T()), comp(S(), T()))),
      eq("tarski", ra, uni(comp(conv(R()), compl_(comp(R(), S()))), compl_(S())), compl_(S())),

      eq("fork", fk, fork(R(), S()), inter(comp(first(), R()), comp(second(), S()))),
      eq("fork-converse", fk, comp(conv(fork(R(), S())), fork(T(), Q())),
         inter(comp(conv(R()), T()), comp(conv(S()), Q()))),
      sub("projections", fk, fork(conv(first()), conv(second())), id()),
      eq("star-unfold", fk, star(R()), uni(id(), comp(star(R()), R()))),
      sub("star-induction", fk, compAll({top(), S(), star(R())}),
          uni(comp(top(), S()), comp(inter(compl_(comp(top(), S())), compAll({top(), S(), R()})), star(R())))),

      eq("first-projection", df, pi1(), conv(first())),
      eq("second-projection", df, pi2(), conv(second())),
      eq("product", df, prod(R(), S()), fork(comp(R(), pi1()), comp(S(), pi2()))),
      eq("left-division", df, ldiv(R(), S()), compl_(comp(conv(R()), compl_(S())))),
      eq("right-division", df, rdiv(R(), S()), compl_(comp(R(), compl_(conv(S()))))),

      eq("meet-idempotent", lm, inter(R(), R()), R()),
      eq("meet-top", lm, inter(R(), top()), R()),
      eq("meet-bottom", lm, inter(R(), bot()), bot()),
      eq("converse-meet", lm, conv(inter(R(), S())), inter(conv(R()), conv(S()))),
      eq("complement-join", lm, compl_(uni(R(), S())), inter(compl_(R()), compl_(S()))),
      eq("join-idempotent", lm, uni(R(), R()), R()),
      eq("join-top", lm, uni(R(), top()), top()),
      eq("join-bottom", lm, uni(R(), bot()), R()),
      eq("complement-meet", lm, compl_(inter(R(), S())), uni(compl_(R()), compl_(S()))),
      eq("complement-comp", lm, compl_(comp(R(), S())), ldiv(conv(R()), compl_(S()))),
      eq("complement-division", lm, compl_(ldiv(R(), S())), comp(conv(R()), compl_(S()))),
      eq("complement-involution", lm, compl_(compl_(R())), R()),
      eq("complement-converse", lm, compl_(conv(compl_(R()))), conv(R())),
      eq("bottom-division", lm, ldiv(bot(), R()), top()),
      eq("division-top", lm, ldiv(R(), top()), top()),
      eq("identity-division", lm, ldiv(id(), R()), R()),
      eq("fork-intro", lm, inter(comp(conv(pi1()), R()), comp(conv(pi2()), S())), fork(R(), S())),
      eq("first-fork", lm, comp(first(), R()), fork(R(), comp(top(), R()))),
      eq("product-intro", lm, fork(comp(R(), pi1()), comp(S(), pi2())), prod(R(), S())),
  };
}

std::vector<Law> naryLaws(int maxArity) {
  std::vector<Law> out;
  auto nm = [](const char* base, std::initializer_list<int> ks) {
    std::string s = base;
    for (int k : ks) s += "-" + std::to_string(k);
    return s;
  };
  const auto g = Group::Nary;
  for (int n = 2; n <= maxArity; ++n) {
    auto r = meta("R", n);
    if (n > 2) out.push_back({nm("ncomp-identity", {n}), g, equation(ncompNode(n, r, id()), r), {{"R", shape(n)}}});
    out.push_back({nm("identity-ncomp", {n}), g, equation(ncompNode(2, id(), r), r), {{"R", shape(n)}}});
    out.push_back({nm("rotate-cycle", {n}), g, equation(rotations(r, n), r), {{"R", shape(n)}}});
  }
  for (int a = 2; a <= maxArity; ++a)
    for (int b = 2; b <= maxArity; ++b)
      for (int c = 2; c <= maxArity; ++c) {
        if (a + b + c - 4 > maxArity) continue;
        auto r = meta("R", a), s = meta("S", b), t = meta("T", c);
        auto lhs = ncompNode(a, r, ncompNode(b, s, t));
        auto rhs = ncompNode(a + b - 2, ncompNode(a, r, s), t);
        out.push_back({nm("ncomp-associative", {a, b, c}), g, equation(lhs, rhs),
                       {{"R", shape(a)}, {"S", shape(b)}, {"T", shape(c)}}});
      }
  for (int a = 2; a <= maxArity; ++a)
    for (int b = 2; a + b - 2 <= maxArity; ++b) {
      // Read with rotate undone rather than applied: back^k(R •ⁿ S) =
      // back(S) •^|S| back^k(R) with k = |R| - 1 and back = rotate^(arity-1).
      auto r = meta("R", a), s = meta("S", b);
      int m = a + b - 2;
      auto back = [](Expr e, int arity, int k) { return rotations(std::move(e), ((arity - 1) * k) % arity); };
      auto lhs = back(ncompNode(a, r, s), m, a - 1);
      auto rhs = ncompNode(b, back(s, b, 1), back(r, a, a - 1));
      out.push_back({nm("rotate-ncomp", {a, b}), g, equation(lhs, rhs), {{"R", shape(a)}, {"S", shape(b)}}});
    }
  for (int n = 2; n <= maxArity; ++n) {
    std::vector<Expr> xs, ms;
    std::map<std::string, oracle::MetaShape> shapes;
    for (int i = 1; i <= n; ++i) {
      xs.push_back(projNode(n, i));
      ms.push_back(meta("S" + std::to_string(i)));
      shapes["S" + std::to_string(i)] = {1, 1};
    }
    out.push_back({nm("projections-fork", {n}), g, equation(forkAll(xs), id()), {}});
    for (int i = 1; i <= n; ++i)
      out.push_back({nm("projection-select", {n, i}), g, inclusion(comp(projNode(n, i), forkAll(ms)), ms[i - 1]),
                     shapes});
  }
  return out;
}

}  // namespace alloyfa::laws
