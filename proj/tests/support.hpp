#pragma once

#include <string>
#include <utility>
#include <vector>

#include "alloyfa/fa_eval.hpp"
#include "alloyfa/model.hpp"

namespace testsupport {

using namespace alloyfa;

// Untyped vocabulary: relations over the whole universe.
inline oracle::Vocabulary untyped(const std::vector<std::pair<std::string, int>>& rels) {
  oracle::Vocabulary v;
  for (const auto& [name, ar] : rels) {
    oracle::RelInfo r;
    r.name = name;
    r.columns.assign(static_cast<std::size_t>(ar), -1);
    v.rels.push_back(r);
  }
  return v;
}

// Evaluates a term whose input is forced to be a right-nested tuple of
// `inAtoms` atoms and whose output is forced to `outAtoms` atoms.
inline oracle::Matrix evalShaped(const fa::Expr& e, const oracle::FiniteModel& m, int outAtoms,
                                 int inAtoms) {
  oracle::Program p(m.universe);
  int h = p.add(e);
  auto& tt = p.types();
  auto tup = [&](int k) {
    std::vector<int> c;
    for (int j = 0; j < k; ++j) c.push_back(tt.atom());
    return tt.tuple(c);
  };
  tt.unify(p.outType(h), tup(outAtoms));
  tt.unify(p.inType(h), tup(inAtoms));
  p.eval(m);
  return p.value(h);
}

// Index of a right-nested tuple of atoms.
inline std::size_t tupleIndex(const std::vector<int>& t, int n) {
  std::size_t idx = 0;
  for (int x : t) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(x);
  return idx;
}

// All tuples of length k over n atoms.
inline std::vector<std::vector<int>> allTuples(int n, int k) {
  std::vector<std::vector<int>> out{{}};
  for (int j = 0; j < k; ++j) {
    std::vector<std::vector<int>> next;
    for (const auto& t : out)
      for (int a = 0; a < n; ++a) {
        auto u = t;
        u.push_back(a);
        next.push_back(u);
      }
    out = std::move(next);
  }
  return out;
}

// Checks a fact on every model of the vocabulary up to the bound; returns the
// number of models or -1 on the first failure.
inline long checkAll(const fa::Fact& f, const oracle::Vocabulary& v, int bound,
                     std::uint64_t samples = 300) {
  oracle::EnumOptions opt;
  opt.maxUniverse = bound;
  opt.samples = samples;
  opt.exhaustiveCap = 5000;
  std::vector<oracle::FactChecker> checkers;
  for (int n = 0; n <= bound; ++n) checkers.emplace_back(f, n);
  bool ok = true;
  auto st = oracle::enumerateModels(v, opt, [&](const oracle::FiniteModel& m) {
    ok = checkers[static_cast<std::size_t>(m.universe)].holds(m);
    return ok;
  });
  return ok ? static_cast<long>(st.models) : -1;
}

// Alloy reading of a multiplicity on column `column` (0-based) of a relation
// over the whole universe: every choice of the other columns has at least one
// (some), at most one (lone) or exactly one (one) completion.
inline bool countingHolds(const oracle::TupleSet& r, int column, int atLeast, int atMost) {
  int n = r.universe(), k = r.arity();
  for (const auto& others : allTuples(n, k - 1)) {
    int c = 0;
    for (int v = 0; v < n; ++v) {
      auto t = others;
      t.insert(t.begin() + column, v);
      c += r.has(t) ? 1 : 0;
    }
    if (c < atLeast || c > atMost) return false;
  }
  return true;
}

}  // namespace testsupport
