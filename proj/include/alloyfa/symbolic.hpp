#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "alloyfa/check.hpp"
#include "alloyfa/fa.hpp"
#include "alloyfa/fa_eval.hpp"

// Exhaustive checking of laws by symbolic evaluation: every cell of every
// pattern variable is a boolean variable, every cell of a term is a reduced
// ordered BDD over them, and a law holds for all assignments iff the BDDs of
// its two sides agree.
namespace alloyfa::oracle::symbolic {

class Bdd {
 public:
  static constexpr int False = 0;
  static constexpr int True = 1;

  Bdd();
  int var(int v);
  int ite(int f, int g, int h);
  int conj(int a, int b) { return ite(a, b, False); }
  int disj(int a, int b) { return ite(a, True, b); }
  int neg(int a) { return ite(a, False, True); }
  int implies(int a, int b) { return ite(a, b, True); }
  int iff(int a, int b) { return ite(a, b, neg(b)); }
  // A satisfying assignment (unmentioned variables false); false if none.
  bool satisfy(int f, std::vector<bool>& values) const;
  // Assignments over `vars` variables that satisfy f.
  double count(int f, int vars) const;
  std::size_t nodes() const { return nodes_.size(); }

 private:
  struct Node {
    int var, lo, hi;
  };
  struct Hash {
    std::size_t operator()(const std::array<int, 3>& k) const {
      std::uint64_t h = static_cast<std::uint32_t>(k[0]);
      h = h * 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint32_t>(k[1]);
      h = h * 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint32_t>(k[2]);
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };
  int mk(int v, int lo, int hi);
  int top(int f) const { return nodes_[static_cast<std::size_t>(f)].var; }

  std::vector<Node> nodes_;
  std::unordered_map<std::array<int, 3>, int, Hash> unique_, cache_;
};

// A cell-wise symbolic matrix.
struct SymMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<int> cells;
  int& at(std::size_t r, std::size_t c) { return cells[r * cols + c]; }
  int at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
};

// Facts over pattern variables, evaluated once on a universe of a given size.
class Evaluator {
 public:
  Evaluator(const std::vector<fa::Fact>& facts, const std::map<std::string, MetaShape>& shapes, int universe);

  Bdd& bdd() { return bdd_; }
  // Truth of the conjunction of the facts.
  int truth();
  // Truth of one fact.
  int truth(std::size_t fact);
  const SymMatrix& value(int handle) const { return vals_[static_cast<std::size_t>(handle)]; }
  std::pair<int, int> sides(std::size_t fact) const { return handles_[fact]; }

  std::vector<std::string> metaNames() const { return prog_.metaNames(); }
  std::size_t rows(const std::string& meta) const;
  std::size_t cols(const std::string& meta) const;
  // BDD variable of one cell.
  int variable(const std::string& meta, std::size_t row, std::size_t col) const;
  int variables() const { return nvars_; }
  // A pattern variable under an assignment of the BDD variables.
  Matrix metaValue(const std::string& meta, const std::vector<bool>& values) const;
  std::string describe(const std::vector<bool>& values) const;

 private:
  void compute(const Program::NodeInfo& n, std::size_t h);

  Program prog_;
  std::vector<fa::Fact> facts_;
  std::vector<std::pair<int, int>> handles_;
  Bdd bdd_;
  std::map<std::string, std::pair<int, std::pair<std::size_t, std::size_t>>> metas_;  // first var, shape
  int nvars_ = 0;
  std::vector<SymMatrix> vals_;
};

// Decides a law on every assignment of its pattern variables for each
// universe size up to opt.bound. The verdict is Pass or Fail, never Sampled;
// `models` counts the assignments covered.
CheckResult proveLaw(const fa::Fact& law, const std::map<std::string, MetaShape>& shapes, const CheckOptions& opt);

}  // namespace alloyfa::oracle::symbolic
