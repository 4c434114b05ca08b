#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "alloyfa/fa.hpp"
#include "alloyfa/matrix.hpp"
#include "alloyfa/model.hpp"

// Typed evaluation of fork-algebra terms. Every term gets an (output, input)
// shape, where a shape is an atom or a pair of shapes; a relation is a
// boolean matrix between the carriers of its two shapes.
namespace alloyfa::oracle {

class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TypeTable {
 public:
  int fresh();
  int atom();
  int pair(int a, int b);
  // Right-nested tuple of the given component types.
  int tuple(const std::vector<int>& comps);
  int find(int t);
  void unify(int a, int b);
  // Number of atoms in the shape; unconstrained variables count as one atom.
  int leaves(int t);
  std::string show(int t);

 private:
  enum class K { Var, Atom, Pair };
  struct T {
    K k;
    int a = -1, b = -1, parent;
  };
  bool occurs(int v, int t);
  std::vector<T> ts_;
};

class Program {
 public:
  explicit Program(int universe) : n_(universe) {}

  // Adds a term (unfolded first) and returns its handle.
  int add(const fa::Expr& e);
  int outType(int h) const { return nodes_[static_cast<std::size_t>(h)].out; }
  int inType(int h) const { return nodes_[static_cast<std::size_t>(h)].in; }
  TypeTable& types() { return tt_; }
  // Type variables shared by all occurrences of a pattern variable.
  std::pair<int, int> metaTypes(const std::string& name);

  // Resolves shapes and precomputes model-independent subterms.
  void finish();
  std::size_t carrier(int type);
  int universe() const { return n_; }
  std::vector<std::string> metaNames() const;
  void setMeta(const std::string& name, Matrix value);

  void eval(const FiniteModel& m);
  const Matrix& value(int h) const { return nodes_[static_cast<std::size_t>(h)].val; }

  // The compiled nodes after finish(), children before parents. Values of
  // nodes that are not dynamic are already available through value().
  struct NodeInfo {
    fa::Op op;
    std::string name;
    int a, b;
    std::size_t rows, cols;
    bool dynamic;
  };
  std::vector<NodeInfo> layout() const;

 private:
  struct PNode {
    fa::Op op;
    std::string name;
    int a = -1, b = -1;
    int out = -1, in = -1;
    int ta = -1, tb = -1;  // pair components for projections
    std::size_t rows = 0, cols = 0, sa = 0, sb = 0;
    bool dynamic = false;
    int slot = -1;  // bound vocabulary index for Rel/Coref
    bool unarySig = false;
    Matrix val;
  };
  int build(const fa::Expr& e);
  void compute(PNode& p);
  void bind(const Vocabulary& v);

  int n_;
  TypeTable tt_;
  std::vector<PNode> nodes_;
  std::map<std::string, std::pair<int, int>> metas_;
  std::map<std::string, Matrix> metaVals_;
  const Vocabulary* bound_ = nullptr;
  const FiniteModel* model_ = nullptr;
  bool finished_ = false;
};

// Convenience wrapper for repeatedly checking one fact.
class FactChecker {
 public:
  FactChecker(const fa::Fact& f, int universe);
  bool holds(const FiniteModel& m);
  Program& program() { return prog_; }

 private:
  Program prog_;
  fa::Fact::Kind kind_;
  int l_, r_;
};

// Evaluates a closed term on a model.
Matrix evaluate(const fa::Expr& e, const FiniteModel& m);
bool holds(const fa::Fact& f, const FiniteModel& m);

}  // namespace alloyfa::oracle
