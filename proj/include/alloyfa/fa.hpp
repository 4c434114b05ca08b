#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

// Fork-algebra terms. A relation is read "x R y": x is the output, y the input.
// An n-ary Alloy relation is the binary relation x1 R (x2,(x3,...)).
namespace alloyfa::fa {

enum class Op : std::uint8_t {
  Rel,     // named relation of some arity
  Coref,   // Phi_S, the coreflexive of a signature or unary relation
  Meta,    // pattern variable (axioms, rule schemata)
  Top,
  Bot,
  Id,
  Pi1,
  Pi2,
  Proj,    // X^n_i, kept symbolic until unfold()
  Union,
  Inter,
  Compl,
  Conv,
  Comp,
  Fork,
  Prod,
  LDiv,
  RDiv,
  Star,
  NComp,   // R •^n S
  Rotate,
};

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  std::string name;
  int n = 0;
  int i = 0;
  int arity = 2;
  Expr lhs;
  Expr rhs;
};

class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Expr rel(std::string name, int arity = 2);
Expr coref(std::string name);
// A pattern variable; the arity matters only to rotateN and ncomp.
Expr meta(std::string name, int arity = 2);
Expr top();
Expr bot();
Expr id();
Expr pi1();
Expr pi2();
Expr projNode(int n, int i);

Expr uni(Expr a, Expr b);
Expr inter(Expr a, Expr b);
Expr compl_(Expr a);
Expr conv(Expr a);
Expr comp(Expr a, Expr b);
Expr fork(Expr a, Expr b);
Expr prod(Expr a, Expr b);
Expr ldiv(Expr a, Expr b);
Expr rdiv(Expr a, Expr b);
Expr star(Expr a);
Expr ncompNode(int n, Expr a, Expr b);
Expr rotateNode(Expr a);

// Left-associated composition / union of a list (must be non-empty).
Expr compAll(const std::vector<Expr>& xs);
Expr uniAll(const std::vector<Expr>& xs);
Expr interAll(const std::vector<Expr>& xs);
// Right-nested fork f1 ∇ (f2 ∇ ...) ; a single element is returned as is.
Expr forkAll(const std::vector<Expr>& xs);
// Right-nested product.
Expr prodAll(const std::vector<Expr>& xs);

// X^n_i unfolded into projections: X^1_1 = id, X^n_1 = π1, X^n_i = X^{n-1}_{i-1}·π2
// (an X^1_1 factor on the left is dropped).
Expr projX(int n, int i);
// One rotation, unfolded; the binary case is the converse.
Expr rotate(const Expr& r);
// k rotations as symbolic nodes (binary relations use converse).
Expr rotateN(const Expr& r, int k);
// R •^n S with n = arity(R); n = 2 gives R·S and S = id gives R.
Expr ncomp(const Expr& r, const Expr& s);
// Existential cut for a right-nested n-tuple: (t1..t(n-1), b) cut (t1..t(n-1)).
Expr cut(int n);
// Replaces NComp, Rotate and Proj by their definitions.
Expr unfold(const Expr& e);

int arityOf(const Expr& e);
bool isLeaf(Op op);
bool isCoreflexive(const Expr& e);
int compare(const Expr& a, const Expr& b);
bool equal(const Expr& a, const Expr& b);
Expr canonicalize(const Expr& e);
int countOps(const Expr& e);
std::size_t size(const Expr& e);
// Replaces every named binary relation R by R°.
Expr globalConverse(const Expr& e);

std::string toString(const Expr& e);

struct Fact {
  enum class Kind : std::uint8_t { Eq, Sub };
  Kind kind = Kind::Eq;
  Expr lhs;
  Expr rhs;
  std::string label;
};

Fact equation(Expr lhs, Expr rhs, std::string label = {});
Fact inclusion(Expr lhs, Expr rhs, std::string label = {});
bool equal(const Fact& a, const Fact& b);
Fact canonicalize(const Fact& f);
int countOps(const Fact& f);
std::string toString(const Fact& f);

}  // namespace alloyfa::fa
