#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "alloyfa/fa.hpp"

// Relational logic formulas. Bound variables are numbered by level: the
// outermost bound variable is 1, and a block binding k variables under d
// enclosing ones binds d+1..d+k. The two special variables 𝐱 and 𝐲 are bound
// by the block that insertVars adds around the whole formula.
namespace alloyfa::rl {

struct Var {
  enum class Kind : std::uint8_t { Bound, X, Y };
  Kind kind = Kind::Bound;
  int level = 0;
  bool operator==(const Var& o) const { return kind == o.kind && level == o.level; }
  bool operator!=(const Var& o) const { return !(*this == o); }
};

Var bv(int level);
Var vx();
Var vy();

using Tuple = std::vector<Var>;
// Bound variables from..to in order.
Tuple levels(int from, int to);

enum class Op : std::uint8_t { True, False, Not, And, Or, Implies, Forall, Exists, App };

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  Op op;
  Formula a, b;      // operands; quantifier body in a
  Formula range;     // optional quantifier range
  int count = 0;     // variables bound by a quantifier
  bool special = false;  // the ∀𝐱,𝐲 block
  Tuple lhs, rhs;    // application sides
  fa::Expr rel;      // application relation
};

Formula truth();
Formula falsity();
Formula not_(Formula a);
Formula and_(Formula a, Formula b);
Formula or_(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula forall(int count, Formula range, Formula body);
Formula exists(int count, Formula range, Formula body);
Formula forallXY(Formula body);
Formula app(Tuple lhs, fa::Expr rel, Tuple rhs);

// Copies a node with new children (for rewriting).
Formula withChildren(const Formula& f, Formula a, Formula b, Formula range);
Formula withRel(const Formula& f, fa::Expr rel);

bool equal(const Formula& a, const Formula& b);
std::size_t size(const Formula& f);

std::string toString(const Var& v);
std::string toString(const Tuple& t);
// `depth` levels are taken as already bound by the context.
std::string toString(const Formula& f, int depth = 0);

// Spines of a connective, flattened through nested occurrences.
void spine(const Formula& f, Op op, std::vector<Formula>& out);
// Left-associated rebuild; an empty And is true, an empty Or false.
Formula rebuild(Op op, const std::vector<Formula>& parts);

bool mentions(const Formula& f, int level);
bool mentions(const Tuple& t, int level);
bool mentionsSpecial(const Formula& f);
// Applies fn to every variable occurrence.
Formula mapVars(const Formula& f, const std::function<Var(const Var&)>& fn);
// Deletes binder position `level`: occurrences of it become `repl`, and
// deeper levels move down by one.
Formula removeLevel(const Formula& f, int level, Var repl);
// Levels above `above` move down by `by` (the formula must not mention
// levels above..above+by).
Formula shiftDown(const Formula& f, int above, int by);

bool isQuantifierFree(const Formula& f);
// No ⇒, no ranges, and no ∀ other than the special block.
bool isNormalized(const Formula& f);
// Largest number of bound levels in scope at an application.
int maxDepth(const Formula& f, int depth = 0);

}  // namespace alloyfa::rl
