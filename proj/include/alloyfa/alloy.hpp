#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace alloyfa::alloy {

struct Pos {
  int line = 0;
  int col = 0;
};

class AlloyError : public std::runtime_error {
 public:
  AlloyError(const std::string& msg, Pos p)
      : std::runtime_error(std::to_string(p.line) + ":" + std::to_string(p.col) + ": " + msg),
        pos(p),
        message(msg) {}
  Pos pos;
  std::string message;
};

enum class Mult : std::uint8_t { None, Set, Some, Lone, One };

const char* toString(Mult m);

enum class EOp : std::uint8_t {
  Name,       // signature, field, predicate parameter before inlining
  Var,        // bound variable
  Univ,
  Iden,
  NoneE,
  Transpose,
  Closure,    // reflexive-transitive *
  TClosure,   // ^ (rejected by the translator)
  Join,
  Union,
  Inter,
  Diff,
  Product,
  DomRestr,   // <:
  RanRestr,   // :>
};

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

struct Expr {
  EOp op;
  std::string name;
  ExprP a, b;
  int arity = 0;  // filled by checkArities
  Pos pos;
};

enum class FOp : std::uint8_t {
  In,
  Eq,
  Some,
  Lone,
  Not,
  And,
  Or,
  Implies,
  All,
  Exists,
  Call,
  True,
};

struct Form;
using FormP = std::shared_ptr<const Form>;

struct Form {
  FOp op;
  ExprP x, y;         // In/Eq operands; Some/Lone operand in x; quantifier range in x
  FormP f, g;         // subformulas; quantifier body in f
  std::string var;    // quantified variable
  std::string name;   // called predicate
  std::vector<ExprP> args;
  Pos pos;
};

struct Field {
  std::string name;
  std::vector<std::string> columns;  // types after the owner
  std::vector<Mult> mults;           // one per entry of columns
  Pos pos;
};

struct Sig {
  std::string name;
  std::string parent;  // empty for top-level
  bool abstract = false;
  Mult mult = Mult::None;
  std::vector<Field> fields;
  Pos pos;
};

struct Param {
  std::string name;
  std::string type;
};

struct Pred {
  std::string name;
  std::vector<Param> params;
  FormP body;
  Pos pos;
};

struct Assertion {
  std::string name;
  std::vector<Param> params;
  FormP body;
  Pos pos;
};

struct Fact {
  std::string name;
  FormP body;
  Pos pos;
};

struct Model {
  std::vector<Sig> sigs;
  std::vector<Pred> preds;
  std::vector<Fact> facts;
  std::vector<Assertion> asserts;
  std::vector<Field> freeRels;  // rl-direct `rel` declarations; columns include the first type
  bool sortsAreUniverse = false;  // rl-direct header: every type name denotes univ
};

struct RelSym {
  std::string name;
  std::string owner;                 // empty for rl-direct relations
  std::vector<std::string> columns;  // full column types, owner first
  std::vector<Mult> mults;           // per column; column 1 is always None
  int arity() const { return static_cast<int>(columns.size()); }
};

struct SigSym {
  std::string name;
  std::string parent;
  bool abstract = false;
  Mult mult = Mult::None;
  std::vector<std::string> children;
};

struct SymbolTable {
  std::vector<SigSym> sigs;
  std::vector<RelSym> rels;
  bool sortsAreUniverse = false;

  const SigSym* sig(const std::string& n) const;
  const RelSym* rel(const std::string& n) const;
  std::vector<std::string> topLevel() const;
};

// Constructors.
ExprP name(std::string n, Pos p = {});
ExprP var(std::string n, Pos p = {});
ExprP unary(EOp op, ExprP a, Pos p = {});
ExprP binary(EOp op, ExprP a, ExprP b, Pos p = {});
ExprP constant(EOp op, Pos p = {});

FormP in(ExprP x, ExprP y, Pos p = {});
FormP eq(ExprP x, ExprP y, Pos p = {});
FormP some(ExprP x, Pos p = {});
FormP lone(ExprP x, Pos p = {});
FormP not_(FormP f, Pos p = {});
FormP and_(FormP f, FormP g, Pos p = {});
FormP or_(FormP f, FormP g, Pos p = {});
FormP implies(FormP f, FormP g, Pos p = {});
FormP all(std::string v, ExprP range, FormP body, Pos p = {});
FormP exists(std::string v, ExprP range, FormP body, Pos p = {});
FormP call(std::string n, std::vector<ExprP> args, Pos p = {});
FormP truth(Pos p = {});

bool equal(const ExprP& a, const ExprP& b);
bool equal(const FormP& a, const FormP& b);
bool equal(const Model& a, const Model& b);

std::string toString(const ExprP& e);
std::string toString(const FormP& f);

// Variables free in an expression / formula.
void freeVars(const ExprP& e, std::vector<std::string>& out);
void freeVars(const FormP& f, std::vector<std::string>& out);

}  // namespace alloyfa::alloy
