#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "alloyfa/fa.hpp"
#include "alloyfa/rl.hpp"
#include "alloyfa/term.hpp"

// Prover9 input files and LaTeX derivations.
//
// A .p9 document spells FA terms with the function symbols join, meet, comp,
// conv, compl, fork, star, ldiv, rdiv and the constants top, bot, one, pi1,
// pi2. R ⊆ S is written join(R,S) = S. Relation constants are lower-case
// identifiers listed in "% symbol" comment lines; pattern variables are
// upper-case (prolog-style variables).
namespace alloyfa::emit {

class EmitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line(line), col(col) {}
  int line, col;
};

struct Symbol {
  std::string prover;  // identifier in the document
  bool coreflexive = false;
  std::string name;    // relation or signature name
  int arity = 2;
};

struct Formula {
  std::string label;
  fa::Fact fact;  // always an equation over the base vocabulary
};

struct Prover9Doc {
  std::vector<Symbol> symbols;
  std::vector<Formula> assumptions;
  std::vector<Formula> goals;
};

// Replaces •ⁿ, rotate, Xⁿᵢ and × by their definitions.
fa::Expr lower(const fa::Expr& e);
// lower() on both sides; R ⊆ S becomes R ∪ S = S.
fa::Fact encode(const fa::Fact& f);

// The law library, then the facts, then the goal.
Prover9Doc buildProver9(const std::vector<fa::Fact>& facts, const fa::Fact& goal);

// Placeholders {{symbols}}, {{assumptions}} and {{goals}} are replaced; the
// rest of the template is copied as is.
std::string defaultTemplate();
std::string render(const Prover9Doc& doc, const std::string& tmpl = defaultTemplate());

std::string emitProver9(const std::vector<fa::Fact>& facts, const fa::Fact& goal,
                        const std::string& tmpl = defaultTemplate());

// Reads a document written by render(). Throws ParseError.
Prover9Doc selfParse(std::string_view text);

std::string formulaText(const fa::Fact& f, const std::vector<Symbol>& symbols);

struct LatexOptions {
  bool abbreviate = false;
  // Short names used when abbreviating; a missing name is cut to its first
  // character. emitLatex fills this with shortest unambiguous prefixes.
  std::map<std::string, std::string> abbreviations;
};

std::map<std::string, std::string> abbreviations(const std::vector<std::string>& names);

std::string latex(const fa::Expr& e, const LatexOptions& opt = {});
std::string latex(const fa::Fact& f, const LatexOptions& opt = {});
std::string latex(const rl::Formula& f, const LatexOptions& opt = {});
std::string latex(const Term& t, const LatexOptions& opt = {});

// A standalone document: one block per step (before ⇝ after, with the rule
// name), then the final facts one per line.
std::string emitLatex(const std::vector<Step>& trace, const std::vector<fa::Fact>& finalFacts,
                      const LatexOptions& opt = {});

struct Derivation {
  std::string title;
  std::vector<Step> trace;
};

// Several derivations, one section each.
std::string emitLatex(const std::vector<Derivation>& ds, const std::vector<fa::Fact>& finalFacts,
                      const LatexOptions& opt = {});

// Empty when braces and \begin/\end pairs balance, otherwise a description
// of the first problem.
std::string checkLatex(std::string_view text);

}  // namespace alloyfa::emit
