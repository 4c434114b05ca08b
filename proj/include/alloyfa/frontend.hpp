#pragma once

#include <string>
#include <string_view>

#include "alloyfa/alloy.hpp"

namespace alloyfa::frontend {

// Parses the supported Alloy subset. Throws alloy::AlloyError with a position.
alloy::Model parse(std::string_view src);

// rl-direct input: `rel R : A -> B;` lines followed by one formula, which
// becomes the single assertion "goal". Type names in the formula denote univ.
alloy::Model parseRlDirect(std::string_view src);

alloy::SymbolTable buildSymbols(const alloy::Model& m);

// Annotates every expression with its arity; throws on mismatches.
alloy::Model checkArities(const alloy::Model& m);

// Inlines predicates, closes parametric assertions and removes =, =>, ||,
// existential quantifiers and lone. The result is arity-annotated.
alloy::Model desugar(const alloy::Model& m);

// True when only in, some, !, &&, all and true remain.
bool isCore(const alloy::FormP& f);

// Concrete syntax that parse() reads back to an equal model.
std::string prettyPrint(const alloy::Model& m);

}  // namespace alloyfa::frontend
