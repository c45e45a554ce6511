#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dglie/dgl.hpp"

namespace dglie {

// Expression AST for the DGL input language.
struct Expr;
using ExprPtr = std::shared_ptr<Expr>;
struct Expr {
    enum Kind { Ident, Bracket, Sum, Scale } kind = Ident;
    int line = 0, col = 0;
    std::string name;                                // Ident
    Rat coeff;                                       // Scale
    ExprPtr a, b;                                    // Bracket children, Scale child in a
    std::vector<std::pair<int, ExprPtr>> summands;   // Sum: (sign, term)
};

struct DglDocument {
    int cap = 0;  // 0 = unspecified in the file
    std::vector<Generator> gens;
    std::vector<std::pair<int, int>> gen_locs;
    // differential declarations: generator name -> expression
    std::vector<std::tuple<std::string, ExprPtr, int, int>> diffs;
};

// Grammar (line comments with '#'):
//   file   := "dgl" "{" decl* "}"
//   decl   := "gen" IDENT ":" INT | "d" IDENT "=" expr | "cap" INT
//   expr   := ["+"|"-"] term (("+"|"-") term)*
//   term   := (RATIONAL "*")? factor
//   factor := IDENT | "[" expr "," expr "]" | "(" expr ")"
//   RATIONAL := INT ("/" POSINT)?
DglDocument parse_dgl(const std::string& text);

// Validates and assembles the document: names resolve, expressions are
// homogeneous, every differential lowers degree by one, degrees fit the cap.
// cap_override replaces the document cap when positive.
std::shared_ptr<FreeDGL> build_dgl(const DglDocument& doc, int cap_override = 0);

// Standalone expression against an existing algebra (CLI inputs, fixtures).
LieElement eval_expr_str(const std::string& text, const FreeDGL& L);

// Canonical text form; reparses to an equal algebra.
std::string serialize_dgl(const FreeDGL& L);

std::string read_file(const std::string& path);
std::shared_ptr<FreeDGL> load_dgl_file(const std::string& path, int cap_override = 0);

}  // namespace dglie
