#ifndef CATRANK_PARSER_HPP
#define CATRANK_PARSER_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "catrank/skeleton.hpp"

namespace catrank {

class skeleton_parse_error : public std::runtime_error {
 public:
  skeleton_parse_error(const std::string& message, int line, int col)
      : std::runtime_error(message), line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

// Skeleton file grammar (UTF-8, '#' comments to end of line):
//
//   file := def* ("main" "=" IDENT ";")?
//   def  := "def" IDENT "=" expr ";"
//   expr := "point" | "empty"
//         | "susp" "(" expr ")" | "omegasusp" "(" expr ")"
//         | "coprod" "(" expr ("," expr)* ")"
//         | "cat" "{" "objects" ":" "[" IDENT ("," IDENT)* "]" ";"
//                 ("hom" "(" IDENT "," IDENT ")" "=" expr ";")* "}"
//         | IDENT
//
// The environment is validated before being returned: unresolved references
// and ill-founded reference cycles (through component positions, or pure
// alias loops) are reported as errors naming the offending definition.
SkeletonEnv parse_file(std::string_view text);

// Parses a single expression (used by tests and the CLI).
ExprPtr parse_expr_text(std::string_view text);

}  // namespace catrank

#endif  // CATRANK_PARSER_HPP
