#pragma once

#include <string_view>

#include "dimfn/formula.hpp"

namespace dimfn {

/// Parses a formula over the signature of `m`.
///
///   formula := imp
///   imp     := or ['->' imp]
///   or      := and {'|' and}
///   and     := unary {'&' unary}
///   unary   := '!' unary | ('E'|'A') ident '.' imp | '(' formula ')'
///            | 'true' | 'false' | atom
///   atom    := term ('<'|'='|'>'|'<='|'>='|'!=') term | 'U' int '(' term ')'
///   term    := ['-'] summand {('+'|'-') summand}
///   summand := rat '*' var | var | constant
///
/// Free variables are x1, x2, ...; bound variables are alpha-renamed.
/// Throws SyntaxError (with position) or SignatureError.
Formula parse(std::string_view text, const ModelId& m);

}  // namespace dimfn
