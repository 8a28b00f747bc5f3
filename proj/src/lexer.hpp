#pragma once

#include <string>
#include <vector>

#include "apizer/ast.hpp"

namespace apizer::ast {

enum class TokKind {
    Ident,
    Keyword,
    IntLit,
    LongLit,
    FloatLit,
    DoubleLit,
    CharLit,
    StringLit,
    Punct,  // operators and delimiters
    End,
};

struct Token {
    TokKind kind = TokKind::End;
    std::string text;  // raw spelling; literals keep quotes/suffixes
    int line = 1;

    bool is(TokKind k, const char* t) const { return kind == k && text == t; }
    bool punct(const char* t) const { return is(TokKind::Punct, t); }
    bool keyword(const char* t) const { return is(TokKind::Keyword, t); }
};

// Comments and whitespace are dropped here; ParseError on bad literals or
// characters outside the supported subset.
std::vector<Token> lex(const std::string& text);

bool is_java_keyword(const std::string& word);

}  // namespace apizer::ast
