#include "lexer.hpp"

#include <cctype>
#include <unordered_set>

namespace apizer::ast {

namespace {

const std::unordered_set<std::string>& keyword_set() {
    static const std::unordered_set<std::string> kw = {
        "abstract", "assert", "boolean", "break", "byte", "case", "catch",
        "char", "class", "const", "continue", "default", "do", "double",
        "else", "enum", "extends", "final", "finally", "float", "for",
        "goto", "if", "implements", "import", "instanceof", "int",
        "interface", "long", "native", "new", "package", "private",
        "protected", "public", "return", "short", "static", "strictfp",
        "super", "switch", "synchronized", "this", "throw", "throws",
        "transient", "try", "void", "volatile", "while",
        // literal words are lexed as keywords and re-tagged by the parser
        "true", "false", "null",
    };
    return kw;
}

// Multi-character punctuators, longest first per leading char.
const char* const kPuncts[] = {
    ">>>=", ">>>", ">>=", "<<=", ">>", "<<", "<=", ">=", "==", "!=",
    "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=",
    "^=", "->", "::",
    "+", "-", "*", "/", "%", "=", "<", ">", "!", "~", "&", "|", "^",
    "?", ":", ";", ",", ".", "(", ")", "{", "}", "[", "]", "@",
};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool ident_part(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

}  // namespace

bool is_java_keyword(const std::string& word) {
    return keyword_set().count(word) > 0;
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    size_t i = 0;
    int line = 1;
    const size_t n = text.size();

    auto push = [&](TokKind k, std::string t) {
        out.push_back(Token{k, std::move(t), line});
    };

    while (i < n) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        // Comments.
        if (c == '/' && i + 1 < n && text[i + 1] == '/') {
            while (i < n && text[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && text[i + 1] == '*') {
            int start_line = line;
            i += 2;
            while (i < n && !(text[i] == '*' && i + 1 < n && text[i + 1] == '/')) {
                if (text[i] == '\n') ++line;
                ++i;
            }
            if (i >= n) throw ParseError(start_line, "unterminated comment");
            i += 2;
            continue;
        }
        if (ident_start(c)) {
            size_t start = i;
            while (i < n && ident_part(text[i])) ++i;
            std::string word = text.substr(start, i - start);
            push(is_java_keyword(word) ? TokKind::Keyword : TokKind::Ident, word);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            size_t start = i;
            bool is_float = false;
            bool hex = false;
            if (c == '0' && i + 1 < n && (text[i + 1] == 'x' || text[i + 1] == 'X')) {
                hex = true;
                i += 2;
                while (i < n && (std::isxdigit(static_cast<unsigned char>(text[i])) ||
                                 text[i] == '_')) {
                    ++i;
                }
            } else {
                while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) ||
                                 text[i] == '_')) {
                    ++i;
                }
                if (i < n && text[i] == '.') {
                    is_float = true;
                    ++i;
                    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                }
                if (i < n && (text[i] == 'e' || text[i] == 'E')) {
                    is_float = true;
                    ++i;
                    if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
                    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                }
            }
            TokKind kind = is_float ? TokKind::DoubleLit : TokKind::IntLit;
            if (i < n) {
                char suf = text[i];
                if (suf == 'l' || suf == 'L') {
                    if (is_float) throw ParseError(line, "bad numeric literal");
                    kind = TokKind::LongLit;
                    ++i;
                } else if (!hex && (suf == 'f' || suf == 'F')) {
                    kind = TokKind::FloatLit;
                    ++i;
                } else if (!hex && (suf == 'd' || suf == 'D')) {
                    kind = TokKind::DoubleLit;
                    ++i;
                }
            }
            push(kind, text.substr(start, i - start));
            continue;
        }
        if (c == '"') {
            size_t start = i;
            ++i;
            while (i < n && text[i] != '"') {
                if (text[i] == '\\' && i + 1 < n) {
                    i += 2;
                    continue;
                }
                if (text[i] == '\n') throw ParseError(line, "unterminated string literal");
                ++i;
            }
            if (i >= n) throw ParseError(line, "unterminated string literal");
            ++i;
            push(TokKind::StringLit, text.substr(start, i - start));
            continue;
        }
        if (c == '\'') {
            size_t start = i;
            ++i;
            while (i < n && text[i] != '\'') {
                if (text[i] == '\\' && i + 1 < n) {
                    i += 2;
                    continue;
                }
                if (text[i] == '\n') throw ParseError(line, "unterminated char literal");
                ++i;
            }
            if (i >= n) throw ParseError(line, "unterminated char literal");
            ++i;
            push(TokKind::CharLit, text.substr(start, i - start));
            continue;
        }
        bool matched = false;
        for (const char* p : kPuncts) {
            size_t len = std::char_traits<char>::length(p);
            if (text.compare(i, len, p) == 0) {
                push(TokKind::Punct, p);
                i += len;
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw ParseError(line, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back(Token{TokKind::End, "", line});
    return out;
}

}  // namespace apizer::ast
