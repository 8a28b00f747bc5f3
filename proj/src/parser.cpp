#include <optional>
#include <utility>

#include "apizer/ast.hpp"
#include "lexer.hpp"

namespace apizer::ast {

namespace {

bool is_modifier(const Token& t) {
    if (t.kind != TokKind::Keyword) return false;
    return t.text == "public" || t.text == "private" || t.text == "protected" ||
           t.text == "static" || t.text == "final" || t.text == "abstract" ||
           t.text == "synchronized" || t.text == "native" || t.text == "transient" ||
           t.text == "volatile" || t.text == "strictfp";
}

bool is_primitive_keyword(const Token& t) {
    return t.kind == TokKind::Keyword && is_primitive_name(t.text);
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    SnippetAst parse_unit() {
        SnippetAst unit;
        while (!at_end()) {
            append_stmt(unit.statements, parse_top_level());
        }
        return unit;
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
    // Journal of tokens mutated by angle-bracket splitting, for rollback.
    std::vector<std::pair<size_t, Token>> journal_;

    struct Snapshot {
        size_t pos;
        size_t journal;
    };

    Snapshot snapshot() const { return {pos_, journal_.size()}; }

    void rollback(Snapshot s) {
        while (journal_.size() > s.journal) {
            toks_[journal_.back().first] = journal_.back().second;
            journal_.pop_back();
        }
        pos_ = s.pos;
    }

    const Token& cur() const { return toks_[pos_]; }
    const Token& peek(size_t k = 1) const {
        size_t i = pos_ + k;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at_end() const { return cur().kind == TokKind::End; }
    int line() const { return cur().line; }
    int prev_line() const { return pos_ > 0 ? toks_[pos_ - 1].line : 1; }

    Token take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(cur().line, msg);
    }

    void expect_punct(const char* p) {
        if (!cur().punct(p)) fail(std::string("expected '") + p + "'");
        ++pos_;
    }

    bool accept_punct(const char* p) {
        if (cur().punct(p)) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string expect_ident() {
        if (cur().kind != TokKind::Ident) fail("expected identifier");
        return take().text;
    }

    // Consumes one '>' even when the lexer glued it into '>>' or '>>>'.
    void expect_close_angle() {
        if (accept_punct(">")) return;
        if (cur().punct(">>") || cur().punct(">>>")) {
            journal_.emplace_back(pos_, cur());
            Token& t = toks_[pos_];
            t.text = t.text.substr(1);
            return;
        }
        fail("expected '>'");
    }

    // ------------------------------------------------------------------
    // Types

    std::optional<TypeRef> try_type() {
        Snapshot s = snapshot();
        try {
            return parse_type();
        } catch (const ParseError&) {
            rollback(s);
            return std::nullopt;
        }
    }

    TypeRef parse_type() {
        TypeRef t;
        if (is_primitive_keyword(cur())) {
            t.name = take().text;
        } else if (cur().kind == TokKind::Ident) {
            t.name = take().text;
            while (cur().punct(".") && peek().kind == TokKind::Ident) {
                ++pos_;
                t.name += "." + take().text;
            }
        } else {
            fail("expected type");
        }
        if (cur().punct("<") && !t.is_primitive()) {
            ++pos_;
            while (true) {
                t.type_args.push_back(parse_type_arg());
                if (accept_punct(",")) continue;
                break;
            }
            expect_close_angle();
        }
        while (cur().punct("[") && peek().punct("]")) {
            pos_ += 2;
            ++t.array_dims;
        }
        return t;
    }

    TypeRef parse_type_arg() {
        if (cur().punct("?")) {
            ++pos_;
            TypeRef t("?");
            if (cur().keyword("extends") || cur().keyword("super")) {
                std::string bound_kind = take().text;
                TypeRef bound = parse_type();
                t.name = "? " + bound_kind + " " + bound.to_string();
            }
            return t;
        }
        return parse_type();
    }

    // ------------------------------------------------------------------
    // Top level

    StmtPtr parse_top_level() {
        if (cur().keyword("import")) return parse_import();
        if (cur().keyword("package")) fail("package declarations are not supported");
        if (cur().keyword("interface") || cur().keyword("enum")) {
            fail("interface/enum declarations are not supported");
        }

        // Look ahead past modifiers for class / method / field declarations.
        Snapshot s = snapshot();
        std::vector<std::string> mods;
        while (is_modifier(cur())) mods.push_back(take().text);
        if (cur().keyword("class")) {
            return parse_class(mods);
        }
        if (cur().keyword("interface") || cur().keyword("enum")) {
            fail("interface/enum declarations are not supported");
        }
        if (!mods.empty()) {
            // Member-style declaration at top level: method or field.
            return parse_member_decl(mods);
        }
        rollback(s);
        if (looks_like_method_header()) {
            return parse_member_decl({});
        }
        return parse_statement();
    }

    bool looks_like_method_header() {
        Snapshot s = snapshot();
        bool ok = false;
        if (cur().keyword("void") || is_primitive_keyword(cur()) ||
            cur().kind == TokKind::Ident) {
            auto t = try_type();
            if (t && cur().kind == TokKind::Ident && peek().punct("(")) ok = true;
        }
        rollback(s);
        return ok;
    }

    StmtPtr parse_import() {
        auto st = std::make_shared<Stmt>();
        st->node = StmtNode::Import;
        st->line = line();
        ++pos_;  // import
        if (cur().keyword("static")) fail("static imports are not supported");
        std::string q = expect_ident();
        while (accept_punct(".")) {
            if (cur().punct("*")) {
                ++pos_;
                q += ".*";
                break;
            }
            q += "." + expect_ident();
        }
        expect_punct(";");
        st->name = q;
        st->end_line = prev_line();
        return st;
    }

    StmtPtr parse_class(std::vector<std::string> mods) {
        auto info = std::make_shared<ClassInfo>();
        info->modifiers = std::move(mods);
        auto st = std::make_shared<Stmt>();
        st->node = StmtNode::ClassDecl;
        st->line = line();
        ++pos_;  // class
        info->name = expect_ident();
        while (cur().keyword("extends") || cur().keyword("implements")) {
            if (!info->heritage.empty()) info->heritage += " ";
            info->heritage += take().text;
            while (true) {
                TypeRef t = parse_type();
                info->heritage += " " + t.to_string();
                if (cur().punct(",")) {
                    ++pos_;
                    info->heritage += ",";
                    continue;
                }
                break;
            }
        }
        expect_punct("{");
        while (!cur().punct("}")) {
            if (at_end()) fail("unterminated class body");
            std::vector<std::string> member_mods;
            while (is_modifier(cur())) member_mods.push_back(take().text);
            if (cur().keyword("class")) fail("nested classes are not supported");
            StmtPtr member = parse_member_decl(member_mods);
            if (member->node == StmtNode::MethodDecl) {
                info->methods.push_back(member->method);
            } else {
                info->fields.push_back(member);
            }
        }
        expect_punct("}");
        st->cls = info;
        st->end_line = prev_line();
        return st;
    }

    // Parses "Type name(...)" methods and "Type name [= init];" fields.
    StmtPtr parse_member_decl(std::vector<std::string> mods) {
        int start = line();
        TypeRef type = parse_type();
        std::string name = expect_ident();
        if (cur().punct("(")) {
            auto m = std::make_shared<MethodInfo>();
            m->modifiers = std::move(mods);
            m->return_type = type;
            m->name = name;
            ++pos_;
            if (!cur().punct(")")) {
                while (true) {
                    if (cur().keyword("final")) ++pos_;
                    Param p;
                    p.type = parse_type();
                    p.name = expect_ident();
                    m->params.push_back(std::move(p));
                    if (accept_punct(",")) continue;
                    break;
                }
            }
            expect_punct(")");
            if (cur().keyword("throws")) {
                ++pos_;
                while (true) {
                    m->throws.push_back(parse_type());
                    if (accept_punct(",")) continue;
                    break;
                }
            }
            if (accept_punct(";")) {
                m->has_body = false;
            } else {
                m->body = parse_block();
            }
            auto st = std::make_shared<Stmt>();
            st->node = StmtNode::MethodDecl;
            st->line = start;
            st->end_line = prev_line();
            st->method = m;
            return st;
        }
        // Field-style declaration.
        auto st = std::make_shared<Stmt>();
        st->node = StmtNode::LocalDecl;
        st->line = start;
        st->type = type;
        st->name = name;
        st->modifiers = std::move(mods);
        if (accept_punct("=")) {
            st->expr = parse_initializer();
        }
        if (cur().punct(",")) fail("multiple field declarators are not supported");
        expect_punct(";");
        st->end_line = prev_line();
        return st;
    }

    // ------------------------------------------------------------------
    // Statements

    // Splices synthetic multi-declarator blocks so that "int a = 1, b = 2;"
    // contributes two consecutive declarations to the enclosing list.
    static void append_stmt(std::vector<StmtPtr>& list, StmtPtr st) {
        if (st->node == StmtNode::Block && st->name == "<multi-decl>") {
            for (const auto& inner : st->body) list.push_back(inner);
            return;
        }
        list.push_back(std::move(st));
    }

    std::vector<StmtPtr> parse_block() {
        expect_punct("{");
        std::vector<StmtPtr> out;
        while (!cur().punct("}")) {
            if (at_end()) fail("unterminated block");
            append_stmt(out, parse_statement());
        }
        expect_punct("}");
        return out;
    }

    // A control-structure body: either a braced block or a single statement.
    std::vector<StmtPtr> parse_body() {
        if (cur().punct("{")) return parse_block();
        std::vector<StmtPtr> out;
        append_stmt(out, parse_statement());
        return out;
    }

    StmtPtr parse_statement() {
        int start = line();
        auto st = std::make_shared<Stmt>();
        st->line = start;

        if (accept_punct(";")) {
            st->node = StmtNode::Empty;
            st->end_line = prev_line();
            return st;
        }
        if (cur().punct("{")) {
            st->node = StmtNode::Block;
            st->body = parse_block();
            st->end_line = prev_line();
            return st;
        }
        if (cur().punct("@")) fail("annotations are not supported");

        if (cur().kind == TokKind::Keyword) {
            const std::string& kw = cur().text;
            if (kw == "if") return parse_if();
            if (kw == "while") {
                ++pos_;
                st->node = StmtNode::While;
                expect_punct("(");
                st->expr = parse_expression();
                expect_punct(")");
                st->body = parse_body();
                st->end_line = prev_line();
                return st;
            }
            if (kw == "do") {
                ++pos_;
                st->node = StmtNode::DoWhile;
                st->body = parse_body();
                if (!cur().keyword("while")) fail("expected 'while' after do body");
                ++pos_;
                expect_punct("(");
                st->expr = parse_expression();
                expect_punct(")");
                expect_punct(";");
                st->end_line = prev_line();
                return st;
            }
            if (kw == "for") return parse_for();
            if (kw == "try") return parse_try();
            if (kw == "switch") return parse_switch();
            if (kw == "return") {
                ++pos_;
                st->node = StmtNode::Return;
                if (!cur().punct(";")) st->expr = parse_expression();
                expect_punct(";");
                st->end_line = prev_line();
                return st;
            }
            if (kw == "break" || kw == "continue") {
                st->node = kw == "break" ? StmtNode::Break : StmtNode::Continue;
                ++pos_;
                if (cur().kind == TokKind::Ident) fail("labeled jumps are not supported");
                expect_punct(";");
                st->end_line = prev_line();
                return st;
            }
            if (kw == "throw") {
                ++pos_;
                st->node = StmtNode::Throw;
                st->expr = parse_expression();
                expect_punct(";");
                st->end_line = prev_line();
                return st;
            }
            if (kw == "import") return parse_import();
            if (kw == "class") fail("class declarations are not supported here");
            if (kw == "interface" || kw == "enum") {
                fail("interface/enum declarations are not supported");
            }
            if (kw == "assert") fail("assert statements are not supported");
            if (kw == "synchronized") fail("synchronized blocks are not supported");
        }

        // Local declaration, nested method declaration, or expression statement.
        Snapshot s = snapshot();
        if (is_primitive_keyword(cur()) || cur().keyword("void") ||
            cur().kind == TokKind::Ident) {
            auto type = try_type();
            if (type && cur().kind == TokKind::Ident) {
                if (peek().punct("(")) {
                    rollback(s);
                    return parse_member_decl({});
                }
                std::string name = take().text;
                if (cur().punct("=") || cur().punct(";") || cur().punct(",")) {
                    return parse_local_decl(start, *type, name);
                }
            }
            rollback(s);
        }

        st->node = StmtNode::ExprStatement;
        st->expr = parse_expression();
        expect_punct(";");
        st->end_line = prev_line();
        return st;
    }

    // Multi-declarator statements desugar into consecutive declarations,
    // returned as a marker block that enclosing statement lists splice.
    StmtPtr parse_local_decl(int start, const TypeRef& type, const std::string& first) {
        std::vector<StmtPtr> decls;
        std::string name = first;
        while (true) {
            auto st = std::make_shared<Stmt>();
            st->node = StmtNode::LocalDecl;
            st->line = start;
            st->type = type;
            st->name = name;
            if (accept_punct("=")) st->expr = parse_initializer();
            st->end_line = prev_line();
            decls.push_back(std::move(st));
            if (accept_punct(",")) {
                name = expect_ident();
                continue;
            }
            break;
        }
        expect_punct(";");
        for (auto& d : decls) {
            auto fixed = std::make_shared<Stmt>(*d);
            fixed->end_line = prev_line();
            d = fixed;
        }
        if (decls.size() == 1) return decls[0];
        auto block = std::make_shared<Stmt>();
        block->node = StmtNode::Block;
        block->name = "<multi-decl>";
        block->line = start;
        block->end_line = prev_line();
        block->body = std::move(decls);
        return block;
    }

    StmtPtr parse_if() {
        auto st = std::make_shared<Stmt>();
        st->node = StmtNode::If;
        st->line = line();
        ++pos_;
        expect_punct("(");
        st->expr = parse_expression();
        expect_punct(")");
        st->body = parse_body();
        if (cur().keyword("else")) {
            ++pos_;
            if (cur().keyword("if")) {
                st->else_body = {parse_if()};
            } else {
                st->else_body = parse_body();
            }
        }
        st->end_line = prev_line();
        return st;
    }

    StmtPtr parse_for() {
        auto st = std::make_shared<Stmt>();
        st->line = line();
        ++pos_;
        expect_punct("(");

        // for-each?
        Snapshot s = snapshot();
        if (is_primitive_keyword(cur()) || cur().kind == TokKind::Ident) {
            auto type = try_type();
            if (type && cur().kind == TokKind::Ident && peek().punct(":")) {
                st->node = StmtNode::ForEach;
                st->type = *type;
                st->name = take().text;
                ++pos_;  // ':'
                st->expr = parse_expression();
                expect_punct(")");
                st->body = parse_body();
                st->end_line = prev_line();
                return st;
            }
            rollback(s);
        }

        st->node = StmtNode::For;
        if (!cur().punct(";")) {
            Snapshot init_snap = snapshot();
            bool done = false;
            if (is_primitive_keyword(cur()) || cur().kind == TokKind::Ident) {
                auto type = try_type();
                if (type && cur().kind == TokKind::Ident) {
                    std::string name = take().text;
                    if (cur().punct("=") || cur().punct(",") || cur().punct(";")) {
                        StmtPtr decl = parse_local_decl(st->line, *type, name);
                        if (decl->node == StmtNode::Block) {
                            st->init_stmts = decl->body;
                        } else {
                            st->init_stmts = {decl};
                        }
                        done = true;
                    }
                }
                if (!done) rollback(init_snap);
            }
            if (!done) {
                while (true) {
                    auto es = std::make_shared<Stmt>();
                    es->node = StmtNode::ExprStatement;
                    es->line = line();
                    es->expr = parse_expression();
                    es->end_line = prev_line();
                    st->init_stmts.push_back(std::move(es));
                    if (accept_punct(",")) continue;
                    break;
                }
                expect_punct(";");
            }
        } else {
            ++pos_;
        }
        if (!cur().punct(";")) st->expr = parse_expression();
        expect_punct(";");
        if (!cur().punct(")")) {
            while (true) {
                st->updates.push_back(parse_expression());
                if (accept_punct(",")) continue;
                break;
            }
        }
        expect_punct(")");
        st->body = parse_body();
        st->end_line = prev_line();
        return st;
    }

    StmtPtr parse_try() {
        auto st = std::make_shared<Stmt>();
        st->node = StmtNode::Try;
        st->line = line();
        ++pos_;
        if (cur().punct("(")) fail("try-with-resources is not supported");
        st->body = parse_block();
        while (cur().keyword("catch")) {
            ++pos_;
            expect_punct("(");
            if (cur().keyword("final")) ++pos_;
            CatchClause cc;
            cc.type = parse_type();
            if (cur().punct("|")) fail("multi-catch is not supported");
            cc.name = expect_ident();
            expect_punct(")");
            cc.body = parse_block();
            st->catches.push_back(std::move(cc));
        }
        if (cur().keyword("finally")) {
            ++pos_;
            st->has_finally = true;
            st->else_body = parse_block();
        }
        if (st->catches.empty() && !st->has_finally) {
            fail("try without catch or finally");
        }
        st->end_line = prev_line();
        return st;
    }

    StmtPtr parse_switch() {
        auto st = std::make_shared<Stmt>();
        st->node = StmtNode::Switch;
        st->line = line();
        ++pos_;
        expect_punct("(");
        st->expr = parse_expression();
        expect_punct(")");
        expect_punct("{");
        while (!cur().punct("}")) {
            if (at_end()) fail("unterminated switch");
            SwitchCase sc;
            bool saw_label = false;
            while (cur().keyword("case") || cur().keyword("default")) {
                saw_label = true;
                if (cur().keyword("default")) {
                    ++pos_;
                    sc.is_default = true;
                } else {
                    ++pos_;
                    sc.labels.push_back(parse_expression());
                }
                expect_punct(":");
            }
            if (!saw_label) fail("expected case or default label");
            while (!cur().punct("}") && !cur().keyword("case") &&
                   !cur().keyword("default")) {
                append_stmt(sc.body, parse_statement());
            }
            st->cases.push_back(std::move(sc));
        }
        expect_punct("}");
        st->end_line = prev_line();
        return st;
    }

    // ------------------------------------------------------------------
    // Expressions

    ExprPtr parse_initializer() {
        if (cur().punct("{")) return parse_array_init();
        return parse_expression();
    }

    ExprPtr parse_array_init() {
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::ArrayInit;
        expect_punct("{");
        if (!cur().punct("}")) {
            while (true) {
                e->args.push_back(parse_initializer());
                if (accept_punct(",")) {
                    if (cur().punct("}")) break;  // trailing comma
                    continue;
                }
                break;
            }
        }
        expect_punct("}");
        return e;
    }

    ExprPtr parse_expression() { return parse_assignment(); }

    static bool is_assign_op(const Token& t) {
        if (t.kind != TokKind::Punct) return false;
        return t.text == "=" || t.text == "+=" || t.text == "-=" ||
               t.text == "*=" || t.text == "/=" || t.text == "%=" ||
               t.text == "&=" || t.text == "|=" || t.text == "^=" ||
               t.text == "<<=" || t.text == ">>=" || t.text == ">>>=";
    }

    ExprPtr parse_assignment() {
        ExprPtr lhs = parse_ternary();
        if (is_assign_op(cur())) {
            if (lhs->kind != ExprKind::Name && lhs->kind != ExprKind::FieldAccess &&
                lhs->kind != ExprKind::ArrayAccess) {
                fail("invalid assignment target");
            }
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Assign;
            e->text = take().text;
            e->base = lhs;
            e->second = parse_assignment();
            return e;
        }
        return lhs;
    }

    ExprPtr parse_ternary() {
        ExprPtr cond = parse_binary(0);
        if (cur().punct("?")) {
            ++pos_;
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Ternary;
            e->base = cond;
            e->args.push_back(parse_expression());
            expect_punct(":");
            e->args.push_back(parse_ternary());
            return e;
        }
        return cond;
    }

    // Binary precedence, loosest first.
    static int binary_level(const Token& t) {
        if (t.keyword("instanceof")) return 6;
        if (t.kind != TokKind::Punct) return -1;
        const std::string& s = t.text;
        if (s == "||") return 0;
        if (s == "&&") return 1;
        if (s == "|") return 2;
        if (s == "^") return 3;
        if (s == "&") return 4;
        if (s == "==" || s == "!=") return 5;
        if (s == "<" || s == ">" || s == "<=" || s == ">=") return 6;
        if (s == "<<" || s == ">>" || s == ">>>") return 7;
        if (s == "+" || s == "-") return 8;
        if (s == "*" || s == "/" || s == "%") return 9;
        return -1;
    }

    ExprPtr parse_binary(int min_level) {
        ExprPtr lhs = parse_unary();
        while (true) {
            int level = binary_level(cur());
            if (level < min_level) break;
            if (cur().keyword("instanceof")) {
                ++pos_;
                auto e = std::make_shared<Expr>();
                e->kind = ExprKind::InstanceOf;
                e->base = lhs;
                e->type = parse_type();
                lhs = e;
                continue;
            }
            std::string op = take().text;
            ExprPtr rhs = parse_binary(level + 1);
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Binary;
            e->text = op;
            e->base = lhs;
            e->second = rhs;
            lhs = e;
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (cur().punct("++") || cur().punct("--") || cur().punct("+") ||
            cur().punct("-") || cur().punct("!") || cur().punct("~")) {
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Unary;
            e->text = take().text;
            e->prefix = true;
            e->base = parse_unary();
            if ((e->text == "++" || e->text == "--") &&
                e->base->kind != ExprKind::Name &&
                e->base->kind != ExprKind::FieldAccess &&
                e->base->kind != ExprKind::ArrayAccess) {
                fail("invalid increment target");
            }
            return e;
        }
        if (cur().punct("(")) {
            // Cast vs parenthesized expression.
            Snapshot s = snapshot();
            ++pos_;
            auto type = try_type();
            if (type && cur().punct(")")) {
                ++pos_;
                bool primitive = type->is_primitive() ||
                                 (type->array_dims > 0 && is_primitive_name(type->name));
                const Token& next = cur();
                bool operand_start =
                    next.kind == TokKind::Ident || next.kind == TokKind::IntLit ||
                    next.kind == TokKind::LongLit || next.kind == TokKind::FloatLit ||
                    next.kind == TokKind::DoubleLit || next.kind == TokKind::CharLit ||
                    next.kind == TokKind::StringLit || next.punct("(") ||
                    next.punct("!") || next.punct("~") || next.keyword("new") ||
                    next.keyword("this") || next.keyword("true") ||
                    next.keyword("false") || next.keyword("null");
                if (primitive) {
                    operand_start = operand_start || next.punct("+") || next.punct("-");
                }
                if (operand_start) {
                    auto e = std::make_shared<Expr>();
                    e->kind = ExprKind::Cast;
                    e->type = *type;
                    e->base = parse_unary();
                    return e;
                }
            }
            rollback(s);
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (true) {
            if (cur().punct(".")) {
                ++pos_;
                std::string member = expect_ident();
                if (cur().punct("(")) {
                    auto call = std::make_shared<Expr>();
                    call->kind = ExprKind::MethodCall;
                    call->text = member;
                    call->base = e;
                    call->args = parse_call_args();
                    e = call;
                } else {
                    auto fa = std::make_shared<Expr>();
                    fa->kind = ExprKind::FieldAccess;
                    fa->text = member;
                    fa->base = e;
                    e = fa;
                }
                continue;
            }
            if (cur().punct("[")) {
                ++pos_;
                auto idx = std::make_shared<Expr>();
                idx->kind = ExprKind::ArrayAccess;
                idx->base = e;
                idx->second = parse_expression();
                expect_punct("]");
                e = idx;
                continue;
            }
            if (cur().punct("++") || cur().punct("--")) {
                if (e->kind != ExprKind::Name && e->kind != ExprKind::FieldAccess &&
                    e->kind != ExprKind::ArrayAccess) {
                    break;
                }
                auto u = std::make_shared<Expr>();
                u->kind = ExprKind::Unary;
                u->text = take().text;
                u->prefix = false;
                u->base = e;
                e = u;
                continue;
            }
            break;
        }
        return e;
    }

    std::vector<ExprPtr> parse_call_args() {
        expect_punct("(");
        std::vector<ExprPtr> args;
        if (!cur().punct(")")) {
            while (true) {
                args.push_back(parse_expression());
                if (accept_punct(",")) continue;
                break;
            }
        }
        expect_punct(")");
        return args;
    }

    ExprPtr parse_primary() {
        const Token& t = cur();
        auto lit = [&](ExprKind k) {
            auto e = std::make_shared<Expr>();
            e->kind = k;
            e->text = take().text;
            return e;
        };
        switch (t.kind) {
            case TokKind::IntLit: return lit(ExprKind::IntLit);
            case TokKind::LongLit: return lit(ExprKind::LongLit);
            case TokKind::FloatLit: return lit(ExprKind::FloatLit);
            case TokKind::DoubleLit: return lit(ExprKind::DoubleLit);
            case TokKind::CharLit: return lit(ExprKind::CharLit);
            case TokKind::StringLit: return lit(ExprKind::StringLit);
            default: break;
        }
        if (t.keyword("true") || t.keyword("false")) return lit(ExprKind::BoolLit);
        if (t.keyword("null")) return lit(ExprKind::NullLit);
        if (t.keyword("this") || t.keyword("super")) {
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Name;
            e->text = take().text;
            return e;
        }
        if (t.punct("(")) {
            ++pos_;
            ExprPtr inner = parse_expression();
            expect_punct(")");
            return inner;  // grouping does not create a node
        }
        if (t.keyword("new")) return parse_new();
        if (t.kind == TokKind::Ident) {
            std::string name = take().text;
            if (cur().punct("(")) {
                auto call = std::make_shared<Expr>();
                call->kind = ExprKind::MethodCall;
                call->text = name;
                call->args = parse_call_args();
                return call;
            }
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::Name;
            e->text = name;
            return e;
        }
        if (t.punct("->")) fail("lambda expressions are not supported");
        fail("unexpected token '" + t.text + "'");
    }

    ExprPtr parse_new() {
        ++pos_;  // new
        TypeRef type = parse_type();
        if (type.array_dims > 0) {
            // parse_type consumed "[]" pairs: "new int[] {...}" form.
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::NewArray;
            e->type = type;
            if (cur().punct("{")) {
                e->second = parse_array_init();
            }
            return e;
        }
        if (cur().punct("[")) {
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::NewArray;
            e->type = type;
            while (cur().punct("[")) {
                ++pos_;
                if (cur().punct("]")) {
                    ++pos_;
                    ++e->type.array_dims;
                    continue;
                }
                e->args.push_back(parse_expression());
                expect_punct("]");
                ++e->type.array_dims;
            }
            if (cur().punct("{")) e->second = parse_array_init();
            return e;
        }
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::New;
        e->type = type;
        e->args = parse_call_args();
        if (cur().punct("{")) fail("anonymous classes are not supported");
        return e;
    }
};

}  // namespace

SnippetAst parse_snippet(const std::string& text) {
    bool blank = true;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            blank = false;
            break;
        }
    }
    if (blank) throw ParseError(1, "empty snippet");
    Parser p(lex(text));
    return p.parse_unit();
}

}  // namespace apizer::ast
