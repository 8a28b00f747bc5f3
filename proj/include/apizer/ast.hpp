#pragma once

#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "apizer/types.hpp"

namespace apizer::ast {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class ConsistencyError : public std::runtime_error {
public:
    explicit ConsistencyError(const std::string& message)
        : std::runtime_error(message) {}
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind {
    IntLit,
    LongLit,
    FloatLit,
    DoubleLit,
    CharLit,
    StringLit,
    BoolLit,
    NullLit,
    Name,
    FieldAccess,   // base.text
    MethodCall,    // base.text(args); base may be null for a bare call
    New,           // new type(args)
    NewArray,      // new type[args] or new type[] init
    ArrayInit,     // {args}
    ArrayAccess,   // base[index()]
    Unary,         // text in {!,~,+,-,++,--}; prefix flag
    Binary,        // base text extra()
    Assign,        // base text extra(); text in {=, +=, ...}
    Ternary,       // base ? args[0] : args[1]
    Cast,          // (type) base
    InstanceOf,    // base instanceof type
};

struct Expr {
    ExprKind kind;
    std::string text;          // identifier, member, operator, literal spelling
    ExprPtr base;              // receiver / target / operand / condition
    ExprPtr second;            // rhs / assigned value / array index / array init
    std::vector<ExprPtr> args; // call args, array dims, initializer elements, ternary arms
    TypeRef type;              // New / NewArray / Cast / InstanceOf
    bool prefix = true;        // Unary position

    bool is_literal() const {
        switch (kind) {
            case ExprKind::IntLit: case ExprKind::LongLit: case ExprKind::FloatLit:
            case ExprKind::DoubleLit: case ExprKind::CharLit: case ExprKind::StringLit:
            case ExprKind::BoolLit: case ExprKind::NullLit:
                return true;
            default:
                return false;
        }
    }
};

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

enum class StmtNode {
    LocalDecl,
    ExprStatement,
    If,
    While,
    DoWhile,
    For,
    ForEach,
    Try,
    Return,
    Break,
    Continue,
    Throw,
    Block,
    Empty,
    Switch,
    MethodDecl,
    ClassDecl,
    Import,
};

// Coarse statement classification; total over StmtNode.
enum class StmtKind {
    DeclInit,
    DeclOnly,
    Assignment,
    ExprStmt,
    Loop,
    Conditional,
    Try,
    Return,
    Other,
};

struct Param {
    TypeRef type;
    std::string name;
    friend bool operator==(const Param& a, const Param& b) {
        return a.type == b.type && a.name == b.name;
    }
};

struct CatchClause {
    TypeRef type;
    std::string name;
    std::vector<StmtPtr> body;
};

struct SwitchCase {
    std::vector<ExprPtr> labels;  // empty + is_default for "default:"
    bool is_default = false;
    std::vector<StmtPtr> body;
};

struct MethodInfo {
    std::vector<std::string> modifiers;
    TypeRef return_type;
    std::string name;
    std::vector<Param> params;
    std::vector<TypeRef> throws;
    std::vector<StmtPtr> body;
    bool has_body = true;

    bool has_modifier(const std::string& m) const;
    bool is_abstract() const { return has_modifier("abstract") || !has_body; }
    bool is_public() const { return has_modifier("public"); }
};
using MethodPtr = std::shared_ptr<const MethodInfo>;

struct ClassInfo {
    std::vector<std::string> modifiers;
    std::string name;
    std::string heritage;  // raw "extends ... implements ..." text, if any
    std::vector<MethodPtr> methods;
    std::vector<StmtPtr> fields;
};
using ClassPtr = std::shared_ptr<const ClassInfo>;

struct Stmt {
    StmtNode node;
    int line = 0;
    int end_line = 0;

    TypeRef type;                    // LocalDecl type / ForEach var type
    std::string name;                // LocalDecl var, ForEach var, Import name
    std::vector<std::string> modifiers;  // set on field-style declarations
    ExprPtr expr;                    // init / condition / value / selector
    std::vector<StmtPtr> body;       // then-branch, loop body, try block
    std::vector<StmtPtr> else_body;  // else branch / finally block
    std::vector<StmtPtr> init_stmts; // for-init
    std::vector<ExprPtr> updates;    // for-update
    std::vector<CatchClause> catches;
    std::vector<SwitchCase> cases;
    MethodPtr method;
    ClassPtr cls;
    bool has_finally = false;

    StmtKind kind() const;
};

struct SnippetAst {
    std::vector<StmtPtr> statements;
    bool comments_stripped = true;

    // Original line range of statement i (first, last).
    std::pair<int, int> line_range(size_t i) const {
        return {statements[i]->line, statements[i]->end_line};
    }
};

/// Parses a snippet: dangling statements, optionally mixed with import,
/// method, and class declarations. Throws ParseError on unsupported syntax.
SnippetAst parse_snippet(const std::string& text);

enum class UnitKind { WellFormedApi, Dangling, Ambiguous, Impossible };

struct Classification {
    UnitKind kind;
    MethodPtr method;  // set iff kind == WellFormedApi
};

Classification classify_unit(const SnippetAst& unit);

// ---------------------------------------------------------------------------
// Rendering. Deterministic: 4-space indents, one statement per line, LF.

std::string render_expr(const Expr& e);
std::string render_statement(const Stmt& s, int indent);
std::string render_statements(const std::vector<StmtPtr>& stmts, int indent);
std::string render_method(const MethodInfo& m, int indent);

/// Emits imports, a public class wrapper, the JavaDoc block, and the method.
/// Qualified parameter/return types are shortened when covered by an import
/// or java.lang. Throws ConsistencyError when the method is not well-formed
/// (duplicate or unreferenced parameter, return presence not matching the
/// return type).
std::string render_unit(const MethodInfo& m,
                        const std::vector<std::string>& imports,
                        const std::string& class_name,
                        const std::string& javadoc);

// ---------------------------------------------------------------------------
// Walks and structural helpers.

void walk_exprs(const Stmt& s, const std::function<void(const Expr&)>& fn);
void walk_exprs(const std::vector<StmtPtr>& stmts,
                const std::function<void(const Expr&)>& fn);
void walk_statements(const std::vector<StmtPtr>& stmts,
                     const std::function<void(const Stmt&)>& fn);

/// Identifiers appearing in value position (variable reads/writes and
/// receiver roots; not member names, not type names).
std::set<std::string> value_names(const Expr& e);
std::set<std::string> value_names(const std::vector<StmtPtr>& stmts);
bool references_identifier(const std::vector<StmtPtr>& stmts, const std::string& id);

/// Canonical labelled tree used for structural comparison and diffing.
struct TreeNode {
    std::string label;
    std::vector<TreeNode> children;
    int size() const;
};

TreeNode to_tree(const Expr& e);
TreeNode to_tree(const Stmt& s);
TreeNode to_tree(const MethodInfo& m, bool erase_name);

bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b);
bool structurally_equal(const MethodInfo& a, const MethodInfo& b, bool ignore_name);

/// Well-formedness of a method declaration: parameters pairwise distinct and
/// each referenced in the body; value-carrying return statements present iff
/// the return type is non-void.
bool is_well_formed(const MethodInfo& m, std::string* why = nullptr);

bool body_has_value_return(const std::vector<StmtPtr>& body);

}  // namespace apizer::ast
