#include "apizer/ast.hpp"

#include <algorithm>

namespace apizer::ast {

bool MethodInfo::has_modifier(const std::string& m) const {
    return std::find(modifiers.begin(), modifiers.end(), m) != modifiers.end();
}

StmtKind Stmt::kind() const {
    switch (node) {
        case StmtNode::LocalDecl:
            if (!modifiers.empty()) return StmtKind::Other;  // field style
            return expr ? StmtKind::DeclInit : StmtKind::DeclOnly;
        case StmtNode::ExprStatement:
            if (expr->kind == ExprKind::Assign && expr->base->kind == ExprKind::Name) {
                return StmtKind::Assignment;
            }
            if (expr->kind == ExprKind::Unary &&
                (expr->text == "++" || expr->text == "--") &&
                expr->base->kind == ExprKind::Name) {
                return StmtKind::Assignment;
            }
            return StmtKind::ExprStmt;
        case StmtNode::While:
        case StmtNode::DoWhile:
        case StmtNode::For:
        case StmtNode::ForEach:
            return StmtKind::Loop;
        case StmtNode::If:
        case StmtNode::Switch:
            return StmtKind::Conditional;
        case StmtNode::Try:
            return StmtKind::Try;
        case StmtNode::Return:
            return StmtKind::Return;
        default:
            return StmtKind::Other;
    }
}

// ---------------------------------------------------------------------------
// Walks

namespace {

void walk_expr_tree(const Expr& e, const std::function<void(const Expr&)>& fn) {
    fn(e);
    if (e.base) walk_expr_tree(*e.base, fn);
    if (e.second) walk_expr_tree(*e.second, fn);
    for (const auto& a : e.args) walk_expr_tree(*a, fn);
}

}  // namespace

void walk_exprs(const Stmt& s, const std::function<void(const Expr&)>& fn) {
    if (s.expr) walk_expr_tree(*s.expr, fn);
    for (const auto& u : s.updates) walk_expr_tree(*u, fn);
    for (const auto& c : s.cases) {
        for (const auto& l : c.labels) walk_expr_tree(*l, fn);
    }
}

void walk_exprs(const std::vector<StmtPtr>& stmts,
                const std::function<void(const Expr&)>& fn) {
    walk_statements(stmts, [&](const Stmt& s) { walk_exprs(s, fn); });
}

void walk_statements(const std::vector<StmtPtr>& stmts,
                     const std::function<void(const Stmt&)>& fn) {
    for (const auto& sp : stmts) {
        const Stmt& s = *sp;
        fn(s);
        walk_statements(s.body, fn);
        walk_statements(s.else_body, fn);
        walk_statements(s.init_stmts, fn);
        for (const auto& c : s.catches) walk_statements(c.body, fn);
        for (const auto& c : s.cases) walk_statements(c.body, fn);
        // Nested method/class declarations are not descended into; their
        // bodies do not belong to the enclosing statement sequence.
    }
}

namespace {

void collect_value_names(const Expr& e, std::set<std::string>& out) {
    switch (e.kind) {
        case ExprKind::Name:
            if (e.text != "this" && e.text != "super") out.insert(e.text);
            return;
        case ExprKind::FieldAccess:
            collect_value_names(*e.base, out);
            return;
        case ExprKind::MethodCall:
            if (e.base) collect_value_names(*e.base, out);
            for (const auto& a : e.args) collect_value_names(*a, out);
            return;
        case ExprKind::New:
        case ExprKind::NewArray:
        case ExprKind::ArrayInit:
            for (const auto& a : e.args) collect_value_names(*a, out);
            if (e.second) collect_value_names(*e.second, out);
            return;
        default:
            if (e.base) collect_value_names(*e.base, out);
            if (e.second) collect_value_names(*e.second, out);
            for (const auto& a : e.args) collect_value_names(*a, out);
            return;
    }
}

}  // namespace

std::set<std::string> value_names(const Expr& e) {
    std::set<std::string> out;
    collect_value_names(e, out);
    return out;
}

std::set<std::string> value_names(const std::vector<StmtPtr>& stmts) {
    std::set<std::string> out;
    walk_exprs(stmts, [&](const Expr& e) {
        if (e.kind == ExprKind::Name && e.text != "this" && e.text != "super") {
            out.insert(e.text);
        }
    });
    return out;
}

bool references_identifier(const std::vector<StmtPtr>& stmts, const std::string& id) {
    bool found = false;
    walk_exprs(stmts, [&](const Expr& e) {
        if (e.kind == ExprKind::Name && e.text == id) found = true;
    });
    return found;
}

// ---------------------------------------------------------------------------
// Canonical trees

int TreeNode::size() const {
    int n = 1;
    for (const auto& c : children) n += c.size();
    return n;
}

namespace {

const char* expr_kind_name(ExprKind k) {
    switch (k) {
        case ExprKind::IntLit: return "int-lit";
        case ExprKind::LongLit: return "long-lit";
        case ExprKind::FloatLit: return "float-lit";
        case ExprKind::DoubleLit: return "double-lit";
        case ExprKind::CharLit: return "char-lit";
        case ExprKind::StringLit: return "string-lit";
        case ExprKind::BoolLit: return "bool-lit";
        case ExprKind::NullLit: return "null-lit";
        case ExprKind::Name: return "name";
        case ExprKind::FieldAccess: return "field";
        case ExprKind::MethodCall: return "call";
        case ExprKind::New: return "new";
        case ExprKind::NewArray: return "new-array";
        case ExprKind::ArrayInit: return "array-init";
        case ExprKind::ArrayAccess: return "index";
        case ExprKind::Unary: return "unary";
        case ExprKind::Binary: return "binary";
        case ExprKind::Assign: return "assign";
        case ExprKind::Ternary: return "ternary";
        case ExprKind::Cast: return "cast";
        case ExprKind::InstanceOf: return "instanceof";
    }
    return "?";
}

const char* stmt_node_name(StmtNode n) {
    switch (n) {
        case StmtNode::LocalDecl: return "decl";
        case StmtNode::ExprStatement: return "expr-stmt";
        case StmtNode::If: return "if";
        case StmtNode::While: return "while";
        case StmtNode::DoWhile: return "do-while";
        case StmtNode::For: return "for";
        case StmtNode::ForEach: return "for-each";
        case StmtNode::Try: return "try";
        case StmtNode::Return: return "return";
        case StmtNode::Break: return "break";
        case StmtNode::Continue: return "continue";
        case StmtNode::Throw: return "throw";
        case StmtNode::Block: return "block";
        case StmtNode::Empty: return "empty";
        case StmtNode::Switch: return "switch";
        case StmtNode::MethodDecl: return "method-decl";
        case StmtNode::ClassDecl: return "class-decl";
        case StmtNode::Import: return "import";
    }
    return "?";
}

TreeNode list_node(const char* label, const std::vector<StmtPtr>& stmts) {
    TreeNode n{label, {}};
    for (const auto& s : stmts) n.children.push_back(to_tree(*s));
    return n;
}

}  // namespace

TreeNode to_tree(const Expr& e) {
    TreeNode n;
    n.label = expr_kind_name(e.kind);
    if (!e.text.empty()) n.label += ":" + e.text;
    if (e.type.defined()) n.label += ":" + e.type.to_string();
    if (e.kind == ExprKind::Unary) n.label += e.prefix ? ":pre" : ":post";
    if (e.base) n.children.push_back(to_tree(*e.base));
    if (e.second) n.children.push_back(to_tree(*e.second));
    for (const auto& a : e.args) n.children.push_back(to_tree(*a));
    return n;
}

TreeNode to_tree(const Stmt& s) {
    TreeNode n;
    n.label = stmt_node_name(s.node);
    for (const auto& m : s.modifiers) n.label += ":" + m;
    if (s.type.defined()) n.label += ":" + s.type.to_string();
    if (!s.name.empty() && s.name != "<multi-decl>") n.label += ":" + s.name;
    if (s.expr) n.children.push_back(to_tree(*s.expr));
    if (!s.init_stmts.empty()) n.children.push_back(list_node("init", s.init_stmts));
    if (!s.updates.empty()) {
        TreeNode u{"updates", {}};
        for (const auto& e : s.updates) u.children.push_back(to_tree(*e));
        n.children.push_back(std::move(u));
    }
    n.children.push_back(list_node("body", s.body));
    if (!s.else_body.empty()) n.children.push_back(list_node("else", s.else_body));
    for (const auto& c : s.catches) {
        TreeNode cn{"catch:" + c.type.to_string() + ":" + c.name, {}};
        cn.children.push_back(list_node("body", c.body));
        n.children.push_back(std::move(cn));
    }
    for (const auto& c : s.cases) {
        TreeNode cn{c.is_default ? "default" : "case", {}};
        for (const auto& l : c.labels) cn.children.push_back(to_tree(*l));
        cn.children.push_back(list_node("body", c.body));
        n.children.push_back(std::move(cn));
    }
    if (s.method) n.children.push_back(to_tree(*s.method, false));
    if (s.cls) {
        TreeNode cn{"class:" + s.cls->name, {}};
        cn.children.push_back(list_node("fields", s.cls->fields));
        for (const auto& m : s.cls->methods) {
            cn.children.push_back(to_tree(*m, false));
        }
        n.children.push_back(std::move(cn));
    }
    return n;
}

TreeNode to_tree(const MethodInfo& m, bool erase_name) {
    TreeNode n{"method", {}};
    TreeNode mods{"modifiers", {}};
    for (const auto& mod : m.modifiers) mods.children.push_back({"mod:" + mod, {}});
    n.children.push_back(std::move(mods));
    n.children.push_back({"returns:" + m.return_type.to_string(), {}});
    n.children.push_back({erase_name ? "name:<erased>" : "name:" + m.name, {}});
    TreeNode params{"params", {}};
    for (const auto& p : m.params) {
        params.children.push_back({"param:" + p.type.to_string() + ":" + p.name, {}});
    }
    n.children.push_back(std::move(params));
    TreeNode throws{"throws", {}};
    for (const auto& t : m.throws) throws.children.push_back({"throw:" + t.to_string(), {}});
    n.children.push_back(std::move(throws));
    n.children.push_back(list_node("body", m.body));
    return n;
}

namespace {

bool tree_equal(const TreeNode& a, const TreeNode& b) {
    if (a.label != b.label || a.children.size() != b.children.size()) return false;
    for (size_t i = 0; i < a.children.size(); ++i) {
        if (!tree_equal(a.children[i], b.children[i])) return false;
    }
    return true;
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
    return tree_equal(to_tree(a), to_tree(b));
}

bool structurally_equal(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!tree_equal(to_tree(*a[i]), to_tree(*b[i]))) return false;
    }
    return true;
}

bool structurally_equal(const MethodInfo& a, const MethodInfo& b, bool ignore_name) {
    return tree_equal(to_tree(a, ignore_name), to_tree(b, ignore_name));
}

// ---------------------------------------------------------------------------
// Well-formedness and unit classification

bool body_has_value_return(const std::vector<StmtPtr>& body) {
    bool found = false;
    walk_statements(body, [&](const Stmt& s) {
        if (s.node == StmtNode::Return && s.expr) found = true;
    });
    return found;
}

bool is_well_formed(const MethodInfo& m, std::string* why) {
    auto explain = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::set<std::string> seen;
    for (const auto& p : m.params) {
        if (!seen.insert(p.name).second) {
            return explain("duplicate parameter '" + p.name + "'");
        }
    }
    for (const auto& p : m.params) {
        if (!references_identifier(m.body, p.name)) {
            return explain("parameter '" + p.name + "' is never referenced");
        }
    }
    bool non_void = m.return_type.defined() &&
                    !(m.return_type.name == "void" && m.return_type.array_dims == 0);
    bool has_return = body_has_value_return(m.body);
    if (non_void && !has_return) {
        return explain("non-void method has no return statement");
    }
    if (!non_void && has_return) {
        return explain("void method returns a value");
    }
    return true;
}

Classification classify_unit(const SnippetAst& unit) {
    std::vector<ClassPtr> classes;
    std::vector<MethodPtr> methods;
    size_t fields = 0;
    size_t loose = 0;

    for (const auto& st : unit.statements) {
        switch (st->node) {
            case StmtNode::Import:
                break;
            case StmtNode::ClassDecl:
                classes.push_back(st->cls);
                break;
            case StmtNode::MethodDecl:
                methods.push_back(st->method);
                break;
            case StmtNode::LocalDecl:
                if (!st->modifiers.empty()) {
                    ++fields;
                } else {
                    ++loose;
                }
                break;
            default:
                ++loose;
                break;
        }
    }

    if (classes.size() > 1) return {UnitKind::Ambiguous, nullptr};
    if (classes.size() == 1) {
        for (const auto& m : classes[0]->methods) methods.push_back(m);
        fields += classes[0]->fields.size();
    }

    size_t publics = 0;
    for (const auto& m : methods) {
        if (m->is_public()) ++publics;
    }
    if (publics > 1) return {UnitKind::Ambiguous, nullptr};

    if (methods.size() == 1) {
        const MethodPtr& m = methods[0];
        if (m->is_abstract()) return {UnitKind::Impossible, nullptr};
        if (loose == 0 && fields == 0 && is_well_formed(*m)) {
            return {UnitKind::WellFormedApi, m};
        }
        return {UnitKind::Dangling, nullptr};
    }
    if (methods.empty()) {
        if (loose == 0 && (classes.size() == 1 || fields > 0)) {
            return {UnitKind::Impossible, nullptr};
        }
        return {UnitKind::Dangling, nullptr};
    }
    // Several methods, at most one public: no single well-formed unit.
    if (std::any_of(methods.begin(), methods.end(),
                    [](const MethodPtr& m) { return m->is_abstract(); })) {
        return {UnitKind::Impossible, nullptr};
    }
    return {UnitKind::Dangling, nullptr};
}

}  // namespace apizer::ast
