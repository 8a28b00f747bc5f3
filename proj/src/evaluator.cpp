#include "apizer/evaluator.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace apizer::eval {

using ast::Expr;
using ast::ExprKind;
using ast::MethodInfo;
using ast::Stmt;
using ast::StmtNode;
using ast::StmtPtr;

namespace {

std::string normalize_type(const TypeRef& t) {
    std::string s = t.to_string();
    if (s.rfind("java.lang.", 0) == 0) s = s.substr(10);
    return s;
}

bool is_void(const TypeRef& t) {
    return !t.defined() || (t.name == "void" && t.array_dims == 0);
}

// Pre-order position counter over statements and expressions; positions of
// free occurrences of `name` are collected.
class SiteWalker {
public:
    explicit SiteWalker(const std::string& name) : name_(name) {}

    std::vector<int> run(const std::vector<StmtPtr>& body) {
        for (const auto& s : body) stmt(*s);
        return sites_;
    }

private:
    const std::string& name_;
    int counter_ = 0;
    std::vector<int> sites_;

    void bump() { ++counter_; }

    void expr(const Expr& e) {
        bump();
        if (e.kind == ExprKind::Name && e.text == name_) sites_.push_back(counter_);
        if (e.base) expr(*e.base);
        if (e.second) expr(*e.second);
        for (const auto& a : e.args) expr(*a);
    }

    void stmt(const Stmt& s) {
        bump();
        if (s.expr) expr(*s.expr);
        for (const auto& i : s.init_stmts) stmt(*i);
        for (const auto& u : s.updates) expr(*u);
        for (const auto& b : s.body) stmt(*b);
        for (const auto& b : s.else_body) stmt(*b);
        for (const auto& c : s.catches) {
            bump();
            for (const auto& b : c.body) stmt(*b);
        }
        for (const auto& c : s.cases) {
            bump();
            for (const auto& l : c.labels) expr(*l);
            for (const auto& b : c.body) stmt(*b);
        }
    }
};

}  // namespace

ParamSet make_param_set(const MethodInfo& m) {
    ParamSet out;
    for (const auto& p : m.params) {
        ParamInfo info;
        info.type = normalize_type(p.type);
        info.name = p.name;
        info.sites = SiteWalker(p.name).run(m.body);
        out.params.push_back(std::move(info));
    }
    return out;
}

bool params_identical(const ParamInfo& a, const ParamInfo& b) {
    return a.type == b.type && a.name == b.name && a.sites == b.sites;
}

namespace {

int common_count(const ParamSet& a, const ParamSet& b) {
    int n = 0;
    for (const auto& pa : a.params) {
        for (const auto& pb : b.params) {
            if (params_identical(pa, pb)) {
                ++n;
                break;
            }
        }
    }
    return n;
}

}  // namespace

double jaccard_distance(const ParamSet& a, const ParamSet& b) {
    if (a.params.empty() && b.params.empty()) return 0.0;
    int common = common_count(a, b);
    int uni = static_cast<int>(a.params.size() + b.params.size()) - common;
    return 1.0 - static_cast<double>(common) / static_cast<double>(uni);
}

// ---------------------------------------------------------------------------
// Alpha renaming

namespace {

std::string alpha_base_name(const TypeRef& t) {
    std::string simple = t.simple_name();
    // Wildcards and such cannot appear as declared variable types.
    std::string out;
    for (char c : simple) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    for (int i = 0; i < t.array_dims; ++i) out += "array";
    return out.empty() ? "var" : out;
}

class Renamer {
public:
    void declare(const std::string& name, const TypeRef& type) {
        if (mapping_.count(name)) return;  // legal Java has no shadowing
        std::string base = alpha_base_name(type);
        mapping_[name] = base + std::to_string(counters_[base]++);
    }

    std::string rename(const std::string& name) const {
        auto it = mapping_.find(name);
        return it == mapping_.end() ? name : it->second;
    }

    // Declaration-order collection across statements (source pre-order).
    void collect(const std::vector<StmtPtr>& stmts) {
        for (const auto& sp : stmts) {
            const Stmt& s = *sp;
            if (s.node == StmtNode::LocalDecl || s.node == StmtNode::ForEach) {
                declare(s.name, s.type);
            }
            collect(s.init_stmts);
            collect(s.body);
            for (const auto& c : s.catches) {
                declare(c.name, c.type);
                collect(c.body);
            }
            collect(s.else_body);
            for (const auto& c : s.cases) collect(c.body);
            if (s.method) {
                for (const auto& p : s.method->params) declare(p.name, p.type);
                collect(s.method->body);
            }
            if (s.cls) {
                for (const auto& f : s.cls->fields) collect({f});
                for (const auto& m : s.cls->methods) {
                    for (const auto& p : m->params) declare(p.name, p.type);
                    collect(m->body);
                }
            }
        }
    }

    ast::ExprPtr apply(const ast::ExprPtr& e) const {
        auto out = std::make_shared<Expr>(*e);
        if (out->kind == ExprKind::Name) {
            out->text = rename(out->text);
        }
        if (out->base) out->base = apply(out->base);
        if (out->second) out->second = apply(out->second);
        for (auto& a : out->args) a = apply(a);
        return out;
    }

    StmtPtr apply(const StmtPtr& sp) const {
        auto out = std::make_shared<Stmt>(*sp);
        if (out->node == StmtNode::LocalDecl || out->node == StmtNode::ForEach) {
            out->name = rename(out->name);
        }
        if (out->expr) out->expr = apply(out->expr);
        for (auto& i : out->init_stmts) i = apply(i);
        for (auto& u : out->updates) u = apply(u);
        for (auto& b : out->body) b = apply(b);
        for (auto& b : out->else_body) b = apply(b);
        for (auto& c : out->catches) {
            c.name = rename(c.name);
            for (auto& b : c.body) b = apply(b);
        }
        for (auto& c : out->cases) {
            for (auto& l : c.labels) l = apply(l);
            for (auto& b : c.body) b = apply(b);
        }
        if (out->method) {
            auto m = std::make_shared<ast::MethodInfo>(apply_method(*out->method));
            out->method = m;
        }
        if (out->cls) {
            auto c = std::make_shared<ast::ClassInfo>(*out->cls);
            for (auto& f : c->fields) f = apply(f);
            for (auto& m : c->methods) {
                m = std::make_shared<ast::MethodInfo>(apply_method(*m));
            }
            out->cls = c;
        }
        return out;
    }

    MethodInfo apply_method(const MethodInfo& m) const {
        MethodInfo out = m;
        for (auto& p : out.params) p.name = rename(p.name);
        for (auto& b : out.body) b = apply(b);
        return out;
    }

private:
    std::map<std::string, std::string> mapping_;
    std::map<std::string, int> counters_;
};

}  // namespace

ast::SnippetAst alpha_rename_unit(const ast::SnippetAst& unit) {
    Renamer r;
    r.collect(unit.statements);
    ast::SnippetAst out;
    out.comments_stripped = unit.comments_stripped;
    for (const auto& s : unit.statements) out.statements.push_back(r.apply(s));
    return out;
}

MethodInfo alpha_rename_method(const MethodInfo& m) {
    Renamer r;
    for (const auto& p : m.params) r.declare(p.name, p.type);
    r.collect(m.body);
    return r.apply_method(m);
}

std::string alpha_rename(const std::string& source) {
    ast::SnippetAst unit = ast::parse_snippet(source);
    ast::SnippetAst renamed = alpha_rename_unit(unit);
    return ast::render_statements(renamed.statements, 0);
}

// ---------------------------------------------------------------------------
// Return normalization and equivalence

MethodInfo normalize_return(const MethodInfo& m) {
    MethodInfo out = m;
    while (out.body.size() >= 2) {
        const Stmt& decl = *out.body[out.body.size() - 2];
        const Stmt& ret = *out.body.back();
        bool fusable = decl.node == StmtNode::LocalDecl && decl.expr &&
                       ret.node == StmtNode::Return && ret.expr &&
                       ret.expr->kind == ExprKind::Name &&
                       ret.expr->text == decl.name;
        if (!fusable) break;
        auto fused = std::make_shared<Stmt>(*out.body.back());
        fused->expr = decl.expr;
        out.body.pop_back();
        out.body.pop_back();
        out.body.push_back(fused);
    }
    return out;
}

const char* to_string(ReturnCategory c) {
    switch (c) {
        case ReturnCategory::VoidVoid: return "void-void";
        case ReturnCategory::VoidNonvoid: return "void-nonvoid";
        case ReturnCategory::NonvoidVoid: return "nonvoid-void";
        case ReturnCategory::NonvoidNonvoid: return "nonvoid-nonvoid";
    }
    return "?";
}

namespace {

std::vector<StmtPtr> collect_returns(const std::vector<StmtPtr>& body) {
    std::vector<StmtPtr> out;
    ast::walk_statements(body, [&](const Stmt& s) {
        if (s.node == StmtNode::Return) {
            out.push_back(std::make_shared<Stmt>(s));
        }
    });
    return out;
}

}  // namespace

std::pair<ReturnCategory, bool> return_equivalence(const MethodInfo& a,
                                                   const MethodInfo& b) {
    MethodInfo na = normalize_return(a);
    MethodInfo nb = normalize_return(b);
    bool a_void = is_void(na.return_type);
    bool b_void = is_void(nb.return_type);
    if (a_void && b_void) return {ReturnCategory::VoidVoid, true};
    if (a_void) return {ReturnCategory::VoidNonvoid, false};
    if (b_void) return {ReturnCategory::NonvoidVoid, false};

    if (normalize_type(na.return_type) != normalize_type(nb.return_type)) {
        return {ReturnCategory::NonvoidNonvoid, false};
    }
    // Compare return statements under canonical variable names so that
    // consistent renamings between the two bodies do not count.
    MethodInfo ra = alpha_rename_method(na);
    MethodInfo rb = alpha_rename_method(nb);
    std::vector<StmtPtr> rets_a = collect_returns(ra.body);
    std::vector<StmtPtr> rets_b = collect_returns(rb.body);
    bool equal = ast::structurally_equal(rets_a, rets_b);
    return {ReturnCategory::NonvoidNonvoid, equal};
}

// ---------------------------------------------------------------------------
// AST difference

namespace {

int tree_diff(const ast::TreeNode& a, const ast::TreeNode& b) {
    if (a.label != b.label) return a.size() + b.size();
    int d = 0;
    size_t common = std::min(a.children.size(), b.children.size());
    for (size_t i = 0; i < common; ++i) {
        d += tree_diff(a.children[i], b.children[i]);
    }
    for (size_t i = common; i < a.children.size(); ++i) d += a.children[i].size();
    for (size_t i = common; i < b.children.size(); ++i) d += b.children[i].size();
    return d;
}

}  // namespace

int ast_diff_count(const MethodInfo& a, const MethodInfo& b) {
    return tree_diff(ast::to_tree(a, /*erase_name=*/true),
                     ast::to_tree(b, /*erase_name=*/true));
}

// ---------------------------------------------------------------------------
// TYPE-3 containment

namespace {

std::vector<std::string> normalized_lines(const std::string& rendered) {
    std::vector<std::string> out;
    std::istringstream in(rendered);
    std::string line;
    while (std::getline(in, line)) {
        size_t a = line.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t");
        out.push_back(line.substr(a, b - a + 1));
    }
    return out;
}

}  // namespace

std::pair<double, bool> type3_containment(const std::string& snippet,
                                          const std::string& method,
                                          double threshold) {
    std::vector<std::string> cs = normalized_lines(alpha_rename(snippet));
    std::vector<std::string> api = normalized_lines(alpha_rename(method));
    std::multiset<std::string> pool(api.begin(), api.end());
    size_t contained = 0;
    for (const auto& line : cs) {
        auto it = pool.find(line);
        if (it != pool.end()) {
            pool.erase(it);
            ++contained;
        }
    }
    double ratio = cs.empty() ? 0.0
                              : static_cast<double>(contained) /
                                    static_cast<double>(cs.size());
    return {ratio, ratio >= threshold};
}

// ---------------------------------------------------------------------------

EvalReport evaluate_pair(const MethodInfo& human, const MethodInfo& tool) {
    EvalReport r;
    ParamSet ph = make_param_set(human);
    ParamSet pa = make_param_set(tool);
    r.common = common_count(ph, pa);
    r.missing = static_cast<int>(ph.size()) - r.common;
    r.spurious = static_cast<int>(pa.size()) - r.common;
    r.params_equivalent = r.missing == 0 && r.spurious == 0;
    r.jaccard = jaccard_distance(ph, pa);
    auto [category, equivalent] = return_equivalence(human, tool);
    r.return_category = category;
    r.return_equivalent = equivalent;
    r.ast_diff = ast_diff_count(human, tool);
    return r;
}

MethodInfo parse_single_method(const std::string& source) {
    ast::SnippetAst unit = ast::parse_snippet(source);
    std::vector<ast::MethodPtr> methods;
    for (const auto& st : unit.statements) {
        if (st->node == StmtNode::MethodDecl) methods.push_back(st->method);
        if (st->node == StmtNode::ClassDecl) {
            for (const auto& m : st->cls->methods) methods.push_back(m);
        }
    }
    if (methods.size() != 1) {
        throw ast::ParseError(1, "expected exactly one method declaration, found " +
                                     std::to_string(methods.size()));
    }
    return *methods[0];
}

}  // namespace apizer::eval
