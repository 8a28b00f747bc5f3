#include "apizer/pipeline.hpp"

#include <algorithm>

#include "apizer/namegen.hpp"

namespace apizer::pipeline {

using ast::Expr;
using ast::ExprKind;
using ast::Stmt;
using ast::StmtKind;
using ast::StmtNode;
using ast::StmtPtr;
using catalog::TypeCatalog;
using resolver::DiagKind;
using resolver::Diagnostic;
using resolver::MethodModel;
using resolver::ResolutionState;

resolver::MethodModel ApiDraft::model() const {
    MethodModel m;
    m.params = params;
    m.body = body;
    m.return_type = return_type;
    return m;
}

ast::MethodInfo ApiDraft::to_method_info() const {
    ast::MethodInfo m;
    m.modifiers = modifiers;
    m.return_type = return_type;
    m.name = name;
    m.params = params;
    m.throws = throws;
    m.body = body;
    return m;
}

std::string ApizationResult::render() const {
    return ast::render_unit(draft.to_method_info(), draft.resolution.imports,
                            class_name, javadoc);
}

// ---------------------------------------------------------------------------
// Loop-changing variables

namespace {

// Peels array accesses and field chains down to the root variable name.
std::string target_root(const Expr& e) {
    const Expr* cursor = &e;
    while (cursor->kind == ExprKind::ArrayAccess ||
           cursor->kind == ExprKind::FieldAccess) {
        cursor = cursor->base.get();
    }
    return cursor->kind == ExprKind::Name ? cursor->text : "";
}

// Assignment targets (plain, compound, and ++/--), reduced to their root
// variable.
void note_mutation(const Expr& e, std::set<std::string>& out) {
    if (e.kind == ExprKind::Assign ||
        (e.kind == ExprKind::Unary && (e.text == "++" || e.text == "--"))) {
        std::string root = target_root(*e.base);
        if (!root.empty()) out.insert(root);
    }
}

void collect_mutations(const Expr& e, std::set<std::string>& out) {
    note_mutation(e, out);
    if (e.base) collect_mutations(*e.base, out);
    if (e.second) collect_mutations(*e.second, out);
    for (const auto& a : e.args) collect_mutations(*a, out);
}

void scan_loops(const std::vector<StmtPtr>& stmts, bool in_loop,
                std::set<std::string>& out) {
    for (const auto& sp : stmts) {
        const Stmt& s = *sp;
        bool is_loop = s.node == StmtNode::While || s.node == StmtNode::DoWhile ||
                       s.node == StmtNode::For || s.node == StmtNode::ForEach;
        if (in_loop) {
            ast::walk_exprs(s, [&](const Expr& e) { note_mutation(e, out); });
        } else if (is_loop) {
            // Loop headers run once per iteration: while/do/for conditions
            // and for updates. The for-each source is evaluated only once.
            if (s.expr && s.node != StmtNode::ForEach) collect_mutations(*s.expr, out);
            for (const auto& u : s.updates) collect_mutations(*u, out);
        }
        bool child_ctx = in_loop || is_loop;
        scan_loops(s.init_stmts, in_loop, out);
        scan_loops(s.body, child_ctx, out);
        scan_loops(s.else_body, child_ctx, out);
        for (const auto& c : s.catches) scan_loops(c.body, child_ctx, out);
        for (const auto& c : s.cases) scan_loops(c.body, child_ctx, out);
    }
}

}  // namespace

std::set<std::string> get_loop_changing_vars(const std::vector<StmtPtr>& body) {
    std::set<std::string> out;
    scan_loops(body, false, out);
    return out;
}

// ---------------------------------------------------------------------------
// Hard-coded initializers

namespace {

// Identifiers here are variable, class, or method names; null counts as
// one as well. Literal-only expressions have none.
bool contains_identifiers(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Name:
        case ExprKind::FieldAccess:
        case ExprKind::MethodCall:
        case ExprKind::New:
        case ExprKind::NullLit:
            return true;
        case ExprKind::NewArray: {
            if (!is_primitive_name(e.type.name)) return true;
            for (const auto& a : e.args) {
                if (contains_identifiers(*a)) return true;
            }
            return e.second && contains_identifiers(*e.second);
        }
        case ExprKind::Cast:
            if (!e.type.is_primitive()) return true;
            return contains_identifiers(*e.base);
        case ExprKind::InstanceOf:
            return true;
        default: {
            if (e.base && contains_identifiers(*e.base)) return true;
            if (e.second && contains_identifiers(*e.second)) return true;
            for (const auto& a : e.args) {
                if (contains_identifiers(*a)) return true;
            }
            return false;
        }
    }
}

bool all_literal_elements(const Expr& e) {
    if (e.kind == ExprKind::ArrayInit) {
        for (const auto& el : e.args) {
            if (!all_literal_elements(*el)) return false;
        }
        return true;
    }
    if (e.kind == ExprKind::NewArray) {
        for (const auto& d : e.args) {
            if (!all_literal_elements(*d)) return false;
        }
        return !e.second || all_literal_elements(*e.second);
    }
    return e.is_literal() && e.kind != ExprKind::NullLit;
}

const std::set<std::string>& insertion_call_names() {
    static const std::set<std::string> names = {"add", "put", "push", "offer",
                                                "addAll"};
    return names;
}

size_t count_insertions(const std::vector<StmtPtr>& following,
                        const std::string& variable, bool array) {
    size_t n = 0;
    ast::walk_exprs(following, [&](const Expr& e) {
        if (array) {
            if (e.kind == ExprKind::Assign && e.base->kind == ExprKind::ArrayAccess &&
                target_root(*e.base) == variable) {
                ++n;
            }
            return;
        }
        if (e.kind == ExprKind::MethodCall && e.base &&
            e.base->kind == ExprKind::Name && e.base->text == variable &&
            insertion_call_names().count(e.text) > 0) {
            ++n;
        }
    });
    return n;
}

}  // namespace

bool is_hard_coded(const TypeRef& declared_type,
                   const Expr& init,
                   const std::vector<StmtPtr>& following,
                   const std::string& variable,
                   const ScopeState& scope,
                   const ResolutionState& state,
                   const TypeCatalog& catalog) {
    (void)scope;
    TypeRef canonical = resolver::canonical_type(declared_type, state, catalog);
    if (!canonical.defined()) canonical = declared_type;

    bool is_string = canonical.array_dims == 0 &&
                     (canonical.name == "java.lang.String" || canonical.name == "String");
    if (canonical.is_primitive() || is_string) {
        return !contains_identifiers(init);
    }
    if (canonical.array_dims > 0) {
        if (init.kind == ExprKind::ArrayInit ||
            (init.kind == ExprKind::NewArray && init.second)) {
            return all_literal_elements(init);
        }
        return count_insertions(following, variable, /*array=*/true) > 1;
    }
    const catalog::TypeEntry* entry = catalog.find(canonical.name);
    if (!entry) return false;
    bool container = false;
    try {
        container = catalog.is_subtype_of(canonical.name, "java.util.Collection") ||
                    catalog.is_subtype_of(canonical.name, "java.util.Map");
    } catch (const catalog::UnknownTypeError&) {
        container = false;
    }
    if (!container) return false;
    return count_insertions(following, variable, /*array=*/false) > 1;
}

// ---------------------------------------------------------------------------
// P1: undeclared variables become parameters

void extract_parameters_p1(ApiDraft& draft, ScopeState& scope,
                           const std::vector<Diagnostic>& missing_vars,
                           const TypeCatalog& catalog,
                           const Deadline& deadline) {
    std::vector<std::string> order;
    for (const auto& d : missing_vars) {
        if (d.kind != DiagKind::MissingVariable) {
            throw std::invalid_argument("extract_parameters_p1 expects missing-variable diagnostics");
        }
        if (std::find(order.begin(), order.end(), d.identifier) == order.end()) {
            order.push_back(d.identifier);
        }
    }
    for (const auto& v : order) {
        deadline.check();
        auto [type, state] =
            resolver::recover_var_type(v, draft.model(), draft.resolution, catalog);
        draft.resolution = std::move(state);
        scope.types[v] = type;
        draft.params.push_back(ast::Param{type, v});
    }
}

// ---------------------------------------------------------------------------
// P2: hard-coded initializations become parameters

namespace {

TypeRef canonical_or_written(const TypeRef& written, const ResolutionState& state,
                             const TypeCatalog& catalog) {
    TypeRef canonical = resolver::canonical_type(written, state, catalog);
    return canonical.defined() ? canonical : written;
}

bool referenced_outside(const std::vector<StmtPtr>& body,
                        const std::set<size_t>& removed,
                        const std::string& variable) {
    for (size_t i = 0; i < body.size(); ++i) {
        if (removed.count(i)) continue;
        bool found = false;
        ast::walk_exprs({body[i]}, [&](const Expr& e) {
            if (e.kind == ExprKind::Name && e.text == variable) found = true;
        });
        if (found) return true;
    }
    return false;
}

// Rewrites "v += x" as "v + x" and "v++" as "v + 1" for pattern checks and
// return extraction.
ast::ExprPtr effective_assigned_value(const Expr& e) {
    if (e.kind == ExprKind::Assign) {
        if (e.text == "=") return e.second;
        auto bin = std::make_shared<Expr>();
        bin->kind = ExprKind::Binary;
        bin->text = e.text.substr(0, e.text.size() - 1);
        bin->base = e.base;
        bin->second = e.second;
        return bin;
    }
    if (e.kind == ExprKind::Unary && (e.text == "++" || e.text == "--")) {
        auto one = std::make_shared<Expr>();
        one->kind = ExprKind::IntLit;
        one->text = "1";
        auto bin = std::make_shared<Expr>();
        bin->kind = ExprKind::Binary;
        bin->text = e.text == "++" ? "+" : "-";
        bin->base = e.base;
        bin->second = one;
        return bin;
    }
    return nullptr;
}

}  // namespace

void extract_parameters_p2(ApiDraft& draft, ScopeState& scope,
                           const TypeCatalog& catalog) {
    scope.loop_vars = get_loop_changing_vars(draft.body);
    for (const auto& p : draft.params) scope.already_init.insert(p.name);

    const auto& body = draft.body;
    std::set<size_t> removed;

    for (size_t i = 0; i < body.size(); ++i) {
        const Stmt& s = *body[i];
        StmtKind kind = s.kind();
        if (kind == StmtKind::DeclInit) {
            TypeRef type = canonical_or_written(s.type, draft.resolution, catalog);
            scope.types[s.name] = type;
            scope.already_init.insert(s.name);
            std::vector<StmtPtr> following(body.begin() + i + 1, body.end());
            if (is_hard_coded(s.type, *s.expr, following, s.name, scope,
                              draft.resolution, catalog) &&
                !scope.loop_vars.count(s.name)) {
                std::set<size_t> would_remove = removed;
                would_remove.insert(i);
                if (referenced_outside(body, would_remove, s.name)) {
                    draft.params.push_back(ast::Param{type, s.name});
                    removed.insert(i);
                }
            }
            continue;
        }
        if (kind == StmtKind::DeclOnly) {
            scope.types[s.name] = canonical_or_written(s.type, draft.resolution, catalog);
            scope.decl_statement[s.name] = i;
            continue;
        }
        if (kind == StmtKind::Assignment) {
            const std::string& v = s.expr->base->text;
            if (scope.already_init.count(v)) continue;
            scope.already_init.insert(v);
            auto it = scope.types.find(v);
            if (it == scope.types.end()) continue;  // no visible declaration
            ast::ExprPtr value = effective_assigned_value(*s.expr);
            if (!value) continue;
            std::vector<StmtPtr> following(body.begin() + i + 1, body.end());
            if (is_hard_coded(it->second, *value, following, v, scope,
                              draft.resolution, catalog) &&
                !scope.loop_vars.count(v)) {
                std::set<size_t> would_remove = removed;
                would_remove.insert(i);
                auto decl = scope.decl_statement.find(v);
                if (decl != scope.decl_statement.end()) would_remove.insert(decl->second);
                if (referenced_outside(body, would_remove, v)) {
                    draft.params.push_back(ast::Param{it->second, v});
                    removed = std::move(would_remove);
                }
            }
            continue;
        }
    }

    if (removed.empty()) return;
    std::vector<StmtPtr> kept;
    kept.reserve(body.size() - removed.size());
    for (size_t i = 0; i < body.size(); ++i) {
        if (!removed.count(i)) kept.push_back(body[i]);
    }
    draft.body = std::move(kept);
}

// ---------------------------------------------------------------------------
// P3/P4: the last statement becomes the return statement

namespace {

ast::ExprPtr strip_leading_string_literal(const ast::ExprPtr& e, bool& stripped) {
    if (e->kind == ExprKind::Binary && e->text == "+") {
        if (e->base->kind == ExprKind::StringLit) {
            stripped = true;
            return e->second;
        }
        bool inner = false;
        ast::ExprPtr nb = strip_leading_string_literal(e->base, inner);
        if (inner) {
            stripped = true;
            auto bin = std::make_shared<Expr>(*e);
            bin->base = nb;
            return bin;
        }
    }
    return e;
}

bool is_println_on_stdout(const Expr& e, const resolver::ScopeTypes& scope) {
    if (e.kind != ExprKind::MethodCall || e.text != "println" || !e.base) return false;
    if (scope.count("System")) return false;  // shadowed by a local
    std::string receiver = ast::render_expr(*e.base);
    return receiver == "System.out" || receiver == "java.lang.System.out";
}

StmtPtr make_return(const ast::ExprPtr& value, int line) {
    auto st = std::make_shared<Stmt>();
    st->node = StmtNode::Return;
    st->expr = value;
    st->line = line;
    st->end_line = line;
    return st;
}

// Descends through trailing try wrappers; returns the path of bodies.
struct LastStatementSite {
    std::vector<const std::vector<StmtPtr>*> containers;  // outermost first
    const Stmt* stmt = nullptr;
};

LastStatementSite find_last_statement(const std::vector<StmtPtr>& body) {
    LastStatementSite site;
    const std::vector<StmtPtr>* container = &body;
    while (!container->empty()) {
        const Stmt& last = *container->back();
        site.containers.push_back(container);
        if (last.node == StmtNode::Try && !last.body.empty()) {
            container = &last.body;
            continue;
        }
        site.stmt = &last;
        break;
    }
    return site;
}

// Rebuilds the body with the innermost last statement replaced.
std::vector<StmtPtr> replace_last_statement(const std::vector<StmtPtr>& body,
                                            const LastStatementSite& site,
                                            StmtPtr replacement) {
    // Work from the innermost container outwards.
    StmtPtr rebuilt = replacement;
    for (size_t level = site.containers.size(); level-- > 0;) {
        const std::vector<StmtPtr>& container = *site.containers[level];
        std::vector<StmtPtr> updated = container;
        updated.back() = rebuilt;
        if (level == 0) return updated;
        // The parent's last statement is the try wrapper owning `container`.
        const std::vector<StmtPtr>& parent = *site.containers[level - 1];
        auto wrapper = std::make_shared<Stmt>(*parent.back());
        wrapper->body = std::move(updated);
        rebuilt = wrapper;
    }
    return body;
}

// Declarations visible at the last-statement position along the descent.
void collect_path_types(const LastStatementSite& site, const ResolutionState& state,
                        const TypeCatalog& catalog, resolver::ScopeTypes& out) {
    for (const auto* container : site.containers) {
        for (const auto& sp : *container) {
            if (sp->node == StmtNode::LocalDecl) {
                out[sp->name] = canonical_or_written(sp->type, state, catalog);
            }
        }
    }
}

}  // namespace

void extract_return(ApiDraft& draft, ScopeState& scope, const TypeCatalog& catalog) {
    LastStatementSite site = find_last_statement(draft.body);
    if (!site.stmt) {
        draft.return_type = TypeRef("void");
        return;
    }
    const Stmt& last = *site.stmt;
    StmtKind kind = last.kind();

    resolver::ScopeTypes types(scope.types.begin(), scope.types.end());
    collect_path_types(site, draft.resolution, catalog, types);

    if (kind == StmtKind::DeclInit) {
        draft.return_type = canonical_or_written(last.type, draft.resolution, catalog);
        ast::ExprPtr value = last.expr;
        // A bare array initializer is only legal in declaration position;
        // returning it needs the array-creation form.
        if (value->kind == ExprKind::ArrayInit) {
            auto wrapped = std::make_shared<Expr>();
            wrapped->kind = ExprKind::NewArray;
            wrapped->type = last.type;
            if (wrapped->type.array_dims == 0) wrapped->type.array_dims = 1;
            wrapped->second = value;
            value = wrapped;
        }
        draft.body = replace_last_statement(draft.body, site,
                                            make_return(value, last.line));
        return;
    }
    if (kind == StmtKind::Assignment) {
        const std::string& v = last.expr->base->text;
        auto it = types.find(v);
        if (it == types.end()) {
            throw resolver::UntypeableError(v);
        }
        draft.return_type = it->second;
        ast::ExprPtr value = effective_assigned_value(*last.expr);
        draft.body = replace_last_statement(draft.body, site,
                                            make_return(value, last.line));
        return;
    }
    if (last.node == StmtNode::ExprStatement &&
        is_println_on_stdout(*last.expr, types) && last.expr->args.size() == 1) {
        bool stripped = false;
        ast::ExprPtr value =
            strip_leading_string_literal(last.expr->args[0], stripped);
        draft.return_type =
            resolver::get_type_of_exp(*value, types, draft.resolution, catalog);
        draft.body = replace_last_statement(draft.body, site,
                                            make_return(value, last.line));
        return;
    }
    draft.return_type = TypeRef("void");
}

// ---------------------------------------------------------------------------
// The pipeline

namespace {

std::string default_library(const TypeCatalog& catalog) {
    std::string lib = catalog.library_of("java.lang.Object");
    return lib.empty() ? "jdk" : lib;
}

ApizationResult failed(const std::string& reason, const SoPage& page) {
    ApizationResult r;
    r.outcome = Outcome::Failed;
    r.reason = reason;
    r.class_name = "Snippet" + std::to_string(page.answer_id);
    return r;
}

std::string make_javadoc(const SoPage& page) {
    std::string doc = page.title;
    doc.erase(std::remove(doc.begin(), doc.end(), '\r'), doc.end());
    std::replace(doc.begin(), doc.end(), '\n', ' ');
    if (!page.url.empty()) {
        if (!doc.empty()) doc += "\n";
        doc += "@see " + page.url;
    }
    return doc;
}

void ensure_signature_imports(ApiDraft& draft, const TypeCatalog& catalog) {
    auto ensure = [&](const TypeRef& t) {
        if (t.is_primitive() || t.name.find('.') == std::string::npos) return;
        const catalog::TypeEntry* entry = catalog.find(t.name);
        if (!entry || entry->auto_imported()) return;
        // Leave the type fully qualified when a different import already
        // binds its simple name.
        if (!draft.resolution.has_import(t.name) &&
            draft.resolution.binds_simple(t.simple_name())) {
            return;
        }
        draft.resolution.add_import(t.name, entry->library);
    };
    for (const auto& p : draft.params) ensure(p.type);
    ensure(draft.return_type);
}

}  // namespace

ApizationResult apize(const std::string& snippet_text,
                      const SoPage& page,
                      const TypeCatalog& catalog,
                      double budget_seconds,
                      const std::string& verb_lexicon_path) {
    Deadline deadline = budget_seconds > 0.0 ? Deadline(budget_seconds) : Deadline();

    ast::SnippetAst unit;
    try {
        unit = ast::parse_snippet(snippet_text);
    } catch (const ast::ParseError& e) {
        return failed(std::string("parse: ") + e.what(), page);
    }

    // Pre-existing imports, or the default classpath.
    ResolutionState state;
    state.libraries.insert(default_library(catalog));
    std::vector<StmtPtr> body_statements;
    for (const auto& st : unit.statements) {
        if (st->node == StmtNode::Import) {
            std::string lib = catalog.library_of(st->name);
            state.add_import(st->name, lib);
        } else {
            body_statements.push_back(st);
        }
    }

    ApizationResult result;
    result.class_name = "Snippet" + std::to_string(page.answer_id);
    result.javadoc = make_javadoc(page);

    ast::Classification cls = ast::classify_unit(unit);
    if (cls.kind == ast::UnitKind::Ambiguous) {
        result.outcome = Outcome::Skipped;
        result.reason = "ambiguous";
        return result;
    }
    if (cls.kind == ast::UnitKind::Impossible) {
        result.outcome = Outcome::Skipped;
        result.reason = "impossible";
        return result;
    }
    if (cls.kind == ast::UnitKind::WellFormedApi) {
        const ast::MethodInfo& m = *cls.method;
        ApiDraft draft;
        draft.modifiers = m.modifiers;
        draft.return_type = m.return_type;
        draft.name = m.name;
        draft.params = m.params;
        draft.throws = m.throws;
        draft.body = m.body;
        draft.resolution = state;
        // Best effort: recover imports the unit needs, without touching it.
        try {
            auto diags = resolver::analyze(draft.model(), draft.resolution, catalog);
            std::vector<Diagnostic> missing;
            for (const auto& d : diags) {
                if (d.kind == DiagKind::MissingType) missing.push_back(d);
            }
            if (!missing.empty()) {
                draft.resolution = resolver::resolve_imports(
                    missing, draft.model(), draft.resolution, catalog);
            }
        } catch (const resolver::UnresolvableError&) {
        }
        result.outcome = Outcome::AlreadyApi;
        result.draft = std::move(draft);
        return result;
    }

    // Dangling statements: run the fix loop, then the extraction patterns.
    ApiDraft draft;
    draft.body = std::move(body_statements);
    draft.resolution = std::move(state);
    try {
        const namegen::VerbLexicon& lexicon =
            verb_lexicon_path.empty() ? namegen::VerbLexicon::bundled()
                                      : namegen::VerbLexicon::from_file(verb_lexicon_path);
        draft.name = namegen::generate_method_name(page.title, page.answer_id, lexicon);
    } catch (const std::exception& e) {
        return failed(std::string("verb lexicon: ") + e.what(), page);
    }

    ScopeState scope;
    try {
        auto initial = resolver::analyze(draft.model(), draft.resolution, catalog);
        int max_iterations = static_cast<int>(initial.size()) + 2;
        while (true) {
            deadline.check();
            auto diags = resolver::analyze(draft.model(), draft.resolution, catalog);
            if (diags.empty()) break;
            for (const auto& d : diags) {
                if (d.kind == DiagKind::Other) {
                    return failed("diagnostic: " + d.detail, page);
                }
            }
            if (result.fix_iterations >= max_iterations) {
                return failed("fix loop made no progress", page);
            }
            ++result.fix_iterations;
            std::vector<Diagnostic> types;
            std::vector<Diagnostic> vars;
            for (const auto& d : diags) {
                (d.kind == DiagKind::MissingType ? types : vars).push_back(d);
            }
            if (!types.empty()) {
                draft.resolution = resolver::resolve_imports(
                    types, draft.model(), draft.resolution, catalog);
            } else {
                extract_parameters_p1(draft, scope, vars, catalog, deadline);
            }
        }

        deadline.check();
        extract_parameters_p2(draft, scope, catalog);
        deadline.check();
        extract_return(draft, scope, catalog);
        ensure_signature_imports(draft, catalog);

        auto residual = resolver::analyze(draft.model(), draft.resolution, catalog);
        if (!residual.empty()) {
            return failed("residual diagnostic: " + residual.front().detail, page);
        }
        std::string why;
        if (!ast::is_well_formed(draft.to_method_info(), &why)) {
            return failed("not well-formed: " + why, page);
        }
    } catch (const BudgetExceeded&) {
        return failed("budget", page);
    } catch (const resolver::UnresolvableError& e) {
        return failed(std::string("unresolvable: ") + e.identifier(), page);
    } catch (const resolver::UnrecoverableError& e) {
        return failed(std::string("unrecoverable: ") + e.variable(), page);
    } catch (const resolver::UntypeableError& e) {
        return failed(std::string("untypeable: ") + e.what(), page);
    }

    result.outcome = Outcome::Apized;
    result.draft = std::move(draft);
    return result;
}

}  // namespace apizer::pipeline
