#include <algorithm>
#include <map>
#include <set>

#include "apizer/resolver.hpp"
#include "resolver_internal.hpp"

namespace apizer::resolver {

using ast::Expr;
using ast::ExprKind;
using ast::Stmt;
using ast::StmtNode;
using catalog::TypeCatalog;

namespace {

size_t count_missing_types(const std::vector<Diagnostic>& diags) {
    size_t n = 0;
    for (const auto& d : diags) {
        if (d.kind == DiagKind::MissingType) ++n;
    }
    return n;
}

size_t count_other(const std::vector<Diagnostic>& diags) {
    size_t n = 0;
    for (const auto& d : diags) {
        if (d.kind == DiagKind::Other) ++n;
    }
    return n;
}

std::string package_of(const std::string& qualified) {
    auto dot = qualified.rfind('.');
    return dot == std::string::npos ? "" : qualified.substr(0, dot);
}

std::string simple_of(const std::string& qualified) {
    auto dot = qualified.rfind('.');
    return dot == std::string::npos ? qualified : qualified.substr(dot + 1);
}

// Greedy repair for ambiguous simple names: a chosen import can resolve the
// name yet break members or assignments that only type-check once other
// names resolve. Swapping to a same-named alternative that lowers the
// other-diagnostic count mirrors compile feedback.
ResolutionState repair_with_feedback(ResolutionState state,
                                     const MethodModel& draft,
                                     const catalog::TypeCatalog& catalog) {
    size_t best = count_other(analyze(draft, state, catalog));
    bool improved = best > 0;
    while (improved) {
        improved = false;
        for (size_t i = 0; i < state.imports.size() && !improved; ++i) {
            const std::string current = state.imports[i];
            if (current.size() > 2 &&
                current.compare(current.size() - 2, 2, ".*") == 0) {
                continue;
            }
            auto candidates = catalog.lookup_simple_name(simple_of(current));
            if (candidates.size() < 2) continue;
            for (const auto& alt : candidates) {
                if (alt == current || state.has_import(alt)) continue;
                ResolutionState swapped = state;
                swapped.imports[i] = alt;
                swapped.libraries.insert(catalog.library_of(alt));
                auto diags = analyze(draft, swapped, catalog);
                if (count_missing_types(diags) == 0 && count_other(diags) < best) {
                    state = std::move(swapped);
                    best = count_other(diags);
                    improved = best > 0;
                    break;
                }
            }
        }
    }
    return state;
}

}  // namespace

ResolutionState resolve_imports(const std::vector<Diagnostic>& missing_types,
                                const MethodModel& draft,
                                ResolutionState state,
                                const TypeCatalog& catalog) {
    for (const auto& d : missing_types) {
        if (d.kind != DiagKind::MissingType) {
            throw std::invalid_argument("resolve_imports expects missing-type diagnostics");
        }
    }

    std::set<std::string> rejected_packages;
    while (true) {
        auto diags = analyze(draft, state, catalog);
        std::vector<std::string> unresolved;
        for (const auto& d : diags) {
            if (d.kind != DiagKind::MissingType) continue;
            if (std::find(unresolved.begin(), unresolved.end(), d.identifier) ==
                unresolved.end()) {
                unresolved.push_back(d.identifier);
            }
        }
        if (unresolved.empty()) return repair_with_feedback(std::move(state), draft, catalog);
        size_t before = count_missing_types(diags);

        // Qualified names have exactly one possible binding, which the
        // catalog does not know; clustering cannot help them.
        for (const auto& name : unresolved) {
            if (name.find('.') != std::string::npos) throw UnresolvableError(name);
        }

        // package -> simple names it can cover.
        std::map<std::string, std::set<std::string>> coverage;
        for (const auto& name : unresolved) {
            auto candidates = catalog.lookup_simple_name(name);
            if (candidates.empty()) throw UnresolvableError(name);
            bool any = false;
            for (const auto& q : candidates) {
                std::string pkg = package_of(q);
                if (rejected_packages.count(pkg)) continue;
                coverage[pkg].insert(name);
                any = true;
            }
            if (!any) throw UnresolvableError(name);
        }

        // Greedy choice: widest coverage; ties prefer already-imported
        // packages, then java.*, then lexicographic order.
        std::set<std::string> imported_packages;
        for (const auto& imp : state.imports) {
            imported_packages.insert(package_of(imp));
        }
        const std::string* best = nullptr;
        size_t best_cover = 0;
        auto better = [&](const std::string& pkg, size_t cover) {
            if (!best) return true;
            if (cover != best_cover) return cover > best_cover;
            bool a_imp = imported_packages.count(pkg) > 0;
            bool b_imp = imported_packages.count(*best) > 0;
            if (a_imp != b_imp) return a_imp;
            bool a_java = pkg.rfind("java.", 0) == 0;
            bool b_java = best->rfind("java.", 0) == 0;
            if (a_java != b_java) return a_java;
            return pkg < *best;
        };
        for (const auto& [pkg, names] : coverage) {
            if (better(pkg, names.size())) {
                best = &pkg;
                best_cover = names.size();
            }
        }

        ResolutionState tentative = state;
        for (const auto& name : coverage[*best]) {
            std::string q = catalog.type_in_package(*best, name);
            tentative.add_import(q, catalog.library_of(q));
        }
        size_t after = count_missing_types(analyze(draft, tentative, catalog));
        if (after < before) {
            state = std::move(tentative);
        } else {
            rejected_packages.insert(*best);
        }
    }
}

// ---------------------------------------------------------------------------

namespace {

// Candidate ranking: numeric primitives first (int leading, the Java default
// for integer arithmetic), then java.lang types, then the rest.
int candidate_rank(const std::string& type) {
    static const std::vector<std::string> prims = {
        "int", "long", "double", "float", "short", "byte", "char", "boolean",
    };
    for (size_t i = 0; i < prims.size(); ++i) {
        if (type == prims[i]) return static_cast<int>(i);
    }
    if (type.rfind("java.lang.", 0) == 0) return 100;
    return 200;
}

bool candidate_less(const std::string& a, const std::string& b) {
    int ra = candidate_rank(a);
    int rb = candidate_rank(b);
    if (ra != rb) return ra < rb;
    return a < b;
}

class CandidateCollector {
public:
    CandidateCollector(const std::string& var, const MethodModel& draft,
                       const ResolutionState& state, const TypeCatalog& cat)
        : var_(var), draft_(draft), cat_(cat), binder_(state, cat) {
        for (const auto& p : draft.params) {
            remember(p.name, p.type);
        }
        ast::walk_statements(draft.body, [&](const Stmt& s) {
            if (s.node == StmtNode::LocalDecl) remember(s.name, s.type);
            if (s.node == StmtNode::ForEach) remember(s.name, s.type);
        });
    }

    std::vector<std::string> collect() {
        ast::walk_statements(draft_.body, [&](const Stmt& s) { scan_statement(s); });
        ast::walk_exprs(draft_.body, [&](const Expr& e) { scan_expr(e); });
        std::vector<std::string> out(found_.begin(), found_.end());
        std::sort(out.begin(), out.end(), candidate_less);
        return out;
    }

private:
    const std::string& var_;
    const MethodModel& draft_;
    const TypeCatalog& cat_;
    Binder binder_;
    std::map<std::string, RType> declared_;
    std::set<std::string> found_;

    void remember(const std::string& name, const TypeRef& type) {
        std::string missing;
        declared_[name] = binder_.resolve(type, &missing);
    }

    bool is_var(const Expr& e) const {
        return e.kind == ExprKind::Name && e.text == var_;
    }

    void add(const std::string& type) { found_.insert(type); }

    void add_numerics() {
        for (const char* t : {"int", "long", "short", "byte", "char", "float", "double"}) {
            add(t);
        }
    }

    // Best-effort type of an expression from declarations and literals; no
    // diagnostics, no scoping subtleties. Only used to seed candidates.
    RType light_type(const Expr& e) const {
        switch (e.kind) {
            case ExprKind::IntLit: return RType::primitive("int");
            case ExprKind::LongLit: return RType::primitive("long");
            case ExprKind::FloatLit: return RType::primitive("float");
            case ExprKind::DoubleLit: return RType::primitive("double");
            case ExprKind::CharLit: return RType::primitive("char");
            case ExprKind::StringLit: return RType::reference("java.lang.String");
            case ExprKind::BoolLit: return RType::primitive("boolean");
            case ExprKind::Name: {
                auto it = declared_.find(e.text);
                return it == declared_.end() ? RType::unknown() : it->second;
            }
            case ExprKind::New: {
                std::string missing;
                return binder_.resolve(e.type, &missing);
            }
            case ExprKind::Cast: {
                std::string missing;
                return binder_.resolve(e.type, &missing);
            }
            case ExprKind::MethodCall: {
                RType rcv = receiver_type(e);
                if (rcv.k != RType::K::Reference || rcv.dims > 0) return RType::unknown();
                if (!cat_.find(rcv.name)) return RType::unknown();
                auto returns = cat_.member_return_type(rcv.name, e.text, e.args.size());
                if (returns.size() == 1) return RType::from_catalog(returns.front());
                return RType::unknown();
            }
            case ExprKind::Binary: {
                if (e.text == "+") {
                    RType l = light_type(*e.base);
                    RType r = light_type(*e.second);
                    if (l.is_string() || r.is_string()) {
                        return RType::reference("java.lang.String");
                    }
                    if (l.is_numeric() && r.is_numeric()) return promote_numeric(l, r);
                    return RType::unknown();
                }
                return RType::unknown();
            }
            default:
                return RType::unknown();
        }
    }

    RType receiver_type(const Expr& call) const {
        if (!call.base) return RType::unknown();
        const Expr& b = *call.base;
        if (b.kind == ExprKind::Name) {
            auto it = declared_.find(b.text);
            if (it != declared_.end()) return it->second;
            bool classlike = false;
            std::string q = binder_.resolve_type_name(b.text, &classlike);
            if (!q.empty()) return RType::reference(q);
            return RType::unknown();
        }
        return light_type(b);
    }

    void scan_statement(const Stmt& s) {
        // T x = v;  and  if/while (v) ...
        if (s.node == StmtNode::LocalDecl && s.expr && is_var(*s.expr)) {
            auto it = declared_.find(s.name);
            if (it != declared_.end() && !it->second.is_unknown() &&
                !it->second.is_null()) {
                add(it->second.to_type_ref().to_string());
            }
        }
        if ((s.node == StmtNode::If || s.node == StmtNode::While ||
             s.node == StmtNode::DoWhile) &&
            s.expr && is_var(*s.expr)) {
            add("boolean");
        }
    }

    void scan_expr(const Expr& e) {
        switch (e.kind) {
            case ExprKind::MethodCall: {
                if (e.base && is_var(*e.base)) {
                    for (const auto& t : cat_.types_with_method(e.text, e.args.size())) {
                        add(t);
                    }
                }
                // v as a call argument: parameter types of matching overloads.
                RType rcv = receiver_type(e);
                if (rcv.k == RType::K::Reference && rcv.dims == 0 &&
                    cat_.find(rcv.name)) {
                    for (size_t i = 0; i < e.args.size(); ++i) {
                        if (!is_var(*e.args[i])) continue;
                        for (const auto* sig :
                             cat_.find_methods(rcv.name, e.text, e.args.size())) {
                            add(TypeRef::parse(sig->params[i]).to_string());
                        }
                    }
                }
                return;
            }
            case ExprKind::FieldAccess:
                if (e.base && is_var(*e.base)) {
                    for (const auto& t : cat_.types_with_field(e.text)) add(t);
                }
                return;
            case ExprKind::New: {
                // Constructor arguments, where the catalog records "<init>"
                // signatures. Constructors are not inherited, so only the
                // entry's own records count.
                std::string missing;
                RType t = binder_.resolve(e.type, &missing);
                if (t.k != RType::K::Reference || t.dims > 0) return;
                const catalog::TypeEntry* entry = cat_.find(t.name);
                if (!entry) return;
                for (size_t i = 0; i < e.args.size(); ++i) {
                    if (!is_var(*e.args[i])) continue;
                    for (const auto& sig : entry->methods) {
                        if (sig.name == "<init>" && sig.params.size() == e.args.size()) {
                            add(TypeRef::parse(sig.params[i]).to_string());
                        }
                    }
                }
                return;
            }
            case ExprKind::Binary: {
                bool lv = is_var(*e.base);
                bool rv = is_var(*e.second);
                if (!lv && !rv) return;
                const std::string& op = e.text;
                if (op == "+") {
                    RType other = light_type(lv ? *e.second : *e.base);
                    if (other.is_string()) add("java.lang.String");
                    add_numerics();
                    return;
                }
                if (op == "-" || op == "*" || op == "/" || op == "%" ||
                    op == "<" || op == ">" || op == "<=" || op == ">=" ||
                    op == "<<" || op == ">>" || op == ">>>") {
                    add_numerics();
                    return;
                }
                if (op == "&&" || op == "||") {
                    add("boolean");
                    return;
                }
                if (op == "&" || op == "|" || op == "^") {
                    add("boolean");
                    add_numerics();
                    return;
                }
                return;
            }
            case ExprKind::Unary:
                if (is_var(*e.base)) {
                    if (e.text == "!") {
                        add("boolean");
                    } else {
                        add_numerics();
                    }
                }
                return;
            case ExprKind::Assign: {
                if (e.base->kind == ExprKind::Name && e.base->text == var_) {
                    RType src = light_type(*e.second);
                    if (!src.is_unknown() && !src.is_null() && !src.is_void()) {
                        add(src.to_type_ref().to_string());
                    }
                    if (e.text != "=") add_numerics();
                }
                if (is_var(*e.second) && e.base->kind == ExprKind::Name) {
                    auto it = declared_.find(e.base->text);
                    if (it != declared_.end() && !it->second.is_unknown()) {
                        add(it->second.to_type_ref().to_string());
                    }
                }
                return;
            }
            case ExprKind::ArrayAccess:
                if (e.second && is_var(*e.second)) add("int");
                return;
            case ExprKind::InstanceOf:
                if (is_var(*e.base)) add("java.lang.Object");
                return;
            case ExprKind::Ternary:
                if (is_var(*e.base)) add("boolean");
                return;
            default:
                return;
        }
    }
};

}  // namespace

std::pair<TypeRef, ResolutionState> recover_var_type(const std::string& variable,
                                                     const MethodModel& draft,
                                                     ResolutionState state,
                                                     const TypeCatalog& catalog) {
    CandidateCollector collector(variable, draft, state, catalog);
    std::vector<std::string> candidates = collector.collect();

    for (const auto& cand : candidates) {
        TypeRef type;
        try {
            type = TypeRef::parse(cand);
        } catch (const std::invalid_argument&) {
            continue;
        }
        MethodModel probe = draft;
        probe.params.push_back(ast::Param{type, variable});
        auto diags = analyze(probe, state, catalog);
        bool clean = true;
        for (const auto& d : diags) {
            if (d.mentions_var(variable)) {
                clean = false;
                break;
            }
        }
        if (!clean) continue;

        // Accepted: surface the import for a non-auto-imported reference type,
        // unless another import already claims the simple name (the type then
        // stays fully qualified when rendered).
        if (!type.is_primitive() && type.name.find('.') != std::string::npos) {
            const catalog::TypeEntry* entry = catalog.find(type.name);
            if (entry && !entry->auto_imported() &&
                (state.has_import(type.name) ||
                 !state.binds_simple(type.simple_name()))) {
                state.add_import(type.name, entry->library);
            }
        }
        return {type, std::move(state)};
    }
    throw UnrecoverableError(variable);
}

}  // namespace apizer::resolver
