#include "apizer/resolver.hpp"

#include <algorithm>

#include "resolver_internal.hpp"

namespace apizer::resolver {

using ast::Expr;
using ast::ExprKind;
using ast::Stmt;
using ast::StmtNode;
using catalog::TypeCatalog;

bool ResolutionState::has_import(const std::string& qualified) const {
    return std::find(imports.begin(), imports.end(), qualified) != imports.end();
}

bool ResolutionState::binds_simple(const std::string& simple) const {
    for (const auto& imp : imports) {
        auto dot = imp.rfind('.');
        std::string last = dot == std::string::npos ? imp : imp.substr(dot + 1);
        if (last == simple) return true;
    }
    return false;
}

void ResolutionState::add_import(const std::string& qualified,
                                 const std::string& library) {
    if (!has_import(qualified)) imports.push_back(qualified);
    if (!library.empty()) libraries.insert(library);
}

RType RType::from_catalog(const std::string& text) {
    TypeRef t = TypeRef::parse(text);
    if (t.array_dims == 0 && is_primitive_name(t.name)) {
        return primitive(t.name);
    }
    return {K::Reference, t.name, t.array_dims};
}

Binder::Binder(const ResolutionState& state, const TypeCatalog& cat) : cat_(cat) {
    for (const auto& imp : state.imports) {
        if (imp.size() > 2 && imp.compare(imp.size() - 2, 2, ".*") == 0) {
            wildcard_packages_.push_back(imp.substr(0, imp.size() - 2));
            continue;
        }
        auto dot = imp.rfind('.');
        std::string simple = dot == std::string::npos ? imp : imp.substr(dot + 1);
        by_simple_.emplace(simple, imp);  // first import wins
    }
}

std::string Binder::resolve_type_name(const std::string& name, bool* classlike) const {
    if (classlike) *classlike = false;
    if (name.find('.') != std::string::npos) {
        if (classlike) *classlike = true;
        return cat_.find(name) ? name : "";
    }
    auto it = by_simple_.find(name);
    if (it != by_simple_.end()) {
        if (classlike) *classlike = true;
        return cat_.find(it->second) ? it->second : "";
    }
    for (const auto& pkg : wildcard_packages_) {
        std::string q = cat_.type_in_package(pkg, name);
        if (!q.empty()) {
            if (classlike) *classlike = true;
            return q;
        }
    }
    std::string lang = cat_.auto_import(name);
    if (!lang.empty()) {
        if (classlike) *classlike = true;
        return lang;
    }
    if (classlike) *classlike = !cat_.lookup_simple_name(name).empty();
    return "";
}

RType Binder::resolve(const TypeRef& written, std::string* missing) const {
    if (missing) missing->clear();
    if (written.array_dims == 0 && is_primitive_name(written.name)) {
        return RType::primitive(written.name);
    }
    if (is_primitive_name(written.name)) {
        return RType{RType::K::Reference, written.name, written.array_dims};
    }
    bool classlike = false;
    std::string q = resolve_type_name(written.name, &classlike);
    if (q.empty()) {
        if (missing) *missing = written.name;
        return RType::unknown();
    }
    return RType::reference(q, written.array_dims);
}

bool widening_ok(const std::string& from, const std::string& to) {
    if (from == to) return true;
    auto to_any = [&](std::initializer_list<const char*> targets) {
        for (const char* t : targets) {
            if (to == t) return true;
        }
        return false;
    };
    if (from == "byte") return to_any({"short", "int", "long", "float", "double"});
    if (from == "short") return to_any({"int", "long", "float", "double"});
    if (from == "char") return to_any({"int", "long", "float", "double"});
    if (from == "int") return to_any({"long", "float", "double"});
    if (from == "long") return to_any({"float", "double"});
    if (from == "float") return to_any({"double"});
    return false;
}

bool assignable(const RType& target, const RType& value, const TypeCatalog& cat) {
    if (target.is_unknown() || value.is_unknown()) return true;
    if (value.is_null()) return target.is_reference_like();
    if (target.is_primitive()) {
        if (!value.is_primitive()) return false;
        if (target.name == "boolean" || value.name == "boolean") {
            return target.name == value.name;
        }
        return widening_ok(value.name, target.name);
    }
    if (target.dims > 0) {
        return value.dims == target.dims && value.name == target.name;
    }
    // Plain reference target.
    if (target.name == "java.lang.Object") return value.is_reference_like();
    if (value.dims > 0 || value.is_primitive()) return false;
    if (value.name == target.name) return true;
    if (!cat.find(value.name) || !cat.find(target.name)) return true;  // opaque
    return cat.is_subtype_of(value.name, target.name);
}

RType promote_numeric(const RType& a, const RType& b) {
    auto has = [&](const char* n) { return a.name == n || b.name == n; };
    if (has("double")) return RType::primitive("double");
    if (has("float")) return RType::primitive("float");
    if (has("long")) return RType::primitive("long");
    return RType::primitive("int");
}

RType promote_unary(const RType& a) {
    if (a.name == "byte" || a.name == "short" || a.name == "char") {
        return RType::primitive("int");
    }
    return a;
}

// ---------------------------------------------------------------------------

namespace {

class Analyzer {
public:
    Analyzer(const MethodModel& draft, const ResolutionState& state,
             const TypeCatalog& cat)
        : draft_(draft), state_(state), cat_(cat), binder_(state, cat) {}

    std::vector<Diagnostic> run() {
        for (const auto& imp : state_.imports) {
            if (imp.size() > 2 && imp.compare(imp.size() - 2, 2, ".*") == 0) continue;
            if (!cat_.find(imp)) {
                add(DiagKind::MissingType, imp, {imp}, "unknown import");
            }
        }
        if (draft_.return_type.defined() &&
            !(draft_.return_type.name == "void" && draft_.return_type.array_dims == 0)) {
            resolve_written(draft_.return_type);
        }
        push_scope();
        for (const auto& p : draft_.params) {
            declare_checked(p.name, p.type);
        }
        for (size_t i = 0; i < draft_.body.size(); ++i) {
            stmt_index_ = static_cast<int>(i);
            statement(*draft_.body[i]);
        }
        pop_scope();
        finish();
        return std::move(diags_);
    }

    // Types a single expression under a caller-provided scope; used by
    // get_type_of_exp.
    RType type_one(const Expr& e, const ScopeTypes& scope) {
        push_scope();
        for (const auto& [name, type] : scope) {
            std::string missing;
            RType t = binder_.resolve(type, &missing);
            scopes_.back()[name] = t;
        }
        stmt_index_ = 0;
        RType t = expr(e);
        pop_scope();
        finish();
        return t;
    }

    bool clean() const { return diags_.empty(); }

private:
    const MethodModel& draft_;
    const ResolutionState& state_;
    const TypeCatalog& cat_;
    Binder binder_;
    std::vector<Diagnostic> diags_;
    std::vector<std::map<std::string, RType>> scopes_;
    int stmt_index_ = -1;

    void push_scope() { scopes_.emplace_back(); }
    void pop_scope() { scopes_.pop_back(); }

    RType* lookup(const std::string& name) {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return &found->second;
        }
        return nullptr;
    }

    void add(DiagKind kind, const std::string& identifier,
             std::set<std::string> mentions, const std::string& detail) {
        Diagnostic d;
        d.kind = kind;
        d.identifier = identifier;
        d.stmt_index = stmt_index_;
        d.mentions = std::move(mentions);
        d.mentions.insert(identifier);
        d.detail = detail;
        diags_.push_back(std::move(d));
    }

    void finish() {
        std::stable_sort(diags_.begin(), diags_.end(),
                         [](const Diagnostic& a, const Diagnostic& b) {
                             if (a.stmt_index != b.stmt_index) {
                                 return a.stmt_index < b.stmt_index;
                             }
                             if (a.identifier != b.identifier) {
                                 return a.identifier < b.identifier;
                             }
                             return static_cast<int>(a.kind) < static_cast<int>(b.kind);
                         });
        diags_.erase(std::unique(diags_.begin(), diags_.end(),
                                 [](const Diagnostic& a, const Diagnostic& b) {
                                     return a.kind == b.kind &&
                                            a.identifier == b.identifier &&
                                            a.stmt_index == b.stmt_index;
                                 }),
                     diags_.end());
    }

    RType resolve_written(const TypeRef& written) {
        std::string missing;
        RType t = binder_.resolve(written, &missing);
        if (!missing.empty()) {
            add(DiagKind::MissingType, missing, {}, "unresolved type name");
        }
        return t;
    }

    void declare_checked(const std::string& name, const TypeRef& written) {
        RType t = resolve_written(written);
        if (lookup(name)) {
            add(DiagKind::Other, name, {name}, "variable is already defined");
        }
        scopes_.back()[name] = t;
    }

    static std::set<std::string> idents_of(const Expr& e) {
        return ast::value_names(e);
    }

    void check_boolean(const RType& t, const Expr& e, const char* what) {
        if (t.is_unknown() || t.is_boolean()) return;
        add(DiagKind::Other, first_ident(e), idents_of(e),
            std::string(what) + " requires boolean");
    }

    static std::string first_ident(const Expr& e) {
        auto names = ast::value_names(e);
        return names.empty() ? "<expr>" : *names.begin();
    }

    // ------------------------------------------------------------------
    // Statements

    void statements(const std::vector<ast::StmtPtr>& list) {
        push_scope();
        for (const auto& s : list) statement(*s);
        pop_scope();
    }

    void statement(const Stmt& s) {
        switch (s.node) {
            case StmtNode::LocalDecl: {
                if (!s.modifiers.empty()) {
                    add(DiagKind::Other, s.name, {s.name},
                        "field declarations are not allowed in a method body");
                }
                RType t = resolve_written(s.type);
                if (s.expr) {
                    RType v = init_type(*s.expr, t);
                    if (!assignable(t, v, cat_)) {
                        auto mentions = idents_of(*s.expr);
                        mentions.insert(s.name);
                        add(DiagKind::Other, s.name, mentions,
                            "initializer type does not match declaration");
                    }
                }
                if (lookup(s.name)) {
                    add(DiagKind::Other, s.name, {s.name},
                        "variable is already defined");
                }
                scopes_.back()[s.name] = t;
                return;
            }
            case StmtNode::ExprStatement:
                expr(*s.expr);
                return;
            case StmtNode::If: {
                check_boolean(expr(*s.expr), *s.expr, "if condition");
                statements(s.body);
                statements(s.else_body);
                return;
            }
            case StmtNode::While:
            case StmtNode::DoWhile:
                check_boolean(expr(*s.expr), *s.expr, "loop condition");
                statements(s.body);
                return;
            case StmtNode::For: {
                push_scope();
                for (const auto& in : s.init_stmts) statement(*in);
                if (s.expr) check_boolean(expr(*s.expr), *s.expr, "loop condition");
                for (const auto& u : s.updates) expr(*u);
                statements(s.body);
                pop_scope();
                return;
            }
            case StmtNode::ForEach: {
                RType elem = resolve_written(s.type);
                RType it = expr(*s.expr);
                if (!it.is_unknown() && !it.is_array()) {
                    bool iterable = it.k == RType::K::Reference && cat_.find(it.name) &&
                                    cat_.is_subtype_of(it.name, "java.lang.Iterable");
                    if (!iterable) {
                        add(DiagKind::Other, first_ident(*s.expr), idents_of(*s.expr),
                            "for-each source is not iterable");
                    }
                }
                push_scope();
                (void)elem;
                scopes_.back()[s.name] = elem;
                statements(s.body);
                pop_scope();
                return;
            }
            case StmtNode::Try: {
                statements(s.body);
                for (const auto& c : s.catches) {
                    push_scope();
                    RType ct = resolve_written(c.type);
                    scopes_.back()[c.name] = ct;
                    for (const auto& b : c.body) statement(*b);
                    pop_scope();
                }
                statements(s.else_body);
                return;
            }
            case StmtNode::Return: {
                bool non_void = draft_.return_type.defined() &&
                                !(draft_.return_type.name == "void" &&
                                  draft_.return_type.array_dims == 0);
                if (s.expr) {
                    RType v = expr(*s.expr);
                    if (!non_void) {
                        add(DiagKind::Other, first_ident(*s.expr), idents_of(*s.expr),
                            "void method returns a value");
                    } else {
                        std::string missing;
                        RType target = binder_.resolve(draft_.return_type, &missing);
                        if (!assignable(target, v, cat_)) {
                            add(DiagKind::Other, first_ident(*s.expr),
                                idents_of(*s.expr), "return type mismatch");
                        }
                    }
                } else if (non_void) {
                    add(DiagKind::Other, "return", {}, "missing return value");
                }
                return;
            }
            case StmtNode::Break:
            case StmtNode::Continue:
            case StmtNode::Empty:
                return;
            case StmtNode::Throw: {
                expr(*s.expr);
                return;
            }
            case StmtNode::Block:
                statements(s.body);
                return;
            case StmtNode::Switch: {
                expr(*s.expr);
                for (const auto& c : s.cases) {
                    for (const auto& l : c.labels) expr(*l);
                    statements(c.body);
                }
                return;
            }
            case StmtNode::MethodDecl:
                add(DiagKind::Other, s.method->name, {s.method->name},
                    "nested method declarations are not supported");
                return;
            case StmtNode::ClassDecl:
                add(DiagKind::Other, s.cls->name, {s.cls->name},
                    "nested class declarations are not supported");
                return;
            case StmtNode::Import:
                add(DiagKind::Other, s.name, {s.name},
                    "import inside a method body");
                return;
        }
    }

    // Initializer typing; gives array initializers the declared type.
    RType init_type(const Expr& e, const RType& declared) {
        if (e.kind == ExprKind::ArrayInit) {
            for (const auto& el : e.args) {
                (void)init_type(*el, RType::unknown());
            }
            return declared.is_unknown() ? RType::unknown() : declared;
        }
        return expr(e);
    }

    // ------------------------------------------------------------------
    // Expressions

    struct Receiver {
        enum class As { Value, Static, Unknown } as = As::Unknown;
        RType type;
        std::string root;  // root variable name when the chain starts at one
    };

    Receiver resolve_receiver(const Expr& e) {
        if (e.kind == ExprKind::Name) {
            if (e.text == "this" || e.text == "super") {
                add(DiagKind::Other, e.text, {},
                    "this/super cannot appear in a static context");
                return {};
            }
            if (RType* t = lookup(e.text)) {
                return {Receiver::As::Value, *t, e.text};
            }
            bool classlike = false;
            std::string q = binder_.resolve_type_name(e.text, &classlike);
            if (!q.empty()) {
                return {Receiver::As::Static, RType::reference(q), ""};
            }
            if (classlike) {
                add(DiagKind::MissingType, e.text, {}, "unresolved type name");
            } else {
                add(DiagKind::MissingVariable, e.text, {}, "undeclared variable");
            }
            Receiver r;
            r.root = e.text;
            return r;
        }
        if (e.kind == ExprKind::FieldAccess) {
            // Dotted chains may spell a qualified type ("java.util.Calendar").
            std::vector<const Expr*> segs;
            const Expr* cursor = &e;
            while (cursor->kind == ExprKind::FieldAccess) {
                segs.push_back(cursor);
                cursor = cursor->base.get();
            }
            if (cursor->kind == ExprKind::Name && !lookup(cursor->text)) {
                std::vector<std::string> names{cursor->text};
                for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
                    names.push_back((*it)->text);
                }
                // Longest dotted prefix known to the catalog wins.
                for (size_t len = names.size(); len >= 1; --len) {
                    std::string joined = names[0];
                    for (size_t i = 1; i < len; ++i) joined += "." + names[i];
                    if (cat_.find(joined)) {
                        Receiver r{Receiver::As::Static, RType::reference(joined), ""};
                        for (size_t i = len; i < names.size(); ++i) {
                            RType ft = field_of(r.type, names[i], r.root,
                                                r.as == Receiver::As::Static);
                            r = Receiver{Receiver::As::Value, ft, r.root};
                        }
                        return r;
                    }
                }
            }
            RType base = expr(e);
            return {Receiver::As::Value, base, root_of(e)};
        }
        RType t = expr(e);
        return {Receiver::As::Value, t, root_of(e)};
    }

    static std::string root_of(const Expr& e) {
        const Expr* cursor = &e;
        while (cursor->base) cursor = cursor->base.get();
        return cursor->kind == ExprKind::Name ? cursor->text : "";
    }

    RType field_of(const RType& receiver, const std::string& field,
                   const std::string& root, bool is_static_receiver) {
        (void)is_static_receiver;
        if (receiver.is_unknown()) return RType::unknown();
        if (receiver.is_array()) {
            if (field == "length") return RType::primitive("int");
            add(DiagKind::Other, field, {root, field}, "no such array member");
            return RType::unknown();
        }
        if (receiver.is_primitive() || receiver.is_null()) {
            std::set<std::string> mentions = {field};
            if (!root.empty()) mentions.insert(root);
            add(DiagKind::Other, field, mentions, "cannot dereference a primitive");
            return RType::unknown();
        }
        if (!cat_.find(receiver.name)) return RType::unknown();
        const catalog::FieldSig* f = cat_.find_field(receiver.name, field);
        if (!f) {
            std::set<std::string> mentions = {field};
            if (!root.empty()) mentions.insert(root);
            add(DiagKind::Other, field, mentions,
                "no field '" + field + "' on " + receiver.name);
            return RType::unknown();
        }
        return RType::from_catalog(f->type);
    }

    RType call_of(const Receiver& rcv, const std::string& method, size_t arity,
                  const Expr& site) {
        (void)site;
        if (rcv.as == Receiver::As::Unknown || rcv.type.is_unknown()) {
            return RType::unknown();
        }
        std::set<std::string> mentions = {method};
        if (!rcv.root.empty()) mentions.insert(rcv.root);
        if (rcv.type.is_array()) {
            add(DiagKind::Other, method, mentions, "no methods on array types");
            return RType::unknown();
        }
        if (rcv.type.is_primitive() || rcv.type.is_null()) {
            add(DiagKind::Other, method, mentions, "cannot dereference a primitive");
            return RType::unknown();
        }
        if (!cat_.find(rcv.type.name)) return RType::unknown();
        auto sigs = cat_.find_methods(rcv.type.name, method, arity);
        if (rcv.as == Receiver::As::Static) {
            std::vector<const catalog::MethodSig*> statics;
            for (const auto* s : sigs) {
                if (s->is_static) statics.push_back(s);
            }
            if (statics.empty() && !sigs.empty()) {
                add(DiagKind::Other, method, mentions,
                    "instance method invoked on a type");
                return RType::unknown();
            }
            sigs = std::move(statics);
        }
        if (sigs.empty()) {
            add(DiagKind::Other, method, mentions,
                "no method '" + method + "/" + std::to_string(arity) + "' on " +
                    rcv.type.name);
            return RType::unknown();
        }
        std::set<std::string> returns;
        for (const auto* s : sigs) returns.insert(s->returns);
        if (returns.size() != 1) return RType::unknown();
        return RType::from_catalog(*returns.begin());
    }

    RType expr(const Expr& e) {
        switch (e.kind) {
            case ExprKind::IntLit: return RType::primitive("int");
            case ExprKind::LongLit: return RType::primitive("long");
            case ExprKind::FloatLit: return RType::primitive("float");
            case ExprKind::DoubleLit: return RType::primitive("double");
            case ExprKind::CharLit: return RType::primitive("char");
            case ExprKind::StringLit: return RType::reference("java.lang.String");
            case ExprKind::BoolLit: return RType::primitive("boolean");
            case ExprKind::NullLit: return RType::null_type();
            case ExprKind::Name: {
                if (e.text == "this" || e.text == "super") {
                    add(DiagKind::Other, e.text, {},
                        "this/super cannot appear in a static context");
                    return RType::unknown();
                }
                if (RType* t = lookup(e.text)) return *t;
                add(DiagKind::MissingVariable, e.text, {}, "undeclared variable");
                return RType::unknown();
            }
            case ExprKind::FieldAccess: {
                Receiver rcv = resolve_receiver(*e.base);
                if (rcv.as == Receiver::As::Unknown) return RType::unknown();
                return field_of(rcv.type, e.text, rcv.root,
                                rcv.as == Receiver::As::Static);
            }
            case ExprKind::MethodCall: {
                for (const auto& a : e.args) expr(*a);
                if (!e.base) {
                    add(DiagKind::Other, e.text, {e.text},
                        "cannot resolve method '" + e.text + "'");
                    return RType::unknown();
                }
                Receiver rcv = resolve_receiver(*e.base);
                return call_of(rcv, e.text, e.args.size(), e);
            }
            case ExprKind::New: {
                for (const auto& a : e.args) expr(*a);
                return resolve_written(e.type);
            }
            case ExprKind::NewArray: {
                for (const auto& a : e.args) {
                    RType d = expr(*a);
                    if (!d.is_unknown() && !d.is_integral()) {
                        add(DiagKind::Other, first_ident(*a), idents_of(*a),
                            "array dimension must be integral");
                    }
                }
                TypeRef base = e.type;
                base.array_dims = 0;
                RType bt = resolve_written(base);
                if (e.second) (void)init_type(*e.second, RType::unknown());
                if (bt.is_unknown()) return RType::unknown();
                return RType{bt.k, bt.name, e.type.array_dims};
            }
            case ExprKind::ArrayInit:
                return init_type(e, RType::unknown());
            case ExprKind::ArrayAccess: {
                RType arr = expr(*e.base);
                RType idx = expr(*e.second);
                if (!idx.is_unknown() && !idx.is_integral()) {
                    add(DiagKind::Other, first_ident(*e.second), idents_of(*e.second),
                        "array index must be integral");
                }
                if (arr.is_unknown()) return RType::unknown();
                if (!arr.is_array()) {
                    add(DiagKind::Other, first_ident(*e.base), idents_of(*e.base),
                        "indexed value is not an array");
                    return RType::unknown();
                }
                RType elem = arr;
                --elem.dims;
                if (elem.dims == 0 && elem.k == RType::K::Reference &&
                    is_primitive_name(elem.name)) {
                    elem.k = RType::K::Primitive;
                }
                return elem;
            }
            case ExprKind::Unary: {
                RType t = expr(*e.base);
                if (e.text == "!") {
                    check_boolean(t, *e.base, "operator !");
                    return RType::primitive("boolean");
                }
                if (t.is_unknown()) return t;
                if (!t.is_numeric()) {
                    add(DiagKind::Other, first_ident(*e.base), idents_of(*e.base),
                        "operator " + e.text + " requires a numeric operand");
                    return RType::unknown();
                }
                if (e.text == "++" || e.text == "--") return t;
                if (e.text == "~") return promote_unary(t);
                return promote_unary(t);
            }
            case ExprKind::Binary:
                return binary(e);
            case ExprKind::Assign:
                return assign(e);
            case ExprKind::Ternary: {
                check_boolean(expr(*e.base), *e.base, "conditional");
                RType a = expr(*e.args[0]);
                RType b = expr(*e.args[1]);
                if (a.is_unknown() || b.is_unknown()) return RType::unknown();
                if (a.k == b.k && a.name == b.name && a.dims == b.dims) return a;
                if (a.is_numeric() && b.is_numeric()) return promote_numeric(a, b);
                if (a.is_null()) return b;
                if (b.is_null()) return a;
                return RType::unknown();
            }
            case ExprKind::Cast: {
                expr(*e.base);
                return resolve_written(e.type);
            }
            case ExprKind::InstanceOf: {
                expr(*e.base);
                resolve_written(e.type);
                return RType::primitive("boolean");
            }
        }
        return RType::unknown();
    }

    RType binary(const Expr& e) {
        const std::string& op = e.text;
        RType l = expr(*e.base);
        RType r = expr(*e.second);
        auto both_known = [&] { return !l.is_unknown() && !r.is_unknown(); };
        auto operand_error = [&](const char* msg) {
            std::set<std::string> mentions = idents_of(*e.base);
            auto rm = idents_of(*e.second);
            mentions.insert(rm.begin(), rm.end());
            add(DiagKind::Other, mentions.empty() ? "<expr>" : *mentions.begin(),
                mentions, msg);
        };

        if (op == "+") {
            if (l.is_string() || r.is_string()) return RType::reference("java.lang.String");
            if (!both_known()) return RType::unknown();
            if (l.is_numeric() && r.is_numeric()) return promote_numeric(l, r);
            operand_error("operator + requires numeric or string operands");
            return RType::unknown();
        }
        if (op == "-" || op == "*" || op == "/" || op == "%") {
            if (!both_known()) return RType::unknown();
            if (l.is_numeric() && r.is_numeric()) return promote_numeric(l, r);
            operand_error("arithmetic requires numeric operands");
            return RType::unknown();
        }
        if (op == "<" || op == ">" || op == "<=" || op == ">=") {
            if (both_known() && (!l.is_numeric() || !r.is_numeric())) {
                operand_error("comparison requires numeric operands");
            }
            return RType::primitive("boolean");
        }
        if (op == "==" || op == "!=") {
            if (both_known()) {
                bool ok = (l.is_numeric() && r.is_numeric()) ||
                          (l.is_boolean() && r.is_boolean()) ||
                          (l.is_reference_like() && r.is_reference_like());
                if (!ok) operand_error("incomparable operands");
            }
            return RType::primitive("boolean");
        }
        if (op == "&&" || op == "||") {
            check_boolean(l, *e.base, op.c_str());
            check_boolean(r, *e.second, op.c_str());
            return RType::primitive("boolean");
        }
        if (op == "&" || op == "|" || op == "^") {
            if (!both_known()) return RType::unknown();
            if (l.is_boolean() && r.is_boolean()) return RType::primitive("boolean");
            if (l.is_integral() && r.is_integral()) return promote_numeric(l, r);
            operand_error("bitwise operator requires integral or boolean operands");
            return RType::unknown();
        }
        if (op == "<<" || op == ">>" || op == ">>>") {
            if (!both_known()) return RType::unknown();
            if (l.is_integral() && r.is_integral()) return promote_unary(l);
            operand_error("shift requires integral operands");
            return RType::unknown();
        }
        return RType::unknown();
    }

    RType assign(const Expr& e) {
        RType value = expr(*e.second);
        RType target;
        if (e.base->kind == ExprKind::Name) {
            if (RType* t = lookup(e.base->text)) {
                target = *t;
            } else {
                add(DiagKind::MissingVariable, e.base->text, {}, "undeclared variable");
                return RType::unknown();
            }
        } else {
            target = expr(*e.base);
        }
        if (e.text == "=") {
            if (!assignable(target, value, cat_)) {
                std::set<std::string> mentions = idents_of(*e.second);
                auto lm = idents_of(*e.base);
                mentions.insert(lm.begin(), lm.end());
                add(DiagKind::Other, first_ident(*e.base), mentions,
                    "assignment type mismatch");
            }
            return target;
        }
        // Compound assignment: operands follow the matching binary operator.
        if (target.is_unknown() || value.is_unknown()) return target;
        std::string op = e.text.substr(0, e.text.size() - 1);
        bool ok;
        if (op == "+") {
            ok = target.is_string() || (target.is_numeric() && value.is_numeric());
        } else if (op == "&" || op == "|" || op == "^") {
            ok = (target.is_boolean() && value.is_boolean()) ||
                 (target.is_integral() && value.is_integral());
        } else if (op == "<<" || op == ">>" || op == ">>>") {
            ok = target.is_integral() && value.is_integral();
        } else {
            ok = target.is_numeric() && value.is_numeric();
        }
        if (!ok) {
            std::set<std::string> mentions = idents_of(*e.second);
            auto lm = idents_of(*e.base);
            mentions.insert(lm.begin(), lm.end());
            add(DiagKind::Other, first_ident(*e.base), mentions,
                "compound assignment type mismatch");
        }
        return target;
    }
};

}  // namespace

std::vector<Diagnostic> analyze(const MethodModel& draft,
                                const ResolutionState& state,
                                const TypeCatalog& catalog) {
    return Analyzer(draft, state, catalog).run();
}

TypeRef get_type_of_exp(const ast::Expr& expr,
                        const ScopeTypes& scope,
                        const ResolutionState& state,
                        const catalog::TypeCatalog& catalog) {
    MethodModel empty;
    Analyzer a(empty, state, catalog);
    RType t = a.type_one(expr, scope);
    if (!a.clean() || t.is_unknown() || t.is_null() || t.is_void()) {
        throw UntypeableError(ast::render_expr(expr));
    }
    return t.to_type_ref();
}

TypeRef canonical_type(const TypeRef& written,
                       const ResolutionState& state,
                       const catalog::TypeCatalog& catalog) {
    Binder binder(state, catalog);
    std::string missing;
    RType t = binder.resolve(written, &missing);
    if (t.is_unknown()) return TypeRef{};
    TypeRef out = t.to_type_ref();
    return out;
}

}  // namespace apizer::resolver
