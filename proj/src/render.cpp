#include <algorithm>
#include <sstream>

#include "apizer/ast.hpp"

namespace apizer::ast {

namespace {

// Binary precedence used to decide where parentheses are required when
// printing; mirrors the parser's table.
int binary_prec(const std::string& op) {
    if (op == "||") return 0;
    if (op == "&&") return 1;
    if (op == "|") return 2;
    if (op == "^") return 3;
    if (op == "&") return 4;
    if (op == "==" || op == "!=") return 5;
    if (op == "<" || op == ">" || op == "<=" || op == ">=") return 6;
    if (op == "<<" || op == ">>" || op == ">>>") return 7;
    if (op == "+" || op == "-") return 8;
    return 9;  // * / %
}

// Overall expression precedence tiers (higher binds tighter).
constexpr int kPrecAssign = 1;
constexpr int kPrecTernary = 2;
constexpr int kPrecBinaryBase = 3;  // + binary_prec
constexpr int kPrecUnary = 14;
constexpr int kPrecPostfix = 15;
constexpr int kPrecPrimary = 16;

int precedence(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Assign: return kPrecAssign;
        case ExprKind::Ternary: return kPrecTernary;
        case ExprKind::Binary: return kPrecBinaryBase + binary_prec(e.text);
        case ExprKind::InstanceOf: return kPrecBinaryBase + 6;
        case ExprKind::Cast: return kPrecUnary;
        case ExprKind::Unary: return e.prefix ? kPrecUnary : kPrecPostfix;
        case ExprKind::New:
        case ExprKind::NewArray: return kPrecPostfix;
        case ExprKind::MethodCall:
        case ExprKind::FieldAccess:
        case ExprKind::ArrayAccess: return kPrecPostfix;
        default: return kPrecPrimary;
    }
}

void render(const Expr& e, std::ostream& out);

void render_child(const Expr& child, int parent_prec, bool needs_parens_on_equal,
                  std::ostream& out) {
    int cp = precedence(child);
    bool parens = cp < parent_prec || (cp == parent_prec && needs_parens_on_equal);
    if (parens) out << '(';
    render(child, out);
    if (parens) out << ')';
}

void render_args(const std::vector<ExprPtr>& args, std::ostream& out) {
    out << '(';
    for (size_t i = 0; i < args.size(); ++i) {
        if (i) out << ", ";
        render(*args[i], out);
    }
    out << ')';
}

void render(const Expr& e, std::ostream& out) {
    switch (e.kind) {
        case ExprKind::IntLit:
        case ExprKind::LongLit:
        case ExprKind::FloatLit:
        case ExprKind::DoubleLit:
        case ExprKind::CharLit:
        case ExprKind::StringLit:
        case ExprKind::BoolLit:
        case ExprKind::NullLit:
        case ExprKind::Name:
            out << e.text;
            return;
        case ExprKind::FieldAccess:
            render_child(*e.base, kPrecPostfix, false, out);
            out << '.' << e.text;
            return;
        case ExprKind::MethodCall:
            if (e.base) {
                render_child(*e.base, kPrecPostfix, false, out);
                out << '.';
            }
            out << e.text;
            render_args(e.args, out);
            return;
        case ExprKind::New:
            out << "new " << e.type.to_string();
            render_args(e.args, out);
            return;
        case ExprKind::NewArray: {
            TypeRef base = e.type;
            base.array_dims = 0;
            out << "new " << base.to_string();
            int stated = static_cast<int>(e.args.size());
            for (int i = 0; i < e.type.array_dims; ++i) {
                out << '[';
                if (i < stated) render(*e.args[i], out);
                out << ']';
            }
            if (e.second) {
                out << ' ';
                render(*e.second, out);
            }
            return;
        }
        case ExprKind::ArrayInit: {
            out << '{';
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i) out << ", ";
                render(*e.args[i], out);
            }
            out << '}';
            return;
        }
        case ExprKind::ArrayAccess:
            render_child(*e.base, kPrecPostfix, false, out);
            out << '[';
            render(*e.second, out);
            out << ']';
            return;
        case ExprKind::Unary:
            if (e.prefix) {
                out << e.text;
                // Guard sign-adjacent unaries: -(-a), +(+a).
                bool parens = (e.text == "-" || e.text == "+") &&
                              e.base->kind == ExprKind::Unary &&
                              e.base->prefix &&
                              (e.base->text == e.text || e.base->text == e.text + e.text);
                if (parens) {
                    out << '(';
                    render(*e.base, out);
                    out << ')';
                } else {
                    render_child(*e.base, kPrecUnary, false, out);
                }
            } else {
                render_child(*e.base, kPrecPostfix, false, out);
                out << e.text;
            }
            return;
        case ExprKind::Binary: {
            int prec = kPrecBinaryBase + binary_prec(e.text);
            render_child(*e.base, prec, false, out);
            out << ' ' << e.text << ' ';
            render_child(*e.second, prec, true, out);
            return;
        }
        case ExprKind::InstanceOf:
            render_child(*e.base, kPrecBinaryBase + 6, false, out);
            out << " instanceof " << e.type.to_string();
            return;
        case ExprKind::Assign:
            render_child(*e.base, kPrecPostfix, false, out);
            out << ' ' << e.text << ' ';
            render_child(*e.second, kPrecAssign, false, out);
            return;
        case ExprKind::Ternary:
            render_child(*e.base, kPrecTernary + 1, false, out);
            out << " ? ";
            render(*e.args[0], out);
            out << " : ";
            render_child(*e.args[1], kPrecTernary, false, out);
            return;
        case ExprKind::Cast:
            out << '(' << e.type.to_string() << ") ";
            render_child(*e.base, kPrecUnary, false, out);
            return;
    }
}

class Printer {
public:
    explicit Printer(std::ostream& out) : out_(out) {}

    void statements(const std::vector<StmtPtr>& stmts, int indent) {
        for (const auto& s : stmts) statement(*s, indent);
    }

    void statement(const Stmt& s, int indent) {
        switch (s.node) {
            case StmtNode::LocalDecl:
                line_start(indent);
                for (const auto& mod : s.modifiers) out_ << mod << ' ';
                out_ << s.type.to_string() << ' ' << s.name;
                if (s.expr) {
                    out_ << " = ";
                    render(*s.expr, out_);
                }
                out_ << ";\n";
                return;
            case StmtNode::ExprStatement:
                line_start(indent);
                render(*s.expr, out_);
                out_ << ";\n";
                return;
            case StmtNode::If:
                line_start(indent);
                if_chain(s, indent);
                return;
            case StmtNode::While:
                line_start(indent);
                out_ << "while (";
                render(*s.expr, out_);
                out_ << ") {\n";
                statements(s.body, indent + 1);
                close(indent);
                return;
            case StmtNode::DoWhile:
                line_start(indent);
                out_ << "do {\n";
                statements(s.body, indent + 1);
                line_start(indent);
                out_ << "} while (";
                render(*s.expr, out_);
                out_ << ");\n";
                return;
            case StmtNode::For: {
                line_start(indent);
                out_ << "for (";
                for (size_t i = 0; i < s.init_stmts.size(); ++i) {
                    if (i) out_ << ", ";
                    const Stmt& in = *s.init_stmts[i];
                    if (in.node == StmtNode::LocalDecl) {
                        if (i == 0) out_ << in.type.to_string() << ' ';
                        out_ << in.name;
                        if (in.expr) {
                            out_ << " = ";
                            render(*in.expr, out_);
                        }
                    } else {
                        render(*in.expr, out_);
                    }
                }
                out_ << "; ";
                if (s.expr) render(*s.expr, out_);
                out_ << "; ";
                for (size_t i = 0; i < s.updates.size(); ++i) {
                    if (i) out_ << ", ";
                    render(*s.updates[i], out_);
                }
                out_ << ") {\n";
                statements(s.body, indent + 1);
                close(indent);
                return;
            }
            case StmtNode::ForEach:
                line_start(indent);
                out_ << "for (" << s.type.to_string() << ' ' << s.name << " : ";
                render(*s.expr, out_);
                out_ << ") {\n";
                statements(s.body, indent + 1);
                close(indent);
                return;
            case StmtNode::Try:
                line_start(indent);
                out_ << "try {\n";
                statements(s.body, indent + 1);
                for (const auto& c : s.catches) {
                    line_start(indent);
                    out_ << "} catch (" << c.type.to_string() << ' ' << c.name << ") {\n";
                    statements(c.body, indent + 1);
                }
                if (s.has_finally) {
                    line_start(indent);
                    out_ << "} finally {\n";
                    statements(s.else_body, indent + 1);
                }
                close(indent);
                return;
            case StmtNode::Return:
                line_start(indent);
                out_ << "return";
                if (s.expr) {
                    out_ << ' ';
                    render(*s.expr, out_);
                }
                out_ << ";\n";
                return;
            case StmtNode::Break:
                line_start(indent);
                out_ << "break;\n";
                return;
            case StmtNode::Continue:
                line_start(indent);
                out_ << "continue;\n";
                return;
            case StmtNode::Throw:
                line_start(indent);
                out_ << "throw ";
                render(*s.expr, out_);
                out_ << ";\n";
                return;
            case StmtNode::Block:
                line_start(indent);
                out_ << "{\n";
                statements(s.body, indent + 1);
                close(indent);
                return;
            case StmtNode::Empty:
                line_start(indent);
                out_ << ";\n";
                return;
            case StmtNode::Switch:
                line_start(indent);
                out_ << "switch (";
                render(*s.expr, out_);
                out_ << ") {\n";
                for (const auto& c : s.cases) {
                    for (const auto& label : c.labels) {
                        line_start(indent + 1);
                        out_ << "case ";
                        render(*label, out_);
                        out_ << ":\n";
                    }
                    if (c.is_default) {
                        line_start(indent + 1);
                        out_ << "default:\n";
                    }
                    statements(c.body, indent + 2);
                }
                close(indent);
                return;
            case StmtNode::MethodDecl:
                method(*s.method, indent);
                return;
            case StmtNode::ClassDecl: {
                const ClassInfo& c = *s.cls;
                line_start(indent);
                for (const auto& m : c.modifiers) out_ << m << ' ';
                out_ << "class " << c.name;
                if (!c.heritage.empty()) out_ << ' ' << c.heritage;
                out_ << " {\n";
                for (const auto& f : c.fields) statement(*f, indent + 1);
                for (const auto& m : c.methods) method(*m, indent + 1);
                close(indent);
                return;
            }
            case StmtNode::Import:
                line_start(indent);
                out_ << "import " << s.name << ";\n";
                return;
        }
    }

    void method(const MethodInfo& m, int indent) {
        line_start(indent);
        for (const auto& mod : m.modifiers) out_ << mod << ' ';
        out_ << m.return_type.to_string() << ' ' << m.name << '(';
        for (size_t i = 0; i < m.params.size(); ++i) {
            if (i) out_ << ", ";
            out_ << m.params[i].type.to_string() << ' ' << m.params[i].name;
        }
        out_ << ')';
        if (!m.throws.empty()) {
            out_ << " throws ";
            for (size_t i = 0; i < m.throws.size(); ++i) {
                if (i) out_ << ", ";
                out_ << m.throws[i].to_string();
            }
        }
        if (!m.has_body) {
            out_ << ";\n";
            return;
        }
        out_ << " {\n";
        statements(m.body, indent + 1);
        close(indent);
    }

private:
    void line_start(int indent) {
        for (int i = 0; i < indent; ++i) out_ << "    ";
    }

    void close(int indent) {
        line_start(indent);
        out_ << "}\n";
    }

    void if_chain(const Stmt& s, int indent) {
        out_ << "if (";
        render(*s.expr, out_);
        out_ << ") {\n";
        statements(s.body, indent + 1);
        const Stmt* cursor = &s;
        while (!cursor->else_body.empty()) {
            line_start(indent);
            if (cursor->else_body.size() == 1 &&
                cursor->else_body[0]->node == StmtNode::If) {
                const Stmt& next = *cursor->else_body[0];
                out_ << "} else if (";
                render(*next.expr, out_);
                out_ << ") {\n";
                statements(next.body, indent + 1);
                cursor = &next;
                continue;
            }
            out_ << "} else {\n";
            statements(cursor->else_body, indent + 1);
            break;
        }
        close(indent);
    }

    std::ostream& out_;
};

}  // namespace

std::string render_expr(const Expr& e) {
    std::ostringstream out;
    render(e, out);
    return out.str();
}

std::string render_statement(const Stmt& s, int indent) {
    std::ostringstream out;
    Printer(out).statement(s, indent);
    return out.str();
}

std::string render_statements(const std::vector<StmtPtr>& stmts, int indent) {
    std::ostringstream out;
    Printer(out).statements(stmts, indent);
    return out.str();
}

std::string render_method(const MethodInfo& m, int indent) {
    std::ostringstream out;
    Printer(out).method(m, indent);
    return out.str();
}

std::string render_unit(const MethodInfo& m,
                        const std::vector<std::string>& imports,
                        const std::string& class_name,
                        const std::string& javadoc) {
    std::string why;
    if (!is_well_formed(m, &why)) {
        throw ConsistencyError(why);
    }

    std::ostringstream out;
    std::vector<std::string> sorted = imports;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (const auto& imp : sorted) {
        out << "import " << imp << ";\n";
    }
    if (!sorted.empty()) out << "\n";

    if (!javadoc.empty()) {
        out << "/**\n";
        std::istringstream lines(javadoc);
        std::string line;
        while (std::getline(lines, line)) {
            // '*/' inside the text would terminate the comment early.
            size_t p;
            while ((p = line.find("*/")) != std::string::npos) {
                line.replace(p, 2, "*\\/");
            }
            out << " * " << line << "\n";
        }
        out << " */\n";
    }

    out << "public class " << class_name << " {\n";

    // Shorten qualified parameter/return types covered by an import or by
    // java.lang; body statements are printed as written.
    auto shorten = [&](const TypeRef& t) {
        TypeRef r = t;
        const std::string& q = t.name;
        auto dot = q.rfind('.');
        if (dot != std::string::npos) {
            std::string simple = q.substr(dot + 1);
            std::string pkg = q.substr(0, dot);
            bool covered = pkg == "java.lang";
            for (const auto& imp : sorted) {
                if (imp == q) covered = true;
            }
            if (covered) r.name = simple;
        }
        return r;
    };

    MethodInfo printed = m;
    printed.return_type = shorten(m.return_type);
    for (auto& p : printed.params) p.type = shorten(p.type);
    for (auto& t : printed.throws) t = shorten(t);

    Printer(out).method(printed, 1);
    out << "}\n";
    return out.str();
}

}  // namespace apizer::ast
