#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "apizer/ast.hpp"
#include "apizer/catalog.hpp"
#include "apizer/types.hpp"

namespace apizer::resolver {

enum class DiagKind { MissingType, MissingVariable, Other };

struct Diagnostic {
    DiagKind kind;
    std::string identifier;   // offending identifier
    int stmt_index = -1;      // top-level statement index; -1 for imports
    std::set<std::string> mentions;  // identifiers involved; used by recovery
    std::string detail;

    bool mentions_var(const std::string& v) const { return mentions.count(v) > 0; }
};

struct ResolutionState {
    std::vector<std::string> imports;  // qualified names, insertion order
    std::set<std::string> libraries;   // library ids backing the imports

    bool has_import(const std::string& qualified) const;
    /// True when some import already binds this simple name.
    bool binds_simple(const std::string& simple) const;
    void add_import(const std::string& qualified, const std::string& library);
};

/// The draft surface the diagnostic engine sees: parameters, body, return type.
struct MethodModel {
    std::vector<ast::Param> params;
    std::vector<ast::StmtPtr> body;
    TypeRef return_type{"void"};
};

class UnresolvableError : public std::runtime_error {
public:
    explicit UnresolvableError(const std::string& identifier)
        : std::runtime_error("unresolvable type name: " + identifier),
          identifier_(identifier) {}
    const std::string& identifier() const { return identifier_; }

private:
    std::string identifier_;
};

class UnrecoverableError : public std::runtime_error {
public:
    explicit UnrecoverableError(const std::string& variable)
        : std::runtime_error("cannot recover a type for variable: " + variable),
          variable_(variable) {}
    const std::string& variable() const { return variable_; }

private:
    std::string variable_;
};

class UntypeableError : public std::runtime_error {
public:
    explicit UntypeableError(const std::string& expr_text)
        : std::runtime_error("cannot type expression: " + expr_text) {}
};

/// Diagnoses the draft against the catalog: unresolved type names
/// (missing-type), identifiers used in value position with no declaration in
/// scope (missing-variable), and everything else the pipeline cannot repair
/// (member lookups that fail on a known receiver, incompatible
/// initializations, this/super, nested declarations) as kind=other.
/// Deterministic order: statement index, then identifier, then kind.
std::vector<Diagnostic> analyze(const MethodModel& draft,
                                const ResolutionState& state,
                                const catalog::TypeCatalog& catalog);

/// Greedy package clustering over the unresolved simple names carried by
/// missing-type diagnostics. Packages covering more names win; ties prefer
/// packages already imported, then java.* packages, then lexicographic
/// order. Each tentative package is kept only when re-running analyze
/// strictly decreases the missing-type count. Throws UnresolvableError when
/// a name has no candidates (or none that help).
ResolutionState resolve_imports(const std::vector<Diagnostic>& missing_types,
                                const MethodModel& draft,
                                ResolutionState state,
                                const catalog::TypeCatalog& catalog);

/// Usage-based type recovery for an undeclared variable: candidates are
/// gathered from the variable's usages (receiver of calls, operand of
/// numeric/string operators, call argument, assignment source, and similar),
/// then validated by substituting a synthetic parameter and requiring
/// analyze to report no diagnostic mentioning the variable. Candidate order:
/// numeric primitives (int first), then java.lang types, then the rest
/// lexicographically. Throws UnrecoverableError when nothing validates.
std::pair<TypeRef, ResolutionState> recover_var_type(
    const std::string& variable,
    const MethodModel& draft,
    ResolutionState state,
    const catalog::TypeCatalog& catalog);

using ScopeTypes = std::map<std::string, TypeRef>;

/// Types an expression under the given variable typing: literals by kind,
/// variables through the scope map, calls through the catalog, numeric
/// promotion for arithmetic, java.lang.String for string concatenation.
/// Returns a canonical qualified type. Throws UntypeableError.
TypeRef get_type_of_exp(const ast::Expr& expr,
                        const ScopeTypes& scope,
                        const ResolutionState& state,
                        const catalog::TypeCatalog& catalog);

/// Resolves a source-level type to its canonical qualified spelling
/// (imports, then java.lang); returns an empty TypeRef when unresolved.
TypeRef canonical_type(const TypeRef& written,
                       const ResolutionState& state,
                       const catalog::TypeCatalog& catalog);

}  // namespace apizer::resolver
