#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "apizer/ast.hpp"
#include "apizer/catalog.hpp"
#include "apizer/resolver.hpp"

namespace apizer::pipeline {

/// Q&A page metadata carried alongside a snippet.
struct SoPage {
    std::string title;
    std::string url;
    long answer_id = 0;
    long question_id = 0;
};

/// The method under construction. Types in the parameter list and the return
/// type are kept canonical (qualified names); body statements stay as parsed.
struct ApiDraft {
    std::vector<std::string> modifiers{"public", "static"};
    TypeRef return_type{"void"};
    std::string name;
    std::vector<ast::Param> params;
    std::vector<TypeRef> throws{TypeRef("java.lang.Exception")};
    std::vector<ast::StmtPtr> body;
    resolver::ResolutionState resolution;

    resolver::MethodModel model() const;
    ast::MethodInfo to_method_info() const;
};

/// Per-snippet analysis state for the hard-coded-initialization scan.
struct ScopeState {
    std::map<std::string, TypeRef> types;          // variable -> type
    std::map<std::string, size_t> decl_statement;  // variable -> declaring stmt
    std::set<std::string> already_init;
    std::set<std::string> loop_vars;
};

enum class Outcome { Apized, AlreadyApi, Skipped, Failed };

struct ApizationResult {
    Outcome outcome = Outcome::Failed;
    std::string reason;  // set for Skipped/Failed
    ApiDraft draft;      // valid for Apized/AlreadyApi
    std::string class_name;
    std::string javadoc;
    int fix_iterations = 0;

    bool ok() const { return outcome == Outcome::Apized || outcome == Outcome::AlreadyApi; }
    std::string render() const;
};

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded() : std::runtime_error("time budget exceeded") {}
};

/// Deadline handle threaded through the pipeline; never expires by default.
class Deadline {
public:
    Deadline() = default;
    explicit Deadline(double seconds)
        : at_(std::chrono::steady_clock::now() +
              std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                  std::chrono::duration<double>(seconds))) {}

    void check() const {
        if (at_ && std::chrono::steady_clock::now() > *at_) throw BudgetExceeded();
    }

private:
    std::optional<std::chrono::steady_clock::time_point> at_;
};

/// Variables assigned (including compound assignment and ++/--, and element
/// stores) anywhere inside a loop body or loop update, at any nesting depth.
std::set<std::string> get_loop_changing_vars(const std::vector<ast::StmtPtr>& body);

/// Hard-coded initializer test. Primitive or String: no identifiers in the
/// initializer. Container (Collection/Map subtype) or array: more than one
/// element insertion in the following statements, or (arrays) an all-literal
/// initializer.
bool is_hard_coded(const TypeRef& declared_type,
                   const ast::Expr& init,
                   const std::vector<ast::StmtPtr>& following,
                   const std::string& variable,
                   const ScopeState& scope,
                   const resolver::ResolutionState& state,
                   const catalog::TypeCatalog& catalog);

/// Undeclared-variable extraction: recovers a type for every variable with a
/// missing-variable diagnostic (in diagnostic order) and appends it to the
/// parameter list. Throws resolver::UnrecoverableError.
void extract_parameters_p1(ApiDraft& draft, ScopeState& scope,
                           const std::vector<resolver::Diagnostic>& missing_vars,
                           const catalog::TypeCatalog& catalog,
                           const Deadline& deadline);

/// Hard-coded-initialization extraction over top-level statements.
void extract_parameters_p2(ApiDraft& draft, ScopeState& scope,
                           const catalog::TypeCatalog& catalog);

/// Last-statement conversion: a final declaration/assignment or
/// System.out.println becomes the return statement. A trailing try wrapper
/// is transparent. Throws resolver::UntypeableError.
void extract_return(ApiDraft& draft, ScopeState& scope,
                    const catalog::TypeCatalog& catalog);

/// The whole pipeline over one snippet.
ApizationResult apize(const std::string& snippet_text,
                      const SoPage& page,
                      const catalog::TypeCatalog& catalog,
                      double budget_seconds = 0.0,
                      const std::string& verb_lexicon_path = "");

}  // namespace apizer::pipeline
