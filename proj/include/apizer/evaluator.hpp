#pragma once

#include <string>
#include <vector>

#include "apizer/ast.hpp"

namespace apizer::eval {

/// One parameter with its reference-site fingerprint: the sorted pre-order
/// node positions in the method body where the identifier occurs free.
struct ParamInfo {
    std::string type;  // normalized (java.lang prefix stripped)
    std::string name;
    std::vector<int> sites;
};

struct ParamSet {
    std::vector<ParamInfo> params;
    size_t size() const { return params.size(); }
};

ParamSet make_param_set(const ast::MethodInfo& m);

/// Same type, same identifier, and identical reference sites.
bool params_identical(const ParamInfo& a, const ParamInfo& b);

/// 1 - |intersection| / |union|; 0.0 when both sets are empty.
double jaccard_distance(const ParamSet& a, const ParamSet& b);

enum class ReturnCategory { VoidVoid, VoidNonvoid, NonvoidVoid, NonvoidNonvoid };

const char* to_string(ReturnCategory c);

/// Category by return types (first method, second method); equivalent iff
/// both void, or both non-void with the same return type and structurally
/// equal return statements after normalize_return and alpha renaming.
std::pair<ReturnCategory, bool> return_equivalence(const ast::MethodInfo& a,
                                                   const ast::MethodInfo& b);

/// Fuses a trailing "T v = expr; return v;" into "return expr;".
ast::MethodInfo normalize_return(const ast::MethodInfo& m);

/// Differing AST nodes between the two methods, ignoring method names;
/// whitespace and comments never reach the AST. 0 iff structurally identical.
int ast_diff_count(const ast::MethodInfo& a, const ast::MethodInfo& b);

/// Canonical variable renaming: each declared variable becomes
/// lowercase(simple type name) + progressive id per type, in declaration
/// order. Comments and blank lines are gone from the rendered result.
std::string alpha_rename(const std::string& source);

ast::SnippetAst alpha_rename_unit(const ast::SnippetAst& unit);
ast::MethodInfo alpha_rename_method(const ast::MethodInfo& m);

/// Multiset line containment of the alpha-renamed snippet in the
/// alpha-renamed method; clone iff ratio >= threshold.
std::pair<double, bool> type3_containment(const std::string& snippet,
                                          const std::string& method,
                                          double threshold = 0.70);

struct EvalReport {
    bool params_equivalent = false;
    int missing = 0;   // |P_H \ P_A|
    int common = 0;    // |P_H ∩ P_A|
    int spurious = 0;  // |P_A \ P_H|
    double jaccard = 0.0;
    ReturnCategory return_category = ReturnCategory::VoidVoid;
    bool return_equivalent = false;
    int ast_diff = 0;
};

/// Full comparison of a human/tool method pair (human first).
EvalReport evaluate_pair(const ast::MethodInfo& human, const ast::MethodInfo& tool);

/// Parses a source file expected to contain exactly one method (bare or
/// wrapped in a single class). Throws ParseError when it does not.
ast::MethodInfo parse_single_method(const std::string& source);

}  // namespace apizer::eval
