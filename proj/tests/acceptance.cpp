// Acceptance suite: one criterion per runner, one PASS/FAIL line each.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "apizer/evaluator.hpp"
#include "apizer/jobs.hpp"
#include "apizer/pipeline.hpp"
#include "apizer/resolver.hpp"
#include "testutil.hpp"

namespace {

using namespace apizer;
using pipeline::ApizationResult;
using pipeline::Outcome;

struct Failure : std::runtime_error {
    explicit Failure(const std::string& msg) : std::runtime_error(msg) {}
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw Failure(msg);
}

template <typename T>
void require_eq(const T& got, const T& want, const std::string& what) {
    if (!(got == want)) {
        std::ostringstream os;
        os << what << ": got ";
        if constexpr (std::is_convertible_v<T, std::string>) {
            os << "'" << got << "' want '" << want << "'";
        } else {
            os << "<value mismatch>";
        }
        throw Failure(os.str());
    }
}

int g_passed = 0;
int g_failed = 0;

void criterion(const std::string& name, const std::function<void()>& body) {
    auto start = std::chrono::steady_clock::now();
    try {
        body();
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cout << "PASS  " << name << "  (" << ms << " ms)" << std::endl;
        ++g_passed;
    } catch (const std::exception& e) {
        std::cout << "FAIL  " << name << ": " << e.what() << std::endl;
        ++g_failed;
    }
}

std::vector<std::pair<std::string, std::string>> param_list(
    const pipeline::ApiDraft& d) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& p : d.params) out.emplace_back(p.type.to_string(), p.name);
    return out;
}

double seconds_to_apize(const std::string& snippet, long id,
                        ApizationResult* out) {
    auto start = std::chrono::steady_clock::now();
    *out = pipeline::apize(snippet, testutil::page(id), testutil::bundled_catalog());
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

// ---------------------------------------------------------------------------
// Shared randomized corpus (criteria 4 and 8).

struct CorpusEntry {
    std::string text;
    ApizationResult result;
    size_t initial_diags = 0;
};

const std::vector<CorpusEntry>& corpus500() {
    static const std::vector<CorpusEntry> corpus = [] {
        std::vector<CorpusEntry> out;
        for (unsigned seed = 1000; seed < 1500; ++seed) {
            testutil::SnippetGen gen(seed);
            CorpusEntry entry;
            entry.text = gen.straight_line(false).text;
            // Initial diagnostic count, measured independently of the loop.
            resolver::MethodModel model;
            model.body = ast::parse_snippet(entry.text).statements;
            resolver::ResolutionState state;
            entry.initial_diags =
                resolver::analyze(model, state, testutil::bundled_catalog()).size();
            entry.result = pipeline::apize(entry.text, testutil::page(seed),
                                           testutil::bundled_catalog());
            out.push_back(std::move(entry));
        }
        return out;
    }();
    return corpus;
}

// ---------------------------------------------------------------------------

void criterion1_fig1(const char*) {
    ApizationResult result;
    double elapsed = seconds_to_apize(testutil::kFig1Snippet, 2109186, &result);
    require(result.outcome == Outcome::Apized, "outcome is not apized: " + result.reason);
    require(elapsed < 1.0, "took " + std::to_string(elapsed) + "s");

    auto params = param_list(result.draft);
    require(params == std::vector<std::pair<std::string, std::string>>{
                          {"int", "week"}, {"int", "year"}},
            "parameters are not exactly {(int, week), (int, year)}");
    require_eq(result.draft.return_type.to_string(), std::string("java.util.Date"),
               "return type");
    require_eq(ast::render_statement(*result.draft.body.back(), 0),
               std::string("return calendar.getTime();\n"), "last statement");

    std::vector<std::string> imports = result.draft.resolution.imports;
    std::sort(imports.begin(), imports.end());
    require(imports == std::vector<std::string>{"java.util.Calendar",
                                                "java.util.Date"},
            "imports are not {java.util.Calendar, java.util.Date}");

    // A hand-written reference method for the same snippet, identical up to
    // the method name.
    const char* human_text =
        "import java.util.Calendar;\n"
        "import java.util.Date;\n"
        "public class Human2109186 {\n"
        "    public static Date getDateForWeek(int week, int year) throws Exception {\n"
        "        Calendar calendar = Calendar.getInstance();\n"
        "        calendar.clear();\n"
        "        calendar.set(Calendar.WEEK_OF_YEAR, week);\n"
        "        calendar.set(Calendar.YEAR, year);\n"
        "        calendar.set(Calendar.DAY_OF_WEEK, Calendar.MONDAY);\n"
        "        calendar.setFirstDayOfWeek(Calendar.MONDAY);\n"
        "        calendar.set(Calendar.HOUR_OF_DAY, 0);\n"
        "        calendar.set(Calendar.MINUTE, 0);\n"
        "        calendar.set(Calendar.SECOND, 0);\n"
        "        return calendar.getTime();\n"
        "    }\n"
        "}\n";
    ast::MethodInfo human = eval::parse_single_method(human_text);
    ast::MethodInfo tool = eval::parse_single_method(result.render());
    int diff = eval::ast_diff_count(human, tool);
    require(diff == 0, "ast_diff_count vs transcribed method = " + std::to_string(diff));
}

void criterion2_fig2(const char*) {
    ApizationResult top;
    double top_elapsed = seconds_to_apize(testutil::kFig2TopSnippet, 4846484, &top);
    require(top.outcome == Outcome::Apized, "top snippet: " + top.reason);
    require(top_elapsed < 1.0, "top snippet too slow");
    require(param_list(top.draft) ==
                std::vector<std::pair<std::string, std::string>>{
                    {"java.lang.String", "tag_xml"}},
            "top snippet: single java.lang.String parameter for tag_xml expected");
    require_eq(top.draft.return_type.to_string(), std::string("java.lang.String"),
               "top snippet return type");
    require_eq(ast::render_statement(*top.draft.body.back(), 0),
               std::string("return new BigInteger(1, digest).toString(16);\n"),
               "top snippet return statement");

    ApizationResult bottom;
    double bottom_elapsed =
        seconds_to_apize(testutil::kFig2BottomSnippet, 767910, &bottom);
    require(bottom.outcome == Outcome::Apized, "bottom snippet: " + bottom.reason);
    require(bottom_elapsed < 1.0, "bottom snippet too slow");
    auto params = param_list(bottom.draft);
    require(params == std::vector<std::pair<std::string, std::string>>{
                          {"java.lang.String", "str"}, {"java.lang.String", "findStr"}},
            "bottom snippet: parameters are not exactly {str, findStr}");
    for (const auto& [type, name] : params) {
        require(name != "lastIndex" && name != "count",
                "loop-changing variable extracted");
    }
    require_eq(bottom.draft.return_type.to_string(), std::string("int"),
               "bottom snippet return type");
    require_eq(ast::render_statement(*bottom.draft.body.back(), 0),
               std::string("return count;\n"), "bottom snippet return statement");
}

void criterion3_idempotence(const char*) {
    int failures = 0;
    for (unsigned seed = 0; seed < 50; ++seed) {
        testutil::SnippetGen gen(seed);
        std::string text = gen.straight_line(seed % 3 == 0).text;
        auto first = pipeline::apize(text, testutil::page(seed),
                                     testutil::bundled_catalog());
        if (first.outcome != Outcome::Apized) {
            ++failures;
            continue;
        }
        std::string rendered = first.render();
        auto second = pipeline::apize(rendered, testutil::page(seed),
                                      testutil::bundled_catalog());
        bool ok = second.outcome == Outcome::AlreadyApi;
        ok = ok && eval::ast_diff_count(second.draft.to_method_info(),
                                        eval::parse_single_method(rendered)) == 0;
        ok = ok && second.render() == rendered;
        if (!ok) ++failures;
    }
    require(failures == 0,
            std::to_string(failures) + "/50 corpus cases not idempotent");
}

void criterion4_well_formedness(const char*) {
    int failures = 0;
    for (const auto& entry : corpus500()) {
        if (entry.result.outcome != Outcome::Apized) {
            ++failures;
            continue;
        }
        const auto& draft = entry.result.draft;
        bool ok = resolver::analyze(draft.model(), draft.resolution,
                                    testutil::bundled_catalog())
                      .empty();
        ok = ok && ast::is_well_formed(draft.to_method_info());
        bool non_void = draft.return_type.to_string() != "void";
        ok = ok && (ast::body_has_value_return(draft.body) == non_void);
        if (!ok) ++failures;
    }
    require(failures == 0,
            std::to_string(failures) + "/500 drafts violate well-formedness");
}

void criterion5_p2_exclusion(const char*) {
    int failures = 0;
    for (unsigned seed = 2000; seed < 2200; ++seed) {
        testutil::SnippetGen gen(seed);
        auto g = gen.straight_line(true);
        auto result = pipeline::apize(g.text, testutil::page(seed),
                                      testutil::bundled_catalog());
        if (result.outcome != Outcome::Apized) {
            ++failures;
            continue;
        }
        for (const auto& p : result.draft.params) {
            if (g.loop_guarded.count(p.name)) ++failures;
        }
    }
    // The count-occurrences snippet is the canonical instance.
    auto fig2 = pipeline::apize(testutil::kFig2BottomSnippet, testutil::page(),
                                testutil::bundled_catalog());
    for (const auto& p : fig2.draft.params) {
        if (p.name == "lastIndex" || p.name == "count") ++failures;
    }
    require(failures == 0, std::to_string(failures) + " loop-changing extractions");
}

void criterion6_metric_suite(const char*) {
    using namespace apizer::eval;
    auto method_of = [](const std::string& s) { return parse_single_method(s); };

    // jaccard_distance tagged examples.
    auto wy1 = method_of("public static int f(int week, int year) { return week + year; }");
    auto wy2 = method_of("public static int g(int week, int year) { return week + year; }");
    require(jaccard_distance(make_param_set(wy1), make_param_set(wy2)) == 0.0,
            "identical parameter lists must have distance 0");
    auto e1 = method_of("public static void f() { g(); }");
    auto e2 = method_of("public static void h() { g(); }");
    require(jaccard_distance(make_param_set(e1), make_param_set(e2)) == 0.0,
            "both-empty must be 0.0");
    auto a1 = method_of("public static int f(int a) { return a; }");
    require(jaccard_distance(make_param_set(a1), make_param_set(e1)) == 1.0,
            "disjoint must be 1.0");

    // params_identical tagged examples.
    require(params_identical(make_param_set(wy1).params[0],
                             make_param_set(wy2).params[0]),
            "same type/name/sites must be identical");
    auto dx = method_of("public static double f(double x) { return x + 1; }");
    auto ix = method_of("public static int f(int x) { return x + 1; }");
    require(!params_identical(make_param_set(dx).params[0],
                              make_param_set(ix).params[0]),
            "different types must not be identical");
    auto ia = method_of("public static int f(int a) { return a; }");
    auto ib = method_of("public static int f(int b) { return b; }");
    require(!params_identical(make_param_set(ia).params[0],
                              make_param_set(ib).params[0]),
            "different identifiers must not be identical");

    // return_equivalence tagged examples.
    require(return_equivalence(e1, e2) == std::pair{ReturnCategory::VoidVoid, true},
            "void-void must be equivalent");
    auto d1 = method_of("public static Date f(Calendar c) { return c.getTime(); }");
    auto d2 = method_of("public static Date g(Calendar c) { return c.getTime(); }");
    require(return_equivalence(d1, d2) ==
                std::pair{ReturnCategory::NonvoidNonvoid, true},
            "matching Date returns must be equivalent");
    require(return_equivalence(e1, ix) ==
                std::pair{ReturnCategory::VoidNonvoid, false},
            "void vs int must be (void-nonvoid, false)");

    // normalize_return tagged examples.
    auto fuse = method_of("public static int f(int b, int c) { int a = b + c; return a; }");
    auto fused = normalize_return(fuse);
    require(fused.body.size() == 1 &&
                ast::render_statement(*fused.body[0], 0) == "return b + c;\n",
            "trailing declaration must fuse into the return");
    auto plain = method_of("public static int f(int x) { return x; }");
    require(ast::structurally_equal(normalize_return(plain), plain, false),
            "normalize_return must be a fixed point on plain returns");
    auto used = method_of("public static int f() { int a = g(); h(a); return a; }");
    require(normalize_return(used).body.size() == 3,
            "intervening use must block fusion");

    // ast_diff_count tagged examples.
    require(ast_diff_count(ia, ib) != 0, "renamed variables must differ");
    auto n1 = method_of("public static int f(int x) { return x + 1; }");
    auto n2 = method_of("public static int zz(int x) { return x + 1; }");
    require(ast_diff_count(n1, n2) == 0, "method names must be ignored");
    auto extra = method_of("public static int f(int x) { g(); return x + 1; }");
    require(ast_diff_count(n1, extra) >= 1, "an extra statement must count");

    // Table-style fixture: ten pairs with known return categories.
    struct Pair {
        const char* human;
        const char* tool;
    };
    std::vector<Pair> fixture = {
        // 3x void-void (all equivalent)
        {"public static void f(int a) { g(a); }", "public static void z(int a) { g(a); }"},
        {"public static void f() { g(); }", "public static void z() { h(); }"},
        {"public static void f(String s) { System.out.println(s); }",
         "public static void z(String s) { System.out.println(s); }"},
        // 1x void-nonvoid
        {"public static void f(int a) { g(a); }", "public static int z(int a) { return a; }"},
        // 2x nonvoid-void
        {"public static int f(int a) { return a; }", "public static void z(int a) { g(a); }"},
        {"public static String f() { return \"x\"; }", "public static void z() { g(); }"},
        // 4x nonvoid-nonvoid (3 equivalent, 1 not)
        {"public static int f(int a) { return a + 1; }",
         "public static int z(int a) { return a + 1; }"},
        {"public static String f(String s) { return s.trim(); }",
         "public static String z(String s) { return s.trim(); }"},
        {"public static Date f(Calendar c) { return c.getTime(); }",
         "public static Date z(Calendar c) { return c.getTime(); }"},
        {"public static int f(int a) { return a + 1; }",
         "public static int z(int a) { return a - 1; }"},
    };
    std::map<std::string, int> count;
    std::map<std::string, int> equivalent;
    for (const auto& p : fixture) {
        auto [cat, equal] = return_equivalence(method_of(p.human), method_of(p.tool));
        ++count[to_string(cat)];
        if (equal) ++equivalent[to_string(cat)];
    }
    require(count["void-void"] == 3 && equivalent["void-void"] == 3,
            "void-void row must be 3/3");
    require(count["void-nonvoid"] == 1 && equivalent["void-nonvoid"] == 0,
            "void-nonvoid row must be 1/0");
    require(count["nonvoid-void"] == 2 && equivalent["nonvoid-void"] == 0,
            "nonvoid-void row must be 2/0");
    require(count["nonvoid-nonvoid"] == 4 && equivalent["nonvoid-nonvoid"] == 3,
            "nonvoid-nonvoid row must be 4/3");
}

void criterion7_clone_suite(const char*) {
    require(eval::alpha_rename("int a = 5; int b = 10;") ==
                "int int0 = 5;\nint int1 = 10;\n",
            "alpha renaming must reproduce int0/int1 exactly");

    std::string cs;
    for (int i = 0; i < 10; ++i) {
        cs += "f" + std::to_string(i) + "(" + std::to_string(i) + ");\n";
    }
    auto method_with = [&](int keep) {
        std::string body;
        for (int i = 0; i < keep; ++i) {
            body += "    f" + std::to_string(i) + "(" + std::to_string(i) + ");\n";
        }
        return "public static void m() {\n" + body + "}\n";
    };
    auto [r7, clone7] = eval::type3_containment(cs, method_with(7));
    require(r7 >= 0.699 && r7 <= 0.701 && clone7, "0.7 must be a clone");
    auto [r6, clone6] = eval::type3_containment(cs, method_with(6));
    require(r6 >= 0.599 && r6 <= 0.601 && !clone6, "0.6 must not be a clone");
}

void criterion8_resolver_suite(const char* cli_path) {
    // Clustering golden.
    resolver::MethodModel model;
    model.body = ast::parse_snippet(
                     "try {\n"
                     "    MessageDigest md = MessageDigest.getInstance(\"MD5\");\n"
                     "    md.reset();\n"
                     "} catch (NoSuchAlgorithmException e) {\n"
                     "    e.printStackTrace();\n"
                     "}\n")
                     .statements;
    resolver::ResolutionState state;
    auto diags = resolver::analyze(model, state, testutil::bundled_catalog());
    auto solved =
        resolver::resolve_imports(diags, model, state, testutil::bundled_catalog());
    std::vector<std::string> imports = solved.imports;
    std::sort(imports.begin(), imports.end());
    require(imports == std::vector<std::string>{
                           "java.security.MessageDigest",
                           "java.security.NoSuchAlgorithmException"},
            "java.security cluster not chosen");

    // Loop termination within the initial diagnostic count.
    int violations = 0;
    for (const auto& entry : corpus500()) {
        size_t bound = entry.initial_diags;
        if (static_cast<size_t>(entry.result.fix_iterations) > bound) ++violations;
    }
    require(violations == 0,
            std::to_string(violations) + " corpus cases exceeded the iteration bound");

    // Budget enforcement on a pathological snippet: thousands of undeclared
    // variables, each needing usage-based recovery over the whole body.
    std::string pathological;
    for (int i = 0; i < 4000; ++i) {
        std::string n = std::to_string(i);
        pathological += "int a" + n + " = u" + n + " + 1;\n";
    }
    auto start = std::chrono::steady_clock::now();
    auto budgeted = pipeline::apize(pathological, testutil::page(1),
                                    testutil::bundled_catalog(), 1.0);
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    require(budgeted.outcome == Outcome::Failed && budgeted.reason == "budget",
            "pathological snippet did not fail with failed(budget)");
    require(elapsed < 10.0, "budget enforcement too loose");

    // The same behavior through the CLI with --time-budget 1.
    if (cli_path && *cli_path) {
        namespace fs = std::filesystem;
        fs::path dir = fs::temp_directory_path() / "apizer_acceptance";
        fs::create_directories(dir);
        fs::path snippet_file = dir / "pathological.java";
        std::ofstream(snippet_file) << pathological;
        std::string cmd = std::string(cli_path) + " apize --snippet " +
                          snippet_file.string() + " --catalog " + APIZER_DATA_DIR +
                          "/jdk-catalog.jsonl --out " + dir.string() +
                          " --answer-id 1 --time-budget 1 > " +
                          (dir / "out.txt").string() + " 2>&1";
        int status = std::system(cmd.c_str());
        int exit_code = WEXITSTATUS(status);
        std::ifstream out_file(dir / "out.txt");
        std::string output((std::istreambuf_iterator<char>(out_file)),
                           std::istreambuf_iterator<char>());
        require(exit_code == 3, "CLI exit code " + std::to_string(exit_code) +
                                    " (want 3); output: " + output);
        require(output.find("failed: budget") != std::string::npos,
                "CLI did not report failed: budget");
        fs::remove_all(dir);
    }
}

}  // namespace

int main(int argc, char** argv) {
    const char* cli_path = argc > 1 ? argv[1] : "";

    criterion("criterion-1 first-day-of-week golden", [&] { criterion1_fig1(cli_path); });
    criterion("criterion-2 md5/count-occurrences goldens", [&] { criterion2_fig2(cli_path); });
    criterion("criterion-3 idempotence on 50-case corpus", [&] { criterion3_idempotence(cli_path); });
    criterion("criterion-4 well-formedness on 500 snippets", [&] { criterion4_well_formedness(cli_path); });
    criterion("criterion-5 loop-variable exclusion", [&] { criterion5_p2_exclusion(cli_path); });
    criterion("criterion-6 metric unit suite", [&] { criterion6_metric_suite(cli_path); });
    criterion("criterion-7 clone-study suite", [&] { criterion7_clone_suite(cli_path); });
    criterion("criterion-8 resolver suite", [&] { criterion8_resolver_suite(cli_path); });

    std::cout << g_passed << " passed, " << g_failed << " failed" << std::endl;
    return g_failed == 0 ? 0 : 1;
}
