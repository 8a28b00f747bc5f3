#include <random>

#include "doctest.h"

#include "apizer/evaluator.hpp"
#include "apizer/pipeline.hpp"
#include "testutil.hpp"

using namespace apizer;
using namespace apizer::eval;

namespace {

ast::MethodInfo method_of(const std::string& source) {
    return parse_single_method(source);
}

}  // namespace

TEST_CASE("params_identical wants type, identifier, and reference sites") {
    auto a = method_of("public static int f(int week) { return week + 1; }");
    auto b = method_of("public static int g(int week) { return week + 1; }");
    ParamSet pa = make_param_set(a);
    ParamSet pb = make_param_set(b);
    CHECK(params_identical(pa.params[0], pb.params[0]));

    auto c = method_of("public static double h(double week) { return week + 1; }");
    CHECK_FALSE(params_identical(pa.params[0], make_param_set(c).params[0]));

    auto d = method_of("public static int k(int year) { return year + 1; }");
    CHECK_FALSE(params_identical(pa.params[0], make_param_set(d).params[0]));

    // Same name and type but used at a different site.
    auto e = method_of("public static int m(int week) { return 1 + week; }");
    CHECK_FALSE(params_identical(pa.params[0], make_param_set(e).params[0]));
}

TEST_CASE("jaccard distance: identical, empty, disjoint") {
    auto a = method_of(
        "public static int f(int week, int year) { return week + year; }");
    auto b = method_of(
        "public static int g(int week, int year) { return week + year; }");
    CHECK(jaccard_distance(make_param_set(a), make_param_set(b)) == 0.0);

    auto v1 = method_of("public static void f() { g(); }");
    auto v2 = method_of("public static void h() { g(); }");
    CHECK(jaccard_distance(make_param_set(v1), make_param_set(v2)) == 0.0);

    auto c = method_of("public static int f(int a) { return a; }");
    CHECK(jaccard_distance(make_param_set(c), make_param_set(v1)) == 1.0);
}

TEST_CASE("property: jaccard symmetry and bounds") {
    const char* methods[] = {
        "public static int f(int a) { return a; }",
        "public static int f(int a, int b) { return a + b; }",
        "public static void f() { g(); }",
        "public static int f(int b) { return b; }",
        "public static String f(String a, int b) { return a.substring(b); }",
    };
    for (const char* ma : methods) {
        for (const char* mb : methods) {
            ParamSet a = make_param_set(method_of(ma));
            ParamSet b = make_param_set(method_of(mb));
            double ab = jaccard_distance(a, b);
            CHECK(ab == jaccard_distance(b, a));
            CHECK(ab >= 0.0);
            CHECK(ab <= 1.0);
            if (std::string(ma) == mb) CHECK(ab == 0.0);
        }
    }
}

TEST_CASE("return equivalence categories") {
    auto void_a = method_of("public static void f() { g(); }");
    auto void_b = method_of("public static void h() { k(); }");
    auto date_a = method_of(
        "public static Date f(Calendar c) { return c.getTime(); }");
    auto date_b = method_of(
        "public static Date g(Calendar c) { return c.getTime(); }");
    auto int_m = method_of("public static int f(int x) { return x; }");

    CHECK(return_equivalence(void_a, void_b) ==
          std::pair{ReturnCategory::VoidVoid, true});
    CHECK(return_equivalence(date_a, date_b) ==
          std::pair{ReturnCategory::NonvoidNonvoid, true});
    CHECK(return_equivalence(void_a, int_m) ==
          std::pair{ReturnCategory::VoidNonvoid, false});
    CHECK(return_equivalence(int_m, void_a) ==
          std::pair{ReturnCategory::NonvoidVoid, false});
    CHECK(return_equivalence(date_a, int_m).second == false);
}

TEST_CASE("return equivalence tolerates consistent variable renaming") {
    auto a = method_of(
        "public static int f(String s) { int n = s.length(); return n * 2; }");
    auto b = method_of(
        "public static int g(String text) { int len = text.length(); return len * 2; }");
    auto [cat, equal] = return_equivalence(a, b);
    CHECK(cat == ReturnCategory::NonvoidNonvoid);
    CHECK(equal);
}

TEST_CASE("normalize_return fuses a final declaration into the return") {
    auto m = method_of(
        "public static int f(int b, int c) { int a = b + c; return a; }");
    auto n = normalize_return(m);
    REQUIRE(n.body.size() == 1);
    CHECK(ast::render_statement(*n.body[0], 0) == "return b + c;\n");

    auto fixed = method_of("public static int f(int x) { return x; }");
    CHECK(ast::structurally_equal(normalize_return(fixed), fixed, false));

    auto used = method_of(
        "public static int f() { int a = g(); h(a); return a; }");
    CHECK(normalize_return(used).body.size() == 3);
}

TEST_CASE("ast_diff_count ignores method names and formatting") {
    auto a = method_of("public static int f(int x) { return x + 1; }");
    auto b = method_of(
        "public static int completelyDifferentName(int x)\n{\n    return x  +  1;\n}\n");
    CHECK(ast_diff_count(a, b) == 0);

    auto c = method_of(
        "public static int f(int x) { int y = 0; return x + 1; }");
    CHECK(ast_diff_count(a, c) >= 1);
    CHECK(ast_diff_count(a, a) == 0);

    // Comments never reach the AST.
    auto d = method_of(
        "public static int f(int x) { /* note */ return x + 1; // t\n }");
    CHECK(ast_diff_count(a, d) == 0);
}

TEST_CASE("alpha renaming follows declaration order with per-type counters") {
    CHECK(alpha_rename("int a = 5; int b = 10;") == "int int0 = 5;\nint int1 = 10;\n");
    CHECK(alpha_rename("String s;") == "String string0;\n");
    CHECK(alpha_rename("int a = 5;\nString s = \"x\";\nint c = a + 1;\n") ==
          "int int0 = 5;\nString string0 = \"x\";\nint int1 = int0 + 1;\n");
}

TEST_CASE("alpha renaming strips comments and keeps undeclared names") {
    std::string out = alpha_rename(
        "// comment\nint a = 5;\ndigester.update(tag_xml.getBytes());\n");
    CHECK(out == "int int0 = 5;\ndigester.update(tag_xml.getBytes());\n");
}

TEST_CASE("alpha renaming handles methods, loops, and catches") {
    std::string out = alpha_rename(
        "public static int count(String str) {\n"
        "    int total = 0;\n"
        "    for (int i = 0; i < str.length(); i++) {\n"
        "        total += i;\n"
        "    }\n"
        "    return total;\n"
        "}\n");
    CHECK(out.find("String string0") != std::string::npos);
    CHECK(out.find("int int0 = 0;") != std::string::npos);
    CHECK(out.find("for (int int1 = 0; int1 < string0.length(); int1++)") !=
          std::string::npos);
    CHECK(out.find("return int0;") != std::string::npos);
}

TEST_CASE("alpha renaming is idempotent on its own output") {
    const char* sources[] = {
        "int a = 5; int b = 10;",
        testutil::kFig2BottomSnippet,
        "public static int f(int x) { int y = x + 1; return y; }",
    };
    for (const char* src : sources) {
        std::string once = alpha_rename(src);
        CHECK(alpha_rename(once) == once);
    }
}

TEST_CASE("type3 containment at the threshold boundary") {
    // Ten distinct statements; methods that keep exactly 7 or 6 of them.
    std::string cs;
    for (int i = 0; i < 10; ++i) {
        cs += "f" + std::to_string(i) + "(" + std::to_string(i) + ");\n";
    }
    auto method_with = [&](int keep) {
        std::string body;
        for (int i = 0; i < keep; ++i) {
            body += "    f" + std::to_string(i) + "(" + std::to_string(i) + ");\n";
        }
        return "public static void f() {\n" + body + "}\n";
    };
    auto [r7, clone7] = type3_containment(cs, method_with(7));
    CHECK(r7 == doctest::Approx(0.7));
    CHECK(clone7);
    auto [r6, clone6] = type3_containment(cs, method_with(6));
    CHECK(r6 == doctest::Approx(0.6));
    CHECK_FALSE(clone6);
    auto [rall, cloneall] = type3_containment(cs, method_with(10));
    CHECK(rall == doctest::Approx(1.0));
    CHECK(cloneall);
}

TEST_CASE("type3 containment matches duplicate lines individually") {
    std::string cs = "f(1);\nf(1);\n";
    // The method contains the line only once: half containment.
    auto [ratio, clone] =
        type3_containment(cs, "public static void g() { f(1); }");
    CHECK(ratio == doctest::Approx(0.5));
    CHECK_FALSE(clone);
}

TEST_CASE("evaluate_pair report arithmetic invariants") {
    const char* humans[] = {
        "public static int f(int a, int b) { return a + b; }",
        "public static void f(String s) { System.out.println(s); }",
        "public static int f() { return 1; }",
    };
    const char* tools[] = {
        "public static int g(int a) { return a + 2; }",
        "public static void g(String s) { System.out.println(s); }",
        "public static void g() { h(); }",
    };
    for (const char* h : humans) {
        for (const char* t : tools) {
            auto human = method_of(h);
            auto tool = method_of(t);
            EvalReport r = evaluate_pair(human, tool);
            CHECK(r.missing + r.common == static_cast<int>(human.params.size()));
            CHECK(r.common + r.spurious == static_cast<int>(tool.params.size()));
            CHECK(r.jaccard >= 0.0);
            CHECK(r.jaccard <= 1.0);
            CHECK(r.params_equivalent == (r.missing == 0 && r.spurious == 0));
        }
    }
}

TEST_CASE("identical pair: full report") {
    auto human = method_of(
        "public static Date getDate(int week, int year) { return f(week, year); }");
    auto tool = method_of(
        "public static Date otherName(int week, int year) { return f(week, year); }");
    EvalReport r = evaluate_pair(human, tool);
    CHECK(r.params_equivalent);
    CHECK(r.jaccard == 0.0);
    CHECK(r.ast_diff == 0);
    CHECK(r.return_category == ReturnCategory::NonvoidNonvoid);
    CHECK(r.return_equivalent);
}

TEST_CASE("parse_single_method accepts bare and class-wrapped methods") {
    CHECK(method_of("int f() { return 1; }").name == "f");
    CHECK(method_of("public class A { int g() { return 1; } }").name == "g");
    CHECK_THROWS_AS(method_of("int a = 5;"), ast::ParseError);
    CHECK_THROWS_AS(method_of("int f() { return 1; }\nint g() { return 2; }"),
                    ast::ParseError);
}

TEST_CASE("jaccard is zero only for identical sets") {
    auto a = method_of("public static int f(int a, int b) { return a + b; }");
    auto b = method_of("public static int f(int a, int c) { return a + c; }");
    ParamSet pa = make_param_set(a);
    ParamSet pb = make_param_set(b);
    CHECK(jaccard_distance(pa, pa) == 0.0);
    CHECK(jaccard_distance(pa, pb) > 0.0);
}

TEST_CASE("a snippet and its extracted method are TYPE-3 clones") {
    auto result = apizer::pipeline::apize(testutil::kFig2BottomSnippet,
                                          testutil::page(767910),
                                          testutil::bundled_catalog());
    REQUIRE(result.outcome == apizer::pipeline::Outcome::Apized);
    std::string method = ast::render_method(result.draft.to_method_info(), 0);
    auto [ratio, clone] =
        type3_containment(testutil::kFig2BottomSnippet, method);
    CHECK(clone);
    CHECK(ratio >= 0.70);
}
