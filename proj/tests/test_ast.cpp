#include <string>

#include "doctest.h"

#include "apizer/ast.hpp"
#include "testutil.hpp"

using namespace apizer;
using namespace apizer::ast;

TEST_CASE("single declaration parses into one decl-init statement") {
    SnippetAst unit = parse_snippet("int a = 5;");
    REQUIRE(unit.statements.size() == 1);
    const Stmt& s = *unit.statements[0];
    CHECK(s.kind() == StmtKind::DeclInit);
    CHECK(s.type.to_string() == "int");
    CHECK(s.name == "a");
    REQUIRE(s.expr);
    CHECK(s.expr->kind == ExprKind::IntLit);
    CHECK(s.expr->text == "5");
}

TEST_CASE("count-occurrences snippet parses with println last") {
    SnippetAst unit = parse_snippet(testutil::kFig2BottomSnippet);
    REQUIRE(unit.statements.size() >= 5);
    const Stmt& last = *unit.statements.back();
    CHECK(last.node == StmtNode::ExprStatement);
    CHECK(render_expr(*last.expr) == "System.out.println(count)");
}

TEST_CASE("malformed expression reports the offending line") {
    CHECK_THROWS_AS(parse_snippet("int a = ;"), ParseError);
    try {
        parse_snippet("int a = 5;\nint b = ;\n");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("unsupported syntax is rejected") {
    CHECK_THROWS_AS(parse_snippet("@Override\nvoid f() {}"), ParseError);
    CHECK_THROWS_AS(parse_snippet("Runnable r = () -> x;"), ParseError);
    CHECK_THROWS_AS(parse_snippet("class A { class B { } }"), ParseError);
    CHECK_THROWS_AS(parse_snippet("   "), ParseError);
}

TEST_CASE("statement kinds are classified") {
    SnippetAst unit = parse_snippet(
        "int a = 5;\n"
        "int b;\n"
        "a = 6;\n"
        "a += 2;\n"
        "a++;\n"
        "f(a);\n"
        "while (a < 10) { a++; }\n"
        "if (a > 0) { b = 1; }\n"
        "try { b = 2; } catch (Exception e) { }\n"
        "return;\n"
        "break;\n");
    std::vector<StmtKind> kinds;
    for (const auto& s : unit.statements) kinds.push_back(s->kind());
    CHECK(kinds == std::vector<StmtKind>{
                       StmtKind::DeclInit, StmtKind::DeclOnly, StmtKind::Assignment,
                       StmtKind::Assignment, StmtKind::Assignment, StmtKind::ExprStmt,
                       StmtKind::Loop, StmtKind::Conditional, StmtKind::Try,
                       StmtKind::Return, StmtKind::Other});
}

TEST_CASE("multi-declarator statements desugar in source order") {
    SnippetAst unit = parse_snippet("int a = 1, b = 2;\nf(a, b);\n");
    REQUIRE(unit.statements.size() == 3);
    CHECK(unit.statements[0]->name == "a");
    CHECK(unit.statements[1]->name == "b");
    CHECK(unit.statements[0]->line == 1);
    CHECK(unit.statements[1]->line == 1);
    CHECK(unit.statements[2]->line == 2);
}

TEST_CASE("line ranges track source lines") {
    SnippetAst unit = parse_snippet("int a = 5;\nwhile (a > 0) {\n    a--;\n}\n");
    CHECK(unit.line_range(0) == std::pair<int, int>{1, 1});
    CHECK(unit.line_range(1) == std::pair<int, int>{2, 4});
}

TEST_CASE("classify: canonical well-formed method") {
    SnippetAst unit = parse_snippet("public static int id(int x){return x;}");
    Classification c = classify_unit(unit);
    CHECK(c.kind == UnitKind::WellFormedApi);
    REQUIRE(c.method);
    CHECK(c.method->name == "id");
}

TEST_CASE("classify: dangling statements") {
    CHECK(classify_unit(parse_snippet(testutil::kFig1Snippet)).kind ==
          UnitKind::Dangling);
}

TEST_CASE("classify: unreferenced parameter means dangling") {
    SnippetAst unit = parse_snippet("public static void f(int x){int y=1;}");
    CHECK(classify_unit(unit).kind == UnitKind::Dangling);
}

TEST_CASE("classify: ambiguous and impossible units") {
    CHECK(classify_unit(parse_snippet("class A { }\nclass B { }")).kind ==
          UnitKind::Ambiguous);
    CHECK(classify_unit(
              parse_snippet("public class A { public void f() { } public void g() { } }"))
              .kind == UnitKind::Ambiguous);
    CHECK(classify_unit(parse_snippet("public abstract int f(int x);")).kind ==
          UnitKind::Impossible);
    CHECK(classify_unit(parse_snippet("class A { }")).kind == UnitKind::Impossible);
    CHECK(classify_unit(parse_snippet("private static final int X = 1;")).kind ==
          UnitKind::Impossible);
}

TEST_CASE("classify: method wrapped in a single class") {
    SnippetAst unit = parse_snippet(
        "import java.util.Date;\n"
        "public class Snippet1 {\n"
        "    public static int twice(int x) { return x * 2; }\n"
        "}\n");
    Classification c = classify_unit(unit);
    CHECK(c.kind == UnitKind::WellFormedApi);
    REQUIRE(c.method);
    CHECK(c.method->name == "twice");
}

TEST_CASE("render_unit emits imports, class wrapper, javadoc, method") {
    MethodInfo m;
    m.modifiers = {"public", "static"};
    m.return_type = TypeRef("void");
    m.name = "run";
    m.throws = {TypeRef("java.lang.Exception")};
    std::string text = render_unit(m, {"java.util.Date"}, "Snippet7", "Title line\n@see url");
    CHECK(text.find("import java.util.Date;\n") != std::string::npos);
    CHECK(text.find("public class Snippet7 {\n") != std::string::npos);
    CHECK(text.find(" * Title line\n") != std::string::npos);
    CHECK(text.find(" * @see url\n") != std::string::npos);
    CHECK(text.find("public static void run() throws Exception {\n") != std::string::npos);
    CHECK(text.back() == '\n');
    CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("render_unit rejects inconsistent drafts") {
    MethodInfo m;
    m.modifiers = {"public", "static"};
    m.return_type = TypeRef("void");
    m.name = "f";
    m.params = {{TypeRef("int"), "x"}};
    CHECK_THROWS_AS(render_unit(m, {}, "S", ""), ConsistencyError);

    MethodInfo nonvoid = m;
    nonvoid.params.clear();
    nonvoid.return_type = TypeRef("int");
    CHECK_THROWS_AS(render_unit(nonvoid, {}, "S", ""), ConsistencyError);
}

TEST_CASE("qualified signature types render with simple names under imports") {
    SnippetAst body = parse_snippet("return tag.trim();");
    MethodInfo m;
    m.modifiers = {"public", "static"};
    m.return_type = TypeRef("java.lang.String");
    m.name = "f";
    m.params = {{TypeRef("java.lang.String"), "tag"}};
    m.body = body.statements;
    std::string text = render_unit(m, {}, "S", "");
    CHECK(text.find("public static String f(String tag)") != std::string::npos);
}

TEST_CASE("rendering is a fixed point and re-parsing is structurally stable") {
    const char* sources[] = {
        testutil::kFig1Snippet,
        testutil::kFig2TopSnippet,
        testutil::kFig2BottomSnippet,
        "int[] a = {1, 2, 3};\nfor (int i = 0; i < 3; i++) { a[i] = a[i] * 2; }\n",
        "String s = x > 0 ? \"p\" : \"n\";\ndouble d = (double) x / 2;\n",
        "do { x--; } while (x > 0);\n",
        "for (String part : parts) { System.out.println(part); }\n",
        "switch (k) { case 1: f(); break; default: g(); }\n",
        "try { f(); } catch (Exception e) { g(); } finally { h(); }\n",
        "long mask = (x << 2) | (y >>> 1);\nboolean ok = !(a && b) || c != d;\n",
        "int z = -(-y) + -x;\n",
        "Map<String, List<Integer>> m = new HashMap<String, List<Integer>>();\n",
    };
    for (const char* src : sources) {
        CAPTURE(src);
        SnippetAst first = parse_snippet(src);
        std::string rendered = render_statements(first.statements, 0);
        SnippetAst second = parse_snippet(rendered);
        CHECK(structurally_equal(first.statements, second.statements));
        CHECK(render_statements(second.statements, 0) == rendered);
    }
}

TEST_CASE("property: generated snippets round-trip and count statements per line") {
    for (unsigned seed = 0; seed < 40; ++seed) {
        testutil::SnippetGen gen(seed);
        auto g = gen.straight_line(seed % 3 == 0);
        CAPTURE(g.text);
        SnippetAst unit = parse_snippet(g.text);
        std::string rendered = render_statements(unit.statements, 0);
        SnippetAst reparsed = parse_snippet(rendered);
        CHECK(structurally_equal(unit.statements, reparsed.statements));
        CHECK(render_statements(reparsed.statements, 0) == rendered);
    }
    // Comment-free, one statement per line, straight-line input: statement
    // count equals line count.
    std::string flat = "int a = 1;\nint b = a + 2;\nSystem.out.println(b);\n";
    CHECK(parse_snippet(flat).statements.size() == 3);
}

TEST_CASE("comments are stripped at lexing time") {
    SnippetAst unit = parse_snippet(
        "// leading comment\nint a = 5; /* mid */ int b = 6;\n/* tail */ f(a, b);\n");
    CHECK(unit.statements.size() == 3);
    CHECK(unit.comments_stripped);
    std::string rendered = render_statements(unit.statements, 0);
    CHECK(rendered.find("comment") == std::string::npos);
}

TEST_CASE("classify_unit(parse(render_unit(d))) is well-formed for consistent drafts") {
    SnippetAst body = parse_snippet("int y = x + 1;\nreturn y;\n");
    MethodInfo m;
    m.modifiers = {"public", "static"};
    m.return_type = TypeRef("int");
    m.name = "inc";
    m.params = {{TypeRef("int"), "x"}};
    m.throws = {TypeRef("java.lang.Exception")};
    m.body = body.statements;
    std::string text = render_unit(m, {}, "Snippet1", "t\n@see u");
    Classification c = classify_unit(parse_snippet(text));
    CHECK(c.kind == UnitKind::WellFormedApi);
    REQUIRE(c.method);
    // java.lang.Exception renders as its simple name.
    MethodInfo surface = m;
    surface.throws = {TypeRef("Exception")};
    CHECK(structurally_equal(*c.method, surface, /*ignore_name=*/false));
}

TEST_CASE("anonymous classes and constructors are rejected") {
    CHECK_THROWS_AS(parse_snippet("Runnable r = new Runnable() { };"), ParseError);
    CHECK_THROWS_AS(parse_snippet("try { f(); }"), ParseError);
}

TEST_CASE("fuzz: arbitrary text either parses or raises ParseError") {
    std::mt19937 rng(99);
    const std::string alphabet =
        "abcxyz ABC_ 0123456789 +-*/%=<>!&|^~?:;,.(){}[]\"'\n\t\\@#";
    std::uniform_int_distribution<size_t> len(1, 120);
    std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
    for (int i = 0; i < 300; ++i) {
        std::string text;
        size_t n = len(rng);
        for (size_t k = 0; k < n; ++k) text += alphabet[pick(rng)];
        try {
            SnippetAst unit = parse_snippet(text);
            // Whatever parsed must render and re-parse stably.
            std::string rendered = render_statements(unit.statements, 0);
            SnippetAst again = parse_snippet(rendered);
            CHECK(structurally_equal(unit.statements, again.statements));
        } catch (const ParseError&) {
            // fine: outside the supported grammar
        }
    }
}

TEST_CASE("carriage returns are whitespace") {
    SnippetAst unit = parse_snippet("int a = 5;\r\nint b = a + 1;\r\n");
    REQUIRE(unit.statements.size() == 2);
    CHECK(unit.statements[1]->line == 2);
}

TEST_CASE("javadoc text cannot terminate the comment block") {
    MethodInfo m;
    m.modifiers = {"public", "static"};
    m.return_type = TypeRef("void");
    m.name = "f";
    std::string text = render_unit(m, {}, "S", "evil */ title\n@see url");
    CHECK(text.find("evil */ title") == std::string::npos);
    // The wrapper still parses as a unit with one method.
    Classification c = classify_unit(parse_snippet(text));
    CHECK(c.kind == UnitKind::WellFormedApi);
}
