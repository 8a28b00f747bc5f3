#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "apizer/jobs.hpp"
#include "testutil.hpp"

using namespace apizer;
using namespace apizer::jobs;

namespace {

std::string jline(long id, const std::string& title, const std::string& snippet) {
    std::string esc;
    for (char c : snippet) {
        if (c == '"') esc += "\\\"";
        else if (c == '\n') esc += "\\n";
        else esc += c;
    }
    return "{\"answer_id\": " + std::to_string(id) + ", \"title\": \"" + title +
           "\", \"url\": \"https://example.org/a/" + std::to_string(id) +
           "\", \"snippet\": \"" + esc + "\"}";
}

}  // namespace

TEST_CASE("job records parse and validate") {
    JobRecord r = parse_job_record(jline(7, "How to add numbers", "int a = 1;"));
    CHECK(r.answer_id == 7);
    CHECK(r.title == "How to add numbers");
    CHECK(r.snippet == "int a = 1;");

    CHECK_THROWS(parse_job_record("not json"));
    CHECK_THROWS(parse_job_record("{\"answer_id\": 1}"));
    CHECK_THROWS(parse_job_record("{\"answer_id\": \"x\", \"snippet\": \"a;\"}"));
    CHECK_THROWS(parse_job_record("{\"answer_id\": 2, \"snippet\": \"\"}"));
}

TEST_CASE("batch: three valid records all apize") {
    std::vector<std::string> lines = {
        jline(1, "How to add numbers", "int a = 3;\nint b = a + 1;\nSystem.out.println(b);"),
        jline(2, "How to trim strings", "String s = \"  x \";\nString t = s.trim();"),
        jline(3, "How to count chars", testutil::kFig2BottomSnippet),
    };
    BatchOptions options;
    options.out_dir = "";  // no files
    auto [results, summary] = run_batch(lines, testutil::bundled_catalog(), options);
    REQUIRE(results.size() == 3);
    CHECK(summary.apized == 3);
    CHECK(summary.failed == 0);
    CHECK(results[0].detail == "Snippet1.java");
    CHECK(results[2].answer_id == 3);
}

TEST_CASE("batch: malformed records fail individually, processing continues") {
    std::vector<std::string> lines = {
        jline(1, "How to add numbers", "int a = 3;\nSystem.out.println(a);"),
        "garbage {",
        jline(2, "", "int a = ;"),
    };
    auto [results, summary] =
        run_batch(lines, testutil::bundled_catalog(), BatchOptions{});
    CHECK(summary.apized == 1);
    CHECK(summary.failed == 2);
    CHECK(results[1].outcome == "failed");
    CHECK(results[1].detail.rfind("parse", 0) == 0);
    CHECK(results[2].outcome == "failed");
}

TEST_CASE("batch: a record over budget fails in isolation") {
    std::vector<std::string> lines = {
        jline(1, "", "int a = 3;\nSystem.out.println(a);"),
        jline(2, "", "int a = 3;\nint b = a + 1;\nSystem.out.println(b);"),
    };
    BatchOptions options;
    options.time_budget = 1e-9;  // everything blows the budget
    auto [results, summary] =
        run_batch(lines, testutil::bundled_catalog(), options);
    CHECK(summary.failed == 2);
    CHECK(results[0].detail == "budget");

    options.time_budget = 10.0;
    auto [fine, ok_summary] = run_batch(lines, testutil::bundled_catalog(), options);
    CHECK(ok_summary.apized == 2);
}

TEST_CASE("batch: duplicate answer ids fail after the first") {
    std::vector<std::string> lines = {
        jline(5, "", "int a = 3;\nSystem.out.println(a);"),
        jline(5, "", "int a = 4;\nSystem.out.println(a);"),
    };
    auto [results, summary] =
        run_batch(lines, testutil::bundled_catalog(), BatchOptions{});
    CHECK(results[0].outcome == "apized");
    CHECK(results[1].outcome == "failed");
    CHECK(results[1].detail == "duplicate answer_id");
}

TEST_CASE("batch: worker count does not change per-record output") {
    std::vector<std::string> lines;
    for (long id = 0; id < 12; ++id) {
        testutil::SnippetGen gen(static_cast<unsigned>(900 + id));
        lines.push_back(jline(id, "How to compute things",
                              gen.straight_line(id % 2 == 0).text));
    }
    BatchOptions serial;
    serial.jobs = 1;
    BatchOptions parallel;
    parallel.jobs = 4;
    auto [a, sa] = run_batch(lines, testutil::bundled_catalog(), serial);
    auto [b, sb] = run_batch(lines, testutil::bundled_catalog(), parallel);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].outcome == b[i].outcome);
        CHECK(a[i].detail == b[i].detail);
        CHECK(a[i].answer_id == b[i].answer_id);
    }
    CHECK(sa.apized == sb.apized);
}

TEST_CASE("batch: files land in the output directory byte-deterministically") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "apizer_jobs_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::vector<std::string> lines = {
        jline(11, "How to add numbers", "int a = 3;\nint b = a + 1;\nSystem.out.println(b);"),
    };
    BatchOptions options;
    options.out_dir = dir.string();
    run_batch(lines, testutil::bundled_catalog(), options);
    std::ifstream in(dir / "Snippet11.java");
    REQUIRE(in.good());
    std::string first((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    run_batch(lines, testutil::bundled_catalog(), options);
    std::ifstream in2(dir / "Snippet11.java");
    std::string second((std::istreambuf_iterator<char>(in2)),
                       std::istreambuf_iterator<char>());
    CHECK(first == second);
    CHECK(first.find("public class Snippet11") != std::string::npos);
    fs::remove_all(dir);
}
