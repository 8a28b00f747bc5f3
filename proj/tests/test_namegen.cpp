#include <cctype>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"

#include "apizer/namegen.hpp"

using namespace apizer::namegen;

namespace {

bool legal_identifier(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("verb plus direct object, hand-traced") {
    // how, to are prefix noise; convert is the verb; String the object.
    CHECK(generate_method_name("How to convert String to int", 1) == "convertString");
}

TEST_CASE("first-day-of-week title yields a get-prefixed name") {
    std::string name =
        generate_method_name("How to get the first day of a given week number in Java", 1);
    CHECK(name.rfind("get", 0) == 0);
    CHECK(name.size() > 3);
}

TEST_CASE("titles without a lexicon verb fall back to snippet + answer id") {
    CHECK(generate_method_name("Weird title without any verb", 99) == "snippet99");
    CHECK(generate_method_name("", 5) == "snippet5");
}

TEST_CASE("verb-only titles yield just the verb") {
    CHECK(generate_method_name("How to sort?", 1) == "sort");
}

TEST_CASE("punctuation and digits are sanitized away") {
    std::string name = generate_method_name("How to parse JSON-strings (fast)?", 3);
    bool known = name == "parseJson" || name == "parseJsonstrings";
    CHECK(known);
    CHECK(legal_identifier(name));
}

TEST_CASE("custom lexicons override the bundled one") {
    // "frobnicate" is not a bundled verb.
    CHECK(generate_method_name("How to frobnicate widgets", 2) == "snippet2");
}

TEST_CASE("property: output always matches the identifier grammar") {
    std::mt19937 rng(7);
    const std::string alphabet =
        "abc XYZ 019 ?!-_.,:;()[]{}<>/\\'\"@#$%^&*+=~`|  \t";
    for (int i = 0; i < 300; ++i) {
        std::uniform_int_distribution<size_t> len(0, 40);
        std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
        std::string title;
        size_t n = len(rng);
        for (size_t k = 0; k < n; ++k) title += alphabet[pick(rng)];
        std::string name = generate_method_name(title, static_cast<long>(i));
        CAPTURE(title);
        CHECK(legal_identifier(name));
        // Determinism.
        CHECK(generate_method_name(title, static_cast<long>(i)) == name);
    }
}

TEST_CASE("a lexicon file can replace the bundled verbs") {
    namespace fs = std::filesystem;
    fs::path file = fs::temp_directory_path() / "apizer_verbs_test.txt";
    {
        std::ofstream out(file);
        out << "# custom list\nfrobnicate\n";
    }
    VerbLexicon custom = VerbLexicon::from_file(file.string());
    CHECK(generate_method_name("How to frobnicate widgets", 2, custom) ==
          "frobnicateWidgets");
    // The custom list knows nothing else.
    CHECK(generate_method_name("How to convert String to int", 2, custom) ==
          "snippet2");
    fs::remove(file);
    CHECK_THROWS(VerbLexicon::from_file("/no/such/lexicon.txt"));
}
