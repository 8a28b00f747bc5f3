#pragma once

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "apizer/catalog.hpp"
#include "apizer/pipeline.hpp"

namespace testutil {

inline const apizer::catalog::TypeCatalog& bundled_catalog() {
    static const apizer::catalog::TypeCatalog cat =
        apizer::catalog::TypeCatalog::load(std::string(APIZER_DATA_DIR) +
                                           "/jdk-catalog.jsonl");
    return cat;
}

inline apizer::pipeline::SoPage page(long answer_id = 42,
                                     const std::string& title = "How to frobnicate") {
    apizer::pipeline::SoPage p;
    p.title = title;
    p.url = "https://example.org/a/" + std::to_string(answer_id);
    p.answer_id = answer_id;
    return p;
}

inline const char* kFig1Snippet =
    "Calendar calendar = Calendar.getInstance();\n"
    "int week = 3;\n"
    "int year = 2011;\n"
    "calendar.clear();\n"
    "calendar.set(Calendar.WEEK_OF_YEAR, week);\n"
    "calendar.set(Calendar.YEAR, year);\n"
    "calendar.set(Calendar.DAY_OF_WEEK, Calendar.MONDAY);\n"
    "calendar.setFirstDayOfWeek(Calendar.MONDAY);\n"
    "calendar.set(Calendar.HOUR_OF_DAY, 0);\n"
    "calendar.set(Calendar.MINUTE, 0);\n"
    "calendar.set(Calendar.SECOND, 0);\n"
    "Date date = calendar.getTime();\n";

inline const char* kFig2TopSnippet =
    "MessageDigest digester = MessageDigest.getInstance(\"MD5\");\n"
    "digester.update(tag_xml.getBytes());\n"
    "byte[] digest = digester.digest();\n"
    "String hash = new BigInteger(1, digest).toString(16);\n";

inline const char* kFig2BottomSnippet =
    "String str = \"helloslkhellodjladfjhello\";\n"
    "String findStr = \"hello\";\n"
    "int lastIndex = 0;\n"
    "int count = 0;\n"
    "while (lastIndex != -1) {\n"
    "    lastIndex = str.indexOf(findStr, lastIndex);\n"
    "    if (lastIndex != -1) {\n"
    "        count++;\n"
    "        lastIndex += findStr.length();\n"
    "    }\n"
    "}\n"
    "System.out.println(count);\n";

/// Random straight-line snippets over the bundled catalog's types. Every
/// generated snippet resolves and apizes; some reference undeclared
/// variables (recoverable from usage), some end in println/assignment/
/// declaration, and (optionally) some mutate hard-coded variables in loops.
class SnippetGen {
public:
    explicit SnippetGen(unsigned seed) : rng_(seed) {}

    struct Generated {
        std::string text;
        // Hard-coded-initialized variables mutated inside a loop; these must
        // never become parameters.
        std::set<std::string> loop_guarded;
        std::set<std::string> undeclared;
    };

    Generated straight_line(bool with_loop) {
        Generated g;
        std::ostringstream out;
        vars_.clear();
        next_ = 0;

        int decls = pick(2, 4);
        for (int i = 0; i < decls; ++i) emit_literal_decl(out);

        if (with_loop) {
            std::string acc = fresh("int");
            std::string idx = fresh("int");
            out << "int " << acc << " = 0;\n";
            out << "int " << idx << " = 0;\n";
            out << "while (" << idx << " < " << pick(3, 9) << ") {\n";
            out << "    " << acc << " = " << acc << " + " << idx << ";\n";
            out << "    " << idx << "++;\n";
            out << "}\n";
            g.loop_guarded = {acc, idx};
        }

        int uses = pick(2, 4);
        for (int i = 0; i < uses; ++i) emit_use(out, g);

        switch (pick(0, 4)) {
            case 0: {
                std::string v = any_of("int");
                if (!v.empty()) out << "System.out.println(" << v << ");\n";
                break;
            }
            case 1: {
                std::string v = any_of("java.lang.String");
                if (!v.empty()) {
                    std::string target = fresh("java.lang.String");
                    out << "String " << target << " = " << v << ".trim();\n";
                }
                break;
            }
            case 2: {
                std::string v = any_of("int");
                if (!v.empty()) {
                    std::string target = fresh("int");
                    out << "int " << target << " = " << v << " * 2;\n";
                }
                break;
            }
            case 3: {
                std::string v = any_of("java.lang.String");
                if (!v.empty()) out << v << " = " << v << ".trim();\n";
                break;
            }
            default:
                break;  // whatever statement came last stays last
        }
        g.text = out.str();
        return g;
    }

private:
    std::mt19937 rng_;
    std::vector<std::pair<std::string, std::string>> vars_;  // name -> type
    int next_ = 0;

    int pick(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }

    std::string fresh(const std::string& type) {
        std::string name = "v" + std::to_string(next_++);
        vars_.emplace_back(name, type);
        return name;
    }

    // Returns a declared variable of the given type, or an empty string.
    std::string any_of(const std::string& type) {
        std::vector<std::string> match;
        for (const auto& [name, t] : vars_) {
            if (t == type) match.push_back(name);
        }
        if (match.empty()) return "";
        return match[static_cast<size_t>(pick(0, static_cast<int>(match.size()) - 1))];
    }

    void emit_literal_decl(std::ostringstream& out) {
        switch (pick(0, 3)) {
            case 0:
                out << "int " << fresh("int") << " = " << pick(1, 99) << ";\n";
                return;
            case 1:
                out << "String " << fresh("java.lang.String") << " = \"w" << pick(0, 99)
                    << "\";\n";
                return;
            case 2:
                out << "double " << fresh("double") << " = " << pick(1, 9) << ".5;\n";
                return;
            default:
                out << "boolean " << fresh("boolean") << " = "
                    << (pick(0, 1) ? "true" : "false") << ";\n";
                return;
        }
    }

    void emit_use(std::ostringstream& out, Generated& g) {
        switch (pick(0, 7)) {
            case 0: {
                std::string s = any_of("java.lang.String");
                if (!s.empty()) {
                    std::string target = fresh("int");
                    out << "int " << target << " = " << s << ".length();\n";
                }
                return;
            }
            case 1: {
                std::string s = any_of("java.lang.String");
                if (!s.empty()) {
                    std::string target = fresh("java.lang.String");
                    out << "String " << target << " = " << s << ".substring(1);\n";
                }
                return;
            }
            case 2: {
                std::string a = any_of("int");
                if (!a.empty()) {
                    std::string target = fresh("int");
                    out << "int " << target << " = " << a << " + " << pick(1, 9)
                        << ";\n";
                }
                return;
            }
            case 3: {
                // Undeclared variable used with a String-specific method.
                std::string u = "u" + std::to_string(next_++);
                g.undeclared.insert(u);
                std::string target = fresh("java.lang.String");
                out << "String " << target << " = " << u << ".trim();\n";
                return;
            }
            case 4: {
                std::string a = any_of("double");
                if (!a.empty()) {
                    std::string target = fresh("double");
                    out << "double " << target << " = " << a << " * 2.0;\n";
                }
                return;
            }
            case 5: {
                std::string a = any_of("int");
                std::string b = any_of("int");
                if (!a.empty() && !b.empty()) {
                    std::string target = fresh("boolean");
                    out << "boolean " << target << " = " << a << " < " << b << ";\n";
                }
                return;
            }
            case 6: {
                std::string s = any_of("java.lang.String");
                if (!s.empty()) {
                    std::string target = fresh("java.lang.String");
                    out << "String " << target << " = " << s << " + \"-tail\";\n";
                }
                return;
            }
            default: {
                std::string s = any_of("java.lang.String");
                if (!s.empty()) out << "System.out.println(" << s << ");\n";
                return;
            }
        }
    }
};

}  // namespace testutil
