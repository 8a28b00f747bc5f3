#pragma once

#include <set>
#include <string>

namespace apizer::namegen {

/// Verb lexicon backing method-name generation. The default list is compiled
/// in from data/verbs.txt; a file with one verb per line can replace it.
class VerbLexicon {
public:
    static const VerbLexicon& bundled();
    static VerbLexicon from_file(const std::string& path);

    bool contains(const std::string& word) const { return verbs_.count(word) > 0; }

private:
    std::set<std::string> verbs_;
};

/// Builds a camelCase method name from a page title: the first lexicon verb
/// after the interrogative prefix, plus the next noun-like token. Falls back
/// to "snippet" + answer id. The result always matches [a-zA-Z][a-zA-Z0-9]*.
std::string generate_method_name(const std::string& title, long answer_id,
                                 const VerbLexicon& lexicon = VerbLexicon::bundled());

}  // namespace apizer::namegen
