#include "apizer/namegen.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "namegen_verbs.hpp"

namespace apizer::namegen {

namespace {

std::string lower(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Words dropped from the front of question titles.
const std::set<std::string>& interrogative_prefix() {
    static const std::set<std::string> words = {"how", "to", "do", "can",
                                                "i", "you", "in", "java"};
    return words;
}

const std::set<std::string>& stopwords() {
    static const std::set<std::string> words = {
        "a", "an", "the", "of", "in", "on", "for", "with", "from", "by", "at",
        "as", "is", "are", "was", "were", "be", "been", "being", "do", "does",
        "did", "it", "its", "this", "that", "these", "those", "my", "your",
        "i", "you", "we", "they", "me", "using", "into", "onto", "and", "or",
        "not", "some", "any", "all", "java", "what", "when", "which", "how",
        "why", "where", "there", "only", "best", "way", "can", "could",
        "should", "would", "to",
    };
    return words;
}

const std::set<std::string>& prepositions() {
    static const std::set<std::string> words = {
        "to", "of", "in", "on", "for", "with", "from", "by", "at", "into",
        "onto", "via", "without", "within", "between", "over", "under",
        "through", "against",
    };
    return words;
}

std::vector<std::string> tokenize(const std::string& title) {
    std::vector<std::string> tokens;
    std::string word;
    for (char c : title) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            word += c;
        } else if (!word.empty()) {
            tokens.push_back(word);
            word.clear();
        }
    }
    if (!word.empty()) tokens.push_back(word);
    return tokens;
}

std::string capitalize(const std::string& word) {
    std::string out = word;
    if (!out.empty()) {
        out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    }
    return out;
}

std::string sanitize_identifier(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) out += c;
    }
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) {
        out = "snippet" + out;
    }
    return out;
}

}  // namespace

const VerbLexicon& VerbLexicon::bundled() {
    static const VerbLexicon lex = [] {
        VerbLexicon l;
        std::istringstream in{std::string(kDefaultVerbLexicon)};
        std::string line;
        while (std::getline(in, line)) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
                line.pop_back();
            }
            if (!line.empty() && line[0] != '#') l.verbs_.insert(lower(line));
        }
        return l;
    }();
    return lex;
}

VerbLexicon VerbLexicon::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open verb lexicon: " + path);
    VerbLexicon l;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
            line.pop_back();
        }
        if (!line.empty() && line[0] != '#') l.verbs_.insert(lower(line));
    }
    return l;
}

std::string generate_method_name(const std::string& title, long answer_id,
                                 const VerbLexicon& lexicon) {
    std::vector<std::string> tokens = tokenize(title);
    std::vector<std::string> lowered;
    lowered.reserve(tokens.size());
    for (const auto& t : tokens) lowered.push_back(lower(t));

    size_t start = 0;
    while (start < lowered.size() && interrogative_prefix().count(lowered[start])) {
        ++start;
    }

    // The first lexicon verb is the main verb of the sentence.
    size_t verb = lowered.size();
    for (size_t i = start; i < lowered.size(); ++i) {
        if (lexicon.contains(lowered[i])) {
            verb = i;
            break;
        }
    }
    if (verb == lowered.size()) {
        return sanitize_identifier("snippet" + std::to_string(answer_id));
    }

    // The next noun-like token is its direct object.
    std::string object;
    for (size_t i = verb + 1; i < lowered.size(); ++i) {
        if (stopwords().count(lowered[i]) || prepositions().count(lowered[i])) {
            continue;
        }
        object = lowered[i];
        break;
    }

    std::string name = lowered[verb];
    if (!object.empty()) name += capitalize(object);
    return sanitize_identifier(name);
}

}  // namespace apizer::namegen
