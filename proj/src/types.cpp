#include "apizer/types.hpp"

#include <array>
#include <cctype>
#include <functional>
#include <stdexcept>

namespace apizer {

namespace {

constexpr std::array<const char*, 9> kPrimitives = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void",
};

}  // namespace

bool is_primitive_name(const std::string& name) {
    for (const char* p : kPrimitives) {
        if (name == p) return true;
    }
    return false;
}

bool is_numeric_primitive(const std::string& name) {
    return numeric_rank(name) >= 0;
}

bool is_integral_primitive(const std::string& name) {
    return name == "byte" || name == "short" || name == "char" ||
           name == "int" || name == "long";
}

int numeric_rank(const std::string& name) {
    if (name == "byte") return 0;
    if (name == "short") return 1;
    if (name == "char") return 1;  // widens like short
    if (name == "int") return 2;
    if (name == "long") return 3;
    if (name == "float") return 4;
    if (name == "double") return 5;
    return -1;
}

bool TypeRef::is_primitive() const {
    return array_dims == 0 && is_primitive_name(name);
}

std::string TypeRef::simple_name() const {
    auto dot = name.rfind('.');
    return dot == std::string::npos ? name : name.substr(dot + 1);
}

std::string TypeRef::to_string() const {
    std::string out = name;
    if (!type_args.empty()) {
        out += '<';
        for (size_t i = 0; i < type_args.size(); ++i) {
            if (i) out += ", ";
            out += type_args[i].to_string();
        }
        out += '>';
    }
    for (int i = 0; i < array_dims; ++i) out += "[]";
    return out;
}

TypeRef TypeRef::parse(const std::string& text) {
    // A tiny recursive parser for rendered type strings.
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && text[pos] == ' ') ++pos; };
    std::function<TypeRef()> parse_one = [&]() -> TypeRef {
        skip_ws();
        TypeRef t;
        while (pos < text.size()) {
            char c = text[pos];
            if (isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
                c == '$' || c == '?') {
                t.name += c;
                ++pos;
            } else {
                break;
            }
        }
        if (t.name.empty()) {
            throw std::invalid_argument("bad type string: " + text);
        }
        skip_ws();
        if (pos < text.size() && text[pos] == '<') {
            ++pos;
            while (true) {
                t.type_args.push_back(parse_one());
                skip_ws();
                if (pos < text.size() && text[pos] == ',') {
                    ++pos;
                    continue;
                }
                break;
            }
            skip_ws();
            if (pos >= text.size() || text[pos] != '>') {
                throw std::invalid_argument("bad type string: " + text);
            }
            ++pos;
        }
        skip_ws();
        while (pos + 1 < text.size() && text[pos] == '[' && text[pos + 1] == ']') {
            ++t.array_dims;
            pos += 2;
            skip_ws();
        }
        return t;
    };
    TypeRef t = parse_one();
    skip_ws();
    if (pos != text.size()) {
        throw std::invalid_argument("bad type string: " + text);
    }
    return t;
}

}  // namespace apizer
