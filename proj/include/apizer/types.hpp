#pragma once

#include <string>
#include <vector>

namespace apizer {

/// A Java type as written in source: base name (possibly dotted), raw
/// type arguments, and array dimensions. "int", "String", "java.util.List",
/// "Map<String, Integer>", "byte[]".
struct TypeRef {
    std::string name;
    std::vector<TypeRef> type_args;
    int array_dims = 0;

    TypeRef() = default;
    explicit TypeRef(std::string base, int dims = 0)
        : name(std::move(base)), array_dims(dims) {}

    bool defined() const { return !name.empty(); }
    bool is_array() const { return array_dims > 0; }
    bool is_primitive() const;

    // Last dotted segment of the base name.
    std::string simple_name() const;

    // Base name without type arguments or dims (raw erasure).
    const std::string& erased() const { return name; }

    std::string to_string() const;

    // Parses "byte[]", "java.util.List", "Map<K, V>[]".
    static TypeRef parse(const std::string& text);

    friend bool operator==(const TypeRef& a, const TypeRef& b) {
        return a.name == b.name && a.array_dims == b.array_dims &&
               a.type_args == b.type_args;
    }
};

bool is_primitive_name(const std::string& name);
bool is_numeric_primitive(const std::string& name);
bool is_integral_primitive(const std::string& name);

/// Widening order for numeric primitives; -1 for non-numeric.
int numeric_rank(const std::string& name);

}  // namespace apizer
