#pragma once

#include <map>
#include <string>
#include <vector>

#include "apizer/catalog.hpp"
#include "apizer/resolver.hpp"
#include "apizer/types.hpp"

namespace apizer::resolver {

// A resolved runtime type: primitive keyword or catalog-qualified name.
struct RType {
    enum class K { Unknown, Null, Primitive, Reference } k = K::Unknown;
    std::string name;
    int dims = 0;

    static RType unknown() { return {}; }
    static RType null_type() { return {K::Null, "", 0}; }
    static RType primitive(std::string n) { return {K::Primitive, std::move(n), 0}; }
    static RType reference(std::string n, int d = 0) {
        return {K::Reference, std::move(n), d};
    }

    bool is_unknown() const { return k == K::Unknown; }
    bool is_null() const { return k == K::Null; }
    bool is_array() const { return dims > 0; }
    bool is_primitive() const { return k == K::Primitive && dims == 0; }
    bool is_reference_like() const {
        return dims > 0 || k == K::Reference || k == K::Null;
    }
    bool is_numeric() const { return is_primitive() && is_numeric_primitive(name); }
    bool is_integral() const { return is_primitive() && is_integral_primitive(name); }
    bool is_boolean() const { return is_primitive() && name == "boolean"; }
    bool is_string() const {
        return k == K::Reference && dims == 0 && name == "java.lang.String";
    }
    bool is_void() const { return is_primitive() && name == "void"; }

    TypeRef to_type_ref() const { return TypeRef(name, dims); }

    // Parses a catalog type string ("byte[]", "java.util.Date", "int").
    static RType from_catalog(const std::string& text);
};

// Name-to-type binding context: explicit imports, wildcard imports, java.lang.
class Binder {
public:
    Binder(const ResolutionState& state, const catalog::TypeCatalog& cat);

    // Canonical qualified name for a simple or qualified type name; empty when
    // unresolved. classlike reports whether the catalog knows the simple name.
    std::string resolve_type_name(const std::string& name, bool* classlike) const;

    RType resolve(const TypeRef& written, std::string* missing) const;

    const catalog::TypeCatalog& cat() const { return cat_; }

private:
    const catalog::TypeCatalog& cat_;
    std::map<std::string, std::string> by_simple_;
    std::vector<std::string> wildcard_packages_;
};

bool widening_ok(const std::string& from, const std::string& to);
bool assignable(const RType& target, const RType& value,
                const catalog::TypeCatalog& cat);
RType promote_numeric(const RType& a, const RType& b);
RType promote_unary(const RType& a);

}  // namespace apizer::resolver
