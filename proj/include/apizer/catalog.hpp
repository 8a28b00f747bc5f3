#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace apizer::catalog {

class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& message)
        : std::runtime_error(message) {}
};

class UnknownTypeError : public std::runtime_error {
public:
    explicit UnknownTypeError(const std::string& qualified)
        : std::runtime_error("unknown type: " + qualified), type_(qualified) {}
    const std::string& type() const { return type_; }

private:
    std::string type_;
};

struct MethodSig {
    std::string name;
    std::vector<std::string> params;  // erased qualified type names
    std::string returns;
    bool is_static = false;
};

struct FieldSig {
    std::string name;
    std::string type;
};

struct TypeEntry {
    std::string name;  // qualified
    std::string package;
    std::string library;
    std::vector<std::string> supertypes;
    bool primitive = false;
    std::vector<MethodSig> methods;
    std::vector<FieldSig> fields;

    bool auto_imported() const { return package == "java.lang" || primitive; }
    std::string simple_name() const;
};

/// Signature database standing in for a library classpath. One JSON record
/// per line; see data/jdk-catalog.jsonl for the bundled JDK subset.
class TypeCatalog {
public:
    static TypeCatalog load(const std::string& path);
    static TypeCatalog from_stream(std::istream& in, const std::string& origin);

    const TypeEntry* find(const std::string& qualified) const;

    /// Qualified names with the given simple name, lexicographically sorted.
    std::vector<std::string> lookup_simple_name(const std::string& simple) const;

    /// Reflexive-transitive subtype query. Throws UnknownTypeError when the
    /// subject type is not in the catalog.
    bool is_subtype_of(const std::string& type, const std::string& super) const;

    /// Distinct return types of members matching (name, arity) on the
    /// receiver or its supertypes, sorted. Throws UnknownTypeError.
    std::vector<std::string> member_return_type(const std::string& receiver,
                                                const std::string& method,
                                                size_t arity) const;

    /// All matching signatures on the receiver or its supertypes.
    std::vector<const MethodSig*> find_methods(const std::string& receiver,
                                               const std::string& method,
                                               size_t arity) const;

    const FieldSig* find_field(const std::string& receiver,
                               const std::string& field) const;

    /// java.lang binding for a simple name, or empty.
    std::string auto_import(const std::string& simple) const;

    /// Qualified name in the given package with the given simple name, or empty.
    std::string type_in_package(const std::string& package,
                                const std::string& simple) const;

    std::string library_of(const std::string& qualified) const;

    /// Types declaring (or inheriting) a method with the given name/arity.
    std::vector<std::string> types_with_method(const std::string& method,
                                               size_t arity) const;
    std::vector<std::string> types_with_field(const std::string& field) const;

    const std::vector<TypeEntry>& entries() const { return entries_; }

private:
    std::vector<TypeEntry> entries_;
    std::map<std::string, size_t> by_name_;
    std::map<std::string, std::set<std::string>> by_simple_;

    void index_and_validate(const std::string& origin);
    void ancestors_of(const std::string& type, std::set<std::string>& out) const;
};

}  // namespace apizer::catalog
