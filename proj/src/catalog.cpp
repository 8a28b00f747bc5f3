#include "apizer/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace apizer::catalog {

using nlohmann::json;

std::string TypeEntry::simple_name() const {
    auto dot = name.rfind('.');
    return dot == std::string::npos ? name : name.substr(dot + 1);
}

namespace {

TypeEntry parse_entry(const json& rec, const std::string& origin, size_t lineno) {
    auto fail = [&](const std::string& msg) -> void {
        throw SchemaError(origin + ":" + std::to_string(lineno) + ": " + msg +
                          " in record " + rec.dump());
    };
    if (!rec.is_object()) fail("record is not an object");

    TypeEntry e;
    if (!rec.contains("name") || !rec["name"].is_string()) fail("missing \"name\"");
    e.name = rec["name"].get<std::string>();
    if (e.name.empty()) fail("empty \"name\"");
    if (!rec.contains("package") || !rec["package"].is_string()) fail("missing \"package\"");
    e.package = rec["package"].get<std::string>();
    if (!rec.contains("library") || !rec["library"].is_string()) fail("missing \"library\"");
    e.library = rec["library"].get<std::string>();
    e.primitive = rec.value("primitive", false);

    for (const auto& s : rec.value("supertypes", json::array())) {
        if (!s.is_string()) fail("bad supertype");
        e.supertypes.push_back(s.get<std::string>());
    }
    for (const auto& m : rec.value("methods", json::array())) {
        if (!m.is_object() || !m.contains("name") || !m.contains("returns")) {
            fail("bad method record");
        }
        MethodSig sig;
        sig.name = m["name"].get<std::string>();
        sig.returns = m["returns"].get<std::string>();
        sig.is_static = m.value("static", false);
        for (const auto& p : m.value("params", json::array())) {
            sig.params.push_back(p.get<std::string>());
        }
        e.methods.push_back(std::move(sig));
    }
    for (const auto& f : rec.value("fields", json::array())) {
        if (!f.is_object() || !f.contains("name") || !f.contains("type")) {
            fail("bad field record");
        }
        e.fields.push_back(FieldSig{f["name"].get<std::string>(),
                                    f["type"].get<std::string>()});
    }
    return e;
}

}  // namespace

TypeCatalog TypeCatalog::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open catalog file: " + path);
    return from_stream(in, path);
}

TypeCatalog TypeCatalog::from_stream(std::istream& in, const std::string& origin) {
    TypeCatalog cat;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::parse_error& err) {
            throw SchemaError(origin + ":" + std::to_string(lineno) + ": " +
                              err.what());
        }
        cat.entries_.push_back(parse_entry(rec, origin, lineno));
    }
    if (cat.entries_.empty()) {
        throw SchemaError(origin + ": catalog contains no records");
    }
    cat.index_and_validate(origin);
    return cat;
}

void TypeCatalog::index_and_validate(const std::string& origin) {
    for (size_t i = 0; i < entries_.size(); ++i) {
        const TypeEntry& e = entries_[i];
        if (!by_name_.emplace(e.name, i).second) {
            throw SchemaError(origin + ": duplicate qualified name " + e.name);
        }
        by_simple_[e.simple_name()].insert(e.name);
        std::set<std::string> sigs;
        for (const auto& m : e.methods) {
            std::string key = m.name + "(";
            for (const auto& p : m.params) key += p + ",";
            key += ")";
            if (!sigs.insert(key).second) {
                throw SchemaError(origin + ": duplicate method signature " + key +
                                  " on " + e.name);
            }
        }
    }
    // The supertype relation must be acyclic.
    for (const auto& e : entries_) {
        std::set<std::string> seen;
        std::vector<std::string> stack(e.supertypes.begin(), e.supertypes.end());
        while (!stack.empty()) {
            std::string t = stack.back();
            stack.pop_back();
            if (t == e.name) {
                throw SchemaError(origin + ": supertype cycle through " + e.name);
            }
            if (!seen.insert(t).second) continue;
            const TypeEntry* super = find(t);
            if (super) {
                for (const auto& s : super->supertypes) stack.push_back(s);
            }
        }
    }
}

const TypeEntry* TypeCatalog::find(const std::string& qualified) const {
    auto it = by_name_.find(qualified);
    return it == by_name_.end() ? nullptr : &entries_[it->second];
}

std::vector<std::string> TypeCatalog::lookup_simple_name(const std::string& simple) const {
    auto it = by_simple_.find(simple);
    if (it == by_simple_.end()) return {};
    return {it->second.begin(), it->second.end()};
}

void TypeCatalog::ancestors_of(const std::string& type,
                               std::set<std::string>& out) const {
    if (!out.insert(type).second) return;
    const TypeEntry* e = find(type);
    if (!e) return;
    for (const auto& s : e->supertypes) ancestors_of(s, out);
}

bool TypeCatalog::is_subtype_of(const std::string& type, const std::string& super) const {
    if (!find(type)) throw UnknownTypeError(type);
    std::set<std::string> ancestors;
    ancestors_of(type, ancestors);
    return ancestors.count(super) > 0;
}

std::vector<const MethodSig*> TypeCatalog::find_methods(const std::string& receiver,
                                                        const std::string& method,
                                                        size_t arity) const {
    if (!find(receiver)) throw UnknownTypeError(receiver);
    std::set<std::string> ancestors;
    ancestors_of(receiver, ancestors);
    std::vector<const MethodSig*> out;
    for (const auto& t : ancestors) {
        const TypeEntry* e = find(t);
        if (!e) continue;
        for (const auto& m : e->methods) {
            if (m.name == method && m.params.size() == arity) out.push_back(&m);
        }
    }
    return out;
}

std::vector<std::string> TypeCatalog::member_return_type(const std::string& receiver,
                                                         const std::string& method,
                                                         size_t arity) const {
    std::set<std::string> returns;
    for (const MethodSig* m : find_methods(receiver, method, arity)) {
        returns.insert(m->returns);
    }
    return {returns.begin(), returns.end()};
}

const FieldSig* TypeCatalog::find_field(const std::string& receiver,
                                        const std::string& field) const {
    if (!find(receiver)) return nullptr;
    std::set<std::string> ancestors;
    ancestors_of(receiver, ancestors);
    for (const auto& t : ancestors) {
        const TypeEntry* e = find(t);
        if (!e) continue;
        for (const auto& f : e->fields) {
            if (f.name == field) return &f;
        }
    }
    return nullptr;
}

std::string TypeCatalog::auto_import(const std::string& simple) const {
    for (const auto& q : lookup_simple_name(simple)) {
        const TypeEntry* e = find(q);
        if (e && e->package == "java.lang") return q;
    }
    return "";
}

std::string TypeCatalog::type_in_package(const std::string& package,
                                         const std::string& simple) const {
    for (const auto& q : lookup_simple_name(simple)) {
        const TypeEntry* e = find(q);
        if (e && e->package == package) return q;
    }
    return "";
}

std::string TypeCatalog::library_of(const std::string& qualified) const {
    const TypeEntry* e = find(qualified);
    return e ? e->library : "";
}

std::vector<std::string> TypeCatalog::types_with_method(const std::string& method,
                                                        size_t arity) const {
    std::vector<std::string> out;
    for (const auto& e : entries_) {
        if (e.primitive) continue;
        if (!find_methods(e.name, method, arity).empty()) out.push_back(e.name);
    }
    return out;
}

std::vector<std::string> TypeCatalog::types_with_field(const std::string& field) const {
    std::vector<std::string> out;
    for (const auto& e : entries_) {
        if (e.primitive) continue;
        if (find_field(e.name, field)) out.push_back(e.name);
    }
    return out;
}

}  // namespace apizer::catalog
