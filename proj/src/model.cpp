#include "cgfa/model.hpp"

#include <algorithm>
#include <sstream>

namespace cgfa {

Multiset::Multiset(std::initializer_list<std::pair<const Name, std::uint64_t>> init) {
    for (const auto& [name, n] : init) add(name, n);
}

std::uint64_t Multiset::count(const Name& x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? 0 : it->second;
}

void Multiset::set(const Name& x, std::uint64_t n) {
    if (n == 0)
        entries_.erase(x);
    else
        entries_[x] = n;
}

void Multiset::add(const Name& x, std::uint64_t n) {
    if (n > 0) entries_[x] += n;
}

std::string Multiset::str() const {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (const auto& [name, n] : entries_) {
        if (!first) out << ", ";
        first = false;
        out << name << ':' << n;
    }
    out << '}';
    return out.str();
}

Multiset msum(const Multiset& m, const Multiset& n) {
    Multiset result = m;
    for (const auto& [name, k] : n.entries()) result.add(name, k);
    return result;
}

Multiset mdiff(const Multiset& m, const Multiset& n) {
    Multiset result;
    for (const auto& [name, k] : m.entries()) {
        std::uint64_t sub = n.count(name);
        result.set(name, k > sub ? k - sub : 0);
    }
    return result;
}

const SpeciesDef* Environment::find(const Name& x) const {
    for (const auto& def : species)
        if (def.name == x) return &def;
    return nullptr;
}

std::vector<Name> Environment::species_names() const {
    std::vector<Name> names;
    names.reserve(species.size());
    for (const auto& def : species) names.push_back(def.name);
    return names;
}

std::vector<Diagnostic> validate_well_labeled(const Environment& env) {
    std::vector<Diagnostic> diags;
    std::map<Label, Name> seen;
    for (const auto& def : env.species) {
        for (const auto& prefix : def.summands) {
            auto [it, inserted] = seen.emplace(prefix.action.label, def.name);
            if (!inserted) {
                diags.push_back({"duplicate label '" + prefix.action.label + "' in species '" +
                                 def.name + "' (first used in species '" + it->second + "')"});
            }
            for (const auto& [name, n] : prefix.product.entries()) {
                (void)n;
                if (!env.defines(name))
                    diags.push_back({"product of label '" + prefix.action.label +
                                     "' references undefined species '" + name + "'"});
            }
        }
    }
    return diags;
}

const Prefix& lookup_action(const Environment& env, const Name& x, const Label& lambda) {
    const SpeciesDef* def = env.find(x);
    if (!def) throw std::out_of_range("undefined species '" + x + "'");
    for (const auto& prefix : def->summands)
        if (prefix.action.label == lambda) return prefix;
    throw std::out_of_range("label '" + lambda + "' not found in species '" + x + "'");
}

std::set<Label> labels_of(const Environment& env, const Name& x) {
    const SpeciesDef* def = env.find(x);
    if (!def) throw std::out_of_range("undefined species '" + x + "'");
    std::set<Label> labels;
    for (const auto& prefix : def->summands) labels.insert(prefix.action.label);
    return labels;
}

std::optional<Name> species_of_label(const Environment& env, const Label& lambda) {
    for (const auto& def : env.species)
        for (const auto& prefix : def.summands)
            if (prefix.action.label == lambda) return def.name;
    return std::nullopt;
}

}  // namespace cgfa
