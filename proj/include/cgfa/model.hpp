#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cgfa/rational.hpp"

namespace cgfa {

using Name = std::string;
using Label = std::string;

enum class ActionKind { Delay, Input, Output };

struct BasicAction {
    ActionKind kind = ActionKind::Delay;
    Name channel;  // empty for Delay
    Rational rate; // > 0
    Label label;
};

/// Concrete solution: species name -> multiplicity, zero entries dropped.
class Multiset {
public:
    Multiset() = default;
    Multiset(std::initializer_list<std::pair<const Name, std::uint64_t>> init);

    std::uint64_t count(const Name& x) const;
    void set(const Name& x, std::uint64_t n);
    void add(const Name& x, std::uint64_t n = 1);
    bool empty() const { return entries_.empty(); }
    const std::map<Name, std::uint64_t>& entries() const { return entries_; }

    bool operator==(const Multiset&) const = default;
    auto operator<=>(const Multiset&) const = default;

    std::string str() const;

private:
    std::map<Name, std::uint64_t> entries_;
};

Multiset msum(const Multiset& m, const Multiset& n);
/// Pointwise truncated difference: entries never go negative.
Multiset mdiff(const Multiset& m, const Multiset& n);

struct Prefix {
    BasicAction action;
    Multiset product;  // the continuation solution
};

struct SpeciesDef {
    Name name;
    std::vector<Prefix> summands;  // textual order
};

/// A well-labeled list of species definitions.
struct Environment {
    std::vector<SpeciesDef> species;

    const SpeciesDef* find(const Name& x) const;
    bool defines(const Name& x) const { return find(x) != nullptr; }
    std::vector<Name> species_names() const;
};

struct Diagnostic {
    std::string message;
    int line = 0;
    int column = 0;
};

/// Empty result means the environment is well-labeled and closed.
std::vector<Diagnostic> validate_well_labeled(const Environment& env);

/// The unique prefix of X carrying label lambda (E.X.lambda).
const Prefix& lookup_action(const Environment& env, const Name& x, const Label& lambda);

std::set<Label> labels_of(const Environment& env, const Name& x);

/// Species owning a label, for homo/hetero sync classification.
std::optional<Name> species_of_label(const Environment& env, const Label& lambda);

}  // namespace cgfa
