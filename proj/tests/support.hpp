#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cgfa/abstract_lts.hpp"
#include "cgfa/parser.hpp"

namespace testsupport {

inline const char* groupies_text() {
    return "species X = ?a(1)@lam.X + !b(1)@del.Y\n"
           "species Y = !a(1)@mu.X + ?b(1)@eta.Y\n"
           "init X:1, Y:2\n";
}

inline const char* groupies_abstract_text() {
    return "species X = ?a(1)@lam.X + !b(1)@del.Y\n"
           "species Y = !a(1)@mu.X + ?b(1)@eta.Y\n"
           "init X:[1,2], Y:[1,2]\n";
}

inline cgfa::Model groupies() { return cgfa::parse_model(groupies_text()); }
inline cgfa::Model groupies_abstract() { return cgfa::parse_model(groupies_abstract_text()); }

/// Small random CGF models with a bounded abstract initial state.
/// Models whose concretizations blow past the state cap are rejected by
/// the caller (build_lts throws CapExceeded).
struct RandomModel {
    cgfa::Environment env;
    cgfa::AbstractState init;
};

inline RandomModel random_model(std::mt19937& rng) {
    static const char* rates[] = {"1", "2", "1/2"};
    std::uniform_int_distribution<int> coin(0, 1);
    int nspecies = 2 + coin(rng);
    std::vector<std::string> names;
    for (int i = 0; i < nspecies; ++i) names.push_back(std::string(1, char('A' + i)));
    int nchannels = 1 + coin(rng);
    // one rate per channel so complementary prefixes can actually sync
    std::vector<std::string> chan_rate(nchannels);
    for (int c = 0; c < nchannels; ++c)
        chan_rate[c] = rates[std::uniform_int_distribution<int>(0, 2)(rng)];

    cgfa::Environment env;
    int label = 0;
    for (const auto& name : names) {
        cgfa::SpeciesDef def;
        def.name = name;
        int nsum = std::uniform_int_distribution<int>(0, 3)(rng);
        for (int s = 0; s < nsum; ++s) {
            cgfa::Prefix p;
            int kind = std::uniform_int_distribution<int>(0, 2)(rng);
            if (kind == 0) {
                p.action.kind = cgfa::ActionKind::Delay;
                p.action.rate =
                    cgfa::parse_rational(rates[std::uniform_int_distribution<int>(0, 2)(rng)]);
            } else {
                p.action.kind =
                    kind == 1 ? cgfa::ActionKind::Input : cgfa::ActionKind::Output;
                int c = std::uniform_int_distribution<int>(0, nchannels - 1)(rng);
                p.action.channel = std::string(1, char('a' + c));
                p.action.rate = cgfa::parse_rational(chan_rate[c]);
            }
            p.action.label = "l" + std::to_string(label++);
            int plen = std::uniform_int_distribution<int>(0, 2)(rng);
            for (int k = 0; k < plen; ++k)
                p.product.add(names[std::uniform_int_distribution<int>(0, nspecies - 1)(rng)]);
            def.summands.push_back(std::move(p));
        }
        env.species.push_back(std::move(def));
    }

    cgfa::AbstractState init;
    std::uint64_t points = 1;
    for (const auto& name : names) {
        std::uint64_t lo = std::uniform_int_distribution<int>(0, 2)(rng);
        std::uint64_t width = std::uniform_int_distribution<int>(0, 2)(rng);
        while (points * (width + 1) > 64 && width > 0) --width;
        points *= width + 1;
        init.set(name, cgfa::Interval{lo, lo + width});
    }
    return {std::move(env), std::move(init)};
}

}  // namespace testsupport
