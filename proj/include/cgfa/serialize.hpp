#pragma once

#include <string>

#include "cgfa/abstract_lts.hpp"
#include "cgfa/concrete.hpp"
#include "cgfa/imc.hpp"
#include "cgfa/termination.hpp"

namespace cgfa {

struct Config {
    bool widening = true;
    std::size_t state_cap = 100000;
    std::uint64_t enum_cap = 4096;
    double epsilon = 1e-9;
};

/// Decimal (17 significant digits) rendering used across all exports.
std::string fmt_double(double v);
/// Decimal plus exact rational rendering, e.g. "0.5 (1/2)".
std::string fmt_rational(const Rational& q);

std::string lts_to_dot(const LTS& lts);
std::string dtmc_to_dot(const DTMC& dtmc);
std::string alts_to_dot(const AbstractLTS& alts);
std::string imc_to_dot(const IMC& imc);

std::string concrete_report_json(const std::string& model_name, const Config& cfg,
                                 const LTS& lts, const DTMC& dtmc,
                                 const std::vector<double>& termination);

std::string abstract_report_json(const std::string& model_name, const Config& cfg,
                                 const AbstractLTS& alts, const IMC& imc,
                                 const TerminationBounds& bounds);

std::string lts_json(const LTS& lts);
std::string alts_json(const AbstractLTS& alts);
std::string dtmc_json(const DTMC& dtmc);
std::string imc_json(const IMC& imc);

}  // namespace cgfa
