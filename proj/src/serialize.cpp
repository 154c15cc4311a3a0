#include "cgfa/serialize.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace cgfa {

using json = nlohmann::ordered_json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_rational(const Rational& q) {
    return fmt_double(to_double(q)) + " (" + q.str() + ")";
}

namespace {

json prob_json(const Rational& q) {
    return json{{"dec", fmt_double(to_double(q))}, {"rat", q.str()}};
}

json interval_json(const Interval& i) {
    json out = json::array();
    out.push_back(i.lo);
    if (i.hi)
        out.push_back(*i.hi);
    else
        out.push_back("inf");
    return out;
}

json marking_json(const Multiset& m) {
    json out = json::object();
    for (const auto& [name, n] : m.entries()) out[name] = n;
    return out;
}

json marking_json(const AbstractState& m) {
    json out = json::object();
    for (const auto& [name, iv] : m.entries()) out[name] = interval_json(iv);
    return out;
}

json config_json(const Config& cfg) {
    return json{{"widening", cfg.widening},
                {"state_cap", cfg.state_cap},
                {"enum_cap", cfg.enum_cap},
                {"epsilon", fmt_double(cfg.epsilon)}};
}

template <typename States>
json states_json(const States& states) {
    json out = json::array();
    for (std::size_t i = 0; i < states.size(); ++i)
        out.push_back(json{{"id", i}, {"marking", marking_json(states[i])}});
    return out;
}

json lts_transitions_json(const LTS& lts) {
    json out = json::array();
    for (std::size_t i = 0; i < lts.states.size(); ++i) {
        for (const auto& t : lts.transitions[i]) {
            out.push_back(json{{"source", i},
                               {"target", lts.index.at(t.target)},
                               {"theta", t.theta.str()},
                               {"delta", t.delta.str()},
                               {"rate_param", t.rate_param.str()},
                               {"rate", prob_json(rate(lts.env, t))}});
        }
    }
    return out;
}

json alts_transitions_json(const AbstractLTS& alts) {
    json out = json::array();
    for (std::size_t i = 0; i < alts.states.size(); ++i) {
        for (const auto& t : alts.transitions[i]) {
            ExtRat mx = max_abstract_rate(alts.env, t);
            out.push_back(json{{"source", i},
                               {"target", alts.index.at(t.target)},
                               {"theta", t.theta.str()},
                               {"delta", t.delta.str()},
                               {"rate_param", t.rate_param.str()},
                               {"max_rate", mx.infinite ? json("inf") : json(mx.value.str())}});
        }
    }
    return out;
}

json dtmc_matrix_json(const DTMC& dtmc) {
    json out = json::array();
    for (std::size_t i = 0; i < dtmc.states.size(); ++i) {
        for (const auto& [j, p] : dtmc.pr[i]) {
            json labels = json::array();
            if (dtmc.labels[i].contains(j))
                for (const auto& l : dtmc.labels[i].at(j)) labels.push_back(l.str());
            out.push_back(
                json{{"source", i}, {"target", j}, {"p", prob_json(p)}, {"labels", labels}});
        }
    }
    return out;
}

json imc_matrix_json(const IMC& imc) {
    json out = json::array();
    for (std::size_t i = 0; i < imc.states.size(); ++i) {
        for (std::size_t j : imc.successors(i)) {
            json labels = json::array();
            if (imc.labels[i].contains(j))
                for (const auto& l : imc.labels[i].at(j)) labels.push_back(l.str());
            out.push_back(json{{"source", i},
                               {"target", j},
                               {"lo", prob_json(imc.lo(i, j))},
                               {"hi", prob_json(imc.hi(i, j))},
                               {"labels", labels}});
        }
    }
    return out;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string lts_to_dot(const LTS& lts) {
    std::ostringstream out;
    out << "digraph lts {\n";
    for (std::size_t i = 0; i < lts.states.size(); ++i)
        out << "  n" << i << " [label=\"" << dot_escape(lts.states[i].str()) << "\"];\n";
    for (std::size_t i = 0; i < lts.states.size(); ++i)
        for (const auto& t : lts.transitions[i])
            out << "  n" << i << " -> n" << lts.index.at(t.target) << " [label=\""
                << dot_escape(t.theta.str() + " | " + t.delta.str() + " | " +
                              t.rate_param.str())
                << "\"];\n";
    out << "}\n";
    return out.str();
}

std::string dtmc_to_dot(const DTMC& dtmc) {
    std::ostringstream out;
    out << "digraph dtmc {\n";
    for (std::size_t i = 0; i < dtmc.states.size(); ++i)
        out << "  n" << i << " [label=\"" << dot_escape(dtmc.states[i].str()) << "\"];\n";
    for (std::size_t i = 0; i < dtmc.states.size(); ++i)
        for (const auto& [j, p] : dtmc.pr[i])
            out << "  n" << i << " -> n" << j << " [label=\"" << dot_escape(fmt_rational(p))
                << "\"];\n";
    out << "}\n";
    return out.str();
}

std::string alts_to_dot(const AbstractLTS& alts) {
    std::ostringstream out;
    out << "digraph alts {\n";
    for (std::size_t i = 0; i < alts.states.size(); ++i)
        out << "  n" << i << " [label=\"" << dot_escape(alts.states[i].str()) << "\"];\n";
    for (std::size_t i = 0; i < alts.states.size(); ++i)
        for (const auto& t : alts.transitions[i])
            out << "  n" << i << " -> n" << alts.index.at(t.target) << " [label=\""
                << dot_escape(t.theta.str() + " | " + t.delta.str() + " | " +
                              t.rate_param.str())
                << "\"];\n";
    out << "}\n";
    return out.str();
}

std::string imc_to_dot(const IMC& imc) {
    std::ostringstream out;
    out << "digraph imc {\n";
    for (std::size_t i = 0; i < imc.states.size(); ++i)
        out << "  n" << i << " [label=\"" << dot_escape(imc.states[i].str()) << "\"];\n";
    for (std::size_t i = 0; i < imc.states.size(); ++i) {
        for (std::size_t j : imc.successors(i)) {
            std::string labels;
            if (imc.labels[i].contains(j)) {
                for (const auto& l : imc.labels[i].at(j)) {
                    if (!labels.empty()) labels += ",";
                    labels += l.str();
                }
            }
            out << "  n" << i << " -> n" << j << " [label=\""
                << dot_escape("{" + labels + "} | [" + imc.lo(i, j).str() + "," +
                              imc.hi(i, j).str() + "]")
                << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string concrete_report_json(const std::string& model_name, const Config& cfg,
                                 const LTS& lts, const DTMC& dtmc,
                                 const std::vector<double>& termination) {
    json per_state = json::array();
    for (double v : termination) per_state.push_back(fmt_double(v));
    json out{{"model", model_name},
             {"mode", "concrete"},
             {"config", config_json(cfg)},
             {"states", states_json(lts.states)},
             {"transitions", lts_transitions_json(lts)},
             {"matrix", dtmc_matrix_json(dtmc)},
             {"termination",
              {{"per_state", per_state}, {"initial", fmt_double(termination[lts.initial])}}}};
    return out.dump(2) + "\n";
}

std::string abstract_report_json(const std::string& model_name, const Config& cfg,
                                 const AbstractLTS& alts, const IMC& imc,
                                 const TerminationBounds& bounds) {
    json per_state = json::array();
    for (std::size_t i = 0; i < bounds.lo.size(); ++i)
        per_state.push_back(json::array({fmt_double(bounds.lo[i]), fmt_double(bounds.hi[i])}));
    json out{{"model", model_name},
             {"mode", "abstract"},
             {"config", config_json(cfg)},
             {"states", states_json(alts.states)},
             {"transitions", alts_transitions_json(alts)},
             {"matrix", imc_matrix_json(imc)},
             {"termination",
              {{"per_state", per_state},
               {"initial", json::array({fmt_double(bounds.lo[alts.initial]),
                                        fmt_double(bounds.hi[alts.initial])})}}}};
    return out.dump(2) + "\n";
}

std::string lts_json(const LTS& lts) {
    json out{{"states", states_json(lts.states)},
             {"initial", lts.initial},
             {"transitions", lts_transitions_json(lts)}};
    return out.dump(2) + "\n";
}

std::string alts_json(const AbstractLTS& alts) {
    json out{{"states", states_json(alts.states)},
             {"initial", alts.initial},
             {"widened", alts.widened},
             {"transitions", alts_transitions_json(alts)}};
    return out.dump(2) + "\n";
}

std::string dtmc_json(const DTMC& dtmc) {
    json out{{"states", states_json(dtmc.states)},
             {"initial", dtmc.initial},
             {"matrix", dtmc_matrix_json(dtmc)}};
    return out.dump(2) + "\n";
}

std::string imc_json(const IMC& imc) {
    json out{{"states", states_json(imc.states)},
             {"initial", imc.initial},
             {"matrix", imc_matrix_json(imc)}};
    return out.dump(2) + "\n";
}

}  // namespace cgfa
