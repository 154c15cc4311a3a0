#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cgfa/parser.hpp"
#include "cgfa/serialize.hpp"

namespace {

struct Options {
    std::string model_path;
    cgfa::Config config;
    std::string format = "text";
    std::string stage = "bounds";
    std::string output;
};

void write_out(const Options& opt, const std::string& text) {
    if (opt.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.output);
    if (!out) throw std::runtime_error("cannot write '" + opt.output + "'");
    out << text;
}

std::string model_name(const std::string& path) {
    auto slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

int run_check(const Options& opt) {
    cgfa::Model model = cgfa::parse_model_file(opt.model_path);
    if (model.abstract_init()) {
        std::cerr << "error: 'check' needs a concrete init (use 'abstract' for intervals)\n";
        return 1;
    }
    const auto& init = std::get<cgfa::Multiset>(model.init);
    cgfa::LTS lts = cgfa::build_lts(model.env, init, opt.config.state_cap);
    cgfa::DTMC dtmc = cgfa::to_dtmc(lts);
    std::vector<double> term = cgfa::reach_termination(dtmc, opt.config.epsilon);
    if (opt.format == "json") {
        write_out(opt, cgfa::concrete_report_json(model_name(opt.model_path), opt.config, lts,
                                                  dtmc, term));
        return 0;
    }
    std::ostringstream out;
    out << "model: " << model_name(opt.model_path) << "\n";
    out << "mode: concrete\n";
    out << "states: " << lts.states.size() << "\n";
    for (std::size_t i = 0; i < lts.states.size(); ++i)
        out << "  " << i << " " << lts.states[i].str() << "  termination "
            << cgfa::fmt_double(term[i]) << "\n";
    out << "termination at init: " << cgfa::fmt_double(term[lts.initial]) << "\n";
    write_out(opt, out.str());
    return 0;
}

int run_abstract(const Options& opt) {
    cgfa::Model model = cgfa::parse_model_file(opt.model_path);
    if (!model.abstract_init()) {
        std::cerr << "error: 'abstract' needs an interval init (use 'check' for counts)\n";
        return 1;
    }
    const auto& init = std::get<cgfa::AbstractState>(model.init);
    cgfa::AbstractLTS alts =
        cgfa::explore(model.env, init, opt.config.widening, opt.config.state_cap);
    cgfa::IMC imc = cgfa::to_imc(alts, opt.config.enum_cap);
    cgfa::TerminationBounds bounds = cgfa::reach_bounds(imc, opt.config.epsilon);
    if (opt.format == "json") {
        write_out(opt, cgfa::abstract_report_json(model_name(opt.model_path), opt.config, alts,
                                                  imc, bounds));
        return 0;
    }
    std::ostringstream out;
    out << "model: " << model_name(opt.model_path) << "\n";
    out << "mode: abstract (widening " << (opt.config.widening ? "on" : "off") << ")\n";
    out << "states: " << alts.states.size() << "\n";
    for (std::size_t i = 0; i < alts.states.size(); ++i)
        out << "  " << i << " " << alts.states[i].str() << "  bounds ["
            << cgfa::fmt_double(bounds.lo[i]) << ", " << cgfa::fmt_double(bounds.hi[i])
            << "]\n";
    out << "bounds at init: [" << cgfa::fmt_double(bounds.lo[alts.initial]) << ", "
        << cgfa::fmt_double(bounds.hi[alts.initial]) << "]\n";
    write_out(opt, out.str());
    return 0;
}

int run_export(const Options& opt) {
    cgfa::Model model = cgfa::parse_model_file(opt.model_path);
    bool dot = opt.format == "dot";
    if (opt.stage == "lts" || opt.stage == "dtmc") {
        if (model.abstract_init()) {
            std::cerr << "error: stage '" << opt.stage << "' needs a concrete init\n";
            return 1;
        }
        cgfa::LTS lts =
            cgfa::build_lts(model.env, std::get<cgfa::Multiset>(model.init), opt.config.state_cap);
        if (opt.stage == "lts") {
            write_out(opt, dot ? cgfa::lts_to_dot(lts) : cgfa::lts_json(lts));
            return 0;
        }
        cgfa::DTMC dtmc = cgfa::to_dtmc(lts);
        write_out(opt, dot ? cgfa::dtmc_to_dot(dtmc) : cgfa::dtmc_json(dtmc));
        return 0;
    }
    cgfa::AbstractState init =
        model.abstract_init() ? std::get<cgfa::AbstractState>(model.init)
                              : cgfa::alpha_state(std::get<cgfa::Multiset>(model.init));
    cgfa::AbstractLTS alts =
        cgfa::explore(model.env, init, opt.config.widening, opt.config.state_cap);
    if (opt.stage == "alts") {
        write_out(opt, dot ? cgfa::alts_to_dot(alts) : cgfa::alts_json(alts));
        return 0;
    }
    cgfa::IMC imc = cgfa::to_imc(alts, opt.config.enum_cap);
    if (opt.stage == "imc") {
        write_out(opt, dot ? cgfa::imc_to_dot(imc) : cgfa::imc_json(imc));
        return 0;
    }
    if (dot) {
        std::cerr << "error: stage 'bounds' has no dot form\n";
        return 64;
    }
    cgfa::TerminationBounds bounds = cgfa::reach_bounds(imc, opt.config.epsilon);
    write_out(opt,
              cgfa::abstract_report_json(model_name(opt.model_path), opt.config, alts, imc,
                                         bounds));
    return 0;
}

void add_common(CLI::App* cmd, Options& opt, bool with_format_dot) {
    cmd->add_option("model", opt.model_path, "model file")->required();
    cmd->add_flag("--widening,!--no-widening", opt.config.widening,
                  "fold new abstract states into dominating ones (default on)");
    cmd->add_option("--state-cap", opt.config.state_cap, "exploration state limit");
    cmd->add_option("--enum-cap", opt.config.enum_cap,
                    "max integer points for exact probability bounds");
    cmd->add_option("--epsilon", opt.config.epsilon, "value-iteration convergence threshold");
    std::vector<std::string> formats = with_format_dot
                                           ? std::vector<std::string>{"json", "dot"}
                                           : std::vector<std::string>{"json", "text"};
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember(formats));
    cmd->add_option("-o,--output", opt.output, "write output to a file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cgfa: termination analysis for chemical ground form models"};
    app.require_subcommand(1);

    Options check_opt, abstract_opt, export_opt;
    export_opt.format = "json";

    CLI::App* check = app.add_subcommand("check", "exact analysis of a concrete model");
    add_common(check, check_opt, false);
    CLI::App* abstract_cmd =
        app.add_subcommand("abstract", "bound analysis of an interval model");
    add_common(abstract_cmd, abstract_opt, false);
    CLI::App* export_cmd = app.add_subcommand("export", "dump a pipeline stage");
    add_common(export_cmd, export_opt, true);
    export_cmd->add_option("--stage", export_opt.stage, "pipeline stage to dump")
        ->check(CLI::IsMember({"lts", "dtmc", "alts", "imc", "bounds"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (check->parsed()) return run_check(check_opt);
        if (abstract_cmd->parsed()) return run_abstract(abstract_opt);
        return run_export(export_opt);
    } catch (const cgfa::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
