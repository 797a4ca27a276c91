// masim command line: validate scenario configs, run them deterministically,
// and summarize trace files.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "masim/config.hpp"
#include "masim/stats.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNonconformance = 2;
constexpr int kExitRuntime = 3;

int cmd_validate(const std::string& config_path) {
    try {
        masim::RunSpec spec = masim::load_run_spec_file(config_path);
        masim::World world = masim::build_world(spec);
        std::cout << "ok: " << world.system.agents.size() << " agents, "
                  << world.system.organizations.size() << " communities\n";
        return kExitOk;
    } catch (const masim::ValidationError& e) {
        for (const masim::Diagnostic& d : e.diagnostics()) {
            std::cerr << masim::errc_name(d.code) << ": " << d.detail << "\n";
        }
        return kExitValidation;
    } catch (const masim::SimError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }
}

bool write_weights_report(const masim::World& world, const std::string& path) {
    nlohmann::ordered_json report;
    report["inhibition_threshold"] = world.system.affinity.inhibition_threshold;
    nlohmann::ordered_json weights = nlohmann::ordered_json::array();
    for (const auto& [pair, w] : world.system.affinity.weights) {
        weights.push_back(nlohmann::ordered_json{
            {"from", pair.first.id}, {"to", pair.second.id}, {"weight", w}});
    }
    report["weights"] = weights;
    std::ofstream out(path);
    if (!out) return false;
    out << report.dump(2) << "\n";
    return true;
}

struct RunArgs {
    std::string config_path;
    std::string scenario;
    std::string out_path = "trace.jsonl";
    std::string weights_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::int64_t steps = -1;
    bool conformance = false;
};

int cmd_run(const RunArgs& args) {
    masim::RunSpec spec;
    try {
        spec = masim::load_run_spec_file(args.config_path);
    } catch (const masim::SimError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }
    if (!args.scenario.empty() && args.scenario != spec.scenario) {
        std::cerr << "config declares scenario '" << spec.scenario << "', not '" << args.scenario
                  << "'\n";
        return kExitValidation;
    }
    if (args.seed_set) {
        spec.seed = args.seed;
        if (spec.epidemic) spec.epidemic->seed = args.seed;
    }
    if (args.steps >= 0) spec.steps = args.steps;

    masim::World world;
    try {
        world = masim::build_world(spec);
    } catch (const masim::ValidationError& e) {
        for (const masim::Diagnostic& d : e.diagnostics()) {
            std::cerr << masim::errc_name(d.code) << ": " << d.detail << "\n";
        }
        return kExitValidation;
    } catch (const masim::SimError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }

    try {
        masim::run(world, spec.steps);
    } catch (const masim::SimError& e) {
        std::cerr << e.what() << "\n";
        return kExitRuntime;
    }

    std::ofstream out(args.out_path);
    if (!out) {
        std::cerr << "cannot write trace to '" << args.out_path << "'\n";
        return kExitRuntime;
    }
    masim::write_trace(world.trace, out);
    if (!args.weights_path.empty() && !write_weights_report(world, args.weights_path)) {
        std::cerr << "cannot write weights report to '" << args.weights_path << "'\n";
        return kExitRuntime;
    }

    std::cout << masim::trace_digest(world.trace) << "\n";

    if (args.conformance && masim::has_protocol_failures(world)) {
        for (const masim::ProtocolViolationRecord& v : world.tracker.violations()) {
            std::cerr << "violation: " << v.detail << "\n";
        }
        for (const masim::Obligation& ob :
             world.tracker.pending_obligations(world.round, world.obligation_timeout)) {
            std::cerr << "overdue: " << masim::to_string(ob.act.performative) << " "
                      << ob.act.sender.id << "->" << ob.act.receiver.id << " opened round "
                      << ob.opened_round << "\n";
        }
        return kExitNonconformance;
    }
    return kExitOk;
}

int cmd_stats(const std::string& trace_path) {
    std::ifstream in(trace_path);
    if (!in) {
        std::cerr << "cannot open '" << trace_path << "'\n";
        return kExitValidation;
    }
    try {
        masim::Trace trace = masim::parse_trace_jsonl(in);
        std::cout << masim::format_stats(masim::summarize(trace));
        return kExitOk;
    } catch (const masim::SimError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"masim - deterministic multi-level agent simulation"};
    app.require_subcommand(1);

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "check a scenario or system config");
    validate->add_option("config", validate_path, "config file")->required();

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "run a scenario and write its trace");
    run->add_option("--config", run_args.config_path, "config file")->required();
    run->add_option("--scenario", run_args.scenario, "expected scenario name");
    auto* seed_opt = run->add_option("--seed", run_args.seed, "override the config seed");
    run->add_option("--steps", run_args.steps, "override the configured number of rounds");
    run->add_option("--out", run_args.out_path, "trace output path (JSON lines)");
    run->add_flag("--conformance", run_args.conformance,
                  "exit 2 on protocol violations or overdue obligations");
    run->add_option("--weights-report", run_args.weights_path,
                    "write final affinity weights to this file");

    std::string stats_path;
    CLI::App* stats = app.add_subcommand("stats", "summarize a trace file");
    stats->add_option("trace", stats_path, "trace file")->required();

    CLI11_PARSE(app, argc, argv);

    if (*validate) return cmd_validate(validate_path);
    if (*run) {
        run_args.seed_set = seed_opt->count() > 0;
        return cmd_run(run_args);
    }
    if (*stats) return cmd_stats(stats_path);
    return kExitValidation;
}
