#include "tmn/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tmn/circularity.hpp"
#include "tmn/optimize.hpp"
#include "tmn/scenario_io.hpp"
#include "tmn/simulate.hpp"

namespace tmn {

namespace {

std::string num(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string sci(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%e", value);
    return buf;
}

std::string horizon_text(const Horizon& horizon) {
    return horizon.is_bounded() ? num(horizon.phi()) : std::string("unbounded");
}

Horizon effective_horizon(const SimParams& sim, const std::optional<double>& phi) {
    return phi ? Horizon::at(*phi) : sim.horizon;
}

std::string strategy_list(const std::vector<Strategy>& applied) {
    if (applied.empty()) return "-";
    std::string text;
    for (const Strategy& s : applied) {
        if (!text.empty()) text += ",";
        text += strategy_tag(s);
    }
    return text;
}

int cmd_validate(const std::string& file, std::ostream& out) {
    const ScenarioBundle bundle = load_scenario_file(file);
    const TMNetwork& net = bundle.scenario.network;
    out << "material = " << net.material() << "\n"
        << "n_v = " << net.node_count() << "\n"
        << "n_a = " << net.arc_count() << "\n"
        << "n_c = " << net.size() << "\n"
        << "route_length = " << bundle.scenario.route.sequence.size() << "\n"
        << "ok\n";
    return 0;
}

int cmd_simulate(const std::string& file, const std::optional<std::string>& traj_dir,
                 std::ostream& out) {
    const ScenarioBundle bundle = load_scenario_file(file);
    const Scenario& scenario = bundle.scenario;
    const JourneyLog log = run_journey(scenario.network, scenario.element, scenario.route,
                                       bundle.sim.dt, bundle.sim.integration());

    out << "scenario = " << scenario.label << "\n";
    for (const auto& [label, time] : log.milestone_times) {
        out << label << " = " << num(time) << "\n";
    }
    const double duration = log.events.empty() ? 0.0 : log.events.back().time;
    out << "duration_s = " << num(duration) << "\n";

    if (traj_dir) {
        const std::filesystem::path dir(*traj_dir);
        std::filesystem::create_directories(dir);
        for (const auto& [arc_id, trajectory] : log.trajectories) {
            const std::filesystem::path path =
                dir / ("arc_" + std::to_string(arc_id) + ".csv");
            write_trajectory_csv(path, trajectory);
            out << "wrote " << path.string() << "\n";
        }
    }
    return 0;
}

void print_report(const std::string& label, const MaterialElement& element,
                  const CircularityReport& report, std::ostream& out) {
    out << "Circularity of '" << label << "' (material " << element.material << ", m = "
        << num(element.mass) << " kg)\n";
    out << "  " << std::left << std::setw(28) << "event" << std::setw(24) << "time_s"
        << "mass_kg\n";
    for (const auto& [event, mass] : report.batch_contributions) {
        out << "  " << std::left << std::setw(28) << to_string(event.kind) << std::setw(24)
            << num(event.time) << num(mass) << "\n";
    }
    out << "  continuous contribution: " << num(report.continuous_contribution)
        << " kg (delta = " << num(report.delta) << " s)\n";
    out << "  lambda: " << num(report.lambda) << " kg over "
        << (report.horizon.is_bounded() ? "phi = " + num(report.horizon.phi()) + " s"
                                        : std::string("an unbounded horizon"))
        << "\n";
    out << "---\n";
    out << "label = " << label << "\n";
    out << "lambda = " << sci(report.lambda / element.mass) << " * m_kg\n";
    out << "lambda_kg = " << num(report.lambda) << "\n";
    out << "horizon_s = " << horizon_text(report.horizon) << "\n";
    out << "delta_s = " << num(report.delta) << "\n";
    double batch_total = 0.0;
    for (const auto& [event, mass] : report.batch_contributions) batch_total += mass;
    out << "batch_mass_kg = " << num(batch_total) << "\n";
    out << "continuous_mass_kg = " << num(report.continuous_contribution) << "\n";
    for (const auto& [event, mass] : report.batch_contributions) {
        out << "event = " << to_string(event.kind) << " compartment=" << event.compartment
            << " t_s=" << num(event.time) << " mass_kg=" << num(mass) << "\n";
    }
}

int cmd_circularity(const std::string& file, const std::optional<double>& phi,
                    std::ostream& out) {
    const ScenarioBundle bundle = load_scenario_file(file);
    const Scenario& scenario = bundle.scenario;
    const JourneyLog log = run_journey(scenario.network, scenario.element, scenario.route,
                                       bundle.sim.dt, bundle.sim.integration());
    const CircularityReport report =
        circularity(log, scenario.network, scenario.flows,
                    effective_horizon(bundle.sim, phi), bundle.sim.delta);
    print_report(scenario.label, scenario.element, report, out);
    return 0;
}

int cmd_compare(const std::vector<std::string>& files, const std::optional<double>& phi,
                std::ostream& out) {
    std::vector<ScenarioBundle> bundles;
    bundles.reserve(files.size());
    for (const std::string& file : files) {
        bundles.push_back(load_scenario_file(file));
        if (bundles.back().sim.delta != bundles.front().sim.delta) {
            fail(ErrorCode::MixedDelta,
                 "scenario files use different delta_s values; comparisons need one shared delta");
        }
    }
    out << std::left << std::setw(28) << "label" << std::setw(24) << "lambda_kg"
        << "horizon_s\n";
    std::ostringstream machine;
    for (std::size_t i = 0; i < bundles.size(); ++i) {
        const Scenario& scenario = bundles[i].scenario;
        const Horizon horizon = effective_horizon(bundles[i].sim, phi);
        const JourneyLog log = run_journey(scenario.network, scenario.element, scenario.route,
                                           bundles[i].sim.dt, bundles[i].sim.integration());
        const CircularityReport report =
            circularity(log, scenario.network, scenario.flows, horizon, bundles[i].sim.delta);
        out << std::left << std::setw(28) << scenario.label << std::setw(24)
            << num(report.lambda) << horizon_text(horizon) << "\n";
        machine << "row = " << files[i] << " label=" << scenario.label
                << " lambda_kg=" << num(report.lambda) << "\n";
    }
    out << "---\n" << machine.str();
    return 0;
}

int cmd_optimize(const std::string& file, const std::optional<double>& phi, std::ostream& out) {
    const ScenarioBundle bundle = load_scenario_file(file);
    const Horizon horizon = effective_horizon(bundle.sim, phi);
    const std::vector<Scenario> scenarios = enumerate_scenarios(bundle.scenario, bundle.menu);
    const std::vector<RankedScenario> ranked = argmax_circularity(
        scenarios, horizon, bundle.sim.delta, bundle.sim.dt, bundle.sim.integration());

    out << std::left << std::setw(6) << "rank" << std::setw(28) << "label" << std::setw(24)
        << "lambda_kg" << std::setw(20) << "horizon_s" << "strategies\n";
    std::ostringstream machine;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const RankedScenario& entry = ranked[i];
        const std::string mark = i == 0 ? " N*" : "";
        out << std::left << std::setw(6) << (std::to_string(i + 1) + mark) << std::setw(28)
            << entry.scenario.label << std::setw(24) << num(entry.report.lambda)
            << std::setw(20) << horizon_text(horizon) << strategy_list(entry.scenario.applied)
            << "\n";
        machine << "rank = " << (i + 1) << " label=" << entry.scenario.label
                << " lambda_kg=" << num(entry.report.lambda)
                << " strategies=" << strategy_list(entry.scenario.applied)
                << (i == 0 ? " winner" : "") << "\n";
    }
    out << "---\n" << machine.str();
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Thermodynamical material network simulator and circularity optimizer"};
    app.require_subcommand(1);

    std::string file;
    std::vector<std::string> files;
    std::optional<double> phi;
    std::optional<std::string> traj_dir;

    CLI::App* validate = app.add_subcommand("validate", "check a scenario file's network");
    validate->add_option("file", file, "scenario file")->required();

    CLI::App* simulate = app.add_subcommand("simulate", "run the journey, print milestones");
    simulate->add_option("file", file, "scenario file")->required();
    simulate->add_option("--traj-dir", traj_dir, "write per-arc trajectory CSVs here");

    CLI::App* circ = app.add_subcommand("circularity", "simulate and report lambda");
    circ->add_option("file", file, "scenario file")->required();
    circ->add_option("--phi", phi, "horizon in seconds (default: scenario file)");

    CLI::App* compare = app.add_subcommand("compare", "lambda table across scenario files");
    compare->add_option("files", files, "scenario files")->required()->expected(-1);
    compare->add_option("--phi", phi, "horizon in seconds (default: per file)");

    CLI::App* optimize = app.add_subcommand("optimize", "rank the scenario's strategy menu");
    optimize->add_option("file", file, "scenario file")->required();
    optimize->add_option("--phi", phi, "horizon in seconds (default: scenario file)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: ParseError: " << e.what() << "\n";
        return 1;
    }

    try {
        if (validate->parsed()) return cmd_validate(file, out);
        if (simulate->parsed()) return cmd_simulate(file, traj_dir, out);
        if (circ->parsed()) return cmd_circularity(file, phi, out);
        if (compare->parsed()) return cmd_compare(files, phi, out);
        if (optimize->parsed()) return cmd_optimize(file, phi, out);
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: Internal: " << e.what() << "\n";
        return 1;
    }
    err << "error: ParseError: no subcommand given\n";
    return 1;
}

} // namespace tmn
