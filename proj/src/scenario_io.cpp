#include "tmn/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tmn {

using nlohmann::json;

const char* to_string(CompartmentRole role) {
    switch (role) {
        case CompartmentRole::NonrenewableReservoir: return "nonrenewable_reservoir";
        case CompartmentRole::RenewableReservoir: return "renewable_reservoir";
        case CompartmentRole::Manufacturer: return "manufacturer";
        case CompartmentRole::UseStage: return "use_stage";
        case CompartmentRole::RepairStage: return "repair_stage";
        case CompartmentRole::Landfill: return "landfill";
        case CompartmentRole::Incinerator: return "incinerator";
        case CompartmentRole::Environment: return "environment";
        case CompartmentRole::TransportBatch: return "transport_batch";
        case CompartmentRole::TransportContinuous: return "transport_continuous";
    }
    return "unknown";
}

CompartmentRole role_from_string(const std::string& name) {
    for (CompartmentRole role :
         {CompartmentRole::NonrenewableReservoir, CompartmentRole::RenewableReservoir,
          CompartmentRole::Manufacturer, CompartmentRole::UseStage, CompartmentRole::RepairStage,
          CompartmentRole::Landfill, CompartmentRole::Incinerator, CompartmentRole::Environment,
          CompartmentRole::TransportBatch, CompartmentRole::TransportContinuous}) {
        if (name == to_string(role)) return role;
    }
    fail(ErrorCode::ParseError, "unknown compartment role '" + name + "'");
}

const char* to_string(FrameAxis axis) {
    switch (axis) {
        case FrameAxis::XZIncline: return "xz_incline";
        case FrameAxis::XAxis: return "x";
        case FrameAxis::YAxis: return "y";
    }
    return "unknown";
}

FrameAxis frame_axis_from_string(const std::string& name) {
    if (name == "xz_incline") return FrameAxis::XZIncline;
    if (name == "x") return FrameAxis::XAxis;
    if (name == "y") return FrameAxis::YAxis;
    fail(ErrorCode::ParseError, "unknown frame axis '" + name + "' (xz_incline, x, y)");
}

namespace {

void check_keys(const json& object, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, unused] : object.items()) {
        bool known = false;
        for (const char* name : allowed) {
            if (key == name) {
                known = true;
                break;
            }
        }
        if (!known) {
            fail(ErrorCode::UnknownKey, path + ": unknown key '" + key + "'");
        }
    }
}

const json& require(const json& object, const char* key, const std::string& path) {
    const auto it = object.find(key);
    if (it == object.end()) {
        fail(ErrorCode::ParseError, path + ": missing required key '" + key + "'");
    }
    return *it;
}

double as_number(const json& value, const std::string& path) {
    if (!value.is_number()) {
        fail(ErrorCode::ParseError, path + ": expected a number");
    }
    return value.get<double>();
}

double number_or(const json& object, const char* key, const std::string& path,
                 double fallback) {
    const auto it = object.find(key);
    return it == object.end() ? fallback : as_number(*it, path + "." + key);
}

int as_id(const json& value, const std::string& path) {
    if (!value.is_number_integer()) {
        fail(ErrorCode::ParseError, path + ": expected an integer compartment id");
    }
    return value.get<int>();
}

std::string as_string(const json& value, const std::string& path) {
    if (!value.is_string()) {
        fail(ErrorCode::ParseError, path + ": expected a string");
    }
    return value.get<std::string>();
}

const json& as_object(const json& value, const std::string& path) {
    if (!value.is_object()) {
        fail(ErrorCode::ParseError, path + ": expected an object");
    }
    return value;
}

const json& as_array(const json& value, const std::string& path) {
    if (!value.is_array()) {
        fail(ErrorCode::ParseError, path + ": expected an array");
    }
    return value;
}

Strategy parse_strategy(const json& entry, const std::string& path) {
    as_object(entry, path);
    const std::string kind = as_string(require(entry, "kind", path), path + ".kind");
    if (kind == "reduce_renewable") {
        check_keys(entry, path, {"kind", "fraction"});
        return ReduceRenewable{as_number(require(entry, "fraction", path), path + ".fraction")};
    }
    if (kind == "reduce_material") {
        check_keys(entry, path, {"kind", "factor"});
        return ReduceMaterial{as_number(require(entry, "factor", path), path + ".factor")};
    }
    if (kind == "insert_repair") {
        check_keys(entry, path,
                   {"kind", "repair_node", "inbound_arc", "outbound_arc", "second_use_dwell_s"});
        InsertRepair repair;
        repair.repair_node = as_id(require(entry, "repair_node", path), path + ".repair_node");
        repair.inbound_arc = as_id(require(entry, "inbound_arc", path), path + ".inbound_arc");
        repair.outbound_arc = as_id(require(entry, "outbound_arc", path), path + ".outbound_arc");
        repair.second_use_dwell =
            number_or(entry, "second_use_dwell_s", path, 0.0);
        return repair;
    }
    fail(ErrorCode::ParseError, path + ".kind: unknown strategy kind '" + kind + "'");
}

json strategy_to_json(const Strategy& strategy) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ReduceRenewable>) {
                return json{{"kind", "reduce_renewable"}, {"fraction", s.fraction}};
            } else if constexpr (std::is_same_v<T, ReduceMaterial>) {
                return json{{"kind", "reduce_material"}, {"factor", s.factor}};
            } else {
                return json{{"kind", "insert_repair"},
                            {"repair_node", s.repair_node},
                            {"inbound_arc", s.inbound_arc},
                            {"outbound_arc", s.outbound_arc},
                            {"second_use_dwell_s", s.second_use_dwell}};
            }
        },
        strategy);
}

} // namespace

ScenarioBundle parse_scenario_file(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::ParseError, e.what());
    }
    as_object(doc, "document");
    check_keys(doc, "document",
               {"label", "material", "nodes", "arcs", "route", "sim", "strategies"});

    ScenarioBundle bundle;
    Scenario& scenario = bundle.scenario;

    scenario.label = doc.contains("label")
                         ? as_string(doc.at("label"), "label")
                         : std::string("scenario");

    // material
    const json& material = as_object(require(doc, "material", "document"), "material");
    check_keys(material, "material", {"name", "mass_kg", "renewable_fraction"});
    scenario.element.material = as_string(require(material, "name", "material"), "material.name");
    if (scenario.element.material.empty()) {
        fail(ErrorCode::ParseError, "material.name: must be non-empty");
    }
    scenario.element.mass = as_number(require(material, "mass_kg", "material"), "material.mass_kg");
    scenario.element.renewable_fraction =
        number_or(material, "renewable_fraction", "material", 0.0);

    // sim (parsed before arcs so the gravity override reaches the force models)
    SimParams& sim = bundle.sim;
    if (doc.contains("sim")) {
        const json& sim_json = as_object(doc.at("sim"), "sim");
        check_keys(sim_json, "sim", {"dt_s", "g", "delta_s", "horizon_s", "max_time_s"});
        sim.dt = number_or(sim_json, "dt_s", "sim", sim.dt);
        sim.gravity = number_or(sim_json, "g", "sim", sim.gravity);
        sim.delta = number_or(sim_json, "delta_s", "sim", sim.delta);
        sim.max_time = number_or(sim_json, "max_time_s", "sim", sim.max_time);
        if (sim_json.contains("horizon_s")) {
            const json& horizon = sim_json.at("horizon_s");
            if (horizon.is_string()) {
                if (horizon.get<std::string>() != "unbounded") {
                    fail(ErrorCode::ParseError,
                         "sim.horizon_s: expected a number or \"unbounded\"");
                }
                sim.horizon = Horizon::unbounded();
            } else {
                sim.horizon = Horizon::at(as_number(horizon, "sim.horizon_s"));
            }
        }
    }
    if (!(sim.dt > 0.0)) fail(ErrorCode::NonpositiveStep, "sim.dt_s must be > 0");
    if (!(sim.delta > 0.0)) fail(ErrorCode::NonpositiveDelta, "sim.delta_s must be > 0");
    if (!(sim.max_time > 0.0)) fail(ErrorCode::ParseError, "sim.max_time_s must be > 0");
    if (!std::isfinite(sim.gravity)) fail(ErrorCode::ParseError, "sim.g must be finite");

    // nodes
    std::vector<Compartment> compartments;
    const json& nodes = as_array(require(doc, "nodes", "document"), "nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string path = "nodes[" + std::to_string(i) + "]";
        const json& node = as_object(nodes[i], path);
        check_keys(node, path, {"id", "role", "dwell_s"});
        const CompartmentId id = as_id(require(node, "id", path), path + ".id");
        const CompartmentRole role =
            role_from_string(as_string(require(node, "role", path), path + ".role"));
        compartments.push_back(Compartment::node(id, role));
        scenario.route.dwell_durations[id] = number_or(node, "dwell_s", path, 0.0);
    }

    // arcs
    const json& arcs = as_array(require(doc, "arcs", "document"), "arcs");
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const std::string path = "arcs[" + std::to_string(i) + "]";
        const json& arc = as_object(arcs[i], path);
        check_keys(arc, path,
                   {"id", "from", "to", "role", "length_m", "incline_rad", "elevation_m",
                    "frame_axis", "carrier_mass_kg", "propulsion_N", "resist_const_N",
                    "resist_linear_Ns_per_m", "flow_kg_per_s"});
        const CompartmentId id = as_id(require(arc, "id", path), path + ".id");
        const CompartmentId from = as_id(require(arc, "from", path), path + ".from");
        const CompartmentId to = as_id(require(arc, "to", path), path + ".to");
        if (from == to) {
            fail(ErrorCode::IndexRuleViolation,
                 path + ": arcs require from != to, got " + std::to_string(from));
        }
        const CompartmentRole role =
            role_from_string(as_string(require(arc, "role", path), path + ".role"));

        ArcGeometry geometry;
        geometry.length = as_number(require(arc, "length_m", path), path + ".length_m");
        geometry.incline_angle = number_or(arc, "incline_rad", path, 0.0);
        geometry.frame_axis =
            arc.contains("frame_axis")
                ? frame_axis_from_string(as_string(arc.at("frame_axis"), path + ".frame_axis"))
                : FrameAxis::XZIncline;
        geometry.elevation = number_or(arc, "elevation_m", path,
                                       geometry.length * std::sin(geometry.incline_angle));
        geometry.check();

        ForceModel forces;
        forces.propulsion = number_or(arc, "propulsion_N", path, 0.0);
        forces.resistance_constant = number_or(arc, "resist_const_N", path, 0.0);
        forces.resistance_linear = number_or(arc, "resist_linear_Ns_per_m", path, 0.0);
        forces.gravity = sim.gravity;
        forces.check();

        const double carrier = number_or(arc, "carrier_mass_kg", path, 0.0);
        compartments.push_back(Compartment::arc(id, from, to, role, geometry, carrier, forces));

        if (arc.contains("flow_kg_per_s")) {
            if (role != CompartmentRole::TransportContinuous) {
                fail(ErrorCode::ParseError,
                     path + ".flow_kg_per_s: only continuous transport arcs carry a flow rate");
            }
            const double rate = as_number(arc.at("flow_kg_per_s"), path + ".flow_kg_per_s");
            if (rate < 0.0) {
                fail(ErrorCode::NegativeWeight, path + ".flow_kg_per_s must be >= 0");
            }
            scenario.flows[id] = rate;
        }
    }

    // route
    const json& route = as_array(require(doc, "route", "document"), "route");
    if (route.empty()) {
        fail(ErrorCode::ParseError, "route: must list at least one compartment id");
    }
    for (std::size_t i = 0; i < route.size(); ++i) {
        scenario.route.sequence.push_back(as_id(route[i], "route[" + std::to_string(i) + "]"));
    }

    // strategies
    if (doc.contains("strategies")) {
        const json& menu = as_array(doc.at("strategies"), "strategies");
        for (std::size_t g = 0; g < menu.size(); ++g) {
            const std::string path = "strategies[" + std::to_string(g) + "]";
            const json& group = as_array(menu[g], path);
            std::vector<Strategy> strategies;
            for (std::size_t i = 0; i < group.size(); ++i) {
                strategies.push_back(
                    parse_strategy(group[i], path + "[" + std::to_string(i) + "]"));
            }
            bundle.menu.push_back(std::move(strategies));
        }
    }

    scenario.network = build_network(std::move(compartments), scenario.element.material);
    scenario.element.check();
    validate_route(scenario.network, scenario.route);
    return bundle;
}

ScenarioBundle load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::ParseError, "cannot open scenario file '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_scenario_file(text.str());
    } catch (const Error& e) {
        fail(e.code(), path.string() + ": " + e.what());
    }
}

std::string serialize_scenario(const ScenarioBundle& bundle) {
    const Scenario& scenario = bundle.scenario;
    json doc;
    doc["label"] = scenario.label;
    doc["material"] = {{"name", scenario.element.material},
                       {"mass_kg", scenario.element.mass},
                       {"renewable_fraction", scenario.element.renewable_fraction}};

    json nodes = json::array();
    json arcs = json::array();
    for (const Compartment& c : scenario.network.compartments()) {
        if (c.is_node()) {
            const auto it = scenario.route.dwell_durations.find(c.id);
            const double dwell =
                it == scenario.route.dwell_durations.end() ? 0.0 : it->second;
            nodes.push_back({{"id", c.id}, {"role", to_string(c.role)}, {"dwell_s", dwell}});
        } else {
            json arc = {{"id", c.id},
                        {"from", c.origin},
                        {"to", c.destination},
                        {"role", to_string(c.role)},
                        {"length_m", c.geometry->length},
                        {"incline_rad", c.geometry->incline_angle},
                        {"elevation_m", c.geometry->elevation},
                        {"frame_axis", to_string(c.geometry->frame_axis)},
                        {"carrier_mass_kg", c.carrier_mass},
                        {"propulsion_N", c.forces->propulsion},
                        {"resist_const_N", c.forces->resistance_constant},
                        {"resist_linear_Ns_per_m", c.forces->resistance_linear}};
            const auto flow = scenario.flows.find(c.id);
            if (flow != scenario.flows.end()) {
                arc["flow_kg_per_s"] = flow->second;
            }
            arcs.push_back(std::move(arc));
        }
    }
    doc["nodes"] = std::move(nodes);
    doc["arcs"] = std::move(arcs);
    doc["route"] = scenario.route.sequence;

    doc["sim"] = {{"dt_s", bundle.sim.dt},
                  {"g", bundle.sim.gravity},
                  {"delta_s", bundle.sim.delta},
                  {"max_time_s", bundle.sim.max_time}};
    doc["sim"]["horizon_s"] =
        bundle.sim.horizon.is_bounded() ? json(bundle.sim.horizon.phi()) : json("unbounded");

    json menu = json::array();
    for (const auto& group : bundle.menu) {
        json entries = json::array();
        for (const Strategy& strategy : group) {
            entries.push_back(strategy_to_json(strategy));
        }
        menu.push_back(std::move(entries));
    }
    doc["strategies"] = std::move(menu);

    return doc.dump(2) + "\n";
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    out << "t,s,s_dot,s_ddot,x,y,z\n";
    char line[256];
    for (const TrajectorySample& smp : trajectory.samples) {
        std::snprintf(line, sizeof(line),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", smp.t, smp.s, smp.s_dot,
                      smp.s_ddot, smp.x, smp.y, smp.z);
        out << line;
    }
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory) {
    std::ofstream out(path);
    if (!out) {
        fail(ErrorCode::ParseError, "cannot open '" + path.string() + "' for writing");
    }
    write_trajectory_csv(out, trajectory);
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::ParseError, "cannot open trajectory CSV '" + path.string() + "'");
    }
    std::string line;
    if (!std::getline(in, line) || line != "t,s,s_dot,s_ddot,x,y,z") {
        fail(ErrorCode::ParseError, path.string() + ": missing trajectory CSV header");
    }
    Trajectory traj;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        TrajectorySample smp;
        const int got = std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &smp.t, &smp.s,
                                    &smp.s_dot, &smp.s_ddot, &smp.x, &smp.y, &smp.z);
        if (got != 7) {
            fail(ErrorCode::ParseError,
                 path.string() + ":" + std::to_string(line_no) + ": malformed CSV row");
        }
        traj.samples.push_back(smp);
    }
    if (!traj.samples.empty()) {
        traj.exit_time = traj.samples.back().t;
    }
    return traj;
}

} // namespace tmn
