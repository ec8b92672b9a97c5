#include "tmn/network.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace tmn {

bool is_transport_role(CompartmentRole role) {
    return role == CompartmentRole::TransportBatch ||
           role == CompartmentRole::TransportContinuous;
}

bool is_unsustainable_source(CompartmentRole role) {
    return role == CompartmentRole::NonrenewableReservoir;
}

bool is_unsustainable_sink(CompartmentRole role) {
    return role == CompartmentRole::Landfill || role == CompartmentRole::Incinerator ||
           role == CompartmentRole::Environment;
}

Compartment Compartment::node(CompartmentId id, CompartmentRole role) {
    Compartment c;
    c.id = id;
    c.origin = id;
    c.destination = id;
    c.role = role;
    return c;
}

Compartment Compartment::arc(CompartmentId id, CompartmentId from, CompartmentId to,
                             CompartmentRole role, ArcGeometry geometry, double carrier_mass,
                             ForceModel forces) {
    Compartment c;
    c.id = id;
    c.origin = from;
    c.destination = to;
    c.role = role;
    c.geometry = geometry;
    c.carrier_mass = carrier_mass;
    c.forces = forces;
    return c;
}

const Compartment* TMNetwork::find(CompartmentId id) const {
    const auto it = std::lower_bound(
        compartments_.begin(), compartments_.end(), id,
        [](const Compartment& c, CompartmentId key) { return c.id < key; });
    if (it == compartments_.end() || it->id != id) return nullptr;
    return &*it;
}

const Compartment& TMNetwork::at(CompartmentId id) const {
    const Compartment* c = find(id);
    if (c == nullptr) {
        fail(ErrorCode::UnknownCompartment,
             "compartment " + std::to_string(id) + " is not part of the network");
    }
    return *c;
}

TMNetwork build_network(std::vector<Compartment> compartments, const std::string& material) {
    if (compartments.empty()) {
        fail(ErrorCode::EmptyNetwork, "a network needs at least one compartment");
    }

    // Canonical order makes construction independent of the input ordering.
    std::sort(compartments.begin(), compartments.end(),
              [](const Compartment& a, const Compartment& b) { return a.id < b.id; });

    std::unordered_set<CompartmentId> node_ids;
    std::size_t node_count = 0;
    for (std::size_t i = 0; i < compartments.size(); ++i) {
        const Compartment& c = compartments[i];
        if (c.id <= 0) {
            fail(ErrorCode::IndexRuleViolation,
                 "compartment ids must be positive, got " + std::to_string(c.id));
        }
        if (i > 0 && compartments[i - 1].id == c.id) {
            fail(ErrorCode::DuplicateId, "duplicate compartment id " + std::to_string(c.id));
        }
        if (c.is_node()) {
            if (c.origin != c.id) {
                fail(ErrorCode::IndexRuleViolation,
                     "node compartment " + std::to_string(c.id) +
                         " must satisfy origin = destination = id");
            }
            if (is_transport_role(c.role)) {
                fail(ErrorCode::RoleMismatch,
                     "transport role on node compartment " + std::to_string(c.id));
            }
            node_ids.insert(c.id);
            ++node_count;
        } else {
            if (!is_transport_role(c.role)) {
                fail(ErrorCode::RoleMismatch,
                     "arc compartment " + std::to_string(c.id) + " needs a transport role");
            }
            if (!c.geometry) {
                fail(ErrorCode::InvalidGeometry,
                     "arc compartment " + std::to_string(c.id) + " has no geometry");
            }
            c.geometry->check();
            if (!c.forces) {
                fail(ErrorCode::InvalidForceModel,
                     "arc compartment " + std::to_string(c.id) + " has no force model");
            }
            c.forces->check();
            if (!(c.carrier_mass >= 0.0)) {
                fail(ErrorCode::NegativeWeight,
                     "carrier mass of arc " + std::to_string(c.id) + " must be >= 0 kg");
            }
        }
    }

    std::unordered_map<CompartmentId, std::vector<CompartmentId>> adjacency;
    for (const Compartment& c : compartments) {
        if (!c.is_arc()) continue;
        for (CompartmentId endpoint : {c.origin, c.destination}) {
            if (node_ids.find(endpoint) == node_ids.end()) {
                fail(ErrorCode::ArcEndpointMissing,
                     "arc " + std::to_string(c.id) + " references node " +
                         std::to_string(endpoint) + " which is not a node of the network");
            }
        }
        adjacency[c.origin].push_back(c.destination);
        adjacency[c.destination].push_back(c.origin);
    }

    // Weak connectivity over the node set; arcs are edges and follow along.
    std::unordered_set<CompartmentId> visited;
    std::queue<CompartmentId> frontier;
    frontier.push(*node_ids.begin());
    visited.insert(*node_ids.begin());
    while (!frontier.empty()) {
        const CompartmentId current = frontier.front();
        frontier.pop();
        const auto it = adjacency.find(current);
        if (it == adjacency.end()) continue;
        for (CompartmentId next : it->second) {
            if (visited.insert(next).second) frontier.push(next);
        }
    }
    if (visited.size() != node_ids.size()) {
        fail(ErrorCode::DisconnectedNetwork,
             "network splits into more than one connected component");
    }

    TMNetwork net;
    net.compartments_ = std::move(compartments);
    net.material_ = material;
    net.node_count_ = node_count;
    return net;
}

Partition partition(const TMNetwork& net) {
    Partition p;
    p.store_transform_use.reserve(net.node_count());
    p.move.reserve(net.arc_count());
    for (const Compartment& c : net.compartments()) {
        (c.is_node() ? p.store_transform_use : p.move).push_back(c.id);
    }
    return p;
}

MassFlowDigraph mass_flow_digraph(const TMNetwork& net,
                                  const std::map<CompartmentId, double>& stocks,
                                  const std::map<CompartmentId, double>& flows) {
    const auto weight_for = [](const std::map<CompartmentId, double>& weights,
                               CompartmentId id) {
        const auto it = weights.find(id);
        if (it == weights.end()) return 0.0;
        if (it->second < 0.0) {
            fail(ErrorCode::NegativeWeight,
                 "weight of compartment " + std::to_string(id) + " must be >= 0");
        }
        return it->second;
    };

    for (const auto& [id, unused] : stocks) {
        const Compartment& c = net.at(id);
        if (!c.is_node()) {
            fail(ErrorCode::UnknownCompartment,
                 "stock weight assigned to arc compartment " + std::to_string(id));
        }
    }
    for (const auto& [id, unused] : flows) {
        const Compartment& c = net.at(id);
        if (!c.is_arc()) {
            fail(ErrorCode::UnknownCompartment,
                 "flow weight assigned to node compartment " + std::to_string(id));
        }
    }

    MassFlowDigraph digraph;
    digraph.nodes.reserve(net.node_count());
    digraph.arcs.reserve(net.arc_count());
    for (const Compartment& c : net.compartments()) {
        if (c.is_node()) {
            digraph.nodes.push_back({c.id, weight_for(stocks, c.id)});
        } else {
            digraph.arcs.push_back({c.id, c.origin, c.destination, weight_for(flows, c.id)});
        }
    }
    return digraph;
}

} // namespace tmn
