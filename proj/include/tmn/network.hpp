#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tmn/errors.hpp"
#include "tmn/mechanics.hpp"

namespace tmn {

// Caller-assigned positive identifier, unique within one network.
using CompartmentId = int;

enum class CompartmentRole {
    NonrenewableReservoir,
    RenewableReservoir,
    Manufacturer,
    UseStage,
    RepairStage,
    Landfill,
    Incinerator,
    Environment,
    TransportBatch,
    TransportContinuous,
};

bool is_transport_role(CompartmentRole role);

// True for roles whose boundary crossings count as unsustainable (Def. of
// unsustainable mass/flow; see circularity module).
bool is_unsustainable_source(CompartmentRole role); // nonrenewable reservoir
bool is_unsustainable_sink(CompartmentRole role);   // landfill / incinerator / environment

// A control-surface unit. Nodes store/transform/use material (origin ==
// destination == id); arcs move it between two nodes (origin != destination)
// and carry the transport geometry and force model.
struct Compartment {
    CompartmentId id = 0;
    CompartmentId origin = 0;
    CompartmentId destination = 0;
    CompartmentRole role = CompartmentRole::UseStage;
    std::optional<ArcGeometry> geometry; // arcs only
    double carrier_mass = 0.0;           // kg, arcs only (empty truck/ship mass)
    std::optional<ForceModel> forces;    // arcs only

    static Compartment node(CompartmentId id, CompartmentRole role);
    static Compartment arc(CompartmentId id, CompartmentId from, CompartmentId to,
                           CompartmentRole role, ArcGeometry geometry,
                           double carrier_mass, ForceModel forces);

    bool is_node() const { return origin == destination; }
    bool is_arc() const { return origin != destination; }

    bool operator==(const Compartment&) const = default;
};

// A validated set of connected compartments for one target material.
// Immutable after construction; build through build_network().
class TMNetwork {
  public:
    TMNetwork() = default;

    const std::vector<Compartment>& compartments() const { return compartments_; }
    const std::string& material() const { return material_; }

    std::size_t node_count() const { return node_count_; }
    std::size_t arc_count() const { return compartments_.size() - node_count_; }
    std::size_t size() const { return compartments_.size(); }

    const Compartment* find(CompartmentId id) const;
    const Compartment& at(CompartmentId id) const; // throws UnknownCompartment
    bool contains(CompartmentId id) const { return find(id) != nullptr; }

    bool operator==(const TMNetwork&) const = default;

  private:
    friend TMNetwork build_network(std::vector<Compartment> compartments,
                                   const std::string& material);

    std::vector<Compartment> compartments_; // sorted by id
    std::string material_;
    std::size_t node_count_ = 0;
};

struct Partition {
    std::vector<CompartmentId> store_transform_use; // R: node compartments
    std::vector<CompartmentId> move;                // T: arc compartments
};

// Weighted mass-flow digraph M(N): node weights are stock masses, arc weights
// are batch masses or flow rates, oriented origin -> destination.
struct MassFlowDigraph {
    struct Node {
        CompartmentId id = 0;
        double stock_mass = 0.0; // kg
    };
    struct Arc {
        CompartmentId id = 0;
        CompartmentId from = 0;
        CompartmentId to = 0;
        double weight = 0.0; // kg (batch) or kg/s (continuous)
    };
    std::vector<Node> nodes;
    std::vector<Arc> arcs;
};

// Validates the full structural rule set: distinct positive ids, node/arc
// index rules, transport roles only on arcs, arc endpoints naming existing
// nodes, and connectivity of the whole set (arcs taken as undirected edges).
TMNetwork build_network(std::vector<Compartment> compartments, const std::string& material);

Partition partition(const TMNetwork& net);

MassFlowDigraph mass_flow_digraph(const TMNetwork& net,
                                  const std::map<CompartmentId, double>& stocks,
                                  const std::map<CompartmentId, double>& flows);

} // namespace tmn
