#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tmn/network.hpp"
#include "tmn/simulate.hpp"

namespace tmn {

// Time window over which unsustainable events are counted. Circularity has a
// memory: it is only meaningful with respect to a horizon.
class Horizon {
  public:
    static Horizon unbounded() { return Horizon(); }
    static Horizon at(double phi); // throws InvalidHorizon unless phi > 0

    bool is_bounded() const { return bounded_; }
    double phi() const { return phi_; } // infinity when unbounded

    bool contains(double time) const { return !bounded_ || time <= phi_; }

    bool operator==(const Horizon&) const = default;

  private:
    Horizon() = default;
    bool bounded_ = false;
    double phi_ = 0.0;
};

struct CircularityReport {
    double lambda = 0.0; // kg, always <= 0
    Horizon horizon = Horizon::unbounded();
    std::vector<std::pair<JourneyEvent, double>> batch_contributions; // event, mass
    double continuous_contribution = 0.0; // kg, = flow_rate_sum * delta
    double delta = 1.0;                   // s
};

// Total unsustainable batch mass within the horizon: the masses of events that
// exit a nonrenewable reservoir or enter a landfill/incinerator/environment.
double unsustainable_batch_mass(const JourneyLog& log, const Horizon& horizon);

// Total unsustainable continuous flow rate: flows on continuous arcs that
// leave a nonrenewable reservoir or feed a landfill/incinerator/environment.
// An arc matching both conditions counts once per condition, mirroring the
// batch double-count of a mass that both exits a reservoir and is landfilled.
double unsustainable_continuous_flow(const TMNetwork& net,
                                     const std::map<CompartmentId, double>& flows);

// lambda = -(batch mass + continuous flow * delta).
CircularityReport circularity(const JourneyLog& log, const TMNetwork& net,
                              const std::map<CompartmentId, double>& flows,
                              const Horizon& horizon, double delta = 1.0);

// Life extension Delta_e: how much later journey b reaches its terminal
// compartment than journey a does.
double life_extension(const JourneyLog& log_a, const JourneyLog& log_b);

} // namespace tmn
