#pragma once

#include <string>
#include <utility>
#include <vector>

#include "flowcomp/core.hpp"

namespace flowcomp {

// Directed edge from a service node (set U) to a request node (set V).
// The weight is the allocatable energy bound for the pair, at most the
// request's demanded energy.
struct GraphEdge {
  std::string eid;
  std::string rid;
  double weight;  // mAh, 0 < weight <= re of the request
};

struct ComposabilityGraph {
  std::vector<EnergyService> service_nodes;  // U
  std::vector<EnergyRequest> request_nodes;  // V
  std::vector<GraphEdge> edges;

  bool has_edge(const std::string& eid, const std::string& rid) const;
};

// Keeps exactly the items whose [st, et] lies inside the composition window.
std::pair<std::vector<EnergyService>, std::vector<EnergyRequest>> filter_window(
    const std::vector<EnergyService>& services,
    const std::vector<EnergyRequest>& requests,
    const CompositionWindow& window);

// True iff the pair sits within the service's transfer range (the request
// carries no range of its own). Boundary-inclusive.
bool spatially_composable(const EnergyService& service, const EnergyRequest& request);

// True iff one window contains the other (closed intervals).
bool temporally_composable(const TimeInterval& service, const TimeInterval& request);

// max(0, min(a.et, b.et) - max(a.st, b.st)); touching endpoints count as zero.
Minutes overlap_duration(const TimeInterval& a, const TimeInterval& b);

// Demand pro-rated to an overlap of d minutes: d * re / duration(request).
// Throws std::invalid_argument unless 0 < d <= duration(request.window).
double partial_energy(const EnergyRequest& request, Minutes d);

// Strict composability graph: edge (service -> request, w = re) iff the pair
// is spatially composable and one window contains the other.
ComposabilityGraph build_bipartite(const std::vector<EnergyService>& services,
                                   const std::vector<EnergyRequest>& requests,
                                   const CompositionWindow& window);

// Strict graph plus, for every spatially composable pair that merely
// overlaps in time, an edge weighted by the overlap-prorated demand.
// Strict edges are kept as-is (their full-demand weight already dominates).
ComposabilityGraph build_partial_bipartite(const std::vector<EnergyService>& services,
                                           const std::vector<EnergyRequest>& requests,
                                           const CompositionWindow& window);

// Debug dump: one "eid,rid,weight" line per edge, sorted lexicographically.
std::string dump_edge_list(const ComposabilityGraph& graph);

}  // namespace flowcomp
