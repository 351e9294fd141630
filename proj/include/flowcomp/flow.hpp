#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "flowcomp/core.hpp"
#include "flowcomp/graph.hpp"

namespace flowcomp {

// Source/sink-augmented capacity network over a composability graph.
// Node indexing: 0 = source, 1 = sink, then one node per service in graph
// order, then one node per request. Arcs are stored in construction order:
// source->service (capacity ae), request->sink (capacity re), then
// service->request (capacity = graph edge weight).
struct FlowNetwork {
  struct Arc {
    int from;
    int to;
    double capacity;  // mAh, > 0
  };

  std::vector<std::string> service_ids;
  std::vector<std::string> request_ids;
  std::vector<Arc> arcs;

  static constexpr int kSource = 0;
  static constexpr int kSink = 1;

  int node_count() const {
    return 2 + static_cast<int>(service_ids.size() + request_ids.size());
  }
  int service_node(std::size_t i) const { return 2 + static_cast<int>(i); }
  int request_node(std::size_t j) const {
    return 2 + static_cast<int>(service_ids.size() + j);
  }
  bool is_service_node(int node) const {
    return node >= 2 && node < 2 + static_cast<int>(service_ids.size());
  }
  bool is_request_node(int node) const {
    return node >= 2 + static_cast<int>(service_ids.size()) && node < node_count();
  }
  std::string node_name(int node) const;
};

// Feasible flow; `flow` is parallel to FlowNetwork::arcs.
struct FlowAssignment {
  std::vector<double> flow;
  double value = 0.0;
};

FlowNetwork build_network(const ComposabilityGraph& graph);

// Maximum flow via FIFO push-relabel with the gap heuristic. Arc scans go in
// insertion order so the resulting flow (not just its value) is
// deterministic. Real-valued capacities are supported; every push either
// saturates its arc or drains the node's excess exactly, so the FIFO bound
// holds independent of capacity values.
FlowAssignment max_flow(const FlowNetwork& network);

// Materializes positive service->request flows as allocations. `services`
// and `requests` are the full considered lists (the serviceable sets come
// from the network's service->request arcs). Throws std::runtime_error
// ("invariant violation") if the assignment is infeasible on the network.
CompositionResult extract_allocation(const FlowNetwork& network,
                                     const FlowAssignment& assignment,
                                     const std::vector<EnergyService>& services,
                                     const std::vector<EnergyRequest>& requests,
                                     CompositionMode mode,
                                     const CompositionWindow& window,
                                     std::chrono::duration<double, std::milli> elapsed);

struct GreedyOptions {
  // When false a request draws from at most one service (first in scan
  // order), for sensitivity runs; the default mirrors divisible energy.
  bool allow_split = true;
};

// First-come-first-served: requests ascending by (start time, rid), each
// drawing greedily from its composable services ascending by
// (service start time, eid).
CompositionResult compose_baseline_fcfs(const FlowNetwork& network,
                                        const std::vector<EnergyService>& services,
                                        const std::vector<EnergyRequest>& requests,
                                        const CompositionWindow& window,
                                        const GreedyOptions& options = {});

// Largest-request-first: identical to FCFS except requests are ordered
// descending by (re, then ascending rid).
CompositionResult compose_priority(const FlowNetwork& network,
                                   const std::vector<EnergyService>& services,
                                   const std::vector<EnergyRequest>& requests,
                                   const CompositionWindow& window,
                                   const GreedyOptions& options = {});

// Full pipeline for one mode: graph (strict or partial), network, allocator
// (max-flow or greedy), extraction. Wall time of exactly these steps lands
// in CompositionResult::elapsed.
CompositionResult compose(const std::vector<EnergyService>& services,
                          const std::vector<EnergyRequest>& requests,
                          const CompositionWindow& window,
                          CompositionMode mode,
                          const GreedyOptions& options = {});

// Debug dump: one "from,to,flow,capacity" line per arc, sorted
// lexicographically.
std::string dump_flow(const FlowNetwork& network, const FlowAssignment& assignment);

}  // namespace flowcomp
