#include "flowcomp/graph.hpp"

#include <algorithm>
#include <unordered_set>

#include "text_util.hpp"

namespace flowcomp {

namespace {

void require_unique_ids(const std::vector<EnergyService>& services,
                        const std::vector<EnergyRequest>& requests) {
  std::unordered_set<std::string> seen;
  for (const auto& s : services) {
    if (!seen.insert(s.eid).second) {
      throw std::invalid_argument("duplicate service id: " + s.eid);
    }
  }
  seen.clear();
  for (const auto& r : requests) {
    if (!seen.insert(r.rid).second) {
      throw std::invalid_argument("duplicate request id: " + r.rid);
    }
  }
}

}  // namespace

bool ComposabilityGraph::has_edge(const std::string& eid, const std::string& rid) const {
  return std::any_of(edges.begin(), edges.end(), [&](const GraphEdge& e) {
    return e.eid == eid && e.rid == rid;
  });
}

std::pair<std::vector<EnergyService>, std::vector<EnergyRequest>> filter_window(
    const std::vector<EnergyService>& services,
    const std::vector<EnergyRequest>& requests,
    const CompositionWindow& window) {
  std::vector<EnergyService> kept_services;
  std::vector<EnergyRequest> kept_requests;
  for (const auto& s : services) {
    if (window.window.contains(s.window)) kept_services.push_back(s);
  }
  for (const auto& r : requests) {
    if (window.window.contains(r.window)) kept_requests.push_back(r);
  }
  return {std::move(kept_services), std::move(kept_requests)};
}

bool spatially_composable(const EnergyService& service, const EnergyRequest& request) {
  return service.location.distance_to(request.location) <= service.range;
}

bool temporally_composable(const TimeInterval& service, const TimeInterval& request) {
  return request.contains(service) || service.contains(request);
}

Minutes overlap_duration(const TimeInterval& a, const TimeInterval& b) {
  Minutes lo = std::max(a.st, b.st);
  Minutes hi = std::min(a.et, b.et);
  return hi > lo ? hi - lo : 0;
}

double partial_energy(const EnergyRequest& request, Minutes d) {
  if (d <= 0) throw std::invalid_argument("no overlap: duration must be > 0");
  Minutes du = request.window.duration();
  if (d > du) {
    throw std::invalid_argument("no overlap: duration exceeds the request window");
  }
  return static_cast<double>(d) * request.re / static_cast<double>(du);
}

ComposabilityGraph build_bipartite(const std::vector<EnergyService>& services,
                                   const std::vector<EnergyRequest>& requests,
                                   const CompositionWindow& window) {
  require_unique_ids(services, requests);
  ComposabilityGraph graph;
  std::tie(graph.service_nodes, graph.request_nodes) =
      filter_window(services, requests, window);
  for (const auto& s : graph.service_nodes) {
    for (const auto& r : graph.request_nodes) {
      if (spatially_composable(s, r) && temporally_composable(s.window, r.window)) {
        graph.edges.push_back(GraphEdge{s.eid, r.rid, r.re});
      }
    }
  }
  return graph;
}

ComposabilityGraph build_partial_bipartite(const std::vector<EnergyService>& services,
                                           const std::vector<EnergyRequest>& requests,
                                           const CompositionWindow& window) {
  ComposabilityGraph graph = build_bipartite(services, requests, window);
  std::unordered_set<std::string> connected;
  connected.reserve(graph.edges.size());
  for (const auto& e : graph.edges) connected.insert(e.eid + "\x1f" + e.rid);
  for (const auto& s : graph.service_nodes) {
    for (const auto& r : graph.request_nodes) {
      if (!spatially_composable(s, r)) continue;
      Minutes d = overlap_duration(s.window, r.window);
      if (d <= 0) continue;
      if (connected.count(s.eid + "\x1f" + r.rid)) continue;
      graph.edges.push_back(GraphEdge{s.eid, r.rid, partial_energy(r, d)});
    }
  }
  return graph;
}

std::string dump_edge_list(const ComposabilityGraph& graph) {
  std::vector<std::string> lines;
  lines.reserve(graph.edges.size());
  for (const auto& e : graph.edges) {
    lines.push_back(e.eid + "," + e.rid + "," + detail::format_double(e.weight));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace flowcomp
