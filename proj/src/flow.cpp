#include "flowcomp/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "text_util.hpp"

namespace flowcomp {

namespace {

// Flows smaller than this (relative to the largest capacity) are dropped as
// rounding dust when materializing allocations.
constexpr double kDustRel = 1e-12;

double max_capacity(const FlowNetwork& net) {
  double m = 0.0;
  for (const auto& a : net.arcs) m = std::max(m, a.capacity);
  return m;
}

}  // namespace

std::string FlowNetwork::node_name(int node) const {
  if (node == kSource) return "s";
  if (node == kSink) return "t";
  std::size_t idx = static_cast<std::size_t>(node - 2);
  if (idx < service_ids.size()) return service_ids[idx];
  return request_ids[idx - service_ids.size()];
}

FlowNetwork build_network(const ComposabilityGraph& graph) {
  FlowNetwork net;
  net.service_ids.reserve(graph.service_nodes.size());
  net.request_ids.reserve(graph.request_nodes.size());
  std::unordered_map<std::string, int> service_index;
  std::unordered_map<std::string, int> request_index;
  for (std::size_t i = 0; i < graph.service_nodes.size(); ++i) {
    net.service_ids.push_back(graph.service_nodes[i].eid);
    service_index.emplace(graph.service_nodes[i].eid, net.service_node(i));
  }
  for (std::size_t j = 0; j < graph.request_nodes.size(); ++j) {
    net.request_ids.push_back(graph.request_nodes[j].rid);
    request_index.emplace(graph.request_nodes[j].rid, net.request_node(j));
  }
  net.arcs.reserve(graph.service_nodes.size() + graph.request_nodes.size() +
                   graph.edges.size());
  for (std::size_t i = 0; i < graph.service_nodes.size(); ++i) {
    net.arcs.push_back({FlowNetwork::kSource, net.service_node(i),
                        graph.service_nodes[i].ae});
  }
  for (std::size_t j = 0; j < graph.request_nodes.size(); ++j) {
    net.arcs.push_back({net.request_node(j), FlowNetwork::kSink,
                        graph.request_nodes[j].re});
  }
  for (const auto& e : graph.edges) {
    net.arcs.push_back({service_index.at(e.eid), request_index.at(e.rid), e.weight});
  }
  return net;
}

FlowAssignment max_flow(const FlowNetwork& net) {
  const int n = net.node_count();
  const std::size_t m = net.arcs.size();
  FlowAssignment out;
  out.flow.assign(m, 0.0);
  if (m == 0) return out;

  // Residual arc 2k is arc k forward, 2k+1 its reverse.
  struct RArc {
    int to;
    double residual;
  };
  std::vector<RArc> rarc(2 * m);
  std::vector<std::vector<int>> adj(n);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& a = net.arcs[k];
    rarc[2 * k] = {a.to, a.capacity};
    rarc[2 * k + 1] = {a.from, 0.0};
    adj[a.from].push_back(static_cast<int>(2 * k));
    adj[a.to].push_back(static_cast<int>(2 * k + 1));
  }

  std::vector<double> excess(n, 0.0);
  std::vector<int> height(n, 0);
  std::vector<std::size_t> cur(n, 0);
  std::vector<int> height_count(2 * n + 1, 0);
  std::vector<char> in_queue(n, 0);
  std::queue<int> active;

  const int s = FlowNetwork::kSource;
  const int t = FlowNetwork::kSink;
  height[s] = n;
  height_count[0] = n - 1;
  height_count[n] = 1;

  auto enqueue = [&](int v) {
    if (v != s && v != t && excess[v] > 0.0 && !in_queue[v]) {
      in_queue[v] = 1;
      active.push(v);
    }
  };

  auto push = [&](int rid) {
    int u = rarc[rid ^ 1].to;
    int v = rarc[rid].to;
    double delta = std::min(excess[u], rarc[rid].residual);
    rarc[rid].residual -= delta;
    rarc[rid ^ 1].residual += delta;
    excess[u] -= delta;
    excess[v] += delta;
    enqueue(v);
  };

  // Saturate every source arc.
  for (int rid : adj[s]) {
    if ((rid & 1) == 0 && rarc[rid].residual > 0.0) {
      int v = rarc[rid].to;
      double delta = rarc[rid].residual;
      rarc[rid].residual = 0.0;
      rarc[rid ^ 1].residual = delta;
      excess[v] += delta;
      excess[s] -= delta;
      enqueue(v);
    }
  }

  auto gap = [&](int h) {
    // No node left at height h: everything strictly between h and n is cut
    // off from the sink, so lift it straight above the source level.
    for (int v = 0; v < n; ++v) {
      if (v == s || v == t) continue;
      if (height[v] > h && height[v] < n) {
        --height_count[height[v]];
        height[v] = n + 1;
        ++height_count[height[v]];
        cur[v] = 0;
      }
    }
  };

  auto relabel = [&](int u) {
    int min_h = 2 * n;
    for (int rid : adj[u]) {
      if (rarc[rid].residual > 0.0) min_h = std::min(min_h, height[rarc[rid].to] + 1);
    }
    int old_h = height[u];
    --height_count[old_h];
    height[u] = std::min(min_h, 2 * n);
    ++height_count[height[u]];
    cur[u] = 0;
    if (height_count[old_h] == 0 && old_h < n) gap(old_h);
  };

  while (!active.empty()) {
    int u = active.front();
    active.pop();
    in_queue[u] = 0;
    // Discharge: push along admissible arcs in insertion order; relabel once
    // the scan is exhausted, then go back to the queue.
    while (excess[u] > 0.0) {
      if (cur[u] == adj[u].size()) {
        relabel(u);
        break;
      }
      int rid = adj[u][cur[u]];
      if (rarc[rid].residual > 0.0 && height[u] == height[rarc[rid].to] + 1) {
        push(rid);
      } else {
        ++cur[u];
      }
    }
    enqueue(u);
  }

  const double dust = kDustRel * std::max(1.0, max_capacity(net));
  for (std::size_t k = 0; k < m; ++k) {
    double f = rarc[2 * k + 1].residual;  // amount pushed through arc k
    f = std::clamp(f, 0.0, net.arcs[k].capacity);
    out.flow[k] = (f > dust) ? f : 0.0;
  }
  double value = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    if (net.arcs[k].from == s) value += out.flow[k];
  }
  out.value = value;
  return out;
}

CompositionResult extract_allocation(const FlowNetwork& net,
                                     const FlowAssignment& assignment,
                                     const std::vector<EnergyService>& services,
                                     const std::vector<EnergyRequest>& requests,
                                     CompositionMode mode,
                                     const CompositionWindow& window,
                                     std::chrono::duration<double, std::milli> elapsed) {
  if (assignment.flow.size() != net.arcs.size()) {
    throw std::runtime_error("invariant violation: flow/arc size mismatch");
  }
  const double tol = 1e-9 * std::max(1.0, max_capacity(net));
  std::vector<double> net_in(net.node_count(), 0.0);
  std::vector<double> net_out(net.node_count(), 0.0);
  for (std::size_t k = 0; k < net.arcs.size(); ++k) {
    double f = assignment.flow[k];
    if (f < -tol || f > net.arcs[k].capacity + tol) {
      throw std::runtime_error("invariant violation: arc flow outside [0, capacity]");
    }
    net_out[net.arcs[k].from] += f;
    net_in[net.arcs[k].to] += f;
  }
  for (int v = 0; v < net.node_count(); ++v) {
    if (v == FlowNetwork::kSource || v == FlowNetwork::kSink) continue;
    if (std::abs(net_in[v] - net_out[v]) > tol) {
      throw std::runtime_error("invariant violation: flow not conserved at " +
                               net.node_name(v));
    }
  }

  CompositionResult result{{}, services, requests, {}, {}, mode, window, elapsed};
  for (const auto& a : net.arcs) {
    if (net.is_service_node(a.from) && net.is_request_node(a.to)) {
      result.serviceable_service_ids.insert(net.node_name(a.from));
      result.serviceable_request_ids.insert(net.node_name(a.to));
    }
  }
  for (std::size_t k = 0; k < net.arcs.size(); ++k) {
    const auto& a = net.arcs[k];
    if (net.is_service_node(a.from) && net.is_request_node(a.to) &&
        assignment.flow[k] > 0.0) {
      result.allocations.emplace_back(net.node_name(a.from), net.node_name(a.to),
                                      assignment.flow[k]);
    }
  }
  std::sort(result.allocations.begin(), result.allocations.end(),
            [](const Allocation& lhs, const Allocation& rhs) {
              return std::tie(lhs.eid, lhs.rid) < std::tie(rhs.eid, rhs.rid);
            });
  result.validate();
  return result;
}

namespace {

CompositionResult run_greedy(const FlowNetwork& net,
                             const std::vector<EnergyService>& services,
                             const std::vector<EnergyRequest>& requests,
                             const CompositionWindow& window,
                             const GreedyOptions& options,
                             CompositionMode mode) {
  // Remaining per-arc capacity, consumed in place.
  std::vector<double> remaining(net.arcs.size());
  for (std::size_t k = 0; k < net.arcs.size(); ++k) remaining[k] = net.arcs[k].capacity;

  std::vector<int> supply_arc(net.node_count(), -1);   // s -> service
  std::vector<int> demand_arc(net.node_count(), -1);   // request -> t
  std::vector<std::vector<int>> edges_into(net.node_count());  // request -> arc ids
  for (std::size_t k = 0; k < net.arcs.size(); ++k) {
    const auto& a = net.arcs[k];
    if (a.from == FlowNetwork::kSource) supply_arc[a.to] = static_cast<int>(k);
    else if (a.to == FlowNetwork::kSink) demand_arc[a.from] = static_cast<int>(k);
    else edges_into[a.to].push_back(static_cast<int>(k));
  }

  std::unordered_map<std::string, const EnergyService*> service_by_id;
  for (const auto& s : services) service_by_id.emplace(s.eid, &s);
  std::unordered_map<std::string, const EnergyRequest*> request_by_id;
  for (const auto& r : requests) request_by_id.emplace(r.rid, &r);

  // Request scan order.
  std::vector<std::size_t> order(net.request_ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto req_of = [&](std::size_t j) -> const EnergyRequest& {
    return *request_by_id.at(net.request_ids[j]);
  };
  if (mode == CompositionMode::Priority) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& ra = req_of(a);
      const auto& rb = req_of(b);
      if (ra.re != rb.re) return ra.re > rb.re;
      return ra.rid < rb.rid;
    });
  } else {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& ra = req_of(a);
      const auto& rb = req_of(b);
      if (ra.window.st != rb.window.st) return ra.window.st < rb.window.st;
      return ra.rid < rb.rid;
    });
  }

  std::vector<Allocation> allocations;
  for (std::size_t j : order) {
    int rnode = net.request_node(j);
    // Composable services ascending by (service start time, eid).
    std::vector<int> candidates = edges_into[rnode];
    std::sort(candidates.begin(), candidates.end(), [&](int ka, int kb) {
      const auto& sa = *service_by_id.at(net.node_name(net.arcs[ka].from));
      const auto& sb = *service_by_id.at(net.node_name(net.arcs[kb].from));
      if (sa.window.st != sb.window.st) return sa.window.st < sb.window.st;
      return sa.eid < sb.eid;
    });
    for (int k : candidates) {
      int snode = net.arcs[k].from;
      double take = std::min({remaining[supply_arc[snode]],
                              remaining[demand_arc[rnode]],
                              remaining[k]});
      bool took = take > 0.0;
      if (took) {
        remaining[supply_arc[snode]] -= take;
        remaining[demand_arc[rnode]] -= take;
        remaining[k] -= take;
        allocations.emplace_back(net.node_name(snode), net.node_name(rnode), take);
      }
      if (remaining[demand_arc[rnode]] <= 0.0) break;
      if (!options.allow_split && took) break;
    }
  }

  CompositionResult result{std::move(allocations), services, requests,
                           {},       {},           mode,     window};
  for (const auto& a : net.arcs) {
    if (net.is_service_node(a.from) && net.is_request_node(a.to)) {
      result.serviceable_service_ids.insert(net.node_name(a.from));
      result.serviceable_request_ids.insert(net.node_name(a.to));
    }
  }
  std::sort(result.allocations.begin(), result.allocations.end(),
            [](const Allocation& lhs, const Allocation& rhs) {
              return std::tie(lhs.eid, lhs.rid) < std::tie(rhs.eid, rhs.rid);
            });
  result.validate();
  return result;
}

}  // namespace

CompositionResult compose_baseline_fcfs(const FlowNetwork& net,
                                        const std::vector<EnergyService>& services,
                                        const std::vector<EnergyRequest>& requests,
                                        const CompositionWindow& window,
                                        const GreedyOptions& options) {
  return run_greedy(net, services, requests, window, options, CompositionMode::Baseline);
}

CompositionResult compose_priority(const FlowNetwork& net,
                                   const std::vector<EnergyService>& services,
                                   const std::vector<EnergyRequest>& requests,
                                   const CompositionWindow& window,
                                   const GreedyOptions& options) {
  return run_greedy(net, services, requests, window, options, CompositionMode::Priority);
}

CompositionResult compose(const std::vector<EnergyService>& services,
                          const std::vector<EnergyRequest>& requests,
                          const CompositionWindow& window,
                          CompositionMode mode,
                          const GreedyOptions& options) {
  auto start = std::chrono::steady_clock::now();
  ComposabilityGraph graph = (mode == CompositionMode::PartialFlow)
                                 ? build_partial_bipartite(services, requests, window)
                                 : build_bipartite(services, requests, window);
  FlowNetwork net = build_network(graph);
  CompositionResult result{{}, {}, {}, {}, {}, mode, window};
  switch (mode) {
    case CompositionMode::Flow:
    case CompositionMode::PartialFlow: {
      FlowAssignment assignment = max_flow(net);
      auto elapsed = std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start);
      result = extract_allocation(net, assignment, services, requests, mode, window,
                                  elapsed);
      break;
    }
    case CompositionMode::Baseline:
      result = compose_baseline_fcfs(net, services, requests, window, options);
      break;
    case CompositionMode::Priority:
      result = compose_priority(net, services, requests, window, options);
      break;
  }
  result.elapsed = std::chrono::duration<double, std::milli>(
      std::chrono::steady_clock::now() - start);
  return result;
}

std::string dump_flow(const FlowNetwork& net, const FlowAssignment& assignment) {
  std::vector<std::string> lines;
  lines.reserve(net.arcs.size());
  for (std::size_t k = 0; k < net.arcs.size(); ++k) {
    lines.push_back(net.node_name(net.arcs[k].from) + "," +
                    net.node_name(net.arcs[k].to) + "," +
                    detail::format_double(assignment.flow[k]) + "," +
                    detail::format_double(net.arcs[k].capacity));
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
