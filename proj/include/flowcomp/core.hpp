#pragma once

#include <chrono>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace flowcomp {

// Simulation time is an integer minute index within a composition day.
// Wall-clock seconds are accepted on ingestion and mapped to the minute
// bucket that contains them.
using Minutes = std::int64_t;

struct TimeInterval {
  Minutes st;
  Minutes et;

  TimeInterval(Minutes start, Minutes end) : st(start), et(end) {
    if (st >= et) {
      throw std::invalid_argument("TimeInterval: st must be < et (got [" +
                                  std::to_string(st) + "," + std::to_string(et) + "])");
    }
  }

  static TimeInterval from_seconds(std::int64_t st_sec, std::int64_t et_sec);

  Minutes duration() const { return et - st; }

  // Closed-interval containment: every minute of `other` lies in this interval.
  bool contains(const TimeInterval& other) const {
    return other.st >= st && other.et <= et;
  }

  bool operator==(const TimeInterval&) const = default;
};

struct GeoPoint {
  double x;
  double y;

  GeoPoint(double x_m, double y_m);

  double distance_to(const GeoPoint& other) const;

  bool operator==(const GeoPoint&) const = default;
};

struct Wearable {
  std::string wid;
  double spare_energy;  // mAh

  Wearable(std::string id, double spare_mah);
};

struct ProviderProfile {
  std::string pid;
  std::vector<Wearable> wearables;
  TimeInterval availability;
  GeoPoint location;
  double range;  // meters

  ProviderProfile(std::string id, std::vector<Wearable> ws, TimeInterval avail,
                  GeoPoint loc, double range_m);
};

struct EnergyService {
  std::string eid;
  std::string pid;
  double ae;  // advertised aggregated energy, mAh
  TimeInterval window;
  GeoPoint location;
  double range;  // meters

  EnergyService(std::string id, std::string provider, double ae_mah,
                TimeInterval w, GeoPoint loc, double range_m);
};

struct EnergyRequest {
  std::string rid;
  std::string cid;
  double re;  // requested energy, mAh
  TimeInterval window;
  GeoPoint location;

  EnergyRequest(std::string id, std::string consumer, double re_mah,
                TimeInterval w, GeoPoint loc);
};

struct CompositionWindow {
  TimeInterval window;

  explicit CompositionWindow(TimeInterval w) : window(w) {}
};

enum class CompositionMode { Baseline, Priority, Flow, PartialFlow };

std::string to_string(CompositionMode mode);
CompositionMode parse_mode(const std::string& name);

// One positive service->request transfer. Zero allocations are omitted,
// never stored.
struct Allocation {
  std::string eid;
  std::string rid;
  double amount;  // mAh

  Allocation(std::string service, std::string request, double amount_mah);
};

struct CompositionResult {
  std::vector<Allocation> allocations;
  std::vector<EnergyService> services;  // every service considered
  std::vector<EnergyRequest> requests;  // every request considered
  std::set<std::string> serviceable_service_ids;
  std::set<std::string> serviceable_request_ids;
  CompositionMode mode;
  CompositionWindow window;
  std::chrono::duration<double, std::milli> elapsed{0.0};

  // Throws on any violated feasibility bound (per-service supply,
  // per-request demand, dangling allocation endpoints).
  void validate(double tolerance = 1e-9) const;
};

double total_allocated_for_service(const CompositionResult& result, const std::string& eid);
double total_allocated_for_request(const CompositionResult& result, const std::string& rid);

// Sum of all allocation amounts.
double total_allocated(const CompositionResult& result);

}  // namespace flowcomp
