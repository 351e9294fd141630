#include "flowcomp/core.hpp"

#include <cmath>
#include <unordered_map>

namespace flowcomp {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

}  // namespace

TimeInterval TimeInterval::from_seconds(std::int64_t st_sec, std::int64_t et_sec) {
  return TimeInterval(floor_div(st_sec, 60), floor_div(et_sec, 60));
}

GeoPoint::GeoPoint(double x_m, double y_m) : x(x_m), y(y_m) {
  require_finite(x, "GeoPoint.x");
  require_finite(y, "GeoPoint.y");
}

double GeoPoint::distance_to(const GeoPoint& other) const {
  return std::hypot(x - other.x, y - other.y);
}

Wearable::Wearable(std::string id, double spare_mah)
    : wid(std::move(id)), spare_energy(spare_mah) {
  require_finite(spare_energy, "Wearable.spare_energy");
  if (spare_energy < 0) {
    throw std::invalid_argument("Wearable.spare_energy must be >= 0");
  }
}

ProviderProfile::ProviderProfile(std::string id, std::vector<Wearable> ws,
                                 TimeInterval avail, GeoPoint loc, double range_m)
    : pid(std::move(id)),
      wearables(std::move(ws)),
      availability(avail),
      location(loc),
      range(range_m) {
  if (wearables.empty()) {
    throw std::invalid_argument("ProviderProfile: wearables must be non-empty");
  }
  require_finite(range, "ProviderProfile.range");
  if (range <= 0) {
    throw std::invalid_argument("ProviderProfile.range must be > 0");
  }
}

EnergyService::EnergyService(std::string id, std::string provider, double ae_mah,
                             TimeInterval w, GeoPoint loc, double range_m)
    : eid(std::move(id)),
      pid(std::move(provider)),
      ae(ae_mah),
      window(w),
      location(loc),
      range(range_m) {
  require_finite(ae, "EnergyService.ae");
  if (ae <= 0) throw std::invalid_argument("EnergyService.ae must be > 0");
  require_finite(range, "EnergyService.range");
  if (range <= 0) throw std::invalid_argument("EnergyService.range must be > 0");
}

EnergyRequest::EnergyRequest(std::string id, std::string consumer, double re_mah,
                             TimeInterval w, GeoPoint loc)
    : rid(std::move(id)), cid(std::move(consumer)), re(re_mah), window(w), location(loc) {
  require_finite(re, "EnergyRequest.re");
  if (re <= 0) throw std::invalid_argument("EnergyRequest.re must be > 0");
}

std::string to_string(CompositionMode mode) {
  switch (mode) {
    case CompositionMode::Baseline: return "baseline";
    case CompositionMode::Priority: return "priority";
    case CompositionMode::Flow: return "flow";
    case CompositionMode::PartialFlow: return "partial";
  }
  throw std::logic_error("unrepresentable CompositionMode");
}

CompositionMode parse_mode(const std::string& name) {
  if (name == "baseline") return CompositionMode::Baseline;
  if (name == "priority") return CompositionMode::Priority;
  if (name == "flow") return CompositionMode::Flow;
  if (name == "partial") return CompositionMode::PartialFlow;
  throw std::invalid_argument("unknown composition mode: " + name);
}

Allocation::Allocation(std::string service, std::string request, double amount_mah)
    : eid(std::move(service)), rid(std::move(request)), amount(amount_mah) {
  require_finite(amount, "Allocation.amount");
  if (amount <= 0) throw std::invalid_argument("Allocation.amount must be > 0");
}

void CompositionResult::validate(double tolerance) const {
  std::unordered_map<std::string, double> per_service;
  std::unordered_map<std::string, double> per_request;
  per_service.reserve(services.size());
  per_request.reserve(requests.size());
  for (const auto& s : services) {
    if (!per_service.emplace(s.eid, 0.0).second) {
      throw std::runtime_error("invariant violation: duplicate service id " + s.eid);
    }
  }
  for (const auto& r : requests) {
    if (!per_request.emplace(r.rid, 0.0).second) {
      throw std::runtime_error("invariant violation: duplicate request id " + r.rid);
    }
  }
  for (const auto& a : allocations) {
    auto s = per_service.find(a.eid);
    auto r = per_request.find(a.rid);
    if (s == per_service.end()) {
      throw std::runtime_error("invariant violation: allocation references unknown service " + a.eid);
    }
    if (r == per_request.end()) {
      throw std::runtime_error("invariant violation: allocation references unknown request " + a.rid);
    }
    s->second += a.amount;
    r->second += a.amount;
  }
  for (const auto& s : services) {
    if (per_service.at(s.eid) > s.ae + tolerance) {
      throw std::runtime_error("invariant violation: service " + s.eid + " over-allocated");
    }
  }
  for (const auto& r : requests) {
    if (per_request.at(r.rid) > r.re + tolerance) {
      throw std::runtime_error("invariant violation: request " + r.rid + " over-served");
    }
  }
}

double total_allocated_for_service(const CompositionResult& result, const std::string& eid) {
  bool known = false;
  for (const auto& s : result.services) {
    if (s.eid == eid) { known = true; break; }
  }
  if (!known) throw std::invalid_argument("unknown service: " + eid);
  double sum = 0.0;
  for (const auto& a : result.allocations) {
    if (a.eid == eid) sum += a.amount;
  }
  return sum;
}

double total_allocated_for_request(const CompositionResult& result, const std::string& rid) {
  bool known = false;
  for (const auto& r : result.requests) {
    if (r.rid == rid) { known = true; break; }
  }
  if (!known) throw std::invalid_argument("unknown request: " + rid);
  double sum = 0.0;
  for (const auto& a : result.allocations) {
    if (a.rid == rid) sum += a.amount;
  }
  return sum;
}

double total_allocated(const CompositionResult& result) {
  double sum = 0.0;
  for (const auto& a : result.allocations) sum += a.amount;
  return sum;
}

}  // namespace flowcomp
