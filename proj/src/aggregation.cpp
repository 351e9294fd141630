#include "flowcomp/aggregation.hpp"

namespace flowcomp {

EnergyService aggregate_service(const ProviderProfile& provider,
                                std::optional<double> container_capacity,
                                int sequence) {
  if (container_capacity && *container_capacity <= 0) {
    throw std::invalid_argument("container capacity must be > 0 when given");
  }
  double energy_amount = 0.0;
  for (const auto& w : provider.wearables) {
    energy_amount += w.spare_energy;
  }
  if (energy_amount <= 0) {
    throw std::invalid_argument("nothing to advertise: provider " + provider.pid +
                                " has no spare energy");
  }
  if (container_capacity && energy_amount > *container_capacity) {
    energy_amount = *container_capacity;
  }
  std::string eid = provider.pid + "-es" + std::to_string(sequence);
  return EnergyService(std::move(eid), provider.pid, energy_amount,
                       provider.availability, provider.location, provider.range);
}

}  // namespace flowcomp
