#pragma once

#include <optional>

#include "flowcomp/core.hpp"

namespace flowcomp {

// Phase 1 proxy management: fold a provider's wearable spare energy into a
// single advertised service. The advertised amount is the exact sum of the
// wearables' spare energy; an optional container capacity clamps it.
//
// The service id is derived from the provider id and `sequence`, so repeated
// runs over the same inputs produce identical ids.
//
// Throws std::invalid_argument when every wearable is empty ("nothing to
// advertise": a zero-energy service is unrepresentable).
EnergyService aggregate_service(const ProviderProfile& provider,
                                std::optional<double> container_capacity = std::nullopt,
                                int sequence = 0);

}  // namespace flowcomp
