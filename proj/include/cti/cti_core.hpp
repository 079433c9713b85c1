// Country-level transit influence: observation extraction, per-monitor
// weights and the address-weighted, distance-discounted aggregation.
#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "cti/geo.hpp"
#include "cti/model.hpp"
#include "cti/pathprep.hpp"

namespace cti::core {

/// One observation per transit AS on each retained segment; the origin
/// (index 0) emits nothing and segment[i] is at distance i.
std::vector<Observation> extract_observations(std::span<const pathprep::RetainedPath> retained);

/// w(m) = 1/n, where n counts the monitors of m's host AS that observe the prefix.
class WeightTable {
  public:
    /// Only observations by monitors in `monitors` are counted.
    static WeightTable build(std::span<const Observation> observations, const MonitorInventory& monitors);

    /// n for (host, prefix); 0 when no monitor of the host observes the prefix.
    std::uint32_t observers(Asn host, const Prefix& prefix) const;
    /// 1/n, or 0 when the monitor's host has no observer of the prefix.
    Rational weight(const Monitor& monitor, const Prefix& prefix) const;
    const std::map<std::pair<Asn, Prefix>, std::uint32_t>& counts() const noexcept { return counts_; }

  private:
    std::map<std::pair<Asn, Prefix>, std::uint32_t> counts_;
};

/// Monitors located outside `country`.
MonitorInventory inbound_monitors(const MonitorInventory& monitors, CountryCode country);

/// CTI of every transit AS observed on paths to `country`'s prefixes, using
/// the monitors in `active` (|M| = active.size()). Observations from other
/// monitors and toward prefixes without mass in the country are ignored.
/// ASes in `zero_fill` without observations are reported with score 0.
/// Throws ComputeError when the country has no address mass.
MetricReport compute_cti(std::span<const Observation> observations, const WeightTable& weights,
                         const geo::GeoTable& geo, const MonitorInventory& active, CountryCode country,
                         const AsnSet& zero_fill = {});

}  // namespace cti::core
