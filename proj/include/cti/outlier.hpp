// Per-host-AS outlier filtering of CTI estimates.
//
// For each (transit AS, country) pair the CTI is recomputed using the
// monitors of each monitor-hosting AS on its own. When at least `min_hosts`
// hosts produced a value, the floor(trim * H) lowest and highest values are
// dropped (ties ordered by ascending host ASN) and the CTI is recomputed over
// the monitors of the remaining hosts, normalized by their count.
#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "cti/cti_core.hpp"

namespace cti::outlier {

struct HostCtiProfile {
    Asn transit;
    CountryCode country;
    /// host AS -> CTI using only that host's monitors. Hosts that never see
    /// the transit AS on paths to the country are absent.
    std::map<Asn, Rational> values;
};

struct FilterConfig {
    std::size_t min_hosts = 10;
    Rational trim{1, 10};
};

struct FilterOutcome {
    Rational value;
    bool applied = false;
    /// Excluded hosts with their per-host CTI, low tail first.
    std::vector<std::pair<Asn, Rational>> excluded;
};

/// One profile per transit AS observed toward the country, ordered by ASN.
std::vector<HostCtiProfile> per_host_cti(std::span<const Observation> observations, const core::WeightTable& weights,
                                         const geo::GeoTable& geo, const MonitorInventory& active,
                                         CountryCode country);

FilterOutcome apply_outlier_filter(const HostCtiProfile& profile, std::span<const Observation> observations,
                                   const core::WeightTable& weights, const geo::GeoTable& geo,
                                   const MonitorInventory& active, const FilterConfig& config);

struct AuditRow {
    CountryCode country;
    Asn transit;
    Asn excluded_host;
    Rational host_cti;
};

struct FilteredCti {
    MetricReport report;
    std::vector<AuditRow> audit;
};

/// compute_cti followed by apply_outlier_filter for every transit AS.
FilteredCti filtered_cti(std::span<const Observation> observations, const core::WeightTable& weights,
                         const geo::GeoTable& geo, const MonitorInventory& active, CountryCode country,
                         const FilterConfig& config, const AsnSet& zero_fill = {});

/// `country,transit_asn,excluded_host_asn,host_cti`
void write_audit(std::ostream& out, std::span<const AuditRow> rows);

}  // namespace cti::outlier
