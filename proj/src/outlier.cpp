#include "cti/outlier.hpp"

#include <algorithm>
#include <ostream>

namespace cti::outlier {

namespace {

/// CTI of a single transit AS over the monitor set `active`.
Rational cti_of(Asn transit, std::span<const Observation> observations, const core::WeightTable& weights,
                const geo::GeoTable& geo, const MonitorInventory& active, CountryCode country) {
    if (active.empty()) return 0;
    Rational sum = 0;
    for (const auto& obs : observations) {
        if (obs.transit != transit) continue;
        const Monitor* m = active.find(obs.monitor);
        if (!m) continue;
        const std::uint64_t mass = geo.mass(obs.prefix, country);
        if (mass == 0) continue;
        sum += Rational(BigInt(mass), BigInt(weights.observers(m->host, obs.prefix)) * obs.distance);
    }
    return sum / (BigInt(active.size()) * geo.total(country));
}

}  // namespace

std::vector<HostCtiProfile> per_host_cti(std::span<const Observation> observations, const core::WeightTable& weights,
                                         const geo::GeoTable& geo, const MonitorInventory& active,
                                         CountryCode country) {
    const std::uint64_t total = geo.total(country);
    if (total == 0) throw ComputeError("country " + country.str() + " has no address mass");

    std::map<Asn, std::size_t> monitors_per_host;
    for (const auto& [id, m] : active) ++monitors_per_host[m.host];

    std::map<Asn, std::map<Asn, Rational>> sums;  // transit -> host -> sum
    for (const auto& obs : observations) {
        const Monitor* m = active.find(obs.monitor);
        if (!m) continue;
        const std::uint64_t mass = geo.mass(obs.prefix, country);
        if (mass == 0) continue;
        sums[obs.transit][m->host] +=
            Rational(BigInt(mass), BigInt(weights.observers(m->host, obs.prefix)) * obs.distance);
    }

    std::vector<HostCtiProfile> out;
    for (auto& [transit, by_host] : sums) {
        HostCtiProfile profile{transit, country, {}};
        for (auto& [host, sum] : by_host)
            profile.values.emplace(host, sum / (BigInt(monitors_per_host[host]) * total));
        out.push_back(std::move(profile));
    }
    return out;
}

FilterOutcome apply_outlier_filter(const HostCtiProfile& profile, std::span<const Observation> observations,
                                   const core::WeightTable& weights, const geo::GeoTable& geo,
                                   const MonitorInventory& active, const FilterConfig& config) {
    FilterOutcome out;
    const std::size_t hosts = profile.values.size();
    if (hosts < config.min_hosts) {
        out.value = cti_of(profile.transit, observations, weights, geo, active, profile.country);
        return out;
    }

    const Rational scaled = config.trim * hosts;
    const auto k = static_cast<std::size_t>(
        BigInt(boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled)));

    std::vector<std::pair<Rational, Asn>> ranked;
    ranked.reserve(hosts);
    for (const auto& [host, value] : profile.values) ranked.emplace_back(value, host);
    std::sort(ranked.begin(), ranked.end());

    AsnSet dropped;
    for (std::size_t i = 0; i < k; ++i) {
        out.excluded.emplace_back(ranked[i].second, ranked[i].first);
        dropped.insert(ranked[i].second);
    }
    for (std::size_t i = hosts - k; i < hosts; ++i) {
        out.excluded.emplace_back(ranked[i].second, ranked[i].first);
        dropped.insert(ranked[i].second);
    }

    const MonitorInventory surviving = active.filter([&](const Monitor& m) { return !dropped.count(m.host); });
    out.value = cti_of(profile.transit, observations, weights, geo, surviving, profile.country);
    out.applied = true;
    return out;
}

FilteredCti filtered_cti(std::span<const Observation> observations, const core::WeightTable& weights,
                         const geo::GeoTable& geo, const MonitorInventory& active, CountryCode country,
                         const FilterConfig& config, const AsnSet& zero_fill) {
    FilteredCti out;
    out.report = core::compute_cti(observations, weights, geo, active, country, zero_fill);
    for (const auto& profile : per_host_cti(observations, weights, geo, active, country)) {
        if (profile.values.size() < config.min_hosts) continue;
        auto outcome = apply_outlier_filter(profile, observations, weights, geo, active, config);
        out.report.set(country, profile.transit, outcome.value);
        for (const auto& [host, value] : outcome.excluded)
            out.audit.push_back(AuditRow{country, profile.transit, host, value});
    }
    return out;
}

void write_audit(std::ostream& out, std::span<const AuditRow> rows) {
    out << "country,transit_asn,excluded_host_asn,host_cti\n";
    for (const auto& row : rows)
        out << row.country.str() << ',' << row.transit.str() << ',' << row.excluded_host.str() << ','
            << format_fixed(row.host_cti, 12) << '\n';
}

}  // namespace cti::outlier
