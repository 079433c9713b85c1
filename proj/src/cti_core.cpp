#include "cti/cti_core.hpp"

#include <set>

namespace cti::core {

std::vector<Observation> extract_observations(std::span<const pathprep::RetainedPath> retained) {
    std::vector<Observation> out;
    for (const auto& path : retained)
        for (std::size_t i = 1; i < path.segment.size(); ++i)
            out.push_back(Observation{path.monitor, path.prefix, path.segment[i], static_cast<std::uint32_t>(i)});
    return out;
}

WeightTable WeightTable::build(std::span<const Observation> observations, const MonitorInventory& monitors) {
    std::map<std::pair<Asn, Prefix>, std::set<std::string_view>> seen;
    for (const auto& obs : observations) {
        const Monitor* m = monitors.find(obs.monitor);
        if (!m) continue;
        seen[{m->host, obs.prefix}].insert(m->id);
    }
    WeightTable table;
    for (const auto& [key, ids] : seen) table.counts_.emplace(key, static_cast<std::uint32_t>(ids.size()));
    return table;
}

std::uint32_t WeightTable::observers(Asn host, const Prefix& prefix) const {
    auto it = counts_.find({host, prefix});
    return it == counts_.end() ? 0 : it->second;
}

Rational WeightTable::weight(const Monitor& monitor, const Prefix& prefix) const {
    auto n = observers(monitor.host, prefix);
    return n == 0 ? Rational(0) : Rational(1, n);
}

MonitorInventory inbound_monitors(const MonitorInventory& monitors, CountryCode country) {
    return monitors.filter([country](const Monitor& m) { return m.country != country; });
}

MetricReport compute_cti(std::span<const Observation> observations, const WeightTable& weights,
                         const geo::GeoTable& geo, const MonitorInventory& active, CountryCode country,
                         const AsnSet& zero_fill) {
    const std::uint64_t total = geo.total(country);
    if (total == 0) throw ComputeError("country " + country.str() + " has no address mass");

    MetricReport report{"cti", {}};
    for (Asn asn : zero_fill) report.set(country, asn, Rational(0));
    if (active.empty()) return report;

    // Sum of mass / (n * d); the 1 / (|M| * A(C)) factor is common to all terms.
    std::map<Asn, Rational> sums;
    for (const auto& obs : observations) {
        const Monitor* m = active.find(obs.monitor);
        if (!m) continue;
        const std::uint64_t mass = geo.mass(obs.prefix, country);
        if (mass == 0) continue;
        const std::uint32_t n = weights.observers(m->host, obs.prefix);
        if (n == 0) throw std::logic_error("observation without weight for monitor " + m->id);
        sums[obs.transit] += Rational(BigInt(mass), BigInt(n) * obs.distance);
    }

    const Rational scale(BigInt(1), BigInt(active.size()) * total);
    for (auto& [asn, sum] : sums) report.set(country, asn, sum * scale);
    return report;
}

}  // namespace cti::core
