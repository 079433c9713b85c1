#include "cti/conglomerate.hpp"

#include <algorithm>
#include <ostream>

namespace cti::conglomerate {

std::optional<Conglomerate> state_conglomerate(std::span<const ingest::StateOwned> rows, CountryCode country,
                                               const geo::Nationality* nationality) {
    Conglomerate group{country.str(), {}, country};
    for (const auto& row : rows) {
        if (row.country != country) continue;
        if (nationality) {
            auto home = nationality->home(row.asn);
            if (home && *home != country) continue;
        }
        group.members.insert(row.asn);
    }
    if (group.members.empty()) return std::nullopt;
    return group;
}

Rational compute_ctin(const Conglomerate& group, std::span<const Observation> observations,
                      const core::WeightTable& weights, const geo::GeoTable& geo, const MonitorInventory& active) {
    const std::uint64_t total = geo.total(group.country);
    if (total == 0) throw ComputeError("country " + group.country.str() + " has no address mass");
    if (active.empty()) return 0;

    // (monitor, prefix) -> closest member distance
    std::map<std::pair<std::string_view, Prefix>, std::uint32_t> nearest;
    for (const auto& obs : observations) {
        if (!group.members.count(obs.transit)) continue;
        if (!active.contains(obs.monitor)) continue;
        if (geo.mass(obs.prefix, group.country) == 0) continue;
        auto origin = geo.origin_of(obs.prefix);
        if (origin && group.members.count(*origin)) continue;
        auto [it, inserted] = nearest.emplace(std::make_pair(std::string_view(obs.monitor), obs.prefix), obs.distance);
        if (!inserted) it->second = std::min(it->second, obs.distance);
    }

    Rational sum = 0;
    for (const auto& [key, distance] : nearest) {
        const Monitor* m = active.find(key.first);
        sum += Rational(BigInt(geo.mass(key.second, group.country)),
                        BigInt(weights.observers(m->host, key.second)) * distance);
    }
    return sum / (BigInt(active.size()) * total);
}

Rational originated_fraction(const Conglomerate& group, const geo::GeoTable& geo) {
    const std::uint64_t total = geo.total(group.country);
    if (total == 0) throw ComputeError("country " + group.country.str() + " has no address mass");
    std::uint64_t originated = 0;
    for (Asn asn : group.members) originated += geo.originated(asn, group.country);
    return Rational(BigInt(originated), BigInt(total));
}

Rational compute_footprint(const Conglomerate& group, const geo::GeoTable& geo, const Rational& ctin) {
    return ctin + originated_fraction(group, geo);
}

void write_footprints(std::ostream& out, std::span<const FootprintRow> rows) {
    out << "country,label,ctin,originated_fraction,footprint\n";
    for (const auto& row : rows)
        out << row.country.str() << ',' << row.label << ',' << format_fixed(row.ctin, 12) << ','
            << format_fixed(row.originated, 12) << ',' << format_fixed(row.footprint, 12) << '\n';
}

std::vector<OrgAggregate> aggregate_org(const std::map<Asn, std::string>& org_of, const MetricReport& cti,
                                        const OrgConfig& config) {
    std::map<std::pair<CountryCode, std::string>, std::vector<std::pair<Asn, Rational>>> groups;
    for (const auto& [key, value] : cti.entries) {
        const auto* asn = std::get_if<Asn>(&key.subject);
        if (!asn || value <= 0) continue;
        auto org = org_of.find(*asn);
        if (org == org_of.end()) continue;
        groups[{key.country, org->second}].emplace_back(*asn, value);
    }

    std::vector<OrgAggregate> out;
    for (auto& [key, members] : groups) {
        std::sort(members.begin(), members.end(), [](const auto& x, const auto& y) {
            return x.second != y.second ? x.second > y.second : x.first < y.first;
        });
        Rational sum = 0;
        for (const auto& [asn, value] : members) sum += value;
        OrgAggregate row{key.first, key.second, members, sum, members.front().first, members.front().second / sum,
                         sum < config.marginal, std::nullopt, std::nullopt};
        out.push_back(std::move(row));
    }
    return out;
}

void write_org_rows(std::ostream& out, std::span<const OrgAggregate> rows) {
    out << "country,org,members,cti_sum,top_asn,top_share,marginal,org_ctin,top_share_of_ctin\n";
    for (const auto& row : rows) {
        out << row.country.str() << ',' << row.org << ',' << row.members.size() << ',' << format_fixed(row.sum, 12)
            << ',' << row.top.str() << ',' << format_fixed(row.top_share, 12) << ',' << (row.marginal ? "yes" : "no")
            << ',' << (row.ctin ? format_fixed(*row.ctin, 12) : "") << ','
            << (row.top_share_of_ctin ? format_fixed(*row.top_share_of_ctin, 12) : "") << '\n';
    }
}

}  // namespace cti::conglomerate
