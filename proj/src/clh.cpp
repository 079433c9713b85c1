#include "cti/clh.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace cti::clh {

MetricReport compute_clh(std::span<const ingest::HegemonyRow> hegemony, const geo::GeoTable& geo,
                         const geo::Nationality& nationality, CountryCode country) {
    const std::uint64_t total = geo.total(country);
    if (total == 0) throw ComputeError("country " + country.str() + " has no address mass");

    MetricReport report{"clh", {}};
    std::map<Asn, Rational> sums;
    for (const auto& row : hegemony) {
        if (!nationality.is_domestic(row.origin, country)) continue;
        const std::uint64_t originated = geo.originated(row.origin, country);
        if (originated == 0) continue;
        sums[row.transit] += row.score * Rational(BigInt(originated), BigInt(total));
    }
    for (auto& [transit, value] : sums) report.set(country, transit, std::move(value));
    return report;
}

Rational nearest_rank(std::span<const Rational> sorted, unsigned percentile) {
    if (sorted.empty()) throw ComputeError("percentile of an empty list");
    const std::size_t n = sorted.size();
    std::size_t rank = (static_cast<std::size_t>(percentile) * n + 99) / 100;
    rank = std::clamp<std::size_t>(rank, 1, n);
    return sorted[rank - 1];
}

DiffStats compare_reports(const MetricReport& a, const MetricReport& b) {
    if (a.entries.empty() && b.entries.empty()) throw ComputeError("both reports are empty");

    std::set<ReportKey> keys;
    for (const auto& [key, value] : a.entries) keys.insert(key);
    for (const auto& [key, value] : b.entries) keys.insert(key);

    std::vector<Rational> diffs;
    diffs.reserve(keys.size());
    Rational sum = 0;
    for (const auto& key : keys) {
        Rational d = a.value(key.country, key.subject) - b.value(key.country, key.subject);
        if (d < 0) d = -d;
        sum += d;
        diffs.push_back(std::move(d));
    }
    std::sort(diffs.begin(), diffs.end());

    DiffStats stats;
    stats.n = diffs.size();
    stats.mean = sum / BigInt(diffs.size());
    stats.p25 = nearest_rank(diffs, 25);
    stats.median = nearest_rank(diffs, 50);
    stats.p75 = nearest_rank(diffs, 75);
    return stats;
}

void write_diff_rows(std::ostream& out, std::span<const DiffRow> rows) {
    out << "type,compared_sets,p25,mean,median,p75,n\n";
    for (const auto& row : rows)
        out << row.type << ',' << row.compared_sets << ',' << format_fixed(row.stats.p25, 12) << ','
            << format_fixed(row.stats.mean, 12) << ',' << format_fixed(row.stats.median, 12) << ','
            << format_fixed(row.stats.p75, 12) << ',' << row.stats.n << '\n';
}

}  // namespace cti::clh
