// Country-level Hegemony and report comparison statistics.
#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "cti/geo.hpp"
#include "cti/ingest.hpp"

namespace cti::clh {

/// CLH(t, C) = sum over origins domestic to C of H(t, o) * a*(o, C) / A(C).
/// Throws ComputeError when the country has no address mass.
MetricReport compute_clh(std::span<const ingest::HegemonyRow> hegemony, const geo::GeoTable& geo,
                         const geo::Nationality& nationality, CountryCode country);

struct DiffStats {
    Rational p25;
    Rational mean;
    Rational median;
    Rational p75;
    std::size_t n = 0;

    bool operator==(const DiffStats&) const = default;
};

/// Nearest-rank percentile of an ascending list: element ceil(P/100 * n), 1-based.
Rational nearest_rank(std::span<const Rational> sorted, unsigned percentile);

/// |a - b| over the union of keys, a missing side reading as 0.
/// Throws ComputeError when both reports are empty.
DiffStats compare_reports(const MetricReport& a, const MetricReport& b);

struct DiffRow {
    std::string type;
    std::string compared_sets;
    DiffStats stats;
};

/// `type,compared_sets,p25,mean,median,p75,n`
void write_diff_rows(std::ostream& out, std::span<const DiffRow> rows);

}  // namespace cti::clh
