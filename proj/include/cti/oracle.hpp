// Naive reference evaluation of CTI, CTIn/footprint and T(C). Shares only
// the model and ingest types with the pipeline: geolocation, nationality,
// path hygiene and truncation are re-derived here from the raw bundle.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cti/ingest.hpp"

namespace cti::oracle {

/// Countries with positive address mass.
std::vector<CountryCode> naive_countries(const ingest::DatasetBundle& bundle);

/// Term-by-term CTI over (transit AS, monitor, prefix, position).
MetricReport naive_cti(const ingest::DatasetBundle& bundle, CountryCode country);

struct NaiveFootprint {
    Rational ctin;
    Rational originated;
    Rational footprint;
};

/// nullopt when the country owns no state AS that is not domestic elsewhere.
std::optional<NaiveFootprint> naive_footprint(const ingest::DatasetBundle& bundle, CountryCode country);

Rational naive_transit_fraction(const ingest::DatasetBundle& bundle, CountryCode country);

struct CheckResult {
    std::size_t countries = 0;
    std::vector<std::string> mismatches;

    bool ok() const { return mismatches.empty(); }
};

/// Loads the files, runs the pipeline and the naive evaluation for every
/// country and lists every disagreement.
CheckResult check_files(const ingest::FileSet& files);

}  // namespace cti::oracle
