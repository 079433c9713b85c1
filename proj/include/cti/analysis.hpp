// End-to-end pipeline over a loaded dataset bundle. Country-independent
// stages run once in the constructor; per-country metrics are pure functions
// of that state and may be evaluated concurrently.
#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

#include "cti/clh.hpp"
#include "cti/conglomerate.hpp"
#include "cti/cti_core.hpp"
#include "cti/geo.hpp"
#include "cti/ingest.hpp"
#include "cti/outlier.hpp"
#include "cti/pathprep.hpp"
#include "cti/transit.hpp"

namespace cti::analysis {

struct Config {
    bool outlier_filter = true;
    outlier::FilterConfig filter;
    conglomerate::OrgConfig org;
    transit::CandidateConfig candidates;
    Rational dominance_threshold{12, 25};
};

/// Inputs shared by every metric for one destination country.
struct CountryContext {
    CountryCode country;
    /// Monitors located outside the country.
    MonitorInventory active;
    core::WeightTable weights;
    /// Every AS other than the origin on a sanitized path from an active
    /// monitor to a prefix with mass in the country.
    AsnSet zero_fill;
};

class Analysis {
  public:
    Analysis(ingest::DatasetBundle bundle, Config config);

    const ingest::DatasetBundle& bundle() const noexcept { return bundle_; }
    const Config& config() const noexcept { return config_; }
    const geo::OriginMap& origins() const noexcept { return origins_; }
    const geo::GeoTable& geo() const noexcept { return geo_.table; }
    const std::vector<std::string>& geo_log() const noexcept { return geo_.log; }
    /// Nationality from each AS's own originated addresses.
    const geo::Nationality& origin_nationality() const noexcept { return origin_nat_; }
    /// Nationality counting direct customers' addresses too.
    const geo::Nationality& transit_nationality() const noexcept { return transit_nat_; }
    const pathprep::Prepared& prepared() const noexcept { return prepared_; }
    const std::vector<Observation>& observations() const noexcept { return observations_; }

    /// Countries with address mass, ascending.
    std::vector<CountryCode> countries() const { return geo_.table.countries(); }

    CountryContext context(CountryCode country) const;

    /// CTI without the outlier filter.
    MetricReport cti(const CountryContext& ctx) const;
    /// CTI with the outlier filter when enabled in the config.
    outlier::FilteredCti filtered_cti(const CountryContext& ctx) const;
    /// nullopt when the country owns no state AS.
    std::optional<conglomerate::FootprintRow> footprint(const CountryContext& ctx) const;
    std::vector<conglomerate::OrgAggregate> org(const CountryContext& ctx, const MetricReport& cti) const;
    transit::TransitRow transit_fraction(CountryCode country) const;
    transit::CountryCandidates candidates(CountryCode country) const;
    MetricReport clh(CountryCode country) const;

  private:
    ingest::DatasetBundle bundle_;
    Config config_;
    geo::OriginMap origins_;
    geo::GeoBuild geo_;
    geo::Nationality origin_nat_;
    geo::Nationality transit_nat_;
    pathprep::Prepared prepared_;
    std::vector<Observation> observations_;
    transit::MembershipIndex memberships_;
    std::map<Asn, std::string> org_of_;
};

/// Applies `fn` to every item on up to `workers` threads. Results keep the
/// input order; the first exception in input order is rethrown.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, unsigned workers, Fn fn) {
    using R = decltype(fn(items.front()));
    std::vector<std::optional<R>> slots(items.size());
    std::vector<std::exception_ptr> errors(items.size());
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i = next++; i < items.size(); i = next++) {
            try {
                slots[i].emplace(fn(items[i]));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(items.size(), 1));
    if (threads == 1) {
        run();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run);
    }
    std::vector<R> out;
    out.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

}  // namespace cti::analysis
