#include "cti/geo.hpp"

#include <algorithm>
#include <ostream>

namespace cti::geo {

OriginMap build_origin_map(std::span<const PathRecord> paths) {
    OriginMap out;
    std::set<Prefix> conflicted;
    for (const auto& path : paths) {
        if (conflicted.count(path.prefix)) continue;
        auto [it, inserted] = out.origin_of.emplace(path.prefix, path.origin());
        if (!inserted && it->second != path.origin()) {
            conflicted.insert(path.prefix);
            out.origin_of.erase(it);
        }
    }
    out.conflicts.assign(conflicted.begin(), conflicted.end());
    return out;
}

namespace {

const std::map<Prefix, std::uint64_t> kNoPrefixes;
const std::map<CountryCode, std::uint64_t> kNoCountries;

}  // namespace

std::uint64_t GeoTable::mass(const Prefix& prefix, CountryCode country) const {
    auto it = by_prefix_.find(prefix);
    if (it == by_prefix_.end()) return 0;
    auto jt = it->second.find(country);
    return jt == it->second.end() ? 0 : jt->second;
}

std::uint64_t GeoTable::total(CountryCode country) const {
    auto it = totals_.find(country);
    return it == totals_.end() ? 0 : it->second;
}

std::uint64_t GeoTable::originated(Asn asn, CountryCode country) const {
    auto it = originated_.find(asn);
    if (it == originated_.end()) return 0;
    auto jt = it->second.find(country);
    return jt == it->second.end() ? 0 : jt->second;
}

std::optional<Asn> GeoTable::origin_of(const Prefix& prefix) const {
    auto it = origin_of_.find(prefix);
    if (it == origin_of_.end()) return std::nullopt;
    return it->second;
}

const std::map<Prefix, std::uint64_t>& GeoTable::prefixes_in(CountryCode country) const {
    auto it = by_country_.find(country);
    return it == by_country_.end() ? kNoPrefixes : it->second;
}

const std::map<CountryCode, std::uint64_t>& GeoTable::countries_of(const Prefix& prefix) const {
    auto it = by_prefix_.find(prefix);
    return it == by_prefix_.end() ? kNoCountries : it->second;
}

const std::map<CountryCode, std::uint64_t>& GeoTable::originated_by(Asn asn) const {
    auto it = originated_.find(asn);
    return it == originated_.end() ? kNoCountries : it->second;
}

std::vector<CountryCode> GeoTable::countries() const {
    std::vector<CountryCode> out;
    for (const auto& [cc, total] : totals_)
        if (total > 0) out.push_back(cc);
    return out;
}

void GeoTable::add_mass(const Prefix& prefix, CountryCode country, std::uint64_t addresses) {
    if (addresses == 0) return;
    auto origin = origin_of(prefix);
    if (!origin) throw std::logic_error("mass for prefix without origin: " + prefix.str());
    by_prefix_[prefix][country] += addresses;
    by_country_[country][prefix] += addresses;
    totals_[country] += addresses;
    originated_[*origin][country] += addresses;
}

namespace {

/// Delegation blocks sorted by base with a running maximum of block ends, so
/// covering blocks can be found by walking left from the insertion point.
class DelegationIndex {
  public:
    explicit DelegationIndex(std::span<const ingest::Delegation> blocks) : blocks_(blocks.begin(), blocks.end()) {
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const auto& x, const auto& y) { return x.base < y.base; });
        max_end_.reserve(blocks_.size());
        std::uint64_t running = 0;
        for (const auto& b : blocks_) {
            running = std::max(running, b.end());
            max_end_.push_back(running);
        }
    }

    /// Distinct countries of blocks that contain the whole prefix.
    std::set<CountryCode> covering(const Prefix& prefix) const {
        std::set<CountryCode> out;
        auto upper = std::upper_bound(blocks_.begin(), blocks_.end(), prefix.base(),
                                      [](std::uint32_t base, const auto& b) { return base < b.base; });
        for (auto i = static_cast<std::ptrdiff_t>(upper - blocks_.begin()) - 1; i >= 0; --i) {
            if (max_end_[i] < prefix.end()) break;
            if (blocks_[i].end() >= prefix.end()) out.insert(blocks_[i].country);
        }
        return out;
    }

  private:
    std::vector<ingest::Delegation> blocks_;
    std::vector<std::uint64_t> max_end_;
};

}  // namespace

GeoBuild build_geo_table(std::span<const ingest::GeoRow> rows, std::span<const ingest::Delegation> delegations,
                         const std::map<Prefix, Asn>& origin_of) {
    GeoBuild out;
    out.table.set_origins(origin_of);

    std::set<Prefix> geolocated;
    for (const auto& row : rows) {
        if (row.addresses == 0 || !origin_of.count(row.prefix)) continue;
        out.table.add_mass(row.prefix, row.country, std::max<std::uint64_t>(row.addresses, 256));
        geolocated.insert(row.prefix);
    }

    const DelegationIndex index(delegations);
    for (const auto& [prefix, origin] : origin_of) {
        if (geolocated.count(prefix)) continue;
        auto countries = index.covering(prefix);
        if (countries.empty()) continue;
        if (countries.size() > 1) {
            std::string names;
            for (const auto& cc : countries) names += (names.empty() ? "" : "/") + cc.str();
            out.log.push_back(prefix.str() + ": delegation blocks disagree (" + names + ")");
            continue;
        }
        out.table.add_mass(prefix, *countries.begin(), prefix.size());
    }
    return out;
}

void write_geo_table(std::ostream& out, const GeoTable& table) {
    out << "prefix,country,mass\n";
    for (const auto& [prefix, origin] : table.origins())
        for (const auto& [cc, mass] : table.countries_of(prefix)) out << prefix.str() << ',' << cc.str() << ',' << mass << '\n';
}

std::optional<CountryCode> Nationality::home(Asn asn) const {
    auto it = home_.find(asn);
    if (it == home_.end()) return std::nullopt;
    return it->second;
}

Nationality classify_nationality(const GeoTable& table, const RelationshipTable* include_customers) {
    std::map<Asn, std::map<CountryCode, std::uint64_t>> addresses = table.all_originated();
    if (include_customers) {
        std::map<Asn, std::map<CountryCode, std::uint64_t>> combined = addresses;
        for (const auto& [customer, masses] : table.all_originated())
            for (Asn provider : include_customers->providers(customer))
                for (const auto& [cc, mass] : masses) combined[provider][cc] += mass;
        addresses = std::move(combined);
    }

    Nationality out;
    for (const auto& [asn, masses] : addresses) {
        std::uint64_t sum = 0;
        for (const auto& [cc, mass] : masses) sum += mass;
        if (sum == 0) continue;
        for (const auto& [cc, mass] : masses) {
            // mass / sum >= 2/3, exactly
            if (3 * mass >= 2 * sum) {
                out.set_domestic(asn, cc);
                break;
            }
        }
    }
    return out;
}

}  // namespace cti::geo
