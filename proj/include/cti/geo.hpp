// Address mass per (prefix, country), country totals, originated masses and
// AS nationality.
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cti/ingest.hpp"
#include "cti/model.hpp"

namespace cti::geo {

struct OriginMap {
    std::map<Prefix, Asn> origin_of;
    /// Prefixes announced with different origins across paths; excluded.
    std::vector<Prefix> conflicts;
};

/// Origin AS of every prefix seen on a path (the last hop).
OriginMap build_origin_map(std::span<const PathRecord> paths);

class GeoTable {
  public:
    /// 0 when the prefix has no mass in the country.
    std::uint64_t mass(const Prefix& prefix, CountryCode country) const;
    /// A(C).
    std::uint64_t total(CountryCode country) const;
    /// a*(AS, C): addresses in C originated by the AS.
    std::uint64_t originated(Asn asn, CountryCode country) const;
    std::optional<Asn> origin_of(const Prefix& prefix) const;

    /// Prefixes with positive mass in the country, with that mass.
    const std::map<Prefix, std::uint64_t>& prefixes_in(CountryCode country) const;
    /// Country -> mass for one prefix.
    const std::map<CountryCode, std::uint64_t>& countries_of(const Prefix& prefix) const;
    /// Countries with positive total, ascending.
    std::vector<CountryCode> countries() const;
    /// Per-country originated masses of one AS.
    const std::map<CountryCode, std::uint64_t>& originated_by(Asn asn) const;
    const std::map<Asn, std::map<CountryCode, std::uint64_t>>& all_originated() const { return originated_; }
    const std::map<Prefix, Asn>& origins() const { return origin_of_; }

    void add_mass(const Prefix& prefix, CountryCode country, std::uint64_t addresses);
    void set_origins(std::map<Prefix, Asn> origin_of) { origin_of_ = std::move(origin_of); }

  private:
    std::map<Prefix, Asn> origin_of_;
    std::map<Prefix, std::map<CountryCode, std::uint64_t>> by_prefix_;
    std::map<CountryCode, std::map<Prefix, std::uint64_t>> by_country_;
    std::map<CountryCode, std::uint64_t> totals_;
    std::map<Asn, std::map<CountryCode, std::uint64_t>> originated_;
};

struct GeoBuild {
    GeoTable table;
    /// Prefixes denied delegation fallback, with the reason.
    std::vector<std::string> log;
};

/// Only prefixes present in `origin_of` enter the table. Positive geo counts
/// below 256 are rounded up to 256; prefixes without any positive geo row
/// fall back to a delegation block covering the whole prefix.
GeoBuild build_geo_table(std::span<const ingest::GeoRow> rows, std::span<const ingest::Delegation> delegations,
                         const std::map<Prefix, Asn>& origin_of);

/// Audit dump: `prefix,country,mass`.
void write_geo_table(std::ostream& out, const GeoTable& table);

/// Domestic country per AS; ASes absent from the map are foreign everywhere.
class Nationality {
  public:
    std::optional<CountryCode> home(Asn asn) const;
    bool is_domestic(Asn asn, CountryCode country) const { return home(asn) == country; }
    void set_domestic(Asn asn, CountryCode country) { home_.insert_or_assign(asn, country); }
    const std::map<Asn, CountryCode>& labels() const noexcept { return home_; }

  private:
    std::map<Asn, CountryCode> home_;
};

/// An AS is domestic in C when at least two thirds of its addresses are in C.
/// With `include_customers`, the addresses originated by each AS's direct
/// customers are added to its own before the comparison.
Nationality classify_nationality(const GeoTable& table, const RelationshipTable* include_customers = nullptr);

}  // namespace cti::geo
