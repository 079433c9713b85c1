// Influence of AS sets: state-owned conglomerates and organizations.
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cti/cti_core.hpp"
#include "cti/geo.hpp"
#include "cti/ingest.hpp"

namespace cti::conglomerate {

struct Conglomerate {
    std::string label;
    AsnSet members;
    CountryCode country;
};

/// State-owned ASes whose owner is `country`. With `nationality`, members
/// that are domestic to a different country are left out. Returns nullopt
/// when no member remains.
std::optional<Conglomerate> state_conglomerate(std::span<const ingest::StateOwned> rows, CountryCode country,
                                               const geo::Nationality* nationality = nullptr);

/// CTI generalized to an AS set: one term per (monitor, prefix) at the
/// minimum member distance; prefixes originated by a member contribute nothing.
Rational compute_ctin(const Conglomerate& group, std::span<const Observation> observations,
                      const core::WeightTable& weights, const geo::GeoTable& geo, const MonitorInventory& active);

/// Sum over members of a*(AS, C) / A(C).
Rational originated_fraction(const Conglomerate& group, const geo::GeoTable& geo);

/// F(C) = CTIn + originated fraction.
Rational compute_footprint(const Conglomerate& group, const geo::GeoTable& geo, const Rational& ctin);

struct FootprintRow {
    CountryCode country;
    std::string label;
    Rational ctin;
    Rational originated;
    Rational footprint;
};

/// `country,label,ctin,originated_fraction,footprint`
void write_footprints(std::ostream& out, std::span<const FootprintRow> rows);

struct OrgConfig {
    /// Org-country pairs whose CTI sum is below this are marginal.
    Rational marginal{1, 20};
    /// Non-marginal pairs above this sum get an organization CTIn.
    Rational ctin_threshold{1, 10};
};

struct OrgAggregate {
    CountryCode country;
    std::string org;
    /// Members with CTI > 0 in the country, by descending CTI then ASN.
    std::vector<std::pair<Asn, Rational>> members;
    Rational sum;
    Asn top;
    Rational top_share;
    bool marginal = false;
    std::optional<Rational> ctin;
    std::optional<Rational> top_share_of_ctin;
};

/// Per (org, country): CTI sum over members and the top member's share of it.
/// Only org-country pairs with at least one member of positive CTI appear.
std::vector<OrgAggregate> aggregate_org(const std::map<Asn, std::string>& org_of, const MetricReport& cti,
                                        const OrgConfig& config);

/// `country,org,members,cti_sum,top_asn,top_share,marginal,org_ctin,top_share_of_ctin`
void write_org_rows(std::ostream& out, std::span<const OrgAggregate> rows);

}  // namespace cti::conglomerate
