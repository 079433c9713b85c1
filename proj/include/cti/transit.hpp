// Transit dominance: candidate origin tests, AS-level national border
// crossings on traceroutes, the country-level transit fraction T(C) and the
// transit-dominant verdict.
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cti/geo.hpp"
#include "cti/ingest.hpp"

namespace cti::transit {

using ingest::TraceroutePath;

/// Relationship of the foreign AS to the domestic AS at the crossing.
enum class BorderKind { ProviderToCustomer, CustomerToProvider, PeerToPeer, Unknown };

std::string_view to_string(BorderKind kind);

struct BorderCrossing {
    Asn provider;  // last foreign AS
    Asn customer;  // its successor, domestic
    BorderKind kind;

    bool operator==(const BorderCrossing&) const = default;
};

/// Link between the last hop not domestic to `country` and its successor.
/// nullopt when every hop is domestic or the last hop is not domestic.
std::optional<BorderCrossing> find_border(const TraceroutePath& path, const geo::Nationality& nationality,
                                          CountryCode country, const RelationshipTable& rels);

/// Facilities indexed for the membership tests.
class MembershipIndex {
  public:
    explicit MembershipIndex(std::span<const ingest::Membership> rows);

    struct Facility {
        CountryCode country;
        AsnSet members;
    };
    /// Facility ids the AS belongs to.
    std::vector<const Facility*> facilities_of(Asn asn) const;

  private:
    std::map<std::string, Facility> facilities_;
    std::map<Asn, std::vector<std::string>> by_member_;
};

struct CandidateResult {
    Asn origin;
    bool no_foreign_peer = true;         // test I
    bool no_foreign_facility = true;     // test II
    bool no_mixed_facility = true;       // test III
    std::vector<std::string> reasons;

    bool candidate() const { return no_foreign_peer && no_foreign_facility && no_mixed_facility; }
};

/// Tests an origin AS of `country` for evidence of international peering.
CandidateResult classify_candidate(Asn origin, CountryCode country, const RelationshipTable& rels,
                                   const MembershipIndex& memberships, const geo::Nationality& nationality);

struct CandidateConfig {
    /// Origins below this fraction of the country's addresses are skipped.
    Rational origination_floor{5, 10000};
    /// Countries need at least this fraction originated by candidates.
    Rational min_candidate_fraction{1, 4};
    std::size_t max_countries = 100;
};

struct CountryCandidates {
    CountryCode country;
    std::vector<CandidateResult> origins;
    std::vector<Rational> origin_fractions;
    /// Address fraction originated by candidate origins.
    Rational candidate_fraction;
    bool selected = false;
};

CountryCandidates evaluate_country(CountryCode country, const geo::GeoTable& geo, const RelationshipTable& rels,
                                   const MembershipIndex& memberships, const geo::Nationality& nationality,
                                   const CandidateConfig& config);

/// Marks up to `max_countries` countries with the highest candidate fraction
/// (at least `min_candidate_fraction`) as selected; ties by country code.
void select_countries(std::vector<CountryCandidates>& countries, const CandidateConfig& config);

/// T(C) over traceroutes whose last hop is domestic to `country`.
/// Throws ComputeError when the country has no address mass.
Rational compute_transit_fraction(std::span<const TraceroutePath> paths, const RelationshipTable& rels,
                                  const geo::Nationality& nationality, const geo::GeoTable& geo, CountryCode country);

/// Dominant iff T >= threshold.
bool classify_transit_dominant(const Rational& t, const Rational& threshold);

struct TransitRow {
    CountryCode country;
    Rational t;
    bool dominant;
    Rational threshold;
};

/// `country,T,verdict,threshold`
void write_transit_rows(std::ostream& out, std::span<const TransitRow> rows);

/// `country,origin_asn,originated_fraction,test_i,test_ii,test_iii,candidate`
void write_candidates(std::ostream& out, std::span<const CountryCandidates> countries);

/// `country,candidate_fraction,selected`
void write_candidate_countries(std::ostream& out, std::span<const CountryCandidates> countries);

}  // namespace cti::transit
