#include "cti/transit.hpp"

#include <algorithm>
#include <ostream>

namespace cti::transit {

std::string_view to_string(BorderKind kind) {
    switch (kind) {
        case BorderKind::ProviderToCustomer: return "p2c";
        case BorderKind::CustomerToProvider: return "c2p";
        case BorderKind::PeerToPeer: return "p2p";
        case BorderKind::Unknown: return "unknown";
    }
    return "?";
}

std::optional<BorderCrossing> find_border(const TraceroutePath& path, const geo::Nationality& nationality,
                                          CountryCode country, const RelationshipTable& rels) {
    const auto& hops = path.hops;
    if (hops.empty() || !nationality.is_domestic(hops.back(), country)) return std::nullopt;

    std::optional<std::size_t> last_foreign;
    for (std::size_t i = 0; i < hops.size(); ++i)
        if (!nationality.is_domestic(hops[i], country)) last_foreign = i;
    if (!last_foreign) return std::nullopt;

    const Asn foreign = hops[*last_foreign];
    const Asn domestic = hops[*last_foreign + 1];
    BorderKind kind = BorderKind::Unknown;
    if (auto link = rels.link(foreign, domestic)) {
        switch (*link) {
            case Link::ProviderOf: kind = BorderKind::ProviderToCustomer; break;
            case Link::CustomerOf: kind = BorderKind::CustomerToProvider; break;
            case Link::PeerOf: kind = BorderKind::PeerToPeer; break;
        }
    }
    return BorderCrossing{foreign, domestic, kind};
}

MembershipIndex::MembershipIndex(std::span<const ingest::Membership> rows) {
    for (const auto& row : rows) {
        auto [it, inserted] = facilities_.try_emplace(row.facility, Facility{row.country, {}});
        // A facility listed with two countries: the first row wins.
        it->second.members.insert(row.asn);
        auto& list = by_member_[row.asn];
        if (std::find(list.begin(), list.end(), row.facility) == list.end()) list.push_back(row.facility);
    }
}

std::vector<const MembershipIndex::Facility*> MembershipIndex::facilities_of(Asn asn) const {
    std::vector<const Facility*> out;
    auto it = by_member_.find(asn);
    if (it == by_member_.end()) return out;
    for (const auto& id : it->second) out.push_back(&facilities_.at(id));
    return out;
}

CandidateResult classify_candidate(Asn origin, CountryCode country, const RelationshipTable& rels,
                                   const MembershipIndex& memberships, const geo::Nationality& nationality) {
    CandidateResult out{origin, true, true, true, {}};
    for (Asn peer : rels.peers(origin)) {
        if (!nationality.is_domestic(peer, country)) {
            out.no_foreign_peer = false;
            out.reasons.push_back("foreign peer AS" + peer.str());
        }
    }
    for (const auto* facility : memberships.facilities_of(origin)) {
        if (facility->country != country) {
            out.no_foreign_facility = false;
            out.reasons.push_back("facility in " + facility->country.str());
        }
        for (Asn member : facility->members) {
            if (member != origin && !nationality.is_domestic(member, country)) {
                out.no_mixed_facility = false;
                out.reasons.push_back("facility member AS" + member.str() + " not domestic");
            }
        }
    }
    return out;
}

CountryCandidates evaluate_country(CountryCode country, const geo::GeoTable& geo, const RelationshipTable& rels,
                                   const MembershipIndex& memberships, const geo::Nationality& nationality,
                                   const CandidateConfig& config) {
    const std::uint64_t total = geo.total(country);
    if (total == 0) throw ComputeError("country " + country.str() + " has no address mass");
    CountryCandidates out{country, {}, {}, 0, false};
    for (const auto& [asn, masses] : geo.all_originated()) {
        auto it = masses.find(country);
        if (it == masses.end()) continue;
        const Rational fraction(BigInt(it->second), BigInt(total));
        if (fraction < config.origination_floor) continue;
        auto result = classify_candidate(asn, country, rels, memberships, nationality);
        if (result.candidate()) out.candidate_fraction += fraction;
        out.origins.push_back(std::move(result));
        out.origin_fractions.push_back(fraction);
    }
    return out;
}

void select_countries(std::vector<CountryCandidates>& countries, const CandidateConfig& config) {
    std::vector<CountryCandidates*> eligible;
    for (auto& c : countries) {
        c.selected = false;
        if (c.candidate_fraction >= config.min_candidate_fraction) eligible.push_back(&c);
    }
    std::sort(eligible.begin(), eligible.end(), [](const auto* x, const auto* y) {
        return x->candidate_fraction != y->candidate_fraction ? x->candidate_fraction > y->candidate_fraction
                                                              : x->country < y->country;
    });
    for (std::size_t i = 0; i < eligible.size() && i < config.max_countries; ++i) eligible[i]->selected = true;
}

Rational compute_transit_fraction(std::span<const TraceroutePath> paths, const RelationshipTable& rels,
                                  const geo::Nationality& nationality, const geo::GeoTable& geo,
                                  CountryCode country) {
    const std::uint64_t total = geo.total(country);
    if (total == 0) throw ComputeError("country " + country.str() + " has no address mass");

    // origin -> (traces, traces crossing on a foreign-provider p2c link)
    std::map<Asn, std::pair<std::uint64_t, std::uint64_t>> counts;
    for (const auto& path : paths) {
        if (path.hops.empty()) continue;
        const Asn origin = path.hops.back();
        if (!nationality.is_domestic(origin, country)) continue;
        auto& [traces, transit] = counts[origin];
        ++traces;
        auto border = find_border(path, nationality, country, rels);
        if (border && border->kind == BorderKind::ProviderToCustomer) ++transit;
    }

    Rational t = 0;
    for (const auto& [origin, c] : counts) {
        const std::uint64_t originated = geo.originated(origin, country);
        if (originated == 0 || c.second == 0) continue;
        t += Rational(BigInt(c.second) * originated, BigInt(c.first) * total);
    }
    return t;
}

bool classify_transit_dominant(const Rational& t, const Rational& threshold) { return t >= threshold; }

void write_transit_rows(std::ostream& out, std::span<const TransitRow> rows) {
    out << "country,T,verdict,threshold\n";
    for (const auto& row : rows)
        out << row.country.str() << ',' << format_fixed(row.t, 12) << ','
            << (row.dominant ? "transit-dominant" : "not-dominant") << ',' << format_fixed(row.threshold, 12) << '\n';
}

void write_candidates(std::ostream& out, std::span<const CountryCandidates> countries) {
    out << "country,origin_asn,originated_fraction,test_i,test_ii,test_iii,candidate\n";
    auto flag = [](bool pass) { return pass ? "pass" : "fail"; };
    for (const auto& c : countries)
        for (std::size_t i = 0; i < c.origins.size(); ++i) {
            const auto& r = c.origins[i];
            out << c.country.str() << ',' << r.origin.str() << ',' << format_fixed(c.origin_fractions[i], 12) << ','
                << flag(r.no_foreign_peer) << ',' << flag(r.no_foreign_facility) << ',' << flag(r.no_mixed_facility)
                << ',' << (r.candidate() ? "yes" : "no") << '\n';
        }
}

void write_candidate_countries(std::ostream& out, std::span<const CountryCandidates> countries) {
    out << "country,candidate_fraction,selected\n";
    for (const auto& c : countries)
        out << c.country.str() << ',' << format_fixed(c.candidate_fraction, 12) << ',' << (c.selected ? "yes" : "no")
            << '\n';
}

}  // namespace cti::transit
