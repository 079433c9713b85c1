#include "cti/analysis.hpp"

#include <set>

namespace cti::analysis {

Analysis::Analysis(ingest::DatasetBundle bundle, Config config)
    : bundle_(std::move(bundle)),
      config_(std::move(config)),
      origins_(geo::build_origin_map(bundle_.paths)),
      geo_(geo::build_geo_table(bundle_.geo_rows, bundle_.delegations, origins_.origin_of)),
      origin_nat_(geo::classify_nationality(geo_.table)),
      transit_nat_(geo::classify_nationality(geo_.table, &bundle_.relationships)),
      memberships_(bundle_.memberships) {
    const std::set<Prefix> conflicts(origins_.conflicts.begin(), origins_.conflicts.end());
    prepared_ = pathprep::prepare_paths(bundle_.paths, bundle_.monitors, bundle_.relationships, bundle_.clique,
                                        bundle_.reserved, conflicts);
    observations_ = core::extract_observations(prepared_.retained);
    for (const auto& row : bundle_.orgs) org_of_.emplace(row.asn, row.org);
}

CountryContext Analysis::context(CountryCode country) const {
    CountryContext ctx{country, core::inbound_monitors(bundle_.monitors, country), {}, {}};
    ctx.weights = core::WeightTable::build(observations_, ctx.active);
    for (const auto& path : prepared_.sanitized) {
        if (!ctx.active.contains(path.monitor)) continue;
        if (geo_.table.mass(path.prefix, country) == 0) continue;
        for (std::size_t i = 0; i + 1 < path.hops.size(); ++i) ctx.zero_fill.insert(path.hops[i]);
    }
    return ctx;
}

MetricReport Analysis::cti(const CountryContext& ctx) const {
    return core::compute_cti(observations_, ctx.weights, geo_.table, ctx.active, ctx.country, ctx.zero_fill);
}

outlier::FilteredCti Analysis::filtered_cti(const CountryContext& ctx) const {
    if (!config_.outlier_filter) return outlier::FilteredCti{cti(ctx), {}};
    return outlier::filtered_cti(observations_, ctx.weights, geo_.table, ctx.active, ctx.country, config_.filter,
                                 ctx.zero_fill);
}

std::optional<conglomerate::FootprintRow> Analysis::footprint(const CountryContext& ctx) const {
    auto group = conglomerate::state_conglomerate(bundle_.state_owned, ctx.country, &transit_nat_);
    if (!group) return std::nullopt;
    const Rational ctin = conglomerate::compute_ctin(*group, observations_, ctx.weights, geo_.table, ctx.active);
    const Rational originated = conglomerate::originated_fraction(*group, geo_.table);
    return conglomerate::FootprintRow{ctx.country, group->label, ctin, originated, ctin + originated};
}

std::vector<conglomerate::OrgAggregate> Analysis::org(const CountryContext& ctx, const MetricReport& cti) const {
    MetricReport own{cti.metric, {}};
    for (const auto& [key, value] : cti.entries)
        if (key.country == ctx.country) own.entries.emplace(key, value);

    auto rows = conglomerate::aggregate_org(org_of_, own, config_.org);
    for (auto& row : rows) {
        if (row.marginal || row.sum <= config_.org.ctin_threshold) continue;
        conglomerate::Conglomerate group{row.org, {}, ctx.country};
        for (const auto& [asn, org] : org_of_)
            if (org == row.org) group.members.insert(asn);
        row.ctin = conglomerate::compute_ctin(group, observations_, ctx.weights, geo_.table, ctx.active);
        if (*row.ctin > 0) row.top_share_of_ctin = row.members.front().second / *row.ctin;
    }
    return rows;
}

transit::TransitRow Analysis::transit_fraction(CountryCode country) const {
    const Rational t = transit::compute_transit_fraction(bundle_.traceroutes, bundle_.relationships, transit_nat_,
                                                         geo_.table, country);
    return transit::TransitRow{country, t, transit::classify_transit_dominant(t, config_.dominance_threshold),
                               config_.dominance_threshold};
}

transit::CountryCandidates Analysis::candidates(CountryCode country) const {
    return transit::evaluate_country(country, geo_.table, bundle_.relationships, memberships_, transit_nat_,
                                     config_.candidates);
}

MetricReport Analysis::clh(CountryCode country) const {
    return clh::compute_clh(bundle_.hegemony, geo_.table, origin_nat_, country);
}

}  // namespace cti::analysis
