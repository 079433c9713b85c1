#include <gtest/gtest.h>

#include "cti/transit.hpp"
#include "support.hpp"

using namespace cti;
using namespace cti::transit;
using namespace cti::test;

namespace {

constexpr std::uint32_t F1 = 1, F2 = 2, D1 = 11, D2 = 12, D3 = 13;

geo::Nationality labels() {
    geo::Nationality n;
    n.set_domestic(as(F1), cc("US"));
    n.set_domestic(as(F2), cc("DE"));
    for (auto d : {D1, D2, D3}) n.set_domestic(as(d), cc("ET"));
    return n;
}

TraceroutePath trace(std::initializer_list<std::uint32_t> values) { return {"p", pfx("10.0.0.0/24"), hops(values)}; }

/// D2 and D3 originate the ET address space in the given /24 counts.
geo::GeoTable et_table(std::uint32_t d2, std::uint32_t d3) {
    geo::GeoTable t;
    std::map<Prefix, Asn> origins;
    std::uint32_t i = 0;
    for (; i < d2; ++i) origins.emplace(Prefix(i << 8, 24), as(D2));
    for (; i < d2 + d3; ++i) origins.emplace(Prefix(i << 8, 24), as(D3));
    t.set_origins(origins);
    for (const auto& [p, a] : origins) t.add_mass(p, cc("ET"), 256);
    return t;
}

}  // namespace

TEST(FindBorder, SpecExamples) {
    const auto n = labels();
    const auto r = rels({p2c(F2, D1), p2c(F2, D2)});
    auto b1 = find_border(trace({F1, F2, D1, D2}), n, cc("ET"), r);
    ASSERT_TRUE(b1);
    EXPECT_EQ(*b1, (BorderCrossing{as(F2), as(D1), BorderKind::ProviderToCustomer}));
    auto b2 = find_border(trace({F1, D1, F2, D2}), n, cc("ET"), r);
    ASSERT_TRUE(b2);
    EXPECT_EQ(b2->provider, as(F2));
    EXPECT_EQ(b2->customer, as(D2));
    EXPECT_FALSE(find_border(trace({D1, D2}), n, cc("ET"), r));
    EXPECT_FALSE(find_border(trace({D1, F1}), n, cc("ET"), r));
    // Unlabeled ASes count as foreign.
    auto b3 = find_border(trace({F1, 99, D1}), n, cc("ET"), r);
    EXPECT_EQ(b3->kind, BorderKind::Unknown);
    EXPECT_EQ(b3->provider, as(99));
}

TEST(FindBorderProperty, LastForeignAndUnique) {
    Gen g(4);
    const auto n = labels();
    const std::vector<std::uint32_t> pool{F1, F2, D1, D2, D3, 50};
    for (int i = 0; i < 2000; ++i) {
        TraceroutePath t{"p", pfx("10.0.0.0/24"), {}};
        for (auto k = g.between(1, 6); k > 0; --k) t.hops.push_back(as(g.pick(pool)));
        auto b = find_border(t, n, cc("ET"), {});
        if (!n.is_domestic(t.hops.back(), cc("ET"))) {
            EXPECT_FALSE(b);
            continue;
        }
        std::optional<std::size_t> last;
        for (std::size_t k = 0; k < t.hops.size(); ++k)
            if (!n.is_domestic(t.hops[k], cc("ET"))) last = k;
        if (!last) {
            EXPECT_FALSE(b);
            continue;
        }
        ASSERT_TRUE(b);
        EXPECT_EQ(b->provider, t.hops[*last]);
        EXPECT_EQ(b->customer, t.hops[*last + 1]);
        EXPECT_TRUE(n.is_domestic(b->customer, cc("ET")));
        EXPECT_EQ(find_border(t, n, cc("ET"), {}), b);
    }
}

TEST(TransitFraction, HalfOwnerHalfCrossingContributesQuarter) {
    // D2 originates 2 of 4 /24s; of its 4 traces, 2 cross F2 -> D1 (p2c).
    const auto geo = et_table(2, 2);
    const auto r = rels({p2c(F2, D1), p2c(D1, D2), p2p(F1, D2)});
    std::vector<TraceroutePath> traces{trace({F2, D1, D2}), trace({F1, F2, D1, D2}), trace({F1, D2}), trace({D1, D2})};
    EXPECT_EQ(compute_transit_fraction(traces, r, labels(), geo, cc("ET")), q(1, 4));
}

TEST(TransitFraction, SaturationAndPeering) {
    const auto geo = et_table(1, 3);
    const auto p2c_rels = rels({p2c(F1, D2), p2c(F1, D3)});
    std::vector<TraceroutePath> all{trace({F1, D2}), trace({F1, D3})};
    EXPECT_EQ(compute_transit_fraction(all, p2c_rels, labels(), geo, cc("ET")), 1);
    const auto peer_rels = rels({p2p(F1, D2), p2p(F1, D3)});
    EXPECT_EQ(compute_transit_fraction(all, peer_rels, labels(), geo, cc("ET")), 0);
    EXPECT_THROW(compute_transit_fraction(all, peer_rels, labels(), geo, cc("SY")), ComputeError);
}

TEST(TransitFractionProperty, WithinUnitInterval) {
    Gen g(12);
    const std::vector<std::uint32_t> pool{F1, F2, D1, D2, D3};
    for (int round = 0; round < 300; ++round) {
        const auto geo = et_table(static_cast<std::uint32_t>(g.between(0, 4)), static_cast<std::uint32_t>(g.between(1, 4)));
        RelationshipTable r;
        for (int i = 0; i < 8; ++i) {
            const Asn a = as(g.pick(pool)), b = as(g.pick(pool));
            if (a == b || r.find(a, b)) continue;
            r.add({a, b, g.chance(0.7) ? RelKind::ProviderToCustomer : RelKind::PeerToPeer});
        }
        std::vector<TraceroutePath> traces;
        for (auto k = g.between(0, 12); k > 0; --k) {
            TraceroutePath t{"p", pfx("10.0.0.0/24"), {}};
            for (auto h = g.between(1, 5); h > 0; --h) t.hops.push_back(as(g.pick(pool)));
            traces.push_back(t);
        }
        const Rational t = compute_transit_fraction(traces, r, labels(), geo, cc("ET"));
        EXPECT_GE(t, 0);
        EXPECT_LE(t, 1);
    }
}

TEST(Dominance, SpecExamples) {
    const Rational threshold = parse_decimal("0.48");
    EXPECT_TRUE(classify_transit_dominant(parse_decimal("0.95"), threshold));
    EXPECT_TRUE(classify_transit_dominant(parse_decimal("0.48"), threshold));
    EXPECT_FALSE(classify_transit_dominant(parse_decimal("0.01"), threshold));
}

TEST(Candidates, SpecExamples) {
    const auto n = labels();
    const auto r = rels({p2p(D1, F1), p2c(D2, D3)});
    std::vector<ingest::Membership> rows{{"ix-abroad", cc("KE"), as(D2)},
                                         {"ix-home", cc("ET"), as(D3)},
                                         {"ix-home", cc("ET"), as(D2)},
                                         {"ix-mixed", cc("ET"), as(D1)},
                                         {"ix-mixed", cc("ET"), as(F1)}};
    const MembershipIndex idx(rows);

    auto peer = classify_candidate(as(D1), cc("ET"), r, idx, n);
    EXPECT_FALSE(peer.no_foreign_peer);
    EXPECT_FALSE(peer.no_mixed_facility);
    EXPECT_FALSE(peer.candidate());

    auto abroad = classify_candidate(as(D2), cc("ET"), r, idx, n);
    EXPECT_TRUE(abroad.no_foreign_peer);
    EXPECT_FALSE(abroad.no_foreign_facility);
    EXPECT_FALSE(abroad.candidate());

    auto home = classify_candidate(as(D3), cc("ET"), r, idx, n);
    EXPECT_TRUE(home.candidate());
    EXPECT_TRUE(home.reasons.empty());
}

TEST(Candidates, FloorAndSelection) {
    const auto geo = et_table(1, 3);
    const auto n = labels();
    const auto r = rels({p2p(D2, F1)});
    const MembershipIndex idx({});
    CandidateConfig config;
    auto et = evaluate_country(cc("ET"), geo, r, idx, n, config);
    EXPECT_EQ(et.origins.size(), 2u);
    EXPECT_EQ(et.candidate_fraction, q(3, 4));

    config.origination_floor = q(1, 2);
    EXPECT_EQ(evaluate_country(cc("ET"), geo, r, idx, n, config).origins.size(), 1u);

    std::vector<CountryCandidates> cs{{cc("SY"), {}, {}, q(1, 5), false},
                                      {cc("ET"), {}, {}, q(3, 4), false},
                                      {cc("CU"), {}, {}, q(3, 4), false},
                                      {cc("YE"), {}, {}, q(1, 2), false}};
    CandidateConfig pick2;
    pick2.max_countries = 2;
    select_countries(cs, pick2);
    EXPECT_FALSE(cs[0].selected);
    EXPECT_TRUE(cs[1].selected);
    EXPECT_TRUE(cs[2].selected);
    EXPECT_FALSE(cs[3].selected);
}
