#include <gtest/gtest.h>

#include "cti/pathprep.hpp"
#include "support.hpp"

using namespace cti;
using namespace cti::pathprep;
using namespace cti::test;

namespace {

const Monitor kMon{"m", Asn(900), CountryCode("US")};

std::optional<Category> category_of(const std::variant<PathRecord, PathRejection>& v) {
    if (auto* r = std::get_if<PathRejection>(&v)) return r->category;
    return std::nullopt;
}

}  // namespace

TEST(Sanitize, SpecExamples) {
    auto ok = sanitize(path("m", "10.0.0.0/24", {100, 100, 200, 300}), {}, {});
    ASSERT_TRUE(std::holds_alternative<PathRecord>(ok));
    EXPECT_EQ(std::get<PathRecord>(ok).hops, hops({100, 200, 300}));

    EXPECT_EQ(category_of(sanitize(path("m", "10.0.0.0/24", {100, 200, 100}), {}, {})), Category::Loop);

    const AsnSet clique{as(10), as(20)};
    EXPECT_EQ(category_of(sanitize(path("m", "10.0.0.0/24", {10, 555, 20, 300}), clique, {})), Category::Poisoned);
}

TEST(Sanitize, OrderAndEdgeCases) {
    ReservedAsns reserved;
    reserved.add(64512, 65534);
    // Reserved wins over loop.
    EXPECT_EQ(category_of(sanitize(path("m", "10.0.0.0/24", {1, 64512, 1}), {}, reserved)), Category::Unallocated);
    // Clique ASes adjacent, or one clique AS only: not poisoned.
    const AsnSet clique{as(10), as(20), as(30)};
    EXPECT_FALSE(category_of(sanitize(path("m", "10.0.0.0/24", {5, 10, 20, 30, 7}), clique, {})));
    EXPECT_FALSE(category_of(sanitize(path("m", "10.0.0.0/24", {5, 10, 7, 8}), clique, {})));
    EXPECT_EQ(category_of(sanitize(path("m", "10.0.0.0/24", {10, 20, 4, 30}), clique, {})), Category::Poisoned);
    // Prepending of a clique AS is not poisoning.
    EXPECT_FALSE(category_of(sanitize(path("m", "10.0.0.0/24", {10, 10, 20, 7}), clique, {})));
}

TEST(SanitizeProperty, IdempotentAndLoopFree) {
    Gen g(3);
    const AsnSet clique{as(1), as(2), as(3)};
    ReservedAsns reserved;
    reserved.add(40, 45);
    int accepted = 0;
    for (int i = 0; i < 3000; ++i) {
        PathRecord p{"m", pfx("10.0.0.0/24"), {}};
        for (auto n = g.between(1, 7); n > 0; --n) {
            p.hops.push_back(g.asn(50));
            if (g.chance(0.2)) p.hops.push_back(p.hops.back());
        }
        auto once = sanitize(p, clique, reserved);
        if (!std::holds_alternative<PathRecord>(once)) continue;
        ++accepted;
        const auto& clean = std::get<PathRecord>(once);
        auto twice = sanitize(clean, clique, reserved);
        ASSERT_TRUE(std::holds_alternative<PathRecord>(twice));
        EXPECT_EQ(std::get<PathRecord>(twice), clean);
        EXPECT_EQ(AsnSet(clean.hops.begin(), clean.hops.end()).size(), clean.hops.size());
        EXPECT_EQ(clean.origin(), p.origin());
    }
    EXPECT_GT(accepted, 100);
}

TEST(InboundEligibility, SpecExamples) {
    geo::GeoTable t;
    t.set_origins({{pfx("10.0.0.0/24"), as(200)}, {pfx("10.0.1.0/24"), as(201)}});
    t.add_mass(pfx("10.0.0.0/24"), cc("CU"), 256);
    t.add_mass(pfx("10.0.1.0/24"), cc("US"), 256);
    const auto p = path("m", "10.0.0.0/24", {900, 200});
    EXPECT_EQ(inbound_eligibility(p, kMon, cc("CU"), t), Eligibility::Keep);
    EXPECT_EQ(inbound_eligibility(p, Monitor{"c", as(9), cc("CU")}, cc("CU"), t), Eligibility::Drop);
    EXPECT_EQ(inbound_eligibility(path("m", "10.0.1.0/24", {900, 201}), kMon, cc("CU"), t),
              Eligibility::NotApplicable);
}

TEST(TruncateToPeak, SpecExamples) {
    auto r1 = truncate_to_peak(path("m", "10.0.0.0/24", {900, 300, 200}), rels({p2c(300, 200)}), kMon);
    ASSERT_TRUE(std::holds_alternative<RetainedPath>(r1));
    EXPECT_EQ(std::get<RetainedPath>(r1).segment, hops({200, 300}));

    auto r2 = truncate_to_peak(path("m", "10.0.0.0/24", {900, 400, 300, 200}), rels({p2c(300, 200), p2p(400, 300)}),
                               kMon);
    ASSERT_TRUE(std::holds_alternative<RetainedPath>(r2));
    EXPECT_EQ(std::get<RetainedPath>(r2).segment, hops({200, 300}));

    auto r3 = truncate_to_peak(path("m", "10.0.0.0/24", {900, 400, 200}), rels({p2p(400, 200)}), kMon);
    ASSERT_TRUE(std::holds_alternative<PathRejection>(r3));
    EXPECT_EQ(std::get<PathRejection>(r3).category, Category::NoPeak);
}

TEST(TruncateToPeak, KeepsUnknownLinksBelowPeakAndHostHandling) {
    // 200 -> 250 (no relationship) -> 300 provider of 250.
    auto r = truncate_to_peak(path("m", "10.0.0.0/24", {900, 300, 250, 200}), rels({p2c(300, 250)}), kMon);
    EXPECT_EQ(std::get<RetainedPath>(r).segment, hops({200, 250, 300}));
    // Host not first: rejected.
    auto h = truncate_to_peak(path("m", "10.0.0.0/24", {300, 900, 200}), rels({p2c(900, 200)}), kMon);
    EXPECT_EQ(std::get<PathRejection>(h).category, Category::HostInPath);
    // Host is the direct provider of the origin: nothing left above.
    auto d = truncate_to_peak(path("m", "10.0.0.0/24", {900, 200}), rels({p2c(900, 200)}), kMon);
    EXPECT_EQ(std::get<PathRejection>(d).category, Category::NoPeak);
}

// Random monitor-first paths over a random relationship table. Every retained
// segment starts at the origin, ends on a p2c link, excludes the host, and no
// p2c-toward-origin link exists above it.
TEST(TruncateProperty, PeakCorrectness) {
    Gen g(8);
    int retained = 0;
    for (int round = 0; round < 300; ++round) {
        RelationshipTable t;
        for (int i = 0; i < 60; ++i) {
            const Asn a = g.asn(20), b = g.asn(20);
            if (a == b || t.find(a, b)) continue;
            t.add({a, b, g.chance(0.7) ? RelKind::ProviderToCustomer : RelKind::PeerToPeer});
        }
        const Monitor mon{"m", g.asn(20), cc("US")};
        std::vector<Asn> pool;
        for (std::uint32_t v = 1; v <= 20; ++v)
            if (Asn(v) != mon.host) pool.emplace_back(v);
        std::shuffle(pool.begin(), pool.end(), g.engine());
        PathRecord p{"m", pfx("10.0.0.0/24"), {mon.host}};
        p.hops.insert(p.hops.end(), pool.begin(), pool.begin() + static_cast<long>(g.between(1, 6)));
        auto out = truncate_to_peak(p, t, mon);
        if (!std::holds_alternative<RetainedPath>(out)) continue;
        ++retained;
        const auto& seg = std::get<RetainedPath>(out).segment;
        ASSERT_GE(seg.size(), 2u);
        EXPECT_EQ(seg.front(), p.origin());
        EXPECT_TRUE(t.is_provider_of(seg[seg.size() - 1], seg[seg.size() - 2]));
        EXPECT_EQ(std::count(seg.begin(), seg.end(), mon.host), 0);
        std::vector<Asn> reversed(p.hops.rbegin(), p.hops.rend() - 1);
        for (std::size_t k = seg.size(); k < reversed.size(); ++k)
            EXPECT_FALSE(t.is_provider_of(reversed[k], reversed[k - 1]));
    }
    EXPECT_GT(retained, 30);
}

TEST(PreparePaths, CleanP2cCorpusHasNoRejections) {
    // Chain 1 > 2 > 3 > 4, monitors in 1 and 2.
    auto t = rels({p2c(1, 2), p2c(2, 3), p2c(3, 4)});
    MonitorInventory inv;
    inv.add({"a", as(1), cc("US")});
    inv.add({"b", as(2), cc("US")});
    std::vector<PathRecord> paths{path("a", "10.0.0.0/24", {1, 2, 3, 4}), path("a", "10.0.1.0/24", {1, 2, 3}),
                                  path("b", "10.0.0.0/24", {2, 3, 4})};
    auto prep = prepare_paths(paths, inv, t, {}, {});
    EXPECT_TRUE(prep.rejections.empty());
    EXPECT_EQ(prep.retained.size(), 3u);
    EXPECT_EQ(prep.retained[0].segment, hops({4, 3, 2}));
}

TEST(PreparePaths, MultiOriginExcludedAndSorted) {
    auto t = rels({p2c(1, 2), p2c(1, 3)});
    MonitorInventory inv;
    inv.add({"z", as(9), cc("US")});
    inv.add({"a", as(8), cc("US")});
    std::vector<PathRecord> paths{path("z", "10.0.0.0/24", {9, 1, 2}), path("a", "10.0.0.0/24", {8, 1, 2}),
                                  path("a", "10.0.1.0/24", {8, 1, 3})};
    auto prep = prepare_paths(paths, inv, t, {}, {}, {pfx("10.0.1.0/24")});
    ASSERT_EQ(prep.rejections.size(), 1u);
    EXPECT_EQ(prep.rejections[0].category, Category::MultiOrigin);
    ASSERT_EQ(prep.retained.size(), 2u);
    EXPECT_EQ(prep.retained[0].monitor, "a");
    EXPECT_EQ(prep.retained[1].monitor, "z");
}
