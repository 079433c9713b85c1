#include <gtest/gtest.h>

#include "cti/model.hpp"
#include "cti/numeric.hpp"
#include "support.hpp"

using namespace cti;
using namespace cti::test;

TEST(Numeric, ParsesDecimalsExactly) {
    EXPECT_EQ(parse_decimal("0.48"), q(12, 25));
    EXPECT_EQ(parse_decimal("-1.5"), q(-3, 2));
    EXPECT_EQ(parse_decimal("3"), q(3));
    EXPECT_EQ(parse_decimal("1e-5"), q(1, 100000));
    EXPECT_EQ(parse_decimal(".5"), q(1, 2));
    EXPECT_EQ(parse_decimal("007.010"), q(701, 100));
    EXPECT_EQ(parse_rational("3/8"), q(3, 8));
    EXPECT_EQ(parse_rational("06/08"), q(3, 4));
    EXPECT_THROW(parse_decimal(""), std::invalid_argument);
    EXPECT_THROW(parse_decimal("1.2.3"), std::invalid_argument);
    EXPECT_THROW(parse_decimal("abc"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(Numeric, FormatsFixedWithHalfUp) {
    EXPECT_EQ(format_fixed(q(3, 8), 12), "0.375000000000");
    EXPECT_EQ(format_fixed(q(1, 3), 4), "0.3333");
    EXPECT_EQ(format_fixed(q(2, 3), 4), "0.6667");
    EXPECT_EQ(format_fixed(q(1, 2), 0), "1");
    EXPECT_EQ(format_fixed(q(-1, 8), 2), "-0.13");
    EXPECT_EQ(format_fixed(q(0), 3), "0.000");
    EXPECT_EQ(format_fraction(q(6, 16)), "3/8");
    EXPECT_EQ(format_fraction(q(0)), "0/1");
}

TEST(Numeric, FixedRoundTripWithinHalfUlp) {
    Gen g(11);
    for (int i = 0; i < 500; ++i) {
        const Rational r = g.fraction(1000);
        const Rational back = parse_decimal(format_fixed(r, 12));
        Rational diff = back - r;
        if (diff < 0) diff = -diff;
        EXPECT_LE(diff, q(1, 2) / BigInt("1000000000000"));
    }
}

TEST(Model, AsnRejectsZeroAndJunk) {
    EXPECT_THROW(Asn(0), std::invalid_argument);
    EXPECT_FALSE(Asn::parse("0"));
    EXPECT_FALSE(Asn::parse("-5"));
    EXPECT_FALSE(Asn::parse("+5"));
    EXPECT_FALSE(Asn::parse("4294967296"));
    EXPECT_FALSE(Asn::parse("12a"));
    EXPECT_EQ(Asn::parse("4294967295")->value(), 4294967295u);
}

TEST(Model, ReservedRanges) {
    ReservedAsns r;
    r.add(64512, 65534);
    r.add(23456, 23456);
    EXPECT_TRUE(r.contains(as(64512)));
    EXPECT_TRUE(r.contains(as(65534)));
    EXPECT_TRUE(r.contains(as(23456)));
    EXPECT_FALSE(r.contains(as(65535)));
    EXPECT_FALSE(r.contains(as(3356)));
}

TEST(Model, PrefixCanonicalization) {
    EXPECT_EQ(pfx("1.2.3.7/24"), pfx("1.2.3.0/24"));
    EXPECT_EQ(pfx("10.1.255.255/16").str(), "10.1.0.0/16");
    EXPECT_EQ(pfx("0.0.0.0/0").size(), std::uint64_t{1} << 32);
    EXPECT_THROW(pfx("10.0.0.0/25"), std::invalid_argument);
    EXPECT_THROW(pfx("10.0.0/24"), std::invalid_argument);
    EXPECT_THROW(pfx("256.0.0.0/8"), std::invalid_argument);
}

TEST(Model, PrefixCanonicalizationProperty) {
    Gen g(5);
    for (int i = 0; i < 1000; ++i) {
        const Prefix p = g.prefix();
        EXPECT_EQ(p.base() % p.size(), 0u);
        EXPECT_EQ(Prefix::parse(p.str()), p);
        const std::uint32_t inside = p.base() + static_cast<std::uint32_t>(g.below(p.size()));
        EXPECT_EQ(Prefix(inside, p.length()), p);
    }
}

TEST(Model, CountryCodeFormat) {
    EXPECT_EQ(cc("CU").str(), "CU");
    EXPECT_FALSE(CountryCode::parse("cu"));
    EXPECT_FALSE(CountryCode::parse("C"));
    EXPECT_FALSE(CountryCode::parse("CUB"));
    EXPECT_FALSE(CountryCode::parse("C1"));
}

TEST(Model, RelationshipSymmetry) {
    auto t = rels({p2c(3356, 64500), p2p(100, 200)});
    EXPECT_EQ(t.link(as(3356), as(64500)), Link::ProviderOf);
    EXPECT_EQ(t.link(as(64500), as(3356)), Link::CustomerOf);
    EXPECT_EQ(t.link(as(100), as(200)), Link::PeerOf);
    EXPECT_EQ(t.link(as(200), as(100)), Link::PeerOf);
    EXPECT_EQ(t.find(as(64500), as(3356)), t.find(as(3356), as(64500)));
    EXPECT_FALSE(t.link(as(100), as(3356)));
    EXPECT_EQ(t.customers(as(3356)), hops({64500}));
    EXPECT_EQ(t.providers(as(64500)), hops({3356}));
}

TEST(Model, RelationshipContradictions) {
    RelationshipTable t;
    t.add(p2p(100, 200));
    t.add(p2p(200, 100));
    EXPECT_EQ(t.size(), 1u);
    EXPECT_THROW(t.add(p2c(200, 100)), ParseError);
    EXPECT_THROW(t.add(p2c(7, 7)), ParseError);
}

TEST(Model, RelationshipLookupProperty) {
    Gen g(17);
    RelationshipTable t;
    std::vector<Relationship> added;
    for (int i = 0; i < 300; ++i) {
        const Asn a = g.asn(40), b = g.asn(40);
        if (a == b || t.find(a, b)) continue;
        const Relationship r{a, b, g.chance(0.5) ? RelKind::ProviderToCustomer : RelKind::PeerToPeer};
        t.add(r);
        added.push_back(r);
    }
    for (const auto& r : added) {
        if (r.kind == RelKind::PeerToPeer) {
            EXPECT_EQ(t.link(r.a, r.b), Link::PeerOf);
            EXPECT_EQ(t.link(r.b, r.a), Link::PeerOf);
        } else {
            EXPECT_TRUE(t.is_provider_of(r.a, r.b));
            EXPECT_EQ(t.link(r.b, r.a), Link::CustomerOf);
        }
    }
    EXPECT_EQ(t.all().size(), added.size());
}

TEST(Model, MonitorInventory) {
    MonitorInventory inv;
    inv.add({"m1", as(1), cc("US")});
    inv.add({"m2", as(1), cc("CU")});
    inv.add({"m3", as(2), cc("US")});
    EXPECT_THROW(inv.add({"m1", as(5), cc("DE")}), ParseError);
    EXPECT_EQ(inv.hosts(), (AsnSet{as(1), as(2)}));
    auto us = inv.filter([](const Monitor& m) { return m.country == CountryCode("US"); });
    EXPECT_EQ(us.size(), 2u);
    EXPECT_FALSE(us.contains("m2"));
}

TEST(Model, MetricReportOrderingAndDefaults) {
    MetricReport r{"cti", {}};
    r.set(cc("US"), as(5), q(1, 2));
    r.set(cc("CU"), as(9), q(1, 4));
    r.set(cc("CU"), as(3), q(1, 8));
    std::vector<std::string> order;
    for (const auto& [k, v] : r.entries) order.push_back(k.country.str() + subject_str(k.subject));
    EXPECT_EQ(order, (std::vector<std::string>{"CU3", "CU9", "US5"}));
    EXPECT_EQ(r.value(cc("DE"), as(1)), 0);
    MetricReport other{"cti", {}};
    other.set(cc("CU"), as(3), q(1));
    EXPECT_THROW(r.merge(other), std::logic_error);
}
