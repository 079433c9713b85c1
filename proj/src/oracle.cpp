#include "cti/oracle.hpp"

#include <algorithm>

#include "cti/analysis.hpp"

namespace cti::oracle {

namespace {

using Masses = std::map<CountryCode, std::uint64_t>;

struct World {
    std::map<Prefix, Asn> origin;
    std::set<Prefix> conflicted;
    std::map<Prefix, Masses> mass;

    std::uint64_t mass_of(const Prefix& p, CountryCode c) const {
        auto it = mass.find(p);
        if (it == mass.end()) return 0;
        auto jt = it->second.find(c);
        return jt == it->second.end() ? 0 : jt->second;
    }

    std::uint64_t total(CountryCode c) const {
        std::uint64_t sum = 0;
        for (const auto& [p, m] : mass) sum += mass_of(p, c);
        return sum;
    }

    std::uint64_t originated(Asn a, CountryCode c) const {
        std::uint64_t sum = 0;
        for (const auto& [p, o] : origin)
            if (o == a) sum += mass_of(p, c);
        return sum;
    }
};

World derive(const ingest::DatasetBundle& b) {
    World w;
    std::map<Prefix, std::set<Asn>> seen;
    for (const auto& path : b.paths) seen[path.prefix].insert(path.hops.back());
    for (const auto& [p, origins] : seen) {
        if (origins.size() == 1)
            w.origin.emplace(p, *origins.begin());
        else
            w.conflicted.insert(p);
    }

    for (const auto& [p, o] : w.origin) {
        bool located = false;
        for (const auto& row : b.geo_rows) {
            if (row.prefix != p || row.addresses == 0) continue;
            w.mass[p][row.country] += std::max<std::uint64_t>(row.addresses, 256);
            located = true;
        }
        if (located) continue;
        std::set<CountryCode> covering;
        for (const auto& d : b.delegations)
            if (d.base <= p.base() && std::uint64_t{d.base} + d.count >= std::uint64_t{p.base()} + p.size())
                covering.insert(d.country);
        if (covering.size() == 1) w.mass[p][*covering.begin()] = p.size();
    }
    return w;
}

/// Home country of an AS counting its direct customers' originated addresses.
std::optional<CountryCode> home_of(const World& w, const RelationshipTable& rels, Asn a) {
    std::set<CountryCode> countries;
    for (const auto& [p, m] : w.mass)
        for (const auto& [c, v] : m) countries.insert(c);
    std::uint64_t sum = 0;
    Masses combined;
    for (CountryCode c : countries) {
        std::uint64_t v = w.originated(a, c);
        for (Asn customer : rels.customers(a)) v += w.originated(customer, c);
        combined[c] = v;
        sum += v;
    }
    if (sum == 0) return std::nullopt;
    for (const auto& [c, v] : combined)
        if (3 * v >= 2 * sum) return c;
    return std::nullopt;
}

std::optional<std::vector<Asn>> sanitized(const std::vector<Asn>& raw, const ingest::DatasetBundle& b) {
    std::vector<Asn> h;
    for (Asn x : raw)
        if (h.empty() || h.back() != x) h.push_back(x);
    for (Asn x : h)
        if (b.reserved.contains(x)) return std::nullopt;
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j)
            if (h[i] == h[j]) return std::nullopt;
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j)
            for (std::size_t k = j + 1; k < h.size(); ++k)
                if (b.clique.count(h[i]) && b.clique.count(h[k]) && !b.clique.count(h[j])) return std::nullopt;
    return h;
}

std::optional<std::vector<Asn>> segment(std::vector<Asn> h, Asn host, const RelationshipTable& rels) {
    if (!h.empty() && h.front() == host) h.erase(h.begin());
    if (std::count(h.begin(), h.end(), host)) return std::nullopt;
    std::reverse(h.begin(), h.end());
    std::size_t k = 0;
    for (std::size_t i = 1; i < h.size(); ++i)
        if (rels.is_provider_of(h[i], h[i - 1])) k = i;
    if (k == 0) return std::nullopt;
    h.erase(h.begin() + static_cast<std::ptrdiff_t>(k) + 1, h.end());
    return h;
}

struct Seen {
    const Monitor* monitor;
    Prefix prefix;
    std::vector<Asn> segment;
};

/// Retained segments from monitors outside `country`, and those monitors.
struct Inbound {
    std::vector<const Monitor*> monitors;
    std::vector<Seen> seen;

    std::size_t observers(Asn host, const Prefix& p) const {
        std::size_t n = 0;
        for (const auto& s : seen)
            if (s.monitor->host == host && s.prefix == p) ++n;
        return n;
    }
};

Inbound inbound(const ingest::DatasetBundle& b, const World& w, CountryCode country) {
    Inbound in;
    for (const auto& [id, m] : b.monitors)
        if (m.country != country) in.monitors.push_back(&m);
    for (const auto& path : b.paths) {
        const Monitor* m = b.monitors.find(path.monitor);
        if (!m || m->country == country || w.conflicted.count(path.prefix)) continue;
        auto clean = sanitized(path.hops, b);
        if (!clean) continue;
        auto seg = segment(*clean, m->host, b.relationships);
        if (seg) in.seen.push_back({m, path.prefix, std::move(*seg)});
    }
    return in;
}

}  // namespace

std::vector<CountryCode> naive_countries(const ingest::DatasetBundle& bundle) {
    const World w = derive(bundle);
    std::set<CountryCode> out;
    for (const auto& [p, m] : w.mass)
        for (const auto& [c, v] : m)
            if (v > 0) out.insert(c);
    return {out.begin(), out.end()};
}

MetricReport naive_cti(const ingest::DatasetBundle& bundle, CountryCode country) {
    const World w = derive(bundle);
    MetricReport report{"cti", {}};
    const std::uint64_t a = w.total(country);
    if (a == 0) return report;
    const Inbound in = inbound(bundle, w, country);
    if (in.monitors.empty()) return report;

    AsnSet transits;
    for (const auto& s : in.seen)
        for (std::size_t i = 1; i < s.segment.size(); ++i) transits.insert(s.segment[i]);

    for (Asn t : transits) {
        Rational cti = 0;
        for (const Monitor* m : in.monitors)
            for (const auto& s : in.seen) {
                if (s.monitor != m) continue;
                const std::uint64_t mass = w.mass_of(s.prefix, country);
                if (mass == 0) continue;
                const Rational weight(1, static_cast<long>(in.observers(m->host, s.prefix)));
                for (std::size_t i = 1; i < s.segment.size(); ++i)
                    if (s.segment[i] == t)
                        cti += weight / BigInt(in.monitors.size()) * Rational(BigInt(mass), BigInt(a)) /
                               BigInt(i);
            }
        report.set(country, t, cti);
    }
    return report;
}

std::optional<NaiveFootprint> naive_footprint(const ingest::DatasetBundle& bundle, CountryCode country) {
    const World w = derive(bundle);
    AsnSet members;
    for (const auto& row : bundle.state_owned) {
        if (row.country != country) continue;
        auto home = home_of(w, bundle.relationships, row.asn);
        if (home && *home != country) continue;
        members.insert(row.asn);
    }
    if (members.empty()) return std::nullopt;
    const std::uint64_t a = w.total(country);
    if (a == 0) throw ComputeError("no mass");

    NaiveFootprint f{0, 0, 0};
    const Inbound in = inbound(bundle, w, country);
    for (const auto& s : in.seen) {
        const std::uint64_t mass = w.mass_of(s.prefix, country);
        if (mass == 0 || members.count(w.origin.at(s.prefix))) continue;
        std::optional<std::size_t> d;
        for (std::size_t i = 1; i < s.segment.size() && !d; ++i)
            if (members.count(s.segment[i])) d = i;
        if (!d) continue;
        f.ctin += Rational(BigInt(mass), BigInt(a) * BigInt(in.observers(s.monitor->host, s.prefix)) *
                                             BigInt(*d) * BigInt(in.monitors.size()));
    }
    for (const auto& [p, o] : w.origin)
        if (members.count(o)) f.originated += Rational(BigInt(w.mass_of(p, country)), BigInt(a));
    f.footprint = f.ctin + f.originated;
    return f;
}

Rational naive_transit_fraction(const ingest::DatasetBundle& bundle, CountryCode country) {
    const World w = derive(bundle);
    const std::uint64_t a = w.total(country);
    if (a == 0) throw ComputeError("no mass");
    std::map<Asn, std::optional<CountryCode>> homes;
    auto domestic = [&](Asn x) {
        auto it = homes.find(x);
        if (it == homes.end()) it = homes.emplace(x, home_of(w, bundle.relationships, x)).first;
        return it->second == country;
    };

    std::map<Asn, std::pair<std::size_t, std::size_t>> r;  // origin -> (all, foreign p2c)
    for (const auto& trace : bundle.traceroutes) {
        const Asn o = trace.hops.back();
        if (!domestic(o)) continue;
        ++r[o].first;
        std::optional<std::size_t> last_foreign;
        for (std::size_t i = 0; i < trace.hops.size(); ++i)
            if (!domestic(trace.hops[i])) last_foreign = i;
        if (last_foreign && bundle.relationships.is_provider_of(trace.hops[*last_foreign], trace.hops[*last_foreign + 1]))
            ++r[o].second;
    }
    Rational t = 0;
    for (const auto& [o, counts] : r)
        t += Rational(static_cast<long>(counts.second), static_cast<long>(counts.first)) *
             Rational(BigInt(w.originated(o, country)), BigInt(a));
    return t;
}

CheckResult check_files(const ingest::FileSet& files) {
    const auto bundle = ingest::load_bundle(ingest::open_from_files(files), {});
    const analysis::Analysis pipeline(bundle, analysis::Config{});
    CheckResult result;

    const auto countries = pipeline.countries();
    if (countries != naive_countries(bundle)) result.mismatches.push_back("country sets differ");

    for (CountryCode c : countries) {
        ++result.countries;
        const auto ctx = pipeline.context(c);
        const MetricReport fast = pipeline.cti(ctx);
        const MetricReport slow = naive_cti(bundle, c);
        std::set<ReportKey> keys;
        for (const auto& [k, v] : fast.entries) keys.insert(k);
        for (const auto& [k, v] : slow.entries) keys.insert(k);
        for (const auto& k : keys)
            if (fast.value(k.country, k.subject) != slow.value(k.country, k.subject))
                result.mismatches.push_back(c.str() + " cti AS" + subject_str(k.subject) + ": pipeline " +
                                            format_fraction(fast.value(k.country, k.subject)) + " naive " +
                                            format_fraction(slow.value(k.country, k.subject)));

        const auto fp = pipeline.footprint(ctx);
        const auto nfp = naive_footprint(bundle, c);
        if (fp.has_value() != nfp.has_value())
            result.mismatches.push_back(c.str() + " state conglomerate presence differs");
        else if (fp && (fp->ctin != nfp->ctin || fp->footprint != nfp->footprint))
            result.mismatches.push_back(c.str() + " ctin: pipeline " + format_fraction(fp->ctin) + " naive " +
                                        format_fraction(nfp->ctin));

        const Rational t = pipeline.transit_fraction(c).t;
        const Rational nt = naive_transit_fraction(bundle, c);
        if (t != nt)
            result.mismatches.push_back(c.str() + " T: pipeline " + format_fraction(t) + " naive " +
                                        format_fraction(nt));
    }
    return result;
}

}  // namespace cti::oracle
