// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cti/analysis.hpp"
#include "cti/clh.hpp"
#include "cti/oracle.hpp"
#include "cti/pathprep.hpp"
#include "cti/report.hpp"
#include "cti/synth.hpp"

using namespace cti;

namespace {

constexpr std::uint64_t kSeeds = 500;

/// Collects failures for one criterion.
struct Check {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

analysis::Analysis run(const ingest::FileSet& files, analysis::Config config = {}) {
    return analysis::Analysis(ingest::load_bundle(ingest::open_from_files(files), {}), config);
}

ingest::FileSet seed_files(std::uint64_t seed) {
    return synth::render(synth::build_corpus(synth::generate_topology(seed, synth::params_for_seed(seed))));
}

const CountryCode kCu{"CU"};

Check toy_exactness(double& elapsed) {
    Check c;
    const auto start = Clock::now();
    const auto a = run(synth::render(synth::build_corpus(synth::toy_fig1())));
    const auto report = a.filtered_cti(a.context(kCu)).report;
    elapsed = seconds_since(start);

    const std::vector<std::pair<std::uint32_t, Rational>> expected{
        {synth::Toy::kRight, Rational(1, 2)},
        {synth::Toy::kLeft, Rational(3, 8)},
        {synth::Toy::kCenter, Rational(1, 8)},
        {synth::Toy::kTop, Rational(0)},
    };
    for (const auto& [asn, value] : expected) {
        c.expect(report.entries.count({kCu, Asn(asn)}) == 1, "AS" + std::to_string(asn) + " missing from report");
        c.expect(report.value(kCu, Asn(asn)) == value,
                 "AS" + std::to_string(asn) + " = " + format_fraction(report.value(kCu, Asn(asn))));
    }

    // Double output from the CSV surface.
    std::ostringstream csv;
    report::write_csv(csv, report);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        const auto first = line.find(','), second = line.rfind(',');
        const auto asn = static_cast<std::uint32_t>(std::stoul(line.substr(first + 1, second - first - 1)));
        const double value = std::stod(line.substr(second + 1));
        for (const auto& [want_asn, want] : expected)
            if (want_asn == asn) c.expect(std::abs(value - to_double(want)) <= 1e-12, "CSV value for AS" + line);
    }
    c.expect(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
    return c;
}

Check indirect_provider(double& elapsed) {
    Check c;
    const auto start = Clock::now();
    const auto a = run(synth::render(synth::build_corpus(synth::toy_fig1(true))));
    const auto report = a.filtered_cti(a.context(kCu)).report;
    elapsed = seconds_since(start);
    c.expect(report.value(kCu, Asn(synth::Toy::kTop)) == Rational(1, 2),
             "CTI(top) = " + format_fraction(report.value(kCu, Asn(synth::Toy::kTop))));
    c.expect(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
    return c;
}

Check oracle_equivalence(double& elapsed) {
    Check c;
    const auto start = Clock::now();
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= kSeeds; ++s) seeds.push_back(s);
    const auto results = analysis::parallel_map(seeds, 1, [](std::uint64_t s) {
        return oracle::check_files(seed_files(s));
    });
    elapsed = seconds_since(start);
    std::size_t countries = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        countries += results[i].countries;
        for (const auto& m : results[i].mismatches) c.expect(false, "seed " + std::to_string(seeds[i]) + ": " + m);
    }
    c.expect(countries > 0, "no countries evaluated");
    c.expect(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s");
    return c;
}

// AS 11 originates half of ET; two of its four traceroutes enter ET over a
// foreign provider (AS 1), the others over a peer link or from inside.
Check transit_contribution() {
    Check c;
    const ingest::FileSet files{
        {"monitors.csv", "m2,2,DE\n"},
        {"relationships.txt", "2|1|-1\n1|11|-1\n1|12|0\n"},
        {"paths.txt",
         "m2|10.0.0.0/24|2 1 11\nm2|10.0.1.0/24|2 1 11\nm2|10.0.2.0/24|2 1 12\nm2|10.0.3.0/24|2 1 12\n"
         "m2|10.1.0.0/22|2 1\n"},
        {"geo.csv",
         "10.0.0.0/24,ET,256\n10.0.1.0/24,ET,256\n10.0.2.0/24,ET,256\n10.0.3.0/24,ET,256\n10.1.0.0/22,US,1024\n"},
        {"traceroutes.txt",
         "p1|10.0.0.0/24|1 11\np2|10.0.1.0/24|1 11\np3|10.0.0.0/24|1 12 11\np4|10.0.1.0/24|11\n"},
    };
    const auto a = run(files);
    const CountryCode et{"ET"};
    c.expect(a.transit_nationality().home(Asn(1)) == CountryCode("US"), "AS1 not foreign to ET");
    c.expect(a.geo().originated(Asn(11), et) * 2 == a.geo().total(et), "AS11 does not own half of ET");
    const Rational t = a.transit_fraction(et).t;
    c.expect(t == Rational(1, 4), "T(ET) = " + format_fraction(t));
    const Rational naive = oracle::naive_transit_fraction(a.bundle(), et);
    c.expect(naive == Rational(1, 4), "naive T(ET) = " + format_fraction(naive));
    return c;
}

Check footprint_consistency() {
    Check c;
    auto corpus = synth::build_corpus(synth::toy_fig1());
    corpus.topo.state_owned = {{Asn(synth::Toy::kRight), kCu}, {Asn(301), kCu}};
    const auto a = run(synth::render(corpus));
    const auto fp = a.footprint(a.context(kCu));
    const Rational q(3, 8), r(1, 2);
    c.expect(fp.has_value(), "no state conglomerate");
    if (fp) {
        c.expect(fp->originated == q, "originated = " + format_fraction(fp->originated));
        c.expect(fp->ctin == r, "CTIn = " + format_fraction(fp->ctin));
        c.expect(fp->footprint == q + r, "F = " + format_fraction(fp->footprint));
    }

    std::size_t rows = 0;
    for (std::uint64_t s = 1; s <= kSeeds; ++s) {
        const auto inst = run(seed_files(s));
        for (CountryCode country : inst.countries()) {
            const auto f = inst.footprint(inst.context(country));
            if (!f) continue;
            ++rows;
            c.expect(f->footprint >= 0 && f->footprint <= 1,
                     "seed " + std::to_string(s) + " " + country.str() + " F = " + format_fraction(f->footprint));
        }
    }
    c.expect(rows > 0, "no footprint rows in the corpus");
    return c;
}

Check filter_properties() {
    Check c;
    std::size_t cloned = 0;
    for (std::uint64_t s = 1; s <= kSeeds; ++s) {
        const auto a = run(seed_files(s));
        const std::string tag = "seed " + std::to_string(s);
        for (CountryCode country : a.countries()) {
            const auto ctx = a.context(country);

            // (a) fewer than 10 hosts: the filter changes nothing.
            c.expect(ctx.active.hosts().size() < 10, tag + " has 10 or more hosts");
            c.expect(a.filtered_cti(ctx).report.entries == a.cti(ctx).entries, tag + " filter changed CTI");

            // (c) per-(host, prefix) weights sum to 1.
            std::map<std::pair<Asn, Prefix>, Rational> sums;
            std::set<std::pair<std::string, Prefix>> seen;
            for (const auto& obs : a.observations()) {
                const Monitor* m = ctx.active.find(obs.monitor);
                if (!m || !seen.insert({obs.monitor, obs.prefix}).second) continue;
                sums[{m->host, obs.prefix}] += ctx.weights.weight(*m, obs.prefix);
            }
            for (const auto& [key, sum] : sums) c.expect(sum == 1, tag + " weights sum to " + format_fraction(sum));

            // (b) ten hosts replaying one monitor's observations: equal values, same CTI.
            std::string source;
            for (const auto& obs : a.observations())
                if (ctx.active.contains(obs.monitor) && a.geo().mass(obs.prefix, country) > 0) {
                    source = obs.monitor;
                    break;
                }
            if (source.empty()) continue;
            MonitorInventory hosts;
            std::vector<Observation> replay;
            for (std::uint32_t h = 0; h < 10; ++h) {
                const std::string id = "clone" + std::to_string(h);
                hosts.add({id, Asn(100000 + h), CountryCode("ZZ")});
                for (const auto& obs : a.observations())
                    if (obs.monitor == source) replay.push_back({id, obs.prefix, obs.transit, obs.distance});
            }
            const auto weights = core::WeightTable::build(replay, hosts);
            const auto filtered = outlier::filtered_cti(replay, weights, a.geo(), hosts, country, {});
            const auto plain = core::compute_cti(replay, weights, a.geo(), hosts, country);
            c.expect(filtered.report.entries == plain.entries, tag + " equal hosts changed CTI");
            c.expect(!filtered.audit.empty(), tag + " filter not applied to 10 hosts");
            ++cloned;
        }
    }
    c.expect(cloned > 0, "no instance exercised the 10-host case");
    return c;
}

Check stability_tooling() {
    Check c;
    for (std::uint64_t s = 1; s <= kSeeds; ++s) {
        const auto a = run(seed_files(s));
        for (CountryCode country : a.countries()) {
            const auto r = a.cti(a.context(country));
            if (r.entries.empty()) continue;
            const auto d = clh::compare_reports(r, r);
            c.expect(d.p25 == 0 && d.mean == 0 && d.median == 0 && d.p75 == 0 && d.n == r.entries.size(),
                     "seed " + std::to_string(s) + " self-compare not zero");
        }
    }
    MetricReport x{"cti", {}}, y{"cti", {}};
    x.set(kCu, Asn(1), parse_decimal("0.2"));
    x.set(kCu, Asn(2), parse_decimal("0.5"));
    y.set(kCu, Asn(1), parse_decimal("0.1"));
    y.set(kCu, Asn(2), parse_decimal("0.9"));
    // |d| = 0.1, 0.4; nearest rank: p25 and median at rank 1, p75 at rank 2.
    const clh::DiffStats want{Rational(1, 10), Rational(1, 4), Rational(1, 10), Rational(2, 5), 2};
    c.expect(clh::compare_reports(x, y) == want, "two-entry stats differ");
    c.expect(clh::compare_reports(y, x) == want, "two-entry stats not symmetric");
    return c;
}

Check path_hygiene() {
    Check c;
    using pathprep::Category;
    std::map<synth::Anomaly, std::size_t> injected;
    for (std::uint64_t s = 1; s <= 200; ++s) {
        auto params = synth::params_for_seed(s);
        params.multi_origin = false;
        auto corpus = synth::build_corpus(synth::generate_topology(s, params));
        const auto manifest = synth::inject_anomalies(corpus, s + 1, {});
        const auto a = run(synth::render(corpus));

        std::set<std::tuple<std::string, Prefix, Category>> expected, logged;
        std::set<std::pair<std::string, Prefix>> prepended;
        for (const auto& inj : manifest) {
            ++injected[inj.kind];
            switch (inj.kind) {
                case synth::Anomaly::Prepend: prepended.insert({inj.monitor, inj.prefix}); break;
                case synth::Anomaly::Loop: expected.insert({inj.monitor, inj.prefix, Category::Loop}); break;
                case synth::Anomaly::Unallocated:
                    expected.insert({inj.monitor, inj.prefix, Category::Unallocated});
                    break;
                case synth::Anomaly::Poisoned: expected.insert({inj.monitor, inj.prefix, Category::Poisoned}); break;
            }
        }
        for (const auto& r : a.prepared().rejections) {
            if (r.category == Category::Loop || r.category == Category::Unallocated || r.category == Category::Poisoned)
                logged.insert({r.monitor, r.prefix, r.category});
            c.expect(!(prepended.count({r.monitor, r.prefix}) &&
                       (r.category == Category::Loop || r.category == Category::Poisoned ||
                        r.category == Category::Unallocated)),
                     "seed " + std::to_string(s) + " prepended path rejected");
        }
        c.expect(logged == expected, "seed " + std::to_string(s) + " rejection log differs from manifest");
    }
    for (auto kind : {synth::Anomaly::Prepend, synth::Anomaly::Loop, synth::Anomaly::Unallocated,
                      synth::Anomaly::Poisoned})
        c.expect(injected[kind] > 0, "no " + std::string(synth::to_string(kind)) + " injected");
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        std::function<Check(double&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "toy example CTI exact", toy_exactness},
        {2, "monitor above top AS gives CTI(top) = 1/2", indirect_provider},
        {3, "500 synthetic instances equal the naive oracle", oracle_equivalence},
        {4, "T(C) contribution of 0.25", [](double&) { return transit_contribution(); }},
        {5, "footprint F = q + r and F in [0,1]", [](double&) { return footprint_consistency(); }},
        {6, "outlier filter and weight properties", [](double&) { return filter_properties(); }},
        {7, "compare_reports exact statistics", [](double&) { return stability_tooling(); }},
        {8, "rejection log matches injection manifest", [](double&) { return path_hygiene(); }},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        double timed = -1;
        const auto start = Clock::now();
        Check result;
        try {
            result = criterion.run(timed);
        } catch (const std::exception& e) {
            result.failures.push_back(std::string("exception: ") + e.what());
        }
        const double wall = timed >= 0 ? timed : seconds_since(start);
        const bool ok = result.failures.empty();
        if (!ok) ++failed;
        std::printf("%s %d %s (%.3f s)\n", ok ? "PASS" : "FAIL", criterion.id, criterion.name.c_str(), wall);
        for (std::size_t i = 0; i < result.failures.size() && i < 10; ++i)
            std::printf("    %s\n", result.failures[i].c_str());
        if (result.failures.size() > 10) std::printf("    ... %zu more\n", result.failures.size() - 10);
    }
    return failed == 0 ? 0 : 1;
}
