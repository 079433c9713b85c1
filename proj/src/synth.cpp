#include "cti/synth.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace cti::synth {

namespace {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }

    template <class T>
    const T& pick(const std::vector<T>& items) {
        return items[below(items.size())];
    }

  private:
    std::mt19937_64 engine_;
};

constexpr std::uint32_t kFirstAddress = 0x0A000000;  // 10.0.0.0
constexpr std::uint32_t kPoisonBase = 63000;

std::vector<std::pair<std::uint32_t, std::uint32_t>> standard_reserved() {
    return {{23456, 23456}, {64496, 64511}, {64512, 65534}, {65535, 65535}, {4200000000u, 4294967295u}};
}

struct Route {
    int rank;  // 0 customer, 1 peer, 2 provider
    std::vector<Asn> path;
};

using RouteTable = std::map<Asn, Route>;

RouteTable route_table(const RelationshipTable& truth, std::span<const Asn> ases, Asn origin) {
    RouteTable routes;
    routes.emplace(origin, Route{0, {origin}});

    auto extend = [&](Asn at, Asn next_hop, int rank) {
        std::vector<Asn> path{at};
        const auto& tail = routes.at(next_hop).path;
        path.insert(path.end(), tail.begin(), tail.end());
        routes.emplace(at, Route{rank, std::move(path)});
    };

    // Customer routes climb the provider DAG one level at a time; within a
    // level the lowest next hop wins.
    std::vector<Asn> frontier{origin};
    while (!frontier.empty()) {
        std::map<Asn, Asn> reached;
        for (Asn x : frontier)
            for (Asn p : truth.providers(x)) {
                if (routes.count(p)) continue;
                auto [it, inserted] = reached.emplace(p, x);
                if (!inserted) it->second = std::min(it->second, x);
            }
        frontier.clear();
        for (const auto& [p, x] : reached) {
            extend(p, x, 0);
            frontier.push_back(p);
        }
    }

    // Peer routes: one p2p hop onto a customer route.
    std::map<Asn, Asn> via_peer;
    for (Asn a : ases) {
        if (routes.count(a)) continue;
        std::optional<std::pair<std::size_t, Asn>> best;
        for (Asn q : truth.peers(a)) {
            auto it = routes.find(q);
            if (it == routes.end() || it->second.rank != 0) continue;
            const std::pair<std::size_t, Asn> cand{it->second.path.size(), q};
            if (!best || cand < *best) best = cand;
        }
        if (best) via_peer.emplace(a, best->second);
    }
    for (const auto& [a, q] : via_peer) extend(a, q, 1);

    // Provider routes: shortest first, by path length buckets.
    std::map<std::size_t, std::set<Asn>> buckets;
    for (const auto& [a, r] : routes) buckets[r.path.size()].insert(a);
    while (!buckets.empty()) {
        auto node = buckets.extract(buckets.begin());
        std::map<Asn, Asn> reached;
        for (Asn q : node.mapped())
            for (Asn c : truth.customers(q)) {
                if (routes.count(c)) continue;
                auto [it, inserted] = reached.emplace(c, q);
                if (!inserted) it->second = std::min(it->second, q);
            }
        for (const auto& [c, q] : reached) {
            extend(c, q, 2);
            buckets[node.key() + 1].insert(c);
        }
    }
    return routes;
}

RelationshipTable truth_table(const Topology& topo) {
    RelationshipTable truth;
    for (const auto& rel : topo.edges) truth.add(rel);
    return truth;
}

/// Unique prefixes in allocation order with all their origins.
std::vector<std::pair<Prefix, std::vector<Asn>>> prefixes_of(const Topology& topo) {
    std::vector<std::pair<Prefix, std::vector<Asn>>> out;
    for (const auto& a : topo.announcements) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == a.prefix; });
        if (it == out.end())
            out.push_back({a.prefix, {a.origin}});
        else
            it->second.push_back(a.origin);
    }
    return out;
}

std::map<Asn, RouteTable> tables_for(const Topology& topo, const RelationshipTable& truth) {
    const auto ases = topo.all_ases();
    std::map<Asn, RouteTable> tables;
    for (const auto& a : topo.announcements)
        if (!tables.count(a.origin)) tables.emplace(a.origin, route_table(truth, ases, a.origin));
    return tables;
}

/// The route `at` prefers among several announcements of one prefix.
const Route* preferred(const std::map<Asn, RouteTable>& tables, const std::vector<Asn>& origins, Asn at) {
    const Route* best = nullptr;
    auto key = [](const Route& r) {
        return std::make_tuple(r.rank, r.path.size(), r.path.size() > 1 ? r.path[1] : r.path[0], r.path.back());
    };
    for (Asn origin : origins) {
        const auto& table = tables.at(origin);
        auto it = table.find(at);
        if (it == table.end()) continue;
        if (!best || key(it->second) < key(*best)) best = &it->second;
    }
    return best;
}

}  // namespace

std::vector<Asn> Topology::all_ases() const {
    std::vector<Asn> out(clique);
    out.insert(out.end(), mid.begin(), mid.end());
    out.insert(out.end(), stubs.begin(), stubs.end());
    return out;
}

std::vector<Relationship> Topology::published() const {
    std::vector<Relationship> out;
    for (const auto& rel : edges)
        if (!hidden.count({rel.a, rel.b})) out.push_back(rel);
    return out;
}

Params params_for_seed(std::uint64_t seed) {
    Rng rng(seed ^ 0x5deece66dULL);
    Params p;
    p.clique = rng.between(2, 4);
    p.mid = rng.between(2, 10);
    p.stubs = rng.between(3, std::min<std::uint64_t>(20, 40 - p.clique - p.mid));
    p.monitors = rng.between(1, 6);
    p.probes = rng.between(0, 5);
    p.max_prefixes_per_origin = rng.between(1, 3);
    static const std::vector<std::string> pool{"CU", "US", "DE", "BR", "ET", "SY"};
    p.countries.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(rng.between(2, 4)));
    return p;
}

Topology generate_topology(std::uint64_t seed, const Params& params) {
    if (params.clique == 0 || params.mid == 0 || params.stubs == 0)
        throw std::invalid_argument("every tier needs at least one AS");
    if (params.clique + params.mid + params.stubs > 40) throw std::invalid_argument("at most 40 ASes");
    if (params.monitors == 0 || params.monitors > 6) throw std::invalid_argument("between 1 and 6 monitors");
    if (params.countries.empty()) throw std::invalid_argument("no countries");
    if (params.max_prefixes == 0 || params.max_prefixes > 64) throw std::invalid_argument("between 1 and 64 prefixes");
    std::vector<CountryCode> countries;
    for (const auto& c : params.countries) countries.emplace_back(c);

    Rng rng(seed);
    Topology t;
    t.seed = seed;
    t.truncation_rate = params.truncation_rate;
    t.reserved = standard_reserved();

    std::set<std::uint32_t> used;
    auto fresh = [&] {
        while (true) {
            const auto v = static_cast<std::uint32_t>(rng.between(1, 59999));
            if (v == 23456 || !used.insert(v).second) continue;
            return Asn(v);
        }
    };
    for (std::size_t i = 0; i < params.clique; ++i) t.clique.push_back(fresh());
    for (std::size_t i = 0; i < params.mid; ++i) t.mid.push_back(fresh());
    for (std::size_t i = 0; i < params.stubs; ++i) t.stubs.push_back(fresh());
    const auto ases = t.all_ases();

    std::map<Asn, CountryCode> home;
    for (Asn a : ases) home.emplace(a, rng.pick(countries));

    RelationshipTable truth;
    auto link = [&](Asn a, Asn b, RelKind kind) {
        if (a == b || truth.find(a, b)) return;
        truth.add(Relationship{a, b, kind});
        t.edges.push_back(Relationship{a, b, kind});
    };

    for (std::size_t i = 0; i < t.clique.size(); ++i)
        for (std::size_t j = i + 1; j < t.clique.size(); ++j) link(t.clique[i], t.clique[j], RelKind::PeerToPeer);

    for (std::size_t i = 0; i < t.mid.size(); ++i) {
        std::vector<Asn> upper(t.clique);
        upper.insert(upper.end(), t.mid.begin(), t.mid.begin() + static_cast<std::ptrdiff_t>(i));
        const auto providers = rng.between(1, 2);
        for (std::size_t k = 0; k < providers; ++k) link(rng.pick(upper), t.mid[i], RelKind::ProviderToCustomer);
    }
    for (std::size_t j = 0; j < t.stubs.size(); ++j) {
        const Asn s = t.stubs[j];
        link(rng.chance(0.8) ? rng.pick(t.mid) : rng.pick(t.clique), s, RelKind::ProviderToCustomer);
        if (rng.chance(0.4)) {
            std::vector<Asn> upper(t.clique);
            upper.insert(upper.end(), t.mid.begin(), t.mid.end());
            link(rng.pick(upper), s, RelKind::ProviderToCustomer);
        }
        if (j > 0 && rng.chance(0.15))
            link(t.stubs[rng.below(j)], s, RelKind::ProviderToCustomer);
    }

    auto tier_of = [&](Asn a) {
        if (std::find(t.mid.begin(), t.mid.end(), a) != t.mid.end()) return 1;
        if (std::find(t.stubs.begin(), t.stubs.end(), a) != t.stubs.end()) return 2;
        return 0;
    };
    for (std::size_t i = params.clique; i < ases.size(); ++i)
        for (std::size_t j = i + 1; j < ases.size(); ++j) {
            const int tiers = tier_of(ases[i]) + tier_of(ases[j]);
            const double p = tiers == 2 ? params.peer_density : tiers == 3 ? params.peer_density / 3
                                                                           : params.peer_density / 6;
            if (rng.chance(p)) link(ases[i], ases[j], RelKind::PeerToPeer);
        }

    for (const auto& rel : t.edges) {
        if (tier_of(rel.a) == 0 && tier_of(rel.b) == 0) continue;
        if (rng.chance(params.hidden_rate)) t.hidden.insert({rel.a, rel.b});
    }

    // Address space, allocated upward from 10.0.0.0.
    std::vector<Asn> origins(t.stubs);
    for (Asn m : t.mid)
        if (rng.chance(0.3)) origins.push_back(m);
    std::uint64_t cursor = kFirstAddress;
    for (Asn o : origins) {
        const auto count = rng.between(1, params.max_prefixes_per_origin);
        for (std::uint64_t k = 0; k < count && t.announcements.size() < params.max_prefixes; ++k) {
            const double r = rng.unit();
            const std::uint8_t length = r < 0.7 ? 24 : r < 0.9 ? 23 : 22;
            const std::uint64_t size = std::uint64_t{1} << (32 - length);
            if (rng.chance(0.2)) cursor += 256;
            cursor = (cursor + size - 1) / size * size;
            t.announcements.push_back({Prefix(static_cast<std::uint32_t>(cursor), length), o});
            cursor += size;
        }
    }
    if (params.multi_origin && t.stubs.size() >= 2) {
        const auto first = rng.pick(t.announcements);
        std::vector<Asn> others;
        for (Asn s : t.stubs)
            if (s != first.origin) others.push_back(s);
        const Asn other = rng.pick(others);
        {
            t.announcements.push_back({first.prefix, other});
            if (rng.chance(0.5)) t.multi_origin_listed.insert(first.prefix);
        }
    }

    auto other_country = [&](CountryCode c) {
        if (countries.size() == 1) return c;
        CountryCode o = c;
        while (o == c) o = rng.pick(countries);
        return o;
    };
    auto delegate = [&](std::uint32_t base, std::uint64_t count, CountryCode cc) {
        t.delegations.push_back(ingest::Delegation{"synth", cc, base, count, "20200101", "allocated"});
    };
    for (const auto& [prefix, owners] : prefixes_of(t)) {
        const CountryCode cc = home.at(owners.front());
        const double r = params.geo_quirks ? rng.unit() : 1.0;
        if (r < 0.1) {
            delegate(prefix.base(), prefix.size(), cc);
            if (rng.chance(0.3)) {
                const std::uint64_t block = prefix.size() * 4;
                delegate(static_cast<std::uint32_t>(prefix.base() / block * block), block, other_country(cc));
            }
        } else if (r < 0.3) {
            const auto a = rng.between(1, prefix.size() - 1);
            t.geo.push_back({prefix, cc, a});
            const CountryCode second = other_country(cc);
            if (second != cc) t.geo.push_back({prefix, second, prefix.size() - a});
        } else if (r < 0.4) {
            t.geo.push_back({prefix, cc, rng.between(1, 255)});
        } else {
            t.geo.push_back({prefix, cc, prefix.size()});
        }
    }
    if (params.geo_quirks) t.geo.push_back({Prefix(0xC0A80000, 24), countries.front(), 256});  // never announced

    for (std::size_t i = 0; i < params.monitors; ++i) {
        const Asn host = i > 0 && rng.chance(0.3) ? t.monitors.back().host : rng.pick(ases);
        t.monitors.push_back(Monitor{"m" + std::to_string(i + 1), host, rng.pick(countries)});
    }
    for (const auto& m : t.monitors)
        for (const auto& [prefix, owners] : prefixes_of(t))
            if (rng.chance(params.withheld_rate)) t.withheld.insert({m.id, prefix});

    std::set<Asn> taken;
    for (std::uint64_t i = 0, n = rng.below(4); i < n; ++i) {
        const Asn a = rng.chance(0.6) ? rng.pick(t.mid) : rng.pick(ases);
        if (!taken.insert(a).second) continue;
        t.state_owned.push_back({a, rng.chance(0.8) ? home.at(a) : rng.pick(countries)});
    }
    taken.clear();
    for (std::uint64_t k = 0, n = rng.below(3); k < n; ++k) {
        const std::string org = "ORG-" + std::to_string(k + 1);
        for (std::uint64_t i = 0, size = rng.between(2, 3); i < size; ++i) {
            const Asn a = rng.pick(ases);
            if (taken.insert(a).second) t.orgs.push_back({a, org});
        }
    }
    for (std::uint64_t k = 0, n = rng.below(4); k < n; ++k) {
        const std::string facility = "IX-" + std::to_string(k + 1);
        const CountryCode cc = rng.pick(countries);
        std::set<Asn> members;
        for (std::uint64_t i = 0, size = rng.between(2, 4); i < size; ++i) members.insert(rng.pick(ases));
        for (Asn a : members) t.memberships.push_back({facility, cc, a});
    }
    std::set<std::pair<Asn, Asn>> scored;
    for (std::uint64_t i = 0, n = rng.below(16); i < n; ++i) {
        const Asn o = rng.pick(origins);
        const Asn tr = rng.pick(ases);
        if (o == tr || !scored.insert({o, tr}).second) continue;
        const auto twentieths = rng.between(0, 20);
        std::ostringstream text;
        text << twentieths / 20 << '.' << (twentieths % 20) * 5 / 10 << (twentieths % 20) * 5 % 10;
        t.hegemony.push_back({o, tr, Rational(static_cast<long>(twentieths), 20L), text.str()});
    }
    for (std::size_t i = 0; i < params.probes; ++i) t.probes.push_back({"p" + std::to_string(i + 1), rng.pick(ases)});
    return t;
}

Topology toy_fig1(bool monitor_above_top) {
    Topology t;
    const Asn top(Toy::kTop), left(Toy::kLeft), center(Toy::kCenter), right(Toy::kRight);
    const CountryCode cu(Toy::kCountry);
    t.reserved = standard_reserved();
    t.mid = {left, center, right};
    t.stubs = {Asn(301), Asn(302), Asn(303), Asn(304)};
    for (Asn m : t.mid) t.edges.push_back({top, m, RelKind::ProviderToCustomer});
    t.edges.push_back({left, Asn(301), RelKind::ProviderToCustomer});
    t.edges.push_back({center, Asn(302), RelKind::ProviderToCustomer});
    t.edges.push_back({right, Asn(303), RelKind::ProviderToCustomer});
    t.edges.push_back({right, Asn(304), RelKind::ProviderToCustomer});
    if (monitor_above_top) {
        t.clique = {Asn(Toy::kAbove)};
        t.mid.insert(t.mid.begin(), top);
        t.edges.push_back({Asn(Toy::kAbove), top, RelKind::ProviderToCustomer});
    } else {
        t.clique = {top};
    }

    // 3 /24s behind the left transit, 1 behind the center, 2 + 2 behind the right
    const std::uint32_t owners[8] = {301, 301, 301, 302, 303, 303, 304, 304};
    for (std::uint32_t i = 0; i < 8; ++i) {
        const Prefix p(kFirstAddress + i * 256, 24);
        t.announcements.push_back({p, Asn(owners[i])});
        t.geo.push_back({p, cu, 256});
    }
    t.monitors.push_back(Monitor{"m1", monitor_above_top ? Asn(Toy::kAbove) : top, CountryCode("US")});
    return t;
}

std::map<Asn, std::vector<Asn>> best_routes(const RelationshipTable& truth, std::span<const Asn> ases, Asn origin) {
    std::map<Asn, std::vector<Asn>> out;
    for (auto& [a, route] : route_table(truth, ases, origin)) out.emplace(a, std::move(route.path));
    return out;
}

std::vector<PathRecord> propagate_routes(const Topology& topo) {
    const auto truth = truth_table(topo);
    const auto tables = tables_for(topo, truth);
    std::vector<PathRecord> out;
    for (const auto& m : topo.monitors)
        for (const auto& [prefix, owners] : prefixes_of(topo)) {
            if (topo.withheld.count({m.id, prefix})) continue;
            const Route* route = preferred(tables, owners, m.host);
            if (!route || route->path.size() < 2) continue;
            out.push_back(PathRecord{m.id, prefix, route->path});
        }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return std::tie(x.monitor, x.prefix) < std::tie(y.monitor, y.prefix);
    });
    return out;
}

std::vector<ingest::TraceroutePath> generate_traceroutes(const Topology& topo) {
    Rng rng(topo.seed ^ 0x7472616365ULL);
    const auto truth = truth_table(topo);
    const auto tables = tables_for(topo, truth);
    std::vector<ingest::TraceroutePath> out;
    for (const auto& probe : topo.probes)
        for (const auto& [prefix, owners] : prefixes_of(topo)) {
            if (!rng.chance(0.6)) continue;
            const Route* route = preferred(tables, {owners.front()}, probe.asn);
            if (!route) continue;
            std::vector<Asn> hops = route->path;
            if (hops.size() >= 2 && rng.chance(topo.truncation_rate))
                hops.resize(rng.between(1, hops.size() - 1), hops.front());
            out.push_back({probe.id, prefix, std::move(hops)});
        }
    return out;
}

Corpus build_corpus(Topology topo) {
    Corpus c;
    c.paths = propagate_routes(topo);
    c.traceroutes = generate_traceroutes(topo);
    c.topo = std::move(topo);
    return c;
}

ingest::FileSet render(const Corpus& corpus) {
    using ingest::FileNames;
    const auto& t = corpus.topo;
    ingest::FileSet files;
    auto emit = [&](const char* name, const std::string& header, auto&& rows, auto&& format) {
        std::string text = "# " + header + "\n";
        for (const auto& row : rows) text += format(row) + "\n";
        files[name] = std::move(text);
    };
    emit(FileNames::kPaths, "monitor|prefix|as path", corpus.paths, ingest::format_path);
    emit(FileNames::kRelationships, "provider|customer|-1, peer|peer|0", t.published(), ingest::format_relationship);
    emit(FileNames::kGeo, "prefix,country,addresses", t.geo, ingest::format_geo);
    emit(FileNames::kDelegations, "registry|cc|type|start|value|date|status", t.delegations,
         ingest::format_delegation);
    files[FileNames::kDelegations].insert(files[FileNames::kDelegations].find('\n') + 1,
                                          "2|synth|20200101|" + std::to_string(t.delegations.size()) +
                                              "|19700101|20200101|+0000\nsynth|*|ipv4|*|" +
                                              std::to_string(t.delegations.size()) + "|summary\n");
    emit(FileNames::kMonitors, "monitor,host asn,country", t.monitors, ingest::format_monitor);
    emit(FileNames::kStateOwned, "asn,owner country", t.state_owned, ingest::format_state_owned);
    emit(FileNames::kOrgs, "asn|org", t.orgs, ingest::format_org);
    emit(FileNames::kMemberships, "facility,country,asn", t.memberships, ingest::format_membership);
    emit(FileNames::kHegemony, "origin,transit,score", t.hegemony, ingest::format_hegemony);
    emit(FileNames::kClique, "clique ASNs", t.clique, [](Asn a) { return a.str(); });
    emit(FileNames::kMultiOrigin, "prefixes announced by several origins", t.multi_origin_listed,
         [](const Prefix& p) { return p.str(); });
    emit(FileNames::kReserved, "reserved ASNs and ranges", t.reserved, [](const auto& r) {
        return r.first == r.second ? std::to_string(r.first) : std::to_string(r.first) + "-" + std::to_string(r.second);
    });
    emit(FileNames::kTraceroutes, "probe|prefix|as hops", corpus.traceroutes, ingest::format_traceroute);
    return files;
}

void write_files(const ingest::FileSet& files, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, text] : files) {
        std::ofstream out(dir / name, std::ios::binary);
        out << text;
        if (!out) throw InputError("cannot write " + (dir / name).string());
    }
}

std::string_view to_string(Anomaly anomaly) {
    switch (anomaly) {
        case Anomaly::Prepend: return "prepend";
        case Anomaly::Loop: return "loop";
        case Anomaly::Unallocated: return "unallocated";
        case Anomaly::Poisoned: return "poisoned";
    }
    return "?";
}

std::vector<Injection> inject_anomalies(Corpus& corpus, std::uint64_t seed, const InjectionRates& rates) {
    Rng rng(seed);
    const AsnSet clique(corpus.topo.clique.begin(), corpus.topo.clique.end());
    std::uint32_t next_fresh = kPoisonBase;
    std::vector<Injection> manifest;

    for (auto& path : corpus.paths) {
        auto& hops = path.hops;
        const double u = rng.unit();
        auto at = [&](std::size_t i) { return hops.begin() + static_cast<std::ptrdiff_t>(i); };
        std::optional<Anomaly> kind;
        if (u < rates.loop) {
            // [h0, h1, ...] -> [h0, h1, h0, h1, ...]; the origin stays last.
            hops.insert(at(2), {hops[0], hops[1]});
            kind = Anomaly::Loop;
        } else if (u < rates.loop + rates.unallocated) {
            hops.insert(at(1), Asn(static_cast<std::uint32_t>(rng.between(64512, 65534))));
            kind = Anomaly::Unallocated;
        } else if (u < rates.loop + rates.unallocated + rates.poisoned && clique.size() >= 2) {
            const Asn outsider(next_fresh++);
            std::vector<std::size_t> in_path;
            for (std::size_t i = 0; i < hops.size(); ++i)
                if (clique.count(hops[i])) in_path.push_back(i);
            std::vector<Asn> unused;
            for (Asn c : clique)
                if (std::find(hops.begin(), hops.end(), c) == hops.end()) unused.push_back(c);
            if (in_path.size() >= 2) {
                hops.insert(at(in_path[0] + 1), outsider);
            } else if (in_path.size() == 1) {
                const std::size_t i = in_path[0];
                if (i + 1 < hops.size())
                    hops.insert(at(i + 1), {outsider, unused.front()});
                else
                    hops.insert(at(i), {unused.front(), outsider});
            } else {
                hops.insert(at(1), {unused[0], outsider, unused[1]});
            }
            kind = Anomaly::Poisoned;
        } else if (u < rates.loop + rates.unallocated + rates.poisoned + rates.prepend) {
            const std::size_t i = rng.below(hops.size());
            hops.insert(at(i), rng.between(1, 2), hops[i]);
            kind = Anomaly::Prepend;
        }
        if (kind) manifest.push_back({path.monitor, path.prefix, *kind});
    }
    return manifest;
}

void write_manifest(std::ostream& out, std::span<const Injection> injections) {
    out << "monitor_id,prefix,anomaly\n";
    for (const auto& i : injections) out << i.monitor << ',' << i.prefix.str() << ',' << to_string(i.kind) << '\n';
}

}  // namespace cti::synth
