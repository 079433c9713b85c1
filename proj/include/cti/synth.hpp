// Synthetic AS topologies, valley-free route propagation and anomaly
// injection, emitted in the standard ingest file formats.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cti/ingest.hpp"

namespace cti::synth {

struct Params {
    std::size_t clique = 2;
    std::size_t mid = 3;
    std::size_t stubs = 5;
    std::size_t monitors = 3;
    std::size_t probes = 3;
    std::size_t max_prefixes_per_origin = 3;
    std::size_t max_prefixes = 64;
    std::vector<std::string> countries{"CU", "US", "DE"};
    /// Chance of a p2p link between two unrelated non-clique ASes.
    double peer_density = 0.15;
    /// Chance that a non-clique link is left out of the relationship file.
    double hidden_rate = 0.05;
    /// Chance that a monitor's feed lacks a given prefix.
    double withheld_rate = 0.05;
    /// Chance that a traceroute stops before the destination AS.
    double truncation_rate = 0.2;
    /// One prefix announced by two origins.
    bool multi_origin = true;
    /// Round-up rows, split rows, delegation fallback and conflicting blocks.
    bool geo_quirks = true;
};

/// Random tier sizes within 40 ASes, 64 prefixes and 6 monitors.
Params params_for_seed(std::uint64_t seed);

struct Announcement {
    Prefix prefix;
    Asn origin;
};

struct Probe {
    std::string id;
    Asn asn;
};

struct Topology {
    std::uint64_t seed = 0;
    std::vector<Asn> clique;
    std::vector<Asn> mid;
    std::vector<Asn> stubs;
    /// Ground truth used for propagation.
    std::vector<Relationship> edges;
    /// Links left out of the relationship file.
    std::set<std::pair<Asn, Asn>> hidden;
    std::vector<Announcement> announcements;
    std::vector<ingest::GeoRow> geo;
    std::vector<ingest::Delegation> delegations;
    std::vector<Monitor> monitors;
    /// (monitor, prefix) pairs missing from the monitor's feed.
    std::set<std::pair<std::string, Prefix>> withheld;
    std::vector<ingest::StateOwned> state_owned;
    std::vector<ingest::OrgRow> orgs;
    std::vector<ingest::Membership> memberships;
    std::vector<ingest::HegemonyRow> hegemony;
    std::vector<Probe> probes;
    double truncation_rate = 0;
    /// Multi-origin prefixes listed in the multi-origin file.
    std::set<Prefix> multi_origin_listed;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> reserved;

    std::vector<Asn> all_ases() const;
    std::vector<Relationship> published() const;
};

/// Throws std::invalid_argument when a tier is empty or the limits are exceeded.
Topology generate_topology(std::uint64_t seed, const Params& params);

/// Fixture ASNs.
struct Toy {
    static constexpr std::uint32_t kAbove = 50;
    static constexpr std::uint32_t kTop = 100;
    static constexpr std::uint32_t kLeft = 201;
    static constexpr std::uint32_t kCenter = 202;
    static constexpr std::uint32_t kRight = 203;
    static constexpr const char* kCountry = "CU";
};

/// One monitor in the top AS (or in an AS above it), three transit ASes below
/// the top, and four origins holding eight /24s: three behind the left
/// transit, one behind the center and four behind the right.
Topology toy_fig1(bool monitor_above_top = false);

/// Preferred path of every AS that has a route toward `origin`, starting at
/// that AS. Customer routes beat peer routes beat provider routes, then the
/// shortest path, then the lowest next-hop ASN.
std::map<Asn, std::vector<Asn>> best_routes(const RelationshipTable& truth, std::span<const Asn> ases, Asn origin);

/// One path per (monitor, prefix) the monitor's host AS can reach, except
/// withheld pairs and the host's own prefixes. Sorted by (monitor, prefix).
std::vector<PathRecord> propagate_routes(const Topology& topo);

/// AS-level traceroutes from every probe, some truncated.
std::vector<ingest::TraceroutePath> generate_traceroutes(const Topology& topo);

struct Corpus {
    Topology topo;
    std::vector<PathRecord> paths;
    std::vector<ingest::TraceroutePath> traceroutes;
};

Corpus build_corpus(Topology topo);

/// Every standard input file, keyed by its default name.
ingest::FileSet render(const Corpus& corpus);
void write_files(const ingest::FileSet& files, const std::filesystem::path& dir);

enum class Anomaly { Prepend, Loop, Unallocated, Poisoned };
std::string_view to_string(Anomaly anomaly);

struct Injection {
    std::string monitor;
    Prefix prefix;
    Anomaly kind;

    auto operator<=>(const Injection&) const = default;
};

struct InjectionRates {
    double prepend = 0.1;
    double loop = 0.05;
    double unallocated = 0.05;
    double poisoned = 0.05;
};

/// Rewrites a random subset of paths, at most one anomaly per path, and
/// returns the manifest. Poisoning needs at least two clique ASes.
std::vector<Injection> inject_anomalies(Corpus& corpus, std::uint64_t seed, const InjectionRates& rates);

/// `monitor_id,prefix,anomaly`
void write_manifest(std::ostream& out, std::span<const Injection> injections);

}  // namespace cti::synth
