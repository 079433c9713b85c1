// Text input formats. Every parser is strict on structure (a malformed row
// throws ParseError with its line number) and lenient on semantic rejects,
// which are logged and skipped. Lines starting with '#' and blank lines are
// ignored everywhere.
#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cti/model.hpp"

namespace cti::ingest {

struct Rejection {
    std::size_t line;
    std::string reason;
    std::string text;
};

template <class Row>
struct Parsed {
    std::vector<Row> rows;
    std::vector<Rejection> rejections;
    /// Exact repeats of an earlier row, dropped silently.
    std::size_t duplicates = 0;
    /// Non-comment, non-blank lines seen.
    std::size_t data_lines = 0;
};

struct GeoRow {
    Prefix prefix;
    CountryCode country;
    std::uint64_t addresses;

    bool operator==(const GeoRow&) const = default;
};

/// One RIR extended-delegation record for an IPv4 block.
struct Delegation {
    std::string registry;
    CountryCode country;
    std::uint32_t base;
    std::uint64_t count;
    std::string date;
    std::string status;

    std::uint64_t end() const noexcept { return std::uint64_t{base} + count; }
    bool operator==(const Delegation&) const = default;
};

struct StateOwned {
    Asn asn;
    CountryCode country;

    bool operator==(const StateOwned&) const = default;
};

struct OrgRow {
    Asn asn;
    std::string org;

    bool operator==(const OrgRow&) const = default;
};

/// An AS present at an IXP or colocation facility located in `country`.
struct Membership {
    std::string facility;
    CountryCode country;
    Asn asn;

    bool operator==(const Membership&) const = default;
};

/// Published Hegemony score of `transit` on paths towards `origin`.
struct HegemonyRow {
    Asn origin;
    Asn transit;
    Rational score;
    std::string score_text;

    bool operator==(const HegemonyRow&) const = default;
};

/// An AS-level traceroute, probe side first; the last hop is the last AS observed.
struct TraceroutePath {
    std::string probe;
    Prefix prefix;
    std::vector<Asn> hops;

    bool operator==(const TraceroutePath&) const = default;
};

// `monitor_id|prefix|asn asn ...`
Parsed<PathRecord> parse_paths(std::istream& in, const MonitorInventory& monitors,
                               const std::set<Prefix>& multi_origin = {});
// `a|b|-1` (a provider of b) or `a|b|0`
RelationshipTable parse_relationships(std::istream& in);
// `prefix,country,address_count`
Parsed<GeoRow> parse_geo(std::istream& in);
// `registry|cc|ipv4|base|count|date|status`
Parsed<Delegation> parse_delegations(std::istream& in);
// `monitor_id,host_asn,country`
MonitorInventory parse_monitors(std::istream& in);
// `asn,country`
Parsed<StateOwned> parse_state_owned(std::istream& in);
// `asn|org_id`
Parsed<OrgRow> parse_orgs(std::istream& in);
// `facility_id,country,asn`
Parsed<Membership> parse_memberships(std::istream& in);
// `origin_asn,transit_asn,score`, score in [0,1]
Parsed<HegemonyRow> parse_hegemony(std::istream& in);
// one ASN per line
Parsed<Asn> parse_asn_list(std::istream& in);
// one prefix per line
Parsed<Prefix> parse_prefix_list(std::istream& in);
// one ASN or `first-last` range per line
ReservedAsns parse_reserved(std::istream& in);
// `probe_id|prefix|asn asn ...`
Parsed<TraceroutePath> parse_traceroutes(std::istream& in);

// Row writers. Each emits one line without the trailing newline, in the exact
// shape the matching parser accepts.
std::string format_path(const PathRecord& path);
std::string format_relationship(const Relationship& rel);
std::string format_geo(const GeoRow& row);
std::string format_delegation(const Delegation& row);
std::string format_monitor(const Monitor& monitor);
std::string format_state_owned(const StateOwned& row);
std::string format_org(const OrgRow& row);
std::string format_membership(const Membership& row);
std::string format_hegemony(const HegemonyRow& row);
std::string format_traceroute(const TraceroutePath& path);

/// Standard file names inside a data directory.
struct FileNames {
    static constexpr const char* kPaths = "paths.txt";
    static constexpr const char* kRelationships = "relationships.txt";
    static constexpr const char* kGeo = "geo.csv";
    static constexpr const char* kDelegations = "delegations.txt";
    static constexpr const char* kMonitors = "monitors.csv";
    static constexpr const char* kStateOwned = "state_owned.csv";
    static constexpr const char* kOrgs = "as2org.txt";
    static constexpr const char* kMemberships = "membership.csv";
    static constexpr const char* kHegemony = "hegemony.csv";
    static constexpr const char* kClique = "clique.txt";
    static constexpr const char* kMultiOrigin = "multi_origin.txt";
    static constexpr const char* kReserved = "reserved.txt";
    static constexpr const char* kTraceroutes = "traceroutes.txt";
};

enum class Dataset {
    Paths,
    Relationships,
    Geo,
    Delegations,
    Monitors,
    StateOwned,
    Orgs,
    Memberships,
    Hegemony,
    Clique,
    MultiOrigin,
    Reserved,
    Traceroutes,
};

const char* default_file_name(Dataset dataset);
std::vector<Dataset> all_datasets();

/// Opens a dataset stream, or returns nullptr when the dataset is absent.
using StreamOpener = std::function<std::unique_ptr<std::istream>(Dataset)>;

/// Everything the metrics consume, parsed.
struct DatasetBundle {
    std::vector<PathRecord> paths;
    RelationshipTable relationships;
    std::vector<GeoRow> geo_rows;
    std::vector<Delegation> delegations;
    MonitorInventory monitors;
    std::vector<StateOwned> state_owned;
    std::vector<OrgRow> orgs;
    std::vector<Membership> memberships;
    std::vector<HegemonyRow> hegemony;
    AsnSet clique;
    std::set<Prefix> multi_origin;
    ReservedAsns reserved;
    std::vector<TraceroutePath> traceroutes;

    /// Rejected rows per dataset file name.
    std::map<std::string, std::vector<Rejection>> rejections;
};

/// Required datasets throw InputError when the opener returns nullptr;
/// optional ones load as empty. Parse errors are rethrown with the file name.
DatasetBundle load_bundle(const StreamOpener& open, const std::set<Dataset>& required);

/// In-memory file contents keyed by file name (as produced by the synthetic generator).
using FileSet = std::map<std::string, std::string>;

StreamOpener open_from_files(const FileSet& files);
StreamOpener open_from_paths(const std::map<Dataset, std::filesystem::path>& paths);

}  // namespace cti::ingest
