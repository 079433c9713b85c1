// Path hygiene and the provider-customer topological-peak filter.
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cti/geo.hpp"
#include "cti/model.hpp"

namespace cti::pathprep {

enum class Category {
    Loop,
    Unallocated,
    Poisoned,
    NoPeak,
    /// The monitor's host AS appears on the path other than as its first hop.
    HostInPath,
    /// The prefix was announced by different origins in the corpus.
    MultiOrigin,
};

std::string_view to_string(Category category);

struct PathRejection {
    Category category;
    std::string monitor;
    Prefix prefix;
    std::string reason;
};

/// The part of a path from the origin (index 0) up to the topological peak.
struct RetainedPath {
    std::string monitor;
    Prefix prefix;
    std::vector<Asn> segment;

    Asn origin() const { return segment.front(); }
    bool operator==(const RetainedPath&) const = default;
};

/// Collapses prepending, then rejects paths with reserved ASNs, loops, or a
/// non-clique AS sandwiched between clique ASes (checked in that order).
std::variant<PathRecord, PathRejection> sanitize(const PathRecord& path, const AsnSet& clique,
                                                 const ReservedAsns& reserved);

enum class Eligibility { Keep, Drop, NotApplicable };

/// Inbound rule: only monitors outside the destination country count.
Eligibility inbound_eligibility(const PathRecord& path, const Monitor& monitor, CountryCode destination,
                                const geo::GeoTable& geo);

/// Drops the monitor host when it is the first hop, reverses to origin-first
/// order and keeps everything up to the farthest provider-to-customer link
/// pointing toward the origin. Paths without such a link are rejected NoPeak.
std::variant<RetainedPath, PathRejection> truncate_to_peak(const PathRecord& path, const RelationshipTable& rels,
                                                           const Monitor& monitor);

struct Prepared {
    /// Paths that passed sanitization (prepending collapsed), sorted by (monitor, prefix).
    std::vector<PathRecord> sanitized;
    /// Sorted by (monitor, prefix).
    std::vector<RetainedPath> retained;
    std::vector<PathRejection> rejections;
};

/// sanitize + truncate_to_peak over a corpus. Paths whose prefix is listed in
/// `excluded_prefixes` are rejected MultiOrigin.
Prepared prepare_paths(std::span<const PathRecord> paths, const MonitorInventory& monitors,
                       const RelationshipTable& rels, const AsnSet& clique, const ReservedAsns& reserved,
                       const std::set<Prefix>& excluded_prefixes = {});

/// `category,monitor_id,prefix,reason` rows with a header.
void write_rejections(std::ostream& out, std::span<const PathRejection> rejections);

}  // namespace cti::pathprep
