#include "cti/pathprep.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_set>

namespace cti::pathprep {

std::string_view to_string(Category category) {
    switch (category) {
        case Category::Loop: return "Loop";
        case Category::Unallocated: return "Unallocated";
        case Category::Poisoned: return "Poisoned";
        case Category::NoPeak: return "NoPeak";
        case Category::HostInPath: return "HostInPath";
        case Category::MultiOrigin: return "MultiOrigin";
    }
    return "?";
}

namespace {

PathRejection rejection(const PathRecord& path, Category category, std::string reason) {
    return PathRejection{category, path.monitor, path.prefix, std::move(reason)};
}

}  // namespace

std::variant<PathRecord, PathRejection> sanitize(const PathRecord& path, const AsnSet& clique,
                                                 const ReservedAsns& reserved) {
    PathRecord out{path.monitor, path.prefix, {}};
    out.hops.reserve(path.hops.size());
    for (Asn hop : path.hops)
        if (out.hops.empty() || out.hops.back() != hop) out.hops.push_back(hop);

    for (Asn hop : out.hops)
        if (reserved.contains(hop)) return rejection(path, Category::Unallocated, "AS" + hop.str() + " is reserved");

    std::unordered_set<Asn> seen;
    for (Asn hop : out.hops)
        if (!seen.insert(hop).second) return rejection(path, Category::Loop, "AS" + hop.str() + " repeats");

    // A non-clique AS anywhere between the first and last clique AS.
    if (!clique.empty()) {
        auto first = std::find_if(out.hops.begin(), out.hops.end(), [&](Asn a) { return clique.count(a) > 0; });
        auto last = std::find_if(out.hops.rbegin(), out.hops.rend(), [&](Asn a) { return clique.count(a) > 0; });
        if (first != out.hops.end()) {
            for (auto it = first; it != last.base(); ++it)
                if (!clique.count(*it))
                    return rejection(path, Category::Poisoned, "AS" + it->str() + " between clique ASes");
        }
    }
    return out;
}

Eligibility inbound_eligibility(const PathRecord& path, const Monitor& monitor, CountryCode destination,
                                const geo::GeoTable& geo) {
    if (geo.mass(path.prefix, destination) == 0) return Eligibility::NotApplicable;
    return monitor.country == destination ? Eligibility::Drop : Eligibility::Keep;
}

std::variant<RetainedPath, PathRejection> truncate_to_peak(const PathRecord& path, const RelationshipTable& rels,
                                                           const Monitor& monitor) {
    std::vector<Asn> hops = path.hops;
    if (!hops.empty() && hops.front() == monitor.host) hops.erase(hops.begin());
    if (std::find(hops.begin(), hops.end(), monitor.host) != hops.end())
        return rejection(path, Category::HostInPath, "host AS" + monitor.host.str() + " inside path");
    std::reverse(hops.begin(), hops.end());

    std::size_t peak = 0;
    for (std::size_t k = 1; k < hops.size(); ++k)
        if (rels.is_provider_of(hops[k], hops[k - 1])) peak = k;
    if (peak == 0) return rejection(path, Category::NoPeak, "no provider-to-customer link toward origin");

    hops.erase(hops.begin() + static_cast<std::ptrdiff_t>(peak) + 1, hops.end());
    return RetainedPath{path.monitor, path.prefix, std::move(hops)};
}

Prepared prepare_paths(std::span<const PathRecord> paths, const MonitorInventory& monitors,
                       const RelationshipTable& rels, const AsnSet& clique, const ReservedAsns& reserved,
                       const std::set<Prefix>& excluded_prefixes) {
    Prepared out;
    for (const auto& raw : paths) {
        if (excluded_prefixes.count(raw.prefix)) {
            out.rejections.push_back(rejection(raw, Category::MultiOrigin, "prefix has several origins"));
            continue;
        }
        auto clean = sanitize(raw, clique, reserved);
        if (auto* r = std::get_if<PathRejection>(&clean)) {
            out.rejections.push_back(std::move(*r));
            continue;
        }
        auto& path = std::get<PathRecord>(clean);
        const Monitor* monitor = monitors.find(path.monitor);
        if (!monitor) throw std::logic_error("path from unknown monitor " + path.monitor);
        auto kept = truncate_to_peak(path, rels, *monitor);
        if (auto* r = std::get_if<PathRejection>(&kept))
            out.rejections.push_back(std::move(*r));
        else
            out.retained.push_back(std::move(std::get<RetainedPath>(kept)));
        out.sanitized.push_back(std::move(path));
    }

    auto by_key = [](const auto& x, const auto& y) {
        return std::tie(x.monitor, x.prefix) < std::tie(y.monitor, y.prefix);
    };
    std::stable_sort(out.sanitized.begin(), out.sanitized.end(), by_key);
    std::stable_sort(out.retained.begin(), out.retained.end(), by_key);
    std::stable_sort(out.rejections.begin(), out.rejections.end(), by_key);
    return out;
}

void write_rejections(std::ostream& out, std::span<const PathRejection> rejections) {
    out << "category,monitor_id,prefix,reason\n";
    for (const auto& r : rejections)
        out << to_string(r.category) << ',' << r.monitor << ',' << r.prefix.str() << ',' << r.reason << '\n';
}

}  // namespace cti::pathprep
