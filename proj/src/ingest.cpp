#include "cti/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <tuple>

namespace cti::ingest {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

/// Calls `fn(line_no, text)` for each data line.
template <class Fn>
std::size_t for_each_line(std::istream& in, Fn&& fn) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t data = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        ++data;
        fn(line_no, std::string_view(line));
    }
    return data;
}

void expect_fields(const std::vector<std::string_view>& fields, std::size_t n, std::size_t line_no,
                   std::string_view what) {
    if (fields.size() != n)
        throw ParseError(line_no, std::string(what) + ": expected " + std::to_string(n) + " fields, got " +
                                      std::to_string(fields.size()));
}

std::optional<std::uint64_t> parse_u64(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

Asn require_asn(std::string_view token, std::size_t line_no) {
    auto asn = Asn::parse(token);
    if (!asn) throw ParseError(line_no, "invalid ASN '" + std::string(token) + "'");
    return *asn;
}

CountryCode require_country(std::string_view token, std::size_t line_no) {
    auto cc = CountryCode::parse(token);
    if (!cc) throw ParseError(line_no, "invalid country code '" + std::string(token) + "'");
    return *cc;
}

Cidr require_cidr(std::string_view token, std::size_t line_no) {
    auto cidr = parse_cidr(token);
    if (!cidr) throw ParseError(line_no, "malformed prefix '" + std::string(token) + "'");
    return *cidr;
}

enum class HopError { None, Malformed, AsSet };

/// Space-separated ASN tokens.
HopError parse_hops(std::string_view text, std::vector<Asn>& hops) {
    hops.clear();
    if (text.find_first_of("{}") != std::string_view::npos) return HopError::AsSet;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == ' ') {
            ++i;
            continue;
        }
        auto j = text.find(' ', i);
        if (j == std::string_view::npos) j = text.size();
        auto asn = Asn::parse(text.substr(i, j - i));
        if (!asn) return HopError::Malformed;
        hops.push_back(*asn);
        i = j;
    }
    return hops.empty() ? HopError::Malformed : HopError::None;
}

std::string join_hops(const std::vector<Asn>& hops) {
    std::string out;
    for (std::size_t i = 0; i < hops.size(); ++i) {
        if (i) out.push_back(' ');
        out += hops[i].str();
    }
    return out;
}

template <class Row>
void reject(Parsed<Row>& parsed, std::size_t line_no, std::string reason, std::string_view text) {
    parsed.rejections.push_back({line_no, std::move(reason), std::string(text)});
}

}  // namespace

Parsed<PathRecord> parse_paths(std::istream& in, const MonitorInventory& monitors,
                               const std::set<Prefix>& multi_origin) {
    Parsed<PathRecord> parsed;
    // (monitor, prefix) -> (line, index into rows)
    std::map<std::pair<std::string, Prefix>, std::pair<std::size_t, std::size_t>> seen;
    std::vector<Asn> hops;

    parsed.data_lines = for_each_line(in, [&](std::size_t line_no, std::string_view line) {
        auto fields = split(line, '|');
        expect_fields(fields, 3, line_no, "path");
        const Cidr cidr = require_cidr(fields[1], line_no);

        if (!monitors.contains(fields[0])) return reject(parsed, line_no, "unknown-monitor", line);
        if (cidr.length > Prefix::kMaxLength) return reject(parsed, line_no, "length>24", line);
        const Prefix prefix(cidr.base, cidr.length);
        if (multi_origin.count(prefix)) return reject(parsed, line_no, "multi-origin", line);
        switch (parse_hops(fields[2], hops)) {
            case HopError::AsSet: return reject(parsed, line_no, "as-set", line);
            case HopError::Malformed: return reject(parsed, line_no, "malformed-asn", line);
            case HopError::None: break;
        }

        auto key = std::make_pair(std::string(fields[0]), prefix);
        if (auto it = seen.find(key); it != seen.end()) {
            if (parsed.rows[it->second.second].hops == hops) {
                ++parsed.duplicates;
                return;
            }
            throw ParseError(line_no, "conflicting duplicate path for " + key.first + " " + prefix.str() +
                                          " (lines " + std::to_string(it->second.first) + " and " +
                                          std::to_string(line_no) + ")");
        }
        seen.emplace(std::move(key), std::make_pair(line_no, parsed.rows.size()));
        parsed.rows.push_back(PathRecord{std::string(fields[0]), prefix, hops});
    });
    return parsed;
}

RelationshipTable parse_relationships(std::istream& in) {
    RelationshipTable table;
    for_each_line(in, [&](std::size_t line_no, std::string_view line) {
        auto fields = split(line, '|');
        // serial-2 files carry a fourth "source" column; it is ignored.
        if (fields.size() != 3 && fields.size() != 4)
            throw ParseError(line_no, "relationship: expected 3 fields, got " + std::to_string(fields.size()));
        const Asn a = require_asn(fields[0], line_no);
        const Asn b = require_asn(fields[1], line_no);
        RelKind kind;
        if (fields[2] == "-1")
            kind = RelKind::ProviderToCustomer;
        else if (fields[2] == "0")
            kind = RelKind::PeerToPeer;
        else
            throw ParseError(line_no, "unknown relationship code '" + std::string(fields[2]) + "'");
        try {
            table.add(Relationship{a, b, kind});
        } catch (const ParseError& e) {
            throw ParseError(line_no, e.what());
        }
    });
    return table;
}

Parsed<GeoRow> parse_geo(std::istream& in) {
    Parsed<GeoRow> parsed;
    std::map<std::pair<Prefix, CountryCode>, std::pair<std::size_t, std::uint64_t>> seen;
    parsed.data_lines = for_each_line(in, [&](std::size_t line_no, std::string_view line) {
        auto fields = split(line, ',');
        expect_fields(fields, 3, line_no, "geo");
        const Cidr cidr = require_cidr(fields[0], line_no);
        auto count = parse_u64(fields[2]);
        if (!count) throw ParseError(line_no, "malformed address count '" + std::string(fields[2]) + "'");
        const std::uint64_t capacity = std::uint64_t{1} << (32 - cidr.length);
        if (*count > capacity)
            throw ParseError(line_no, "address count " + std::to_string(*count) + " exceeds prefix capacity " +
                                          std::to_string(capacity));
        auto cc = CountryCode::parse(fields[1]);
        if (!cc) return reject(parsed, line_no, "bad-country", line);
        if (cidr.length > Prefix::kMaxLength) return reject(parsed, line_no, "length>24", line);
        const Prefix prefix(cidr.base, cidr.length);

        auto [it, inserted] = seen.emplace(std::make_pair(prefix, *cc), std::make_pair(line_no, *count));
        if (!inserted) {
            if (it->second.second == *count) {
                ++parsed.duplicates;
                return;
            }
            throw ParseError(line_no, "conflicting geo rows for " + prefix.str() + "," + cc->str() + " (lines " +
                                          std::to_string(it->second.first) + " and " + std::to_string(line_no) + ")");
        }
        parsed.rows.push_back(GeoRow{prefix, *cc, *count});
    });
    return parsed;
}

Parsed<Delegation> parse_delegations(std::istream& in) {
    Parsed<Delegation> parsed;
    parsed.data_lines = for_each_line(in, [&](std::size_t line_no, std::string_view line) {
        auto fields = split(line, '|');
        // Version header: "2|ripencc|20200301|..." (first field numeric).
        if (!fields.empty() && parse_u64(fields[0])) return reject(parsed, line_no, "header", line);
        // Summary lines carry six fields: "ripencc|*|ipv4|*|12345|summary".
        if (fields.size() >= 6 && (fields[1] == "*" || fields[5] == "summary"))
            return reject(parsed, line_no, "summary", line);
        if (fields.size() < 7)
            throw ParseError(line_no, "delegation: expected at least 7 fields, got " + std::to_string(fields.size()));
        if (fields[2] != "ipv4") return reject(parsed, line_no, "not-ipv4", line);
        auto base = parse_ipv4(fields[3]);
        if (!base) throw ParseError(line_no, "malformed address '" + std::string(fields[3]) + "'");
        auto count = parse_u64(fields[4]);
        if (!count || *count == 0) throw ParseError(line_no, "malformed count '" + std::string(fields[4]) + "'");
        if (std::uint64_t{*base} + *count > (std::uint64_t{1} << 32))
            throw ParseError(line_no, "delegation block runs past 255.255.255.255");
        if (fields[6] != "allocated" && fields[6] != "assigned") return reject(parsed, line_no, "status", line);
        auto cc = CountryCode::parse(fields[1]);
        if (!cc) return reject(parsed, line_no, "bad-country", line);
        parsed.rows.push_back(Delegation{std::string(fields[0]), *cc, *base, *count, std::string(fields[5]),
                                         std::string(fields[6])});
    });
    return parsed;
}

MonitorInventory parse_monitors(std::istream& in) {
    MonitorInventory monitors;
    for_each_line(in, [&](std::size_t line_no, std::string_view line) {
        auto fields = split(line, ',');
        expect_fields(fields, 3, line_no, "monitor");
        if (fields[0].empty()) throw ParseError(line_no, "empty monitor id");
        Monitor m{std::string(fields[0]), require_asn(fields[1], line_no), require_country(fields[2], line_no)};
        try {
            monitors.add(std::move(m));
        } catch (const ParseError& e) {
            throw ParseError(line_no, e.what());
        }
    });
    return monitors;
}

Parsed<StateOwned> parse_state_owned(std::istream& in) {
    Parsed<StateOwned> parsed;
    std::set<std::pair<Asn, CountryCode>> seen;
    parsed.data_lines = for_each_line(in, [&](std::size_t line_no, std::string_view line) {
        auto fields = split(line, ',');
        expect_fields(fields, 2, line_no, "state-owned");
        const Asn asn = require_asn(fields[0], line_no);
        auto cc = CountryCode::parse(fields[1]);
        if (!cc) return reject(parsed, line_no, "bad-country", line);
        if (!seen.emplace(asn, *cc).second) {
            ++parsed.duplicates;
            return;
        }
        parsed.rows.push_back(StateOwned{asn, *cc});
    });
    return parsed;
}

Parsed<OrgRow> parse_orgs(std::istream& in) {
    Parsed<OrgRow> parsed;
    std::map<Asn, std::pair<std::size_t, std::string>> seen;
    parsed.data_lines = for_each_line(in, [&](std::size_t line_no, std::string_view line) {
        auto fields = split(line, '|');
        expect_fields(fields, 2, line_no, "org");
        const Asn asn = require_asn(fields[0], line_no);
        if (fields[1].empty()) throw ParseError(line_no, "empty org id");
        auto [it, inserted] = seen.emplace(asn, std::make_pair(line_no, std::string(fields[1])));
        if (!inserted) {
            if (it->second.second == fields[1]) {
                ++parsed.duplicates;
                return;
            }
            throw ParseError(line_no, "AS" + asn.str() + " mapped to two organizations (lines " +
                                          std::to_string(it->second.first) + " and " + std::to_string(line_no) + ")");
        }
        parsed.rows.push_back(OrgRow{asn, std::string(fields[1])});
    });
    return parsed;
}

Parsed<Membership> parse_memberships(std::istream& in) {
    Parsed<Membership> parsed;
    std::set<std::tuple<std::string, CountryCode, Asn>> seen;
    parsed.data_lines = for_each_line(in, [&](std::size_t line_no, std::string_view line) {
        auto fields = split(line, ',');
        expect_fields(fields, 3, line_no, "membership");
        if (fields[0].empty()) throw ParseError(line_no, "empty facility id");
        const Asn asn = require_asn(fields[2], line_no);
        auto cc = CountryCode::parse(fields[1]);
        if (!cc) return reject(parsed, line_no, "bad-country", line);
        if (!seen.emplace(std::string(fields[0]), *cc, asn).second) {
            ++parsed.duplicates;
            return;
        }
        parsed.rows.push_back(Membership{std::string(fields[0]), *cc, asn});
    });
    return parsed;
}

Parsed<HegemonyRow> parse_hegemony(std::istream& in) {
    Parsed<HegemonyRow> parsed;
    std::map<std::pair<Asn, Asn>, std::pair<std::size_t, Rational>> seen;
    parsed.data_lines = for_each_line(in, [&](std::size_t line_no, std::string_view line) {
        auto fields = split(line, ',');
        expect_fields(fields, 3, line_no, "hegemony");
        const Asn origin = require_asn(fields[0], line_no);
        const Asn transit = require_asn(fields[1], line_no);
        Rational score;
        try {
            score = parse_decimal(fields[2]);
        } catch (const std::invalid_argument&) {
            throw ParseError(line_no, "malformed score '" + std::string(fields[2]) + "'");
        }
        if (score < 0 || score > 1) return reject(parsed, line_no, "score-out-of-range", line);
        auto [it, inserted] = seen.emplace(std::make_pair(origin, transit), std::make_pair(line_no, score));
        if (!inserted) {
            if (it->second.second == score) {
                ++parsed.duplicates;
                return;
            }
            throw ParseError(line_no, "conflicting hegemony scores for " + origin.str() + "," + transit.str() +
                                          " (lines " + std::to_string(it->second.first) + " and " +
                                          std::to_string(line_no) + ")");
        }
        parsed.rows.push_back(HegemonyRow{origin, transit, score, std::string(fields[2])});
    });
    return parsed;
}

Parsed<Asn> parse_asn_list(std::istream& in) {
    Parsed<Asn> parsed;
    std::set<Asn> seen;
    parsed.data_lines = for_each_line(in, [&](std::size_t line_no, std::string_view line) {
        const Asn asn = require_asn(line, line_no);
        if (!seen.insert(asn).second) {
            ++parsed.duplicates;
            return;
        }
        parsed.rows.push_back(asn);
    });
    return parsed;
}

Parsed<Prefix> parse_prefix_list(std::istream& in) {
    Parsed<Prefix> parsed;
    std::set<Prefix> seen;
    parsed.data_lines = for_each_line(in, [&](std::size_t line_no, std::string_view line) {
        const Cidr cidr = require_cidr(line, line_no);
        if (cidr.length > Prefix::kMaxLength) return reject(parsed, line_no, "length>24", line);
        const Prefix prefix(cidr.base, cidr.length);
        if (!seen.insert(prefix).second) {
            ++parsed.duplicates;
            return;
        }
        parsed.rows.push_back(prefix);
    });
    return parsed;
}

ReservedAsns parse_reserved(std::istream& in) {
    ReservedAsns reserved;
    for_each_line(in, [&](std::size_t line_no, std::string_view line) {
        auto dash = line.find('-');
        if (dash == std::string_view::npos) {
            auto v = parse_u64(line);
            if (!v || *v > 0xFFFFFFFFull) throw ParseError(line_no, "malformed reserved ASN '" + std::string(line) + "'");
            reserved.add(static_cast<std::uint32_t>(*v), static_cast<std::uint32_t>(*v));
            return;
        }
        auto first = parse_u64(line.substr(0, dash));
        auto last = parse_u64(line.substr(dash + 1));
        if (!first || !last || *first > 0xFFFFFFFFull || *last > 0xFFFFFFFFull)
            throw ParseError(line_no, "malformed reserved range '" + std::string(line) + "'");
        reserved.add(static_cast<std::uint32_t>(*first), static_cast<std::uint32_t>(*last));
    });
    return reserved;
}

Parsed<TraceroutePath> parse_traceroutes(std::istream& in) {
    Parsed<TraceroutePath> parsed;
    std::vector<Asn> hops;
    parsed.data_lines = for_each_line(in, [&](std::size_t line_no, std::string_view line) {
        auto fields = split(line, '|');
        expect_fields(fields, 3, line_no, "traceroute");
        if (fields[0].empty()) throw ParseError(line_no, "empty probe id");
        const Cidr cidr = require_cidr(fields[1], line_no);
        if (cidr.length > Prefix::kMaxLength) return reject(parsed, line_no, "length>24", line);
        switch (parse_hops(fields[2], hops)) {
            case HopError::AsSet: return reject(parsed, line_no, "as-set", line);
            case HopError::Malformed: return reject(parsed, line_no, "malformed-asn", line);
            case HopError::None: break;
        }
        // Repeated traceroutes are separate measurements and all count.
        parsed.rows.push_back(TraceroutePath{std::string(fields[0]), Prefix(cidr.base, cidr.length), hops});
    });
    return parsed;
}

std::string format_path(const PathRecord& path) {
    return path.monitor + "|" + path.prefix.str() + "|" + join_hops(path.hops);
}

std::string format_relationship(const Relationship& rel) {
    return rel.a.str() + "|" + rel.b.str() + "|" + (rel.kind == RelKind::ProviderToCustomer ? "-1" : "0");
}

std::string format_geo(const GeoRow& row) {
    return row.prefix.str() + "," + row.country.str() + "," + std::to_string(row.addresses);
}

std::string format_delegation(const Delegation& row) {
    return row.registry + "|" + row.country.str() + "|ipv4|" + format_ipv4(row.base) + "|" + std::to_string(row.count) +
           "|" + row.date + "|" + row.status;
}

std::string format_monitor(const Monitor& monitor) {
    return monitor.id + "," + monitor.host.str() + "," + monitor.country.str();
}

std::string format_state_owned(const StateOwned& row) { return row.asn.str() + "," + row.country.str(); }

std::string format_org(const OrgRow& row) { return row.asn.str() + "|" + row.org; }

std::string format_membership(const Membership& row) {
    return row.facility + "," + row.country.str() + "," + row.asn.str();
}

std::string format_hegemony(const HegemonyRow& row) {
    return row.origin.str() + "," + row.transit.str() + "," + row.score_text;
}

std::string format_traceroute(const TraceroutePath& path) {
    return path.probe + "|" + path.prefix.str() + "|" + join_hops(path.hops);
}

const char* default_file_name(Dataset dataset) {
    switch (dataset) {
        case Dataset::Paths: return FileNames::kPaths;
        case Dataset::Relationships: return FileNames::kRelationships;
        case Dataset::Geo: return FileNames::kGeo;
        case Dataset::Delegations: return FileNames::kDelegations;
        case Dataset::Monitors: return FileNames::kMonitors;
        case Dataset::StateOwned: return FileNames::kStateOwned;
        case Dataset::Orgs: return FileNames::kOrgs;
        case Dataset::Memberships: return FileNames::kMemberships;
        case Dataset::Hegemony: return FileNames::kHegemony;
        case Dataset::Clique: return FileNames::kClique;
        case Dataset::MultiOrigin: return FileNames::kMultiOrigin;
        case Dataset::Reserved: return FileNames::kReserved;
        case Dataset::Traceroutes: return FileNames::kTraceroutes;
    }
    return "";
}

std::vector<Dataset> all_datasets() {
    return {Dataset::Paths,       Dataset::Relationships, Dataset::Geo,         Dataset::Delegations, Dataset::Monitors,
            Dataset::StateOwned,  Dataset::Orgs,          Dataset::Memberships, Dataset::Hegemony,    Dataset::Clique,
            Dataset::MultiOrigin, Dataset::Reserved,      Dataset::Traceroutes};
}

namespace {

template <class Fn>
auto with_file_context(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        throw e.within(name);
    }
}

}  // namespace

DatasetBundle load_bundle(const StreamOpener& open, const std::set<Dataset>& required) {
    DatasetBundle bundle;

    auto stream_for = [&](Dataset d) -> std::unique_ptr<std::istream> {
        auto in = open(d);
        if (!in && required.count(d))
            throw InputError(std::string("missing input file: ") + default_file_name(d));
        return in;
    };
    auto keep = [&](Dataset d, auto parsed) {
        if (!parsed.rejections.empty()) bundle.rejections[default_file_name(d)] = parsed.rejections;
        return std::move(parsed.rows);
    };

    // Order matters: monitors and the multi-origin list gate path parsing.
    if (auto in = stream_for(Dataset::Monitors))
        bundle.monitors = with_file_context(FileNames::kMonitors, [&] { return parse_monitors(*in); });
    if (auto in = stream_for(Dataset::MultiOrigin)) {
        auto rows = keep(Dataset::MultiOrigin,
                         with_file_context(FileNames::kMultiOrigin, [&] { return parse_prefix_list(*in); }));
        bundle.multi_origin.insert(rows.begin(), rows.end());
    }
    if (auto in = stream_for(Dataset::Paths))
        bundle.paths = keep(Dataset::Paths, with_file_context(FileNames::kPaths, [&] {
                                return parse_paths(*in, bundle.monitors, bundle.multi_origin);
                            }));
    if (auto in = stream_for(Dataset::Relationships))
        bundle.relationships =
            with_file_context(FileNames::kRelationships, [&] { return parse_relationships(*in); });
    if (auto in = stream_for(Dataset::Geo))
        bundle.geo_rows = keep(Dataset::Geo, with_file_context(FileNames::kGeo, [&] { return parse_geo(*in); }));
    if (auto in = stream_for(Dataset::Delegations))
        bundle.delegations = keep(Dataset::Delegations,
                                  with_file_context(FileNames::kDelegations, [&] { return parse_delegations(*in); }));
    if (auto in = stream_for(Dataset::StateOwned))
        bundle.state_owned = keep(Dataset::StateOwned,
                                  with_file_context(FileNames::kStateOwned, [&] { return parse_state_owned(*in); }));
    if (auto in = stream_for(Dataset::Orgs))
        bundle.orgs = keep(Dataset::Orgs, with_file_context(FileNames::kOrgs, [&] { return parse_orgs(*in); }));
    if (auto in = stream_for(Dataset::Memberships))
        bundle.memberships = keep(Dataset::Memberships,
                                  with_file_context(FileNames::kMemberships, [&] { return parse_memberships(*in); }));
    if (auto in = stream_for(Dataset::Hegemony))
        bundle.hegemony =
            keep(Dataset::Hegemony, with_file_context(FileNames::kHegemony, [&] { return parse_hegemony(*in); }));
    if (auto in = stream_for(Dataset::Clique)) {
        auto rows = keep(Dataset::Clique, with_file_context(FileNames::kClique, [&] { return parse_asn_list(*in); }));
        bundle.clique.insert(rows.begin(), rows.end());
    }
    if (auto in = stream_for(Dataset::Reserved))
        bundle.reserved = with_file_context(FileNames::kReserved, [&] { return parse_reserved(*in); });
    if (auto in = stream_for(Dataset::Traceroutes))
        bundle.traceroutes = keep(Dataset::Traceroutes, with_file_context(FileNames::kTraceroutes,
                                                                          [&] { return parse_traceroutes(*in); }));
    return bundle;
}

StreamOpener open_from_files(const FileSet& files) {
    return [&files](Dataset d) -> std::unique_ptr<std::istream> {
        auto it = files.find(default_file_name(d));
        if (it == files.end()) return nullptr;
        return std::make_unique<std::istringstream>(it->second);
    };
}

StreamOpener open_from_paths(const std::map<Dataset, std::filesystem::path>& paths) {
    return [paths](Dataset d) -> std::unique_ptr<std::istream> {
        auto it = paths.find(d);
        if (it == paths.end()) return nullptr;
        auto in = std::make_unique<std::ifstream>(it->second);
        if (!*in) return nullptr;
        return in;
    };
}

}  // namespace cti::ingest
