#include "cti/model.hpp"

#include <arpa/inet.h>

#include <algorithm>
#include <charconv>

namespace cti {

Asn::Asn(std::uint32_t value) : value_(value) {
    if (value == 0) throw std::invalid_argument("invalid ASN 0");
}

std::optional<Asn> Asn::parse(std::string_view token) {
    if (token.empty() || token.size() > 10) return std::nullopt;
    std::uint64_t v = 0;
    for (char c : token) {
        if (c < '0' || c > '9') return std::nullopt;
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (v == 0 || v > 0xFFFFFFFFull) return std::nullopt;
    return Asn(static_cast<std::uint32_t>(v));
}

void ReservedAsns::add(std::uint32_t first, std::uint32_t last) {
    if (first > last) std::swap(first, last);
    ranges_.emplace_back(first, last);
}

bool ReservedAsns::contains(Asn asn) const {
    return std::any_of(ranges_.begin(), ranges_.end(),
                       [v = asn.value()](const auto& r) { return r.first <= v && v <= r.second; });
}

std::optional<std::uint32_t> parse_ipv4(std::string_view text) {
    if (text.empty() || text.size() > 15) return std::nullopt;
    const std::string buf(text);
    in_addr addr{};
    if (inet_pton(AF_INET, buf.c_str(), &addr) != 1) return std::nullopt;
    return ntohl(addr.s_addr);
}

std::string format_ipv4(std::uint32_t address) {
    return std::to_string(address >> 24) + "." + std::to_string((address >> 16) & 0xFF) + "." +
           std::to_string((address >> 8) & 0xFF) + "." + std::to_string(address & 0xFF);
}

namespace {

std::uint32_t mask_for(int length) { return length == 0 ? 0u : ~std::uint32_t{0} << (32 - length); }

}  // namespace

std::optional<Cidr> parse_cidr(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return std::nullopt;
    auto base = parse_ipv4(text.substr(0, slash));
    std::string_view len_text = text.substr(slash + 1);
    if (!base || len_text.empty() || len_text.size() > 2) return std::nullopt;
    int length = 0;
    auto [ptr, ec] = std::from_chars(len_text.data(), len_text.data() + len_text.size(), length);
    if (ec != std::errc{} || ptr != len_text.data() + len_text.size() || length < 0 || length > 32) return std::nullopt;
    return Cidr{*base & mask_for(length), length};
}

Prefix::Prefix(std::uint32_t base, int length) : base_(base & mask_for(length)), length_(length) {
    if (length < 0 || length > kMaxLength)
        throw std::invalid_argument("prefix length " + std::to_string(length) + " outside 0..24");
}

Prefix Prefix::parse(std::string_view text) {
    auto cidr = parse_cidr(text);
    if (!cidr) throw std::invalid_argument("malformed prefix '" + std::string(text) + "'");
    return Prefix(cidr->base, cidr->length);
}

std::string Prefix::str() const { return format_ipv4(base_) + "/" + std::to_string(length_); }

CountryCode::CountryCode(std::string_view code) {
    auto parsed = parse(code);
    if (!parsed) throw std::invalid_argument("invalid country code '" + std::string(code) + "'");
    *this = *parsed;
}

std::optional<CountryCode> CountryCode::parse(std::string_view code) {
    if (code.size() != 2) return std::nullopt;
    for (char c : code)
        if (c < 'A' || c > 'Z') return std::nullopt;
    return CountryCode(code[0], code[1]);
}

void MonitorInventory::add(Monitor monitor) {
    std::string id = monitor.id;
    if (!monitors_.emplace(id, std::move(monitor)).second) throw ParseError("duplicate monitor id '" + id + "'");
}

const Monitor* MonitorInventory::find(std::string_view id) const {
    auto it = monitors_.find(id);
    return it == monitors_.end() ? nullptr : &it->second;
}

MonitorInventory MonitorInventory::filter(const std::function<bool(const Monitor&)>& keep) const {
    MonitorInventory out;
    for (const auto& [id, m] : monitors_)
        if (keep(m)) out.monitors_.emplace(id, m);
    return out;
}

AsnSet MonitorInventory::hosts() const {
    AsnSet out;
    for (const auto& [id, m] : monitors_) out.insert(m.host);
    return out;
}

std::uint64_t RelationshipTable::key(Asn x, Asn y) {
    auto lo = std::min(x.value(), y.value());
    auto hi = std::max(x.value(), y.value());
    return (std::uint64_t{lo} << 32) | hi;
}

void RelationshipTable::add(const Relationship& rel) {
    if (rel.a == rel.b) throw ParseError("self relationship for AS" + rel.a.str());
    Relationship canon = rel;
    if (canon.kind == RelKind::PeerToPeer && canon.b < canon.a) std::swap(canon.a, canon.b);
    auto [it, inserted] = pairs_.emplace(key(rel.a, rel.b), canon);
    if (!inserted) {
        if (it->second == canon) return;
        throw ParseError("conflicting relationship between AS" + rel.a.str() + " and AS" + rel.b.str());
    }
    if (canon.kind == RelKind::ProviderToCustomer) {
        customers_[canon.a].push_back(canon.b);
        providers_[canon.b].push_back(canon.a);
    } else {
        peers_[canon.a].push_back(canon.b);
        peers_[canon.b].push_back(canon.a);
    }
}

std::optional<Relationship> RelationshipTable::find(Asn x, Asn y) const {
    auto it = pairs_.find(key(x, y));
    if (it == pairs_.end()) return std::nullopt;
    return it->second;
}

std::optional<Link> RelationshipTable::link(Asn from, Asn to) const {
    auto rel = find(from, to);
    if (!rel) return std::nullopt;
    if (rel->kind == RelKind::PeerToPeer) return Link::PeerOf;
    return rel->a == from ? Link::ProviderOf : Link::CustomerOf;
}

namespace {

const std::vector<Asn>& lookup(const std::map<Asn, std::vector<Asn>>& index, Asn asn) {
    static const std::vector<Asn> empty;
    auto it = index.find(asn);
    return it == index.end() ? empty : it->second;
}

}  // namespace

const std::vector<Asn>& RelationshipTable::customers(Asn asn) const { return lookup(customers_, asn); }
const std::vector<Asn>& RelationshipTable::providers(Asn asn) const { return lookup(providers_, asn); }
const std::vector<Asn>& RelationshipTable::peers(Asn asn) const { return lookup(peers_, asn); }

std::vector<Relationship> RelationshipTable::all() const {
    std::vector<Relationship> out;
    out.reserve(pairs_.size());
    for (const auto& [k, rel] : pairs_) out.push_back(rel);
    std::sort(out.begin(), out.end(), [](const Relationship& x, const Relationship& y) {
        return key(x.a, x.b) < key(y.a, y.b);
    });
    return out;
}

std::string subject_str(const Subject& subject) {
    if (const auto* asn = std::get_if<Asn>(&subject)) return asn->str();
    return std::get<std::string>(subject);
}

void MetricReport::set(CountryCode country, Subject subject, Rational value) {
    entries.insert_or_assign(ReportKey{country, std::move(subject)}, std::move(value));
}

Rational MetricReport::value(CountryCode country, const Subject& subject) const {
    auto it = entries.find(ReportKey{country, subject});
    return it == entries.end() ? Rational(0) : it->second;
}

void MetricReport::merge(const MetricReport& other) {
    for (const auto& [key, value] : other.entries)
        if (!entries.emplace(key, value).second)
            throw std::logic_error("duplicate report key " + key.country.str() + "/" + subject_str(key.subject));
}

}  // namespace cti
