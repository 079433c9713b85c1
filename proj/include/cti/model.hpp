// Shared domain types: AS numbers, IPv4 prefixes, country codes, monitors,
// paths, AS relationships, observations and metric reports.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cti/numeric.hpp"

namespace cti {

// Error hierarchy. The CLI maps each family to a distinct exit status.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A referenced input file could not be opened.
class InputError : public Error {
  public:
    using Error::Error;
};

/// A structurally malformed or contradictory input row.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    explicit ParseError(const std::string& what) : Error(what), line_(0) {}
    std::size_t line() const noexcept { return line_; }
    /// The same error prefixed with the file it came from.
    ParseError within(const std::string& file) const { return ParseError(line_, file + ": " + what(), Raw{}); }

  private:
    struct Raw {};
    ParseError(std::size_t line, const std::string& full, Raw) : Error(full), line_(line) {}

    std::size_t line_;
};

/// A metric cannot be evaluated (e.g. a country without address mass).
class ComputeError : public Error {
  public:
    using Error::Error;
};

class Asn {
  public:
    /// Throws std::invalid_argument for ASN 0.
    explicit Asn(std::uint32_t value);

    /// Parses a plain decimal token; rejects 0, signs, and values above 2^32-1.
    static std::optional<Asn> parse(std::string_view token);

    std::uint32_t value() const noexcept { return value_; }
    std::string str() const { return std::to_string(value_); }

    auto operator<=>(const Asn&) const = default;

  private:
    std::uint32_t value_;
};

using AsnSet = std::set<Asn>;

/// Inclusive ASN ranges treated as reserved or unallocated.
class ReservedAsns {
  public:
    void add(std::uint32_t first, std::uint32_t last);
    bool contains(Asn asn) const;
    bool empty() const noexcept { return ranges_.empty(); }
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& ranges() const noexcept { return ranges_; }

  private:
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges_;
};

std::optional<std::uint32_t> parse_ipv4(std::string_view text);
std::string format_ipv4(std::uint32_t address);

/// An address block of any length, as read from input before the /24 limit applies.
struct Cidr {
    std::uint32_t base;
    int length;
};

/// Parses "a.b.c.d/len" with 0 <= len <= 32. Host bits are cleared.
std::optional<Cidr> parse_cidr(std::string_view text);

/// IPv4 prefix no longer than /24, always stored in canonical form.
class Prefix {
  public:
    static constexpr int kMaxLength = 24;

    /// Host bits of `base` are cleared. Throws std::invalid_argument if
    /// length is outside 0..=24.
    Prefix(std::uint32_t base, int length);

    /// Throws std::invalid_argument on malformed text or length > 24.
    static Prefix parse(std::string_view text);

    std::uint32_t base() const noexcept { return base_; }
    int length() const noexcept { return length_; }
    /// Number of addresses, 2^(32-length).
    std::uint64_t size() const noexcept { return std::uint64_t{1} << (32 - length_); }
    /// One past the last address, as a 64-bit value.
    std::uint64_t end() const noexcept { return std::uint64_t{base_} + size(); }
    std::string str() const;

    auto operator<=>(const Prefix&) const = default;

  private:
    std::uint32_t base_;
    int length_;
};

/// ISO-3166 alpha-2 code: exactly two ASCII uppercase letters.
class CountryCode {
  public:
    /// Throws std::invalid_argument if the text is not two uppercase letters.
    explicit CountryCode(std::string_view code);
    static std::optional<CountryCode> parse(std::string_view code);

    std::string str() const { return std::string(code_.data(), 2); }

    auto operator<=>(const CountryCode&) const = default;

  private:
    CountryCode(char first, char second) : code_{first, second} {}

    std::array<char, 2> code_;
};

/// A BGP monitor: one session into a route collector, hosted in one AS.
struct Monitor {
    std::string id;
    Asn host;
    CountryCode country;

    bool operator==(const Monitor&) const = default;
};

/// Monitors keyed by id. Ids are unique.
class MonitorInventory {
  public:
    /// Throws ParseError on duplicate id.
    void add(Monitor monitor);
    const Monitor* find(std::string_view id) const;
    bool contains(std::string_view id) const { return find(id) != nullptr; }
    std::size_t size() const noexcept { return monitors_.size(); }
    bool empty() const noexcept { return monitors_.empty(); }

    /// Monitors satisfying `keep`, as a new inventory.
    MonitorInventory filter(const std::function<bool(const Monitor&)>& keep) const;
    /// Distinct host ASes.
    AsnSet hosts() const;

    auto begin() const { return monitors_.begin(); }
    auto end() const { return monitors_.end(); }

  private:
    std::map<std::string, Monitor, std::less<>> monitors_;
};

/// One monitor's preferred AS-level route to one prefix. Hops run from the
/// monitor-nearest AS to the origin.
struct PathRecord {
    std::string monitor;
    Prefix prefix;
    std::vector<Asn> hops;

    Asn origin() const { return hops.back(); }
    bool operator==(const PathRecord&) const = default;
};

enum class RelKind { ProviderToCustomer, PeerToPeer };

/// For ProviderToCustomer, `a` is the provider of `b`.
struct Relationship {
    Asn a;
    Asn b;
    RelKind kind;

    bool operator==(const Relationship&) const = default;
};

/// Role of the first AS relative to the second in a lookup.
enum class Link { ProviderOf, CustomerOf, PeerOf };

class RelationshipTable {
  public:
    /// Adds a relationship. An identical repeat is ignored. A contradicting
    /// entry for the same unordered pair, or a == b, throws ParseError.
    void add(const Relationship& rel);

    std::optional<Link> link(Asn from, Asn to) const;
    bool is_provider_of(Asn provider, Asn customer) const {
        return link(provider, customer) == Link::ProviderOf;
    }
    std::optional<Relationship> find(Asn x, Asn y) const;

    const std::vector<Asn>& customers(Asn asn) const;
    const std::vector<Asn>& providers(Asn asn) const;
    const std::vector<Asn>& peers(Asn asn) const;

    std::size_t size() const noexcept { return pairs_.size(); }
    /// All relationships ordered by (min asn, max asn).
    std::vector<Relationship> all() const;

  private:
    static std::uint64_t key(Asn x, Asn y);

    std::unordered_map<std::uint64_t, Relationship> pairs_;
    std::map<Asn, std::vector<Asn>> customers_;
    std::map<Asn, std::vector<Asn>> providers_;
    std::map<Asn, std::vector<Asn>> peers_;
};

/// A transit AS seen by a monitor on its retained path to a prefix, at
/// `distance` AS hops from the origin.
struct Observation {
    std::string monitor;
    Prefix prefix;
    Asn transit;
    std::uint32_t distance;

    bool operator==(const Observation&) const = default;
};

/// What a score is about: a single AS, or a named group (conglomerate, org).
using Subject = std::variant<Asn, std::string>;
std::string subject_str(const Subject& subject);

struct ReportKey {
    CountryCode country;
    Subject subject;

    auto operator<=>(const ReportKey&) const = default;
};

/// Country x subject -> score in [0,1], ordered (country asc, subject asc).
struct MetricReport {
    std::string metric;
    std::map<ReportKey, Rational> entries;

    void set(CountryCode country, Subject subject, Rational value);
    /// Missing entries read as zero.
    Rational value(CountryCode country, const Subject& subject) const;
    /// Adds every entry of `other`; keys must not overlap.
    void merge(const MetricReport& other);
};

}  // namespace cti

template <>
struct std::hash<cti::Asn> {
    std::size_t operator()(const cti::Asn& asn) const noexcept { return std::hash<std::uint32_t>{}(asn.value()); }
};
