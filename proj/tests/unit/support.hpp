// Shared fixtures and hand-rolled random generators for the unit tests.
#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cti/analysis.hpp"
#include "cti/ingest.hpp"
#include "cti/model.hpp"
#include "cti/synth.hpp"

namespace cti::test {

inline Asn as(std::uint32_t v) { return Asn(v); }
inline CountryCode cc(const char* c) { return CountryCode(c); }
inline Prefix pfx(const char* text) { return Prefix::parse(text); }
inline Rational q(long num, long den = 1) { return Rational(num, den); }

inline std::vector<Asn> hops(std::initializer_list<std::uint32_t> values) {
    std::vector<Asn> out;
    for (auto v : values) out.emplace_back(v);
    return out;
}

inline PathRecord path(const std::string& monitor, const char* prefix, std::initializer_list<std::uint32_t> values) {
    return {monitor, pfx(prefix), hops(values)};
}

inline Relationship p2c(std::uint32_t provider, std::uint32_t customer) {
    return {as(provider), as(customer), RelKind::ProviderToCustomer};
}
inline Relationship p2p(std::uint32_t x, std::uint32_t y) { return {as(x), as(y), RelKind::PeerToPeer}; }

inline RelationshipTable rels(std::initializer_list<Relationship> list) {
    RelationshipTable t;
    for (const auto& r : list) t.add(r);
    return t;
}

inline std::istringstream text(const std::string& s) { return std::istringstream(s); }

/// Deterministic generator for property tests.
class Gen {
  public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
    }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

    Asn asn(std::uint32_t max = 60) { return Asn(static_cast<std::uint32_t>(between(1, max))); }

    Prefix prefix() {
        const int len = static_cast<int>(between(8, 24));
        return Prefix(static_cast<std::uint32_t>(below(std::uint64_t{1} << 32)), len);
    }

    CountryCode country() {
        static const std::vector<std::string> codes{"CU", "US", "DE", "ET", "SY", "BR"};
        return CountryCode(pick(codes));
    }

    Rational fraction(long max_den = 50) {
        const long den = static_cast<long>(between(1, max_den));
        return Rational(static_cast<long>(between(0, den)), den);
    }

    std::mt19937_64& engine() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

/// The pipeline over the synthetic instance of one seed.
inline analysis::Analysis analysis_for_seed(std::uint64_t seed, analysis::Config config = {}) {
    const auto corpus = synth::build_corpus(synth::generate_topology(seed, synth::params_for_seed(seed)));
    return analysis::Analysis(ingest::load_bundle(ingest::open_from_files(synth::render(corpus)), {}), config);
}

}  // namespace cti::test
