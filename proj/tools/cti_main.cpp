// cti: country-level transit influence reports from BGP paths, geolocation
// and relationship data.
//
// Exit status: 0 ok, 1 oracle mismatch or unexpected failure, 2 missing
// input, 3 malformed input, 4 metric not computable.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "cti/analysis.hpp"
#include "cti/oracle.hpp"
#include "cti/report.hpp"
#include "cti/synth.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace cti;
using ingest::Dataset;

namespace {

struct Options {
    std::string data_dir;
    std::map<Dataset, std::string> files;
    std::vector<std::string> countries;
    std::string out = "out";
    std::string format = "csv";
    unsigned workers = 1;
    std::size_t min_hosts = 10;
    std::string trim = "0.10";
    bool no_outlier_filter = false;
    std::string dominance = "0.48";
    std::string org_marginal = "0.05";
    std::string org_ctin = "0.10";
    std::string origin_floor = "0.0005";
    std::string candidate_fraction = "0.25";
    std::size_t max_countries = 100;
    bool dump_geo = false;
};

const char* flag_name(Dataset d) {
    switch (d) {
        case Dataset::Paths: return "--paths";
        case Dataset::Relationships: return "--relationships";
        case Dataset::Geo: return "--geo";
        case Dataset::Delegations: return "--delegations";
        case Dataset::Monitors: return "--monitors";
        case Dataset::StateOwned: return "--state-owned";
        case Dataset::Orgs: return "--orgs";
        case Dataset::Memberships: return "--memberships";
        case Dataset::Hegemony: return "--hegemony";
        case Dataset::Clique: return "--clique";
        case Dataset::MultiOrigin: return "--multi-origin";
        case Dataset::Reserved: return "--reserved";
        case Dataset::Traceroutes: return "--traceroutes";
    }
    return "";
}

CLI::Validator unit_decimal() {
    return CLI::Validator(
        [](std::string& text) -> std::string {
            try {
                const Rational v = parse_decimal(text);
                if (v < 0 || v > 1) return "must lie in [0,1]";
            } catch (const std::invalid_argument&) {
                return "not a decimal number: " + text;
            }
            return {};
        },
        "DECIMAL");
}

CLI::Validator country_code() {
    return CLI::Validator(
        [](std::string& text) -> std::string {
            return CountryCode::parse(text) ? std::string() : "not a two-letter country code: " + text;
        },
        "CC");
}

std::string sha256_hex(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string data = buf.str();
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    std::ostringstream hex;
    for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

json exact(const Rational& v) {
    return json{{"num", boost::multiprecision::numerator(v).str()},
                {"den", boost::multiprecision::denominator(v).str()},
                {"value", format_fixed(v, 12)}};
}

/// Writes report files into the output directory and remembers their names.
class Outputs {
  public:
    explicit Outputs(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    template <class Fn>
    void write(const std::string& name, Fn&& fn) {
        std::ofstream out(dir_ / name, std::ios::binary);
        if (!out) throw InputError("cannot write " + (dir_ / name).string());
        fn(out);
        names_.push_back(name);
    }
    const std::vector<std::string>& names() const { return names_; }
    const fs::path& dir() const { return dir_; }

  private:
    fs::path dir_;
    std::vector<std::string> names_;
};

struct Loaded {
    ingest::DatasetBundle bundle;
    std::map<Dataset, fs::path> paths;
};

Loaded load(const Options& opt, const std::set<Dataset>& required) {
    Loaded loaded;
    for (Dataset d : ingest::all_datasets()) {
        fs::path p;
        if (auto it = opt.files.find(d); it != opt.files.end())
            p = it->second;
        else if (!opt.data_dir.empty())
            p = fs::path(opt.data_dir) / ingest::default_file_name(d);
        if (p.empty() || !fs::is_regular_file(p)) {
            if (required.count(d))
                throw InputError("missing input file: " +
                                 (p.empty() ? std::string(ingest::default_file_name(d)) : p.string()));
            continue;
        }
        loaded.paths.emplace(d, p);
    }
    loaded.bundle = ingest::load_bundle(ingest::open_from_paths(loaded.paths), required);
    std::size_t rejected = 0;
    for (const auto& [file, rows] : loaded.bundle.rejections) rejected += rows.size();
    std::cerr << "cti: loaded " << loaded.bundle.paths.size() << " paths, " << loaded.bundle.monitors.size()
              << " monitors, " << loaded.bundle.relationships.size() << " relationships; " << rejected
              << " input rows rejected\n";
    return loaded;
}

analysis::Config make_config(const Options& opt) {
    analysis::Config c;
    c.outlier_filter = !opt.no_outlier_filter;
    c.filter.min_hosts = opt.min_hosts;
    c.filter.trim = parse_decimal(opt.trim);
    c.org.marginal = parse_decimal(opt.org_marginal);
    c.org.ctin_threshold = parse_decimal(opt.org_ctin);
    c.candidates.origination_floor = parse_decimal(opt.origin_floor);
    c.candidates.min_candidate_fraction = parse_decimal(opt.candidate_fraction);
    c.candidates.max_countries = opt.max_countries;
    c.dominance_threshold = parse_decimal(opt.dominance);
    return c;
}

std::vector<CountryCode> target_countries(const Options& opt, const analysis::Analysis& a) {
    if (opt.countries.empty()) return a.countries();
    std::set<CountryCode> out;
    for (const auto& c : opt.countries) out.insert(CountryCode(c));
    return {out.begin(), out.end()};
}

/// Ingest and path-hygiene logs plus the run manifest.
void write_common(Outputs& out, const std::string& command, const Options& opt, const Loaded& loaded,
                  const analysis::Analysis* a) {
    out.write("ingest_rejections.csv", [&](std::ostream& os) {
        os << "file,line,reason,text\n";
        for (const auto& [file, rows] : loaded.bundle.rejections)
            for (const auto& r : rows) os << file << ',' << r.line << ',' << r.reason << ",\"" << r.text << "\"\n";
    });
    if (a) {
        out.write("rejections.csv", [&](std::ostream& os) { pathprep::write_rejections(os, a->prepared().rejections); });
        if (opt.dump_geo) out.write("geo_table.csv", [&](std::ostream& os) { geo::write_geo_table(os, a->geo()); });
        if (!a->geo_log().empty())
            out.write("geo_log.txt", [&](std::ostream& os) {
                for (const auto& line : a->geo_log()) os << line << '\n';
            });
    }

    json manifest;
    manifest["command"] = command;
    auto& inputs = manifest["inputs"] = json::array();
    for (const auto& [d, path] : loaded.paths)
        inputs.push_back({{"dataset", ingest::default_file_name(d)}, {"path", path.string()},
                          {"sha256", sha256_hex(path)}});
    manifest["config"] = {{"countries", opt.countries},
                          {"format", opt.format},
                          {"outlier_filter", !opt.no_outlier_filter},
                          {"min_hosts", opt.min_hosts},
                          {"trim", opt.trim},
                          {"dominance_threshold", opt.dominance},
                          {"org_marginal", opt.org_marginal},
                          {"org_ctin_threshold", opt.org_ctin},
                          {"origin_floor", opt.origin_floor},
                          {"candidate_fraction", opt.candidate_fraction},
                          {"max_countries", opt.max_countries}};
    std::vector<std::string> outputs = out.names();
    outputs.push_back("manifest.json");
    manifest["outputs"] = outputs;
    out.write("manifest.json", [&](std::ostream& os) { os << manifest.dump(2) << '\n'; });
}

report::Format format_of(const Options& opt) { return opt.format == "json" ? report::Format::Json : report::Format::Csv; }
std::string ext(const Options& opt) { return opt.format == "json" ? ".json" : ".csv"; }

const std::set<Dataset> kCore{Dataset::Paths, Dataset::Relationships, Dataset::Geo, Dataset::Monitors};

std::set<Dataset> with(std::set<Dataset> base, std::initializer_list<Dataset> extra) {
    base.insert(extra);
    return base;
}

int run_cti(const Options& opt) {
    auto loaded = load(opt, kCore);
    const analysis::Analysis a(loaded.bundle, make_config(opt));
    const auto countries = target_countries(opt, a);
    auto results = analysis::parallel_map(countries, opt.workers,
                                          [&](CountryCode c) { return a.filtered_cti(a.context(c)); });
    MetricReport merged{"cti", {}};
    std::vector<outlier::AuditRow> audit;
    for (auto& r : results) {
        merged.merge(r.report);
        audit.insert(audit.end(), r.audit.begin(), r.audit.end());
    }
    Outputs out(opt.out);
    out.write("cti" + ext(opt), [&](std::ostream& os) { report::write(os, merged, format_of(opt)); });
    out.write("outliers.csv", [&](std::ostream& os) { outlier::write_audit(os, audit); });
    write_common(out, "cti", opt, loaded, &a);
    std::cerr << "cti: " << merged.entries.size() << " scores for " << countries.size() << " countries\n";
    return 0;
}

std::vector<conglomerate::FootprintRow> footprints(const Options& opt, const analysis::Analysis& a) {
    const auto countries = target_countries(opt, a);
    auto rows = analysis::parallel_map(countries, opt.workers, [&](CountryCode c) { return a.footprint(a.context(c)); });
    std::vector<conglomerate::FootprintRow> out;
    for (auto& r : rows)
        if (r) out.push_back(std::move(*r));
    return out;
}

int run_ctin(const Options& opt) {
    auto loaded = load(opt, with(kCore, {Dataset::StateOwned}));
    const analysis::Analysis a(loaded.bundle, make_config(opt));
    MetricReport ctin{"ctin", {}};
    for (const auto& row : footprints(opt, a)) ctin.set(row.country, row.label, row.ctin);
    Outputs out(opt.out);
    out.write("ctin" + ext(opt), [&](std::ostream& os) { report::write(os, ctin, format_of(opt)); });
    write_common(out, "ctin", opt, loaded, &a);
    return 0;
}

int run_footprint(const Options& opt) {
    auto loaded = load(opt, with(kCore, {Dataset::StateOwned}));
    const analysis::Analysis a(loaded.bundle, make_config(opt));
    const auto rows = footprints(opt, a);
    Outputs out(opt.out);
    if (opt.format == "json") {
        out.write("footprint.json", [&](std::ostream& os) {
            json doc = json::array();
            for (const auto& r : rows)
                doc.push_back({{"country", r.country.str()},
                               {"label", r.label},
                               {"ctin", exact(r.ctin)},
                               {"originated_fraction", exact(r.originated)},
                               {"footprint", exact(r.footprint)}});
            os << doc.dump(2) << '\n';
        });
    } else {
        out.write("footprint.csv", [&](std::ostream& os) { conglomerate::write_footprints(os, rows); });
    }
    write_common(out, "footprint", opt, loaded, &a);
    return 0;
}

int run_org(const Options& opt) {
    auto loaded = load(opt, with(kCore, {Dataset::Orgs}));
    const analysis::Analysis a(loaded.bundle, make_config(opt));
    const auto countries = target_countries(opt, a);
    auto per_country = analysis::parallel_map(countries, opt.workers, [&](CountryCode c) {
        const auto ctx = a.context(c);
        return a.org(ctx, a.filtered_cti(ctx).report);
    });
    std::vector<conglomerate::OrgAggregate> rows;
    for (auto& r : per_country) rows.insert(rows.end(), r.begin(), r.end());
    Outputs out(opt.out);
    if (opt.format == "json") {
        out.write("org.json", [&](std::ostream& os) {
            json doc = json::array();
            for (const auto& r : rows) {
                json members = json::array();
                for (const auto& [asn, v] : r.members) members.push_back({{"asn", asn.value()}, {"cti", exact(v)}});
                doc.push_back({{"country", r.country.str()},
                               {"org", r.org},
                               {"members", members},
                               {"cti_sum", exact(r.sum)},
                               {"top_asn", r.top.value()},
                               {"top_share", exact(r.top_share)},
                               {"marginal", r.marginal},
                               {"org_ctin", r.ctin ? exact(*r.ctin) : json()},
                               {"top_share_of_ctin", r.top_share_of_ctin ? exact(*r.top_share_of_ctin) : json()}});
            }
            os << doc.dump(2) << '\n';
        });
    } else {
        out.write("org.csv", [&](std::ostream& os) { conglomerate::write_org_rows(os, rows); });
    }
    write_common(out, "org", opt, loaded, &a);
    return 0;
}

int run_transit(const Options& opt) {
    auto loaded = load(opt, with(kCore, {Dataset::Traceroutes}));
    const analysis::Analysis a(loaded.bundle, make_config(opt));
    const auto countries = target_countries(opt, a);
    const auto rows =
        analysis::parallel_map(countries, opt.workers, [&](CountryCode c) { return a.transit_fraction(c); });
    Outputs out(opt.out);
    if (opt.format == "json") {
        out.write("transit_fraction.json", [&](std::ostream& os) {
            json doc = json::array();
            for (const auto& r : rows)
                doc.push_back({{"country", r.country.str()},
                               {"T", exact(r.t)},
                               {"verdict", r.dominant ? "transit-dominant" : "not-dominant"},
                               {"threshold", exact(r.threshold)}});
            os << doc.dump(2) << '\n';
        });
    } else {
        out.write("transit_fraction.csv", [&](std::ostream& os) { transit::write_transit_rows(os, rows); });
    }
    write_common(out, "transit-fraction", opt, loaded, &a);
    return 0;
}

int run_candidates(const Options& opt) {
    auto loaded = load(opt, kCore);
    const analysis::Analysis a(loaded.bundle, make_config(opt));
    const auto countries = target_countries(opt, a);
    auto rows = analysis::parallel_map(countries, opt.workers, [&](CountryCode c) { return a.candidates(c); });
    transit::select_countries(rows, a.config().candidates);
    Outputs out(opt.out);
    out.write("candidates.csv", [&](std::ostream& os) { transit::write_candidates(os, rows); });
    out.write("candidate_countries.csv", [&](std::ostream& os) { transit::write_candidate_countries(os, rows); });
    write_common(out, "candidates", opt, loaded, &a);
    return 0;
}

int run_clh(const Options& opt) {
    auto loaded = load(opt, with(kCore, {Dataset::Hegemony}));
    const analysis::Analysis a(loaded.bundle, make_config(opt));
    const auto countries = target_countries(opt, a);
    const auto reports = analysis::parallel_map(countries, opt.workers, [&](CountryCode c) { return a.clh(c); });
    MetricReport merged{"clh", {}};
    for (const auto& r : reports) merged.merge(r);
    Outputs out(opt.out);
    out.write("clh" + ext(opt), [&](std::ostream& os) { report::write(os, merged, format_of(opt)); });
    write_common(out, "clh", opt, loaded, &a);
    return 0;
}

MetricReport read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("missing input file: " + path);
    try {
        return report::read_any(in);
    } catch (const ParseError& e) {
        throw e.within(path);
    }
}

int run_compare(const std::string& a_path, const std::string& b_path, const std::string& type,
                const std::string& sets, const std::string& out_file) {
    const auto stats = clh::compare_reports(read_report(a_path), read_report(b_path));
    const clh::DiffRow row{type, sets.empty() ? a_path + " vs " + b_path : sets, stats};
    if (out_file.empty()) {
        clh::write_diff_rows(std::cout, std::span(&row, 1));
    } else {
        std::ofstream out(out_file, std::ios::binary);
        if (!out) throw InputError("cannot write " + out_file);
        clh::write_diff_rows(out, std::span(&row, 1));
    }
    return 0;
}

int run_synth(const std::string& preset, std::optional<std::uint64_t> seed, bool above_top, bool inject,
              const std::string& out_dir) {
    synth::Topology topo;
    if (preset == "toy-fig1")
        topo = synth::toy_fig1(above_top);
    else if (seed)
        topo = synth::generate_topology(*seed, synth::params_for_seed(*seed));
    else
        throw std::invalid_argument("synth needs --preset toy-fig1 or --seed N");
    auto corpus = synth::build_corpus(std::move(topo));
    std::vector<synth::Injection> injections;
    if (inject) injections = synth::inject_anomalies(corpus, corpus.topo.seed + 1, synth::InjectionRates{});
    synth::write_files(synth::render(corpus), out_dir);
    if (inject) {
        std::ofstream out(fs::path(out_dir) / "injections.csv", std::ios::binary);
        synth::write_manifest(out, injections);
    }
    std::cerr << "cti: wrote " << corpus.paths.size() << " paths for " << corpus.topo.all_ases().size()
              << " ASes to " << out_dir << '\n';
    return 0;
}

int run_oracle_check(std::uint64_t first, std::size_t count, unsigned workers) {
    std::vector<std::uint64_t> seeds(count);
    for (std::size_t i = 0; i < count; ++i) seeds[i] = first + i;
    const auto results = analysis::parallel_map(seeds, workers, [](std::uint64_t s) {
        auto corpus = synth::build_corpus(synth::generate_topology(s, synth::params_for_seed(s)));
        return oracle::check_files(synth::render(corpus));
    });
    std::size_t failed = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (results[i].ok()) continue;
        ++failed;
        for (const auto& m : results[i].mismatches) std::cout << "seed " << seeds[i] << ": " << m << '\n';
    }
    std::cout << "oracle-check: " << count - failed << "/" << count << " instances agree\n";
    return failed == 0 ? 0 : 1;
}

void add_data_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--data", opt.data_dir, "Directory holding the standard input files");
    for (Dataset d : ingest::all_datasets()) {
        const std::string flag = flag_name(d);
        cmd->add_option_function<std::string>(
            flag, [&opt, d](const std::string& v) { opt.files[d] = v; },
            std::string("Override ") + ingest::default_file_name(d));
    }
    cmd->add_option("--country", opt.countries, "Target countries (default: every country with addresses)")
        ->delimiter(',')
        ->check(country_code());
    cmd->add_option("--out", opt.out, "Output directory")->capture_default_str();
    cmd->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd->add_option("--workers", opt.workers, "Countries evaluated concurrently")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
    cmd->add_option("--min-hosts", opt.min_hosts, "Monitor-hosting ASes needed before outlier filtering")
        ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()))
        ->capture_default_str();
    cmd->add_option("--trim", opt.trim, "Fraction of hosts dropped from each tail")->check(unit_decimal())->capture_default_str();
    cmd->add_flag("--no-outlier-filter", opt.no_outlier_filter, "Report CTI without outlier filtering");
    cmd->add_option("--dominance-threshold", opt.dominance, "T(C) at or above which a country is transit-dominant")
        ->check(unit_decimal())
        ->capture_default_str();
    cmd->add_option("--org-marginal", opt.org_marginal, "Organization CTI sum below which a pair is marginal")
        ->check(unit_decimal())
        ->capture_default_str();
    cmd->add_option("--org-ctin-threshold", opt.org_ctin, "Organization CTI sum above which CTIn is computed")
        ->check(unit_decimal())
        ->capture_default_str();
    cmd->add_option("--origin-floor", opt.origin_floor, "Minimum address fraction for candidate origins")
        ->check(unit_decimal())
        ->capture_default_str();
    cmd->add_option("--candidate-fraction", opt.candidate_fraction, "Candidate address fraction a country needs")
        ->check(unit_decimal())
        ->capture_default_str();
    cmd->add_option("--max-countries", opt.max_countries, "Countries kept by candidate selection")->capture_default_str();
    cmd->add_flag("--dump-geo", opt.dump_geo, "Also write the per-prefix address table");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Country-level transit influence from BGP paths"};
    app.require_subcommand(1);

    Options opt;
    std::map<std::string, std::function<int(const Options&)>> data_commands{
        {"cti", run_cti},           {"ctin", run_ctin},
        {"footprint", run_footprint}, {"org", run_org},
        {"transit-fraction", run_transit}, {"candidates", run_candidates},
        {"clh", run_clh},
    };
    const std::map<std::string, std::string> help{
        {"cti", "Transit influence of every AS on inbound paths"},
        {"ctin", "Influence of the state-owned AS set"},
        {"footprint", "State footprint: CTIn plus directly originated addresses"},
        {"org", "CTI aggregated by organization"},
        {"transit-fraction", "Share of inbound traceroutes entering through foreign providers"},
        {"candidates", "Origins without evidence of international peering"},
        {"clh", "Country-level aggregation of published Hegemony scores"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, fn] : data_commands) {
        subs[name] = app.add_subcommand(name, help.at(name));
        add_data_options(subs[name], opt);
    }

    std::string cmp_a, cmp_b, cmp_type = "cti", cmp_sets, cmp_out;
    auto* compare = app.add_subcommand("compare", "Absolute-difference statistics between two reports");
    compare->add_option("--a", cmp_a, "First report (CSV or JSON)")->required();
    compare->add_option("--b", cmp_b, "Second report (CSV or JSON)")->required();
    compare->add_option("--type", cmp_type, "Value for the type column")->capture_default_str();
    compare->add_option("--sets", cmp_sets, "Value for the compared_sets column");
    compare->add_option("--out", cmp_out, "Output file (default: stdout)");

    std::string preset, synth_out;
    std::optional<std::uint64_t> seed;
    bool above_top = false, inject = false;
    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic input corpus");
    synth_cmd->add_option("--preset", preset, "Named fixture")->check(CLI::IsMember({"toy-fig1"}));
    synth_cmd->add_option("--seed", seed, "Random instance seed");
    synth_cmd->add_flag("--monitor-above-top", above_top, "toy-fig1: host the monitor one AS above the top AS");
    synth_cmd->add_flag("--inject-anomalies", inject, "Rewrite some paths with loops, prepending, poisoning");
    synth_cmd->add_option("--out", synth_out, "Output directory")->required();

    std::uint64_t first_seed = 1;
    std::size_t seed_count = 500;
    unsigned oracle_workers = 1;
    auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare pipeline and naive evaluation on synthetic instances");
    oracle_cmd->add_option("--first-seed", first_seed)->capture_default_str();
    oracle_cmd->add_option("--seeds", seed_count, "Number of instances")->capture_default_str();
    oracle_cmd->add_option("--workers", oracle_workers)->check(CLI::Range(1u, 256u))->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        for (const auto& [name, fn] : data_commands)
            if (subs[name]->parsed()) return fn(opt);
        if (compare->parsed()) return run_compare(cmp_a, cmp_b, cmp_type, cmp_sets, cmp_out);
        if (synth_cmd->parsed()) return run_synth(preset, seed, above_top, inject, synth_out);
        if (oracle_cmd->parsed()) return run_oracle_check(first_seed, seed_count, oracle_workers);
    } catch (const InputError& e) {
        std::cerr << "cti: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "cti: " << e.what() << '\n';
        return 3;
    } catch (const ComputeError& e) {
        std::cerr << "cti: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "cti: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
