#include "cti/report.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <boost/algorithm/string/split.hpp>
#include <boost/algorithm/string/trim.hpp>
#include "json.hpp"

namespace cti::report {

namespace {

bool has_labels(const MetricReport& report) {
    for (const auto& [key, value] : report.entries)
        if (std::holds_alternative<std::string>(key.subject)) return true;
    return false;
}

std::string metric_name(const MetricReport& report) { return report.metric.empty() ? "value" : report.metric; }

}  // namespace

void write_csv(std::ostream& out, const MetricReport& report) {
    out << "country," << (has_labels(report) ? "label" : "asn") << ',' << metric_name(report) << '\n';
    for (const auto& [key, value] : report.entries)
        out << key.country.str() << ',' << subject_str(key.subject) << ',' << format_fixed(value, 12) << '\n';
}

void write_json(std::ostream& out, const MetricReport& report) {
    nlohmann::ordered_json doc;
    doc["metric"] = metric_name(report);
    auto& rows = doc["entries"] = nlohmann::ordered_json::array();
    for (const auto& [key, value] : report.entries) {
        nlohmann::ordered_json row;
        row["country"] = key.country.str();
        if (const auto* asn = std::get_if<Asn>(&key.subject))
            row["asn"] = asn->value();
        else
            row["label"] = std::get<std::string>(key.subject);
        row["num"] = boost::multiprecision::numerator(value).str();
        row["den"] = boost::multiprecision::denominator(value).str();
        row["value"] = format_fixed(value, 12);
        rows.push_back(std::move(row));
    }
    out << doc.dump(2) << '\n';
}

void write(std::ostream& out, const MetricReport& report, Format format) {
    if (format == Format::Json)
        write_json(out, report);
    else
        write_csv(out, report);
}

MetricReport read_csv(std::istream& in) {
    MetricReport report;
    std::string line;
    std::size_t lineno = 0;
    bool labels = false;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        boost::algorithm::trim(line);
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> cols;
        boost::algorithm::split(cols, line, [](char c) { return c == ','; });
        if (cols.size() != 3) throw ParseError(lineno, "expected 3 columns");
        if (!header) {
            if (cols[0] != "country" || (cols[1] != "asn" && cols[1] != "label"))
                throw ParseError(lineno, "expected header country,asn|label,<metric>");
            labels = cols[1] == "label";
            report.metric = cols[2];
            header = true;
            continue;
        }
        auto country = CountryCode::parse(cols[0]);
        if (!country) throw ParseError(lineno, "bad country '" + cols[0] + "'");
        Subject subject = std::string();
        if (labels) {
            subject = cols[1];
        } else {
            auto asn = Asn::parse(cols[1]);
            if (!asn) throw ParseError(lineno, "bad asn '" + cols[1] + "'");
            subject = *asn;
        }
        Rational value;
        try {
            value = parse_rational(cols[2]);
        } catch (const std::invalid_argument&) {
            throw ParseError(lineno, "bad value '" + cols[2] + "'");
        }
        if (report.entries.count(ReportKey{*country, subject})) throw ParseError(lineno, "duplicate row");
        report.set(*country, std::move(subject), std::move(value));
    }
    if (!header) throw ParseError(lineno, "missing header");
    return report;
}

MetricReport read_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("invalid JSON: ") + e.what());
    }
    MetricReport report;
    try {
        report.metric = doc.at("metric").get<std::string>();
        std::size_t index = 0;
        for (const auto& row : doc.at("entries")) {
            ++index;
            auto country = CountryCode::parse(row.at("country").get<std::string>());
            if (!country) throw ParseError(index, "bad country");
            Subject subject = std::string();
            if (row.contains("asn")) {
                const auto v = row.at("asn").get<std::uint64_t>();
                if (v == 0 || v > 0xffffffffULL) throw ParseError(index, "bad asn");
                subject = Asn(static_cast<std::uint32_t>(v));
            } else {
                subject = row.at("label").get<std::string>();
            }
            const BigInt num(row.at("num").get<std::string>());
            const BigInt den(row.at("den").get<std::string>());
            if (den == 0) throw ParseError(index, "zero denominator");
            report.set(*country, std::move(subject), Rational(num, den));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("malformed report: ") + e.what());
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const ParseError*>(&e)) throw;
        throw ParseError(0, std::string("malformed number: ") + e.what());
    }
    return report;
}

MetricReport read_any(std::istream& in) {
    in >> std::ws;
    if (in.peek() == '{') return read_json(in);
    return read_csv(in);
}

}  // namespace cti::report
