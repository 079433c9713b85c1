// Metric report serialization. CSV rows carry 12-decimal fixed values; JSON
// carries exact numerator/denominator strings alongside.
#pragma once

#include <iosfwd>
#include <string>

#include "cti/model.hpp"

namespace cti::report {

enum class Format { Csv, Json };

/// `country,asn,<metric>`, or `country,label,<metric>` when any subject is a label.
void write_csv(std::ostream& out, const MetricReport& report);
void write_json(std::ostream& out, const MetricReport& report);
void write(std::ostream& out, const MetricReport& report, Format format);

/// Inverse of write_csv. Values are parsed exactly from their decimal text.
/// Throws ParseError with the line number on malformed rows.
MetricReport read_csv(std::istream& in);
/// Inverse of write_json; exact.
MetricReport read_json(std::istream& in);
/// Chooses the reader by the first non-blank character ('{' means JSON).
MetricReport read_any(std::istream& in);

}  // namespace cti::report
