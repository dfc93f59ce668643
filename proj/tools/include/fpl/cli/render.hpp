#pragma once

// Rendering of verifier results as text, JSON or CSV.
//
// JSON uses insertion-ordered objects and never floating point: rationals
// are "p/q" strings and integers outside +-2^53 are decimal strings, so a
// parse and re-dump of any emitted document reproduces it byte for byte.

#include "fpl/collatz.hpp"
#include "fpl/verifier.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace fpl::cli {

using Json = nlohmann::ordered_json;

enum class Format { text, json, csv };

[[nodiscard]] Json int_json(Int v);
[[nodiscard]] Json rational_json(const Rational& r);
[[nodiscard]] Json pair_json(const std::optional<std::pair<Int, Int>>& p);
[[nodiscard]] Json range_json(const verify::RangeSpec& r);
[[nodiscard]] Json lambda_json(const LambdaSpec& l);

/// Common header shared by every document: command and parameters.
struct Header {
    std::string command;
    Json params = Json::object();
    bool timing = false;
};

[[nodiscard]] Json to_json(const verify::VerificationReport& r, const Header& h);
[[nodiscard]] Json to_json(const verify::ConditionCoverageReport& r, const Header& h);
[[nodiscard]] Json to_json(const verify::LambdaSearchResult& r, const Header& h);
[[nodiscard]] Json to_json(const collatz::TrajectoryRecord& t, const Header& h);

void write(std::ostream& out, const verify::VerificationReport& r, const Header& h, Format f);
void write(std::ostream& out, const verify::ConditionCoverageReport& r, const Header& h, Format f);
void write(std::ostream& out, const verify::LambdaSearchResult& r, const Header& h, Format f);
void write(std::ostream& out, const collatz::TrajectoryRecord& t, const Header& h, Format f);

/// Quotes a CSV field when it contains a separator, quote or newline.
[[nodiscard]] std::string csv_field(std::string_view s);

} // namespace fpl::cli
