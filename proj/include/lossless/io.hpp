#pragma once

// CSV datasets and JSON documents for joints, maps, losses, markets and reports.
//
// Dataset CSV: header `x1,...,xd,y,z1,...,zdp`, comma separated, one record
// per line. Numbers are written in shortest round-trip form so that
// rewriting a file is byte-stable.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "lossless/discrete.hpp"
#include "lossless/partition_test.hpp"
#include "lossless/portfolio.hpp"
#include "lossless/risk_bounds.hpp"

namespace lossless::io {

using nlohmann::json;

/// Malformed input; the message names the line or JSON field path.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a dataset. Dimensions come from the header; when `d` or `d_prime`
/// are given they must agree with it.
Dataset read_dataset(std::istream& in, std::optional<std::size_t> d = {}, std::optional<std::size_t> d_prime = {});
Dataset read_dataset_file(const std::string& path, std::optional<std::size_t> d = {},
                          std::optional<std::size_t> d_prime = {});
void write_dataset(std::ostream& out, const Dataset& data);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

json to_json(const DiscreteJoint& joint);
json to_json(const DeterministicMap& map);
json to_json(const LossMatrix& loss);
json to_json(const MarketModel& market);
json to_json(const TestOutcome& outcome);
json to_json(const BoundReport& report);
json to_json(const GrowthReport& report);

/// `path` prefixes error messages, e.g. "joint".
DiscreteJoint joint_from_json(const json& j, const std::string& path = "joint");
DeterministicMap map_from_json(const json& j, const std::string& path = "map");
LossMatrix loss_from_json(const json& j, const std::string& path = "loss");
MarketModel market_from_json(const json& j, const std::string& path = "market");

json read_json_file(const std::string& path);

}  // namespace lossless::io
