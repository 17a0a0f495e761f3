#include "lossless/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace lossless::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool is_indexed(std::string_view name, char prefix, std::size_t index) {
  return !name.empty() && name.front() == prefix && name.substr(1) == std::to_string(index);
}

std::pair<std::size_t, std::size_t> parse_header(std::string_view header) {
  const auto cols = split(header);
  std::size_t d = 0;
  while (d < cols.size() && is_indexed(cols[d], 'x', d + 1)) ++d;
  if (d == 0 || d >= cols.size() || cols[d] != "y") {
    throw FormatError("line 1: header must read x1,...,xd,y,z1,...,zdp");
  }
  std::size_t dp = 0;
  for (std::size_t c = d + 1; c < cols.size(); ++c, ++dp) {
    if (!is_indexed(cols[c], 'z', dp + 1)) throw FormatError("line 1: header must read x1,...,xd,y,z1,...,zdp");
  }
  return {d, dp};
}

double parse_number(std::string_view field, std::size_t line, std::size_t column) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw FormatError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": '" +
                      std::string(field) + "' is not a number");
  }
  return v;
}

[[noreturn]] void schema(const std::string& path, const std::string& what) { throw FormatError(path + ": " + what); }

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(path + "." + key, "missing");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "expected a number");
  return j.get<double>();
}

std::size_t index(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) schema(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<double>> matrix(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array of arrays");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(numbers(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

// Converts library validation failures into schema diagnostics.
template <typename F>
auto validated(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const std::invalid_argument& e) {
    schema(path, e.what());
  }
}

}  // namespace

Dataset read_dataset(std::istream& in, std::optional<std::size_t> d, std::optional<std::size_t> d_prime) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty dataset");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto [hd, hdp] = parse_header(line);
  if (d && *d != hd) throw FormatError("line 1: header has d=" + std::to_string(hd) + ", expected " + std::to_string(*d));
  if (d_prime && *d_prime != hdp) {
    throw FormatError("line 1: header has d'=" + std::to_string(hdp) + ", expected " + std::to_string(*d_prime));
  }
  const std::size_t width = hd + 1 + hdp;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != width) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) + " fields, found " +
                        std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < width; ++c) {
      const double v = parse_number(fields[c], line_no, c + 1);
      if (!std::isfinite(v)) throw FormatError("line " + std::to_string(line_no) + ": non-finite value");
      values.push_back(v);
    }
  }
  if (values.empty()) throw FormatError("empty dataset");
  return Dataset(hd, hdp, std::move(values));
}

Dataset read_dataset_file(const std::string& path, std::optional<std::size_t> d, std::optional<std::size_t> d_prime) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return read_dataset(in, d, d_prime);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_dataset(std::ostream& out, const Dataset& data) {
  std::string text;
  for (std::size_t j = 1; j <= data.d(); ++j) text += "x" + std::to_string(j) + ",";
  text += "y";
  for (std::size_t j = 1; j <= data.d_prime(); ++j) text += ",z" + std::to_string(j);
  text += '\n';
  for (std::size_t i = 0; i < data.n(); ++i) {
    const auto r = data.row(i);
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) text += ',';
      text += format_double(r[c]);
    }
    text += '\n';
  }
  out << text;
}

json to_json(const DiscreteJoint& joint) {
  const auto& s = joint.shape();
  return {{"shape", {s.ny, s.nx, s.nz}}, {"probs", std::vector<double>(joint.probs().begin(), joint.probs().end())}};
}

json to_json(const DeterministicMap& map) {
  return {{"table", std::vector<std::size_t>(map.table().begin(), map.table().end())}};
}

json to_json(const LossMatrix& loss) {
  json rows = json::array();
  for (std::size_t y = 0; y < loss.size(); ++y) {
    json row = json::array();
    for (std::size_t d = 0; d < loss.size(); ++d) row.push_back(loss(y, d));
    rows.push_back(row);
  }
  return {{"cost", rows}};
}

json to_json(const MarketModel& market) {
  return {{"d_a", market.assets()},
          {"returns", market.returns()},
          {"joint", to_json(market.joint())},
          {"map", to_json(market.map())}};
}

json to_json(const TestOutcome& o) {
  return {{"L_n", o.L_n},         {"t_n", o.t_n}, {"m", o.m},           {"m_prime", o.m_prime},
          {"m_dprime", o.m_dprime}, {"h", o.h},     {"reject", o.reject}, {"type1_bound", o.type1_bound}};
}

json to_json(const BoundReport& r) {
  json j = {{"delta_I", r.delta_I},
            {"bound", r.bound},
            {"excess", r.excess},
            {"corollary", std::string(corollary_tag(r.corollary))},
            {"holds", r.holds}};
  if (r.caller_asserted) j["caller_asserted"] = true;
  return j;
}

json to_json(const GrowthReport& r) {
  return {{"W_star", r.W_star}, {"W_star_X", r.W_star_X}, {"W_star_Z", r.W_star_Z}, {"I_RX", r.I_RX},
          {"I_RZ", r.I_RZ},     {"gap", r.gap},           {"mi_gap", r.mi_gap},     {"holds", r.holds}};
}

DiscreteJoint joint_from_json(const json& j, const std::string& path) {
  const json& shape = field(j, "shape", path);
  if (!shape.is_array() || shape.size() != 3) schema(path + ".shape", "expected [|Y|, |X|, |Z|]");
  const JointShape s{index(shape[0], path + ".shape[0]"), index(shape[1], path + ".shape[1]"),
                     index(shape[2], path + ".shape[2]")};
  std::vector<double> probs = numbers(field(j, "probs", path), path + ".probs");
  if (probs.size() != s.volume()) {
    schema(path + ".probs", "expected " + std::to_string(s.volume()) + " entries, found " + std::to_string(probs.size()));
  }
  return validated(path, [&] { return DiscreteJoint(s, std::move(probs)); });
}

DeterministicMap map_from_json(const json& j, const std::string& path) {
  const json& table = field(j, "table", path);
  if (!table.is_array()) schema(path + ".table", "expected an array");
  std::vector<std::size_t> t;
  for (std::size_t i = 0; i < table.size(); ++i) t.push_back(index(table[i], path + ".table[" + std::to_string(i) + "]"));
  std::size_t z_size = 0;
  if (j.contains("z_size")) z_size = index(j["z_size"], path + ".z_size");
  return validated(path, [&] { return DeterministicMap(std::move(t), z_size); });
}

LossMatrix loss_from_json(const json& j, const std::string& path) {
  const auto rows = matrix(field(j, "cost", path), path + ".cost");
  return validated(path, [&] { return LossMatrix(rows); });
}

MarketModel market_from_json(const json& j, const std::string& path) {
  auto returns = matrix(field(j, "returns", path), path + ".returns");
  DiscreteJoint joint = joint_from_json(field(j, "joint", path), path + ".joint");
  DeterministicMap map = map_from_json(field(j, "map", path), path + ".map");
  if (j.contains("d_a")) {
    const std::size_t d_a = index(j["d_a"], path + ".d_a");
    for (std::size_t k = 0; k < returns.size(); ++k)
      if (returns[k].size() != d_a) schema(path + ".returns[" + std::to_string(k) + "]", "length differs from d_a");
  }
  return validated(path, [&] { return MarketModel(std::move(returns), std::move(joint), std::move(map)); });
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace lossless::io
