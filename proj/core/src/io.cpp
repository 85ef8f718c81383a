#include "hardy/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "hardy/error.hpp"

namespace hardy {

namespace {

using nlohmann::json;

const json& field(const json& object, const char* name) {
  auto it = object.find(name);
  if (it == object.end()) {
    throw Error(ErrorCode::MalformedInput, std::string("missing field \"") + name + "\"");
  }
  return *it;
}

std::int64_t integer_field(const json& object, const char* name) {
  const auto& value = field(object, name);
  if (!value.is_number_integer()) {
    throw Error(ErrorCode::MalformedInput, std::string("field \"") + name + "\" must be an integer");
  }
  return value.get<std::int64_t>();
}

}  // namespace

HaarExpansion parse_expansion(std::string_view text) {
  // Repeated object keys are silently collapsed by the parser, so track them.
  std::vector<std::set<std::string>> keys;
  std::string duplicate;
  json::parser_callback_t callback = [&](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        keys.emplace_back();
        break;
      case json::parse_event_t::object_end:
        keys.pop_back();
        break;
      case json::parse_event_t::key:
        if (!keys.back().insert(parsed.get<std::string>()).second && duplicate.empty()) {
          duplicate = parsed.get<std::string>();
        }
        break;
      default:
        break;
    }
    return true;
  };
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), callback);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, std::string("malformed JSON: ") + e.what());
  }
  if (!duplicate.empty()) {
    throw Error(ErrorCode::DuplicateKey, "duplicate object key \"" + duplicate + "\"");
  }
  return expansion_from_json(doc);
}

HaarExpansion expansion_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::MalformedInput, "expansion must be a JSON object");
  const auto max_level = integer_field(doc, "max_level");
  const auto dimension = integer_field(doc, "dimension");
  if (max_level < 0 || max_level > kMaxExpansionLevel) {
    throw Error(ErrorCode::OutOfRange, "max_level " + std::to_string(max_level) +
                                           " outside [0, " + std::to_string(kMaxExpansionLevel) + "]");
  }
  if (dimension < 1 || dimension > (1 << 20)) {
    throw Error(ErrorCode::OutOfRange, "dimension " + std::to_string(dimension) + " out of range");
  }
  const auto& entries = field(doc, "coefficients");
  if (!entries.is_array()) throw Error(ErrorCode::MalformedInput, "\"coefficients\" must be an array");

  std::map<DyadicInterval, std::vector<double>> coefficients;
  for (const auto& entry : entries) {
    if (!entry.is_object()) throw Error(ErrorCode::MalformedInput, "coefficient must be an object");
    const auto level = integer_field(entry, "level");
    const auto pos = integer_field(entry, "pos");
    if (level < 0 || level > max_level) {
      throw Error(ErrorCode::OutOfRange, "level " + std::to_string(level) + " outside [0, " +
                                             std::to_string(max_level) + "]");
    }
    if (pos < 0 || pos >= (std::int64_t{1} << level)) {
      throw Error(ErrorCode::OutOfRange, "pos " + std::to_string(pos) + " outside [0, 2^" +
                                             std::to_string(level) + ")");
    }
    const auto& value = field(entry, "value");
    if (!value.is_array()) throw Error(ErrorCode::MalformedInput, "\"value\" must be an array");
    if (static_cast<std::int64_t>(value.size()) != dimension) {
      throw Error(ErrorCode::DimensionMismatch,
                  "value of " + std::to_string(level) + "/" + std::to_string(pos) + " has length " +
                      std::to_string(value.size()) + ", expected " + std::to_string(dimension));
    }
    std::vector<double> vec;
    for (const auto& x : value) {
      if (!x.is_number()) throw Error(ErrorCode::MalformedInput, "coefficient entries must be numbers");
      vec.push_back(x.get<double>());
    }
    const DyadicInterval interval(static_cast<int>(level), static_cast<std::uint32_t>(pos));
    if (!coefficients.emplace(interval, std::move(vec)).second) {
      throw Error(ErrorCode::DuplicateKey, "duplicate coefficient " + interval.key());
    }
  }
  return HaarExpansion(static_cast<int>(max_level), static_cast<int>(dimension), coefficients);
}

nlohmann::ordered_json expansion_to_json(const HaarExpansion& u) {
  nlohmann::ordered_json doc;
  doc["max_level"] = u.max_level();
  doc["dimension"] = u.dimension();
  auto entries = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto value = u.value(i);
    entries.push_back({{"level", u.interval(i).level()},
                       {"pos", u.interval(i).position()},
                       {"value", std::vector<double>(value.begin(), value.end())}});
  }
  doc["coefficients"] = std::move(entries);
  return doc;
}

HaarExpansion load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_expansion(buffer.str());
}

void save(const std::filesystem::path& path, const HaarExpansion& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << expansion_to_json(u).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace hardy
