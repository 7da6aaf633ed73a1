#include "prodspec/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "prodspec/error.hpp"

namespace prodspec {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_json(std::ostringstream& os, const Json& j, int indent, int level) {
  const bool pretty = indent >= 0;
  auto newline = [&](int lv) {
    if (pretty) os << '\n' << std::string(static_cast<std::size_t>(indent * lv), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ',';
        first = false;
        newline(level + 1);
        os << Json(k).dump() << (pretty ? ": " : ":");
        write_json(os, v, indent, level + 1);
      }
      newline(level);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line so interval lists remain readable.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      os << '[';
      bool first = true;
      for (const Json& e : j) {
        if (!first) os << (flat && pretty ? ", " : ",");
        first = false;
        if (!flat) newline(level + 1);
        write_json(os, e, indent, level + 1);
      }
      if (!flat) newline(level);
      os << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isfinite(x))
        os << format_number(x);
      else
        os << '"' << format_number(x) << '"';
      return;
    }
    default:
      os << j.dump();
  }
}

int letter_of(const Json& b) {
  if (b.is_number_integer()) return b.get<int>();
  if (b.is_string()) {
    const std::string s = b.get<std::string>();
    if (s.size() == 1 && s[0] >= 'a' && s[0] <= 'z') return s[0] - 'a';
  }
  throw ValidationError("coding letter must be an integer or a single lowercase letter");
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::ostringstream os;
  write_json(os, j, indent, 0);
  return os.str();
}

Json to_json(const IntervalUnion& u) {
  Json a = Json::array();
  for (const Interval& iv : u.intervals()) a.push_back(Json::array({iv.lo, iv.hi}));
  return a;
}

IntervalUnion intervals_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("intervals must be a JSON array of [lo, hi] pairs");
  std::vector<Interval> out;
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw ValidationError("each interval must be a [lo, hi] pair of numbers");
    out.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  return IntervalUnion(std::move(out));
}

Substitution substitution_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rules") || !j["rules"].is_object() || j["rules"].empty())
    throw ValidationError("substitution must look like {\"rules\": {\"a\": \"ab\", ...}}");
  std::vector<std::pair<std::string, std::string>> rules;
  for (const auto& [k, v] : j["rules"].items()) {
    if (!v.is_string()) throw ValidationError("rule for '" + k + "' must be a string");
    rules.emplace_back(k, v.get<std::string>());
  }
  return Substitution::from_strings(rules);
}

CodingSequence coding_from_json(const Json& j) {
  const Json& c = j.is_object() ? j.value("coding", Json()) : j;
  if (!c.is_array() || c.empty()) throw ValidationError("coding must look like {\"coding\": [[b, n], ...]}");
  std::vector<CodingEntry> entries;
  for (const Json& e : c) {
    if (!e.is_array() || e.size() != 2 || !e[1].is_number_integer())
      throw ValidationError("each coding entry must be a [letter, n] pair");
    entries.push_back({letter_of(e[0]), e[1].get<int>()});
  }
  // Binary codings whose letters alternate get the v-recursion.
  bool alternating = true;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].letter != 0 && entries[i].letter != 1) alternating = false;
    if (i > 0 && entries[i].letter == entries[i - 1].letter) alternating = false;
  }
  return CodingSequence(std::move(entries), alternating);
}

SFunction sfunction_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ValidationError("s-function document needs a \"type\" field");
  const std::string type = j["type"].get<std::string>();
  if (type == "constant-length") {
    if (!j.contains("ell") || !j["ell"].is_number_unsigned())
      throw ValidationError("constant-length s-function needs a positive integer \"ell\"");
    const auto h = j.contains("h") ? j["h"].get<std::uint64_t>() : std::uint64_t{1};
    return sfun_constant_length(j["ell"].get<std::uint64_t>(), h);
  }
  if (type == "odometer") return sfun_odometer(coding_from_json(j));
  throw ValidationError("unknown s-function type '" + type + "' (expected constant-length or odometer)");
}

Json to_json(const SFunction& s) {
  Json j;
  Json mult = Json::object();
  for (const auto& [q, l] : s.multiplicities()) {
    if (l == SFunction::kInfinite)
      mult[std::to_string(q)] = "inf";
    else
      mult[std::to_string(q)] = l;
  }
  j["multiplicities"] = mult;
  j["one_shot"] = s.one_shot();
  return j;
}

TrigPolyTuple trig_tuple_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("components") || !j["components"].is_array())
    throw ValidationError("trig polynomial document needs a \"components\" array");
  TrigPolyTuple f;
  f.lambda = j.value("lambda", 1.0);
  for (const Json& comp : j["components"]) {
    if (!comp.is_array()) throw ValidationError("each component must be an array of {m, re, im} modes");
    std::vector<std::pair<int, cplx>> modes;
    for (const Json& m : comp) {
      if (!m.is_object() || !m.contains("m") || !m["m"].is_number_integer())
        throw ValidationError("each mode needs an integer \"m\"");
      modes.emplace_back(m["m"].get<int>(), cplx(m.value("re", 0.0), m.value("im", 0.0)));
    }
    f.components.push_back(TrigPoly::from_modes(modes));
  }
  if (f.components.empty()) throw ValidationError("trig polynomial needs at least one component");
  if (j.contains("p") && j["p"].get<int>() != f.p())
    throw ValidationError("\"p\" = " + std::to_string(j["p"].get<int>()) + " but " + std::to_string(f.p()) +
                          " components were given");
  return f;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed JSON in '" + path + "': " + e.what());
  }
}

CsvWriter::CsvWriter(std::ostream& os, const Json& config, const std::vector<std::string>& columns)
    : os_(os), columns_(columns.size()) {
  os_ << kCsvVersion << '\n' << "# config: " << dump_json(config, -1) << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
  os_ << '\n';
}

void CsvWriter::sep() {
  if (filled_ > 0) os_ << ',';
  ++filled_;
}

CsvWriter& CsvWriter::cell(double x) {
  sep();
  os_ << format_number(x);
  return *this;
}

CsvWriter& CsvWriter::cell(std::int64_t x) {
  sep();
  os_ << x;
  return *this;
}

CsvWriter& CsvWriter::cell(const std::string& s) {
  sep();
  os_ << s;
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw std::logic_error("CSV row has the wrong number of cells");
  os_ << '\n';
  filled_ = 0;
}

}  // namespace prodspec
