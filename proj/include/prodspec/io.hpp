#ifndef PRODSPEC_IO_HPP
#define PRODSPEC_IO_HPP

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "prodspec/intervals.hpp"
#include "prodspec/prodsys.hpp"
#include "prodspec/qpcocycle.hpp"
#include "prodspec/symdyn.hpp"

namespace prodspec {

using Json = nlohmann::ordered_json;

// %.17g for every finite double; non-finite values become the strings
// "inf", "-inf", "nan" since JSON has no literal for them.
std::string format_number(double x);
std::string dump_json(const Json& j, int indent = 2);

Json to_json(const IntervalUnion& u);  // [[lo, hi], ...]
IntervalUnion intervals_from_json(const Json& j);

// {"rules": {"a": "ab", "b": "ba"}}; letters in rule order.
Substitution substitution_from_json(const Json& j);
// {"coding": [[b, n], ...]} with b an index or a one-letter name ("a" = 0).
CodingSequence coding_from_json(const Json& j);
// {"type": "constant-length", "ell": 2, "h": 1} or {"type": "odometer", "coding": [...]}
SFunction sfunction_from_json(const Json& j);
Json to_json(const SFunction& s);
// {"p": 2, "lambda": 5, "components": [[{"m": 1, "re": 1, "im": 0}], ...]}
TrigPolyTuple trig_tuple_from_json(const Json& j);

Json read_json_file(const std::string& path);

class CsvWriter {
 public:
  // Writes the version line, the config echo and the column row.
  CsvWriter(std::ostream& os, const Json& config, const std::vector<std::string>& columns);
  CsvWriter& cell(double x);
  CsvWriter& cell(std::int64_t x);
  CsvWriter& cell(const std::string& s);
  void end_row();

 private:
  void sep();
  std::ostream& os_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

inline constexpr const char* kCsvVersion = "# prodspec-csv v1";

}  // namespace prodspec

#endif  // PRODSPEC_IO_HPP
