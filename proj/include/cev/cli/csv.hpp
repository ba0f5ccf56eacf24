#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace cev::csv {

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line where the record starts
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;

  // Column position of name, or -1.
  long column(const std::string& name) const;
};

// RFC-4180 reader. The header is mandatory and every record must have as
// many fields as the header. Blank trailing lines are ignored.
Table read(std::istream& in);

// Quotes a field when it contains a comma, quote or line break.
std::string escape(const std::string& field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace cev::csv
