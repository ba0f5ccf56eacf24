#include "cev/cli/csv.hpp"

#include <istream>
#include <iterator>
#include <ostream>

#include "cev/core/errors.hpp"

namespace cev::csv {

namespace {

bool blank(const Row& row) {
  return row.fields.size() == 1 && row.fields[0].empty();
}

}  // namespace

long Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<long>(i);
  }
  return -1;
}

Table read(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<Row> records;
  Row current;
  current.line = 1;
  std::string field;
  std::size_t line = 1;
  bool quoted = false;
  bool field_was_quoted = false;
  std::size_t i = 0;
  // Skip a UTF-8 byte order mark.
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) i = 3;
  auto end_record = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
    records.push_back(std::move(current));
    current = Row{};
    current.line = line;
  };
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          throw IngestionError("unexpected quote inside an unquoted field", line);
        }
        quoted = true;
        field_was_quoted = true;
        break;
      case ',':
        current.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        ++line;
        end_record();
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        if (field_was_quoted) {
          throw IngestionError("text after a closing quote", line);
        }
        field.push_back(c);
    }
  }
  if (quoted) throw IngestionError("unterminated quoted field", current.line);
  if (!field.empty() || field_was_quoted || !current.fields.empty()) end_record();

  while (!records.empty() && blank(records.back())) records.pop_back();
  if (records.empty()) throw IngestionError("missing CSV header", 1);
  Table table;
  table.header = std::move(records.front().fields);
  for (auto& name : table.header) {
    while (!name.empty() && (name.back() == ' ' || name.back() == '\t')) name.pop_back();
    while (!name.empty() && (name.front() == ' ' || name.front() == '\t')) name.erase(0, 1);
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].fields.size() != table.header.size()) {
      throw IngestionError("expected " + std::to_string(table.header.size()) +
                               " fields, found " + std::to_string(records[r].fields.size()),
                           records[r].line);
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

std::string escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

}  // namespace cev::csv
