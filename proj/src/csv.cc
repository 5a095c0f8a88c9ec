#include "csv.h"

namespace chartnav::csv {

std::vector<Record> Parse(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<Record> records;
  Record current;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool line_has_content = false;
  std::size_t record_number = 1;

  auto end_field = [&] {
    current.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    if (line_has_content) {
      end_field();
      records.push_back(std::move(current));
      ++record_number;
    }
    current.clear();
    field.clear();
    field_was_quoted = false;
    line_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          throw CsvError(record_number, "record " + std::to_string(record_number) +
                                            ": stray quote inside unquoted field");
        }
        in_quotes = true;
        field_was_quoted = true;
        line_has_content = true;
        break;
      case ',':
        end_field();
        line_has_content = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        if (field_was_quoted) {
          throw CsvError(record_number, "record " + std::to_string(record_number) +
                                            ": text after closing quote");
        }
        field.push_back(c);
        line_has_content = true;
        break;
    }
  }
  if (in_quotes) {
    throw CsvError(record_number, "record " + std::to_string(record_number) +
                                      ": unterminated quoted field");
  }
  end_record();
  return records;
}

}  // namespace chartnav::csv
