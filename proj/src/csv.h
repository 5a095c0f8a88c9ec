#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chartnav::csv {

class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t record, const std::string& what)
      : std::runtime_error(what), record_(record) {}
  // 1-based record number; the header is record 1.
  std::size_t record() const { return record_; }

 private:
  std::size_t record_;
};

using Record = std::vector<std::string>;

// Comma separated, double-quote escaped ("" inside quotes), LF or CRLF line
// endings. A UTF-8 byte order mark and a trailing newline are ignored; fully
// blank lines are skipped.
std::vector<Record> Parse(std::string_view text);

}  // namespace chartnav::csv
