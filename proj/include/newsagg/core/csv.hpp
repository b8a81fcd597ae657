#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace newsagg::core {

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using CsvRow = std::vector<std::string>;

// RFC 4180: comma separated, '"' quoting with doubled quotes, quoted fields
// may span lines. Accepts both LF and CRLF line ends.
std::vector<CsvRow> read_csv(std::istream& in);
std::vector<CsvRow> read_csv_file(const std::string& path);

void write_csv_row(std::ostream& out, const CsvRow& row);

}  // namespace newsagg::core
