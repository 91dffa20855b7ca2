#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace adrsig::csv {

/// One parsed record and the physical line it started on.
struct Record {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

/// Streaming RFC-4180 reader: comma separated, double-quote quoting with ""
/// escapes, quoted fields may span lines, LF or CRLF terminators. A UTF-8 BOM
/// at the start of input is skipped.
class Reader {
public:
    Reader(std::istream& in, std::string source_name);

    /// Next record, or nullopt at end of input. Throws ParseError on an
    /// unterminated quote or stray characters after a closing quote.
    std::optional<Record> next();

    const std::string& source_name() const noexcept { return source_; }

private:
    std::istream& in_;
    std::string source_;
    std::size_t line_ = 1;
    bool started_ = false;
};

/// Reads the header record and checks it equals `expected` exactly.
/// Throws ParseError otherwise.
void expect_header(Reader& reader, const std::vector<std::string_view>& expected);

/// Writes one record, quoting fields that contain separators, quotes or
/// line breaks. Terminates with "\n".
void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace adrsig::csv
