#include "adrsig/csv.hpp"

#include "adrsig/errors.hpp"

namespace adrsig::csv {

Reader::Reader(std::istream& in, std::string source_name)
    : in_(in), source_(std::move(source_name)) {}

std::optional<Record> Reader::next() {
    if (!started_) {
        started_ = true;
        if (in_.peek() == 0xEF) {
            char bom[3];
            in_.read(bom, 3);
            if (!(static_cast<unsigned char>(bom[1]) == 0xBB &&
                  static_cast<unsigned char>(bom[2]) == 0xBF))
                throw ParseError(source_, 1, "invalid byte order mark");
        }
    }
    if (in_.peek() == std::char_traits<char>::eof()) return std::nullopt;

    Record rec;
    rec.line = line_;
    std::string field;
    bool in_quotes = false;
    bool was_quoted = false;
    int ch;
    while ((ch = in_.get()) != std::char_traits<char>::eof()) {
        const char c = static_cast<char>(ch);
        if (in_quotes) {
            if (c == '"') {
                if (in_.peek() == '"') {
                    in_.get();
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line_;
                field += c;
            }
            continue;
        }
        if (c == ',') {
            rec.fields.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else if (c == '\r' && in_.peek() == '\n') {
            // CRLF, handled on the '\n'
        } else if (c == '\n') {
            ++line_;
            rec.fields.push_back(std::move(field));
            return rec;
        } else if (c == '"') {
            if (!field.empty() || was_quoted)
                throw ParseError(source_, line_, "unexpected quote inside unquoted field");
            in_quotes = true;
            was_quoted = true;
        } else {
            if (was_quoted)
                throw ParseError(source_, line_, "characters after closing quote");
            field += c;
        }
    }
    if (in_quotes) throw ParseError(source_, rec.line, "unterminated quoted field");
    rec.fields.push_back(std::move(field));
    return rec;
}

void expect_header(Reader& reader, const std::vector<std::string_view>& expected) {
    auto rec = reader.next();
    std::string want;
    for (auto h : expected) {
        if (!want.empty()) want += ',';
        want += h;
    }
    if (!rec) throw ParseError(reader.source_name(), 1, "missing header, expected " + want);
    bool ok = rec->fields.size() == expected.size();
    for (std::size_t i = 0; ok && i < expected.size(); ++i) ok = rec->fields[i] == expected[i];
    if (!ok) throw ParseError(reader.source_name(), rec->line, "bad header, expected " + want);
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\r\n") == std::string::npos) {
            out << f;
            continue;
        }
        out << '"';
        for (char c : f) {
            if (c == '"') out << '"';
            out << c;
        }
        out << '"';
    }
    out << '\n';
}

}  // namespace adrsig::csv
