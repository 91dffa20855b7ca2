#include "adrsig/event_code.hpp"

#include <algorithm>

#include "adrsig/errors.hpp"

namespace adrsig {

namespace {

bool is_code_symbol(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

}  // namespace

EventCode EventCode::parse(std::string_view text) {
    const std::string quoted = "\"" + std::string(text) + "\"";
    EventCode out;
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        char symbol;
        if (text.substr(i, kBullet.size()) == kBullet) {
            symbol = kPad;
            i += kBullet.size();
        } else if (text[i] == '.') {
            symbol = kPad;
            ++i;
        } else if (is_code_symbol(text[i])) {
            symbol = text[i];
            ++i;
        } else {
            throw PreconditionError("event code " + quoted + ": invalid symbol at byte " +
                                    std::to_string(i));
        }
        if (count == kLength)
            throw PreconditionError("event code " + quoted + ": longer than 5 symbols");
        out.symbols_[count++] = symbol;
    }
    std::fill(out.symbols_.begin() + static_cast<std::ptrdiff_t>(count), out.symbols_.end(), kPad);

    if (out.symbols_[0] == kPad)
        throw PreconditionError("event code " + quoted + ": first symbol is a bullet (level 0)");
    const auto first_pad = std::find(out.symbols_.begin(), out.symbols_.end(), kPad);
    if (std::any_of(first_pad, out.symbols_.end(), [](char c) { return c != kPad; }))
        throw PreconditionError("event code " + quoted + ": symbol after a bullet");
    return out;
}

int EventCode::level() const noexcept {
    const auto first_pad = std::find(symbols_.begin(), symbols_.end(), kPad);
    return static_cast<int>(first_pad - symbols_.begin());
}

EventCode EventCode::ancestor(int target_level) const {
    if (target_level < 1 || target_level > level())
        throw PreconditionError("ancestor level " + std::to_string(target_level) +
                                " outside [1, " + std::to_string(level()) + "] for " + str());
    EventCode out = *this;
    std::fill(out.symbols_.begin() + target_level, out.symbols_.end(), kPad);
    return out;
}

bool EventCode::is_ancestor_of(const EventCode& other) const noexcept {
    const int k = level();
    return k <= other.level() && std::equal(symbols_.begin(), symbols_.begin() + k,
                                            other.symbols_.begin());
}

std::string EventCode::str() const {
    std::string out;
    out.reserve(kLength * kBullet.size());
    for (char c : symbols_) {
        if (c == kPad)
            out += kBullet;
        else
            out += c;
    }
    return out;
}

}  // namespace adrsig
