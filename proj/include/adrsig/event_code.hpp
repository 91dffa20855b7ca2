#pragma once

#include <array>
#include <compare>
#include <string>
#include <string_view>

namespace adrsig {

/// A five-symbol hierarchical clinical event code such as "AB1a•".
///
/// Each symbol is one of 0-9, a-z, A-Z or the bullet `•`, which marks an
/// unused position. Bullets always form a suffix and the first symbol is never
/// a bullet, so every code sits at a level between 1 and 5. The level is the
/// number of leading non-bullet symbols; a code at level k is a more specific
/// version of its truncation to any level below k.
///
/// Parsing accepts the UTF-8 bullet and, as in many Read-code exports, an ASCII
/// `.` for it. Inputs shorter than five symbols are right-padded with bullets.
/// Codes are immutable once constructed.
class EventCode {
public:
    static constexpr int kLength = 5;
    static constexpr std::string_view kBullet = "•";

    /// Throws PreconditionError describing the defect when `text` is not a
    /// valid code.
    static EventCode parse(std::string_view text);

    /// Level in [1, 5].
    int level() const noexcept;

    /// Truncation to `target_level` symbols, padded with bullets.
    /// Requires 1 <= target_level <= level().
    EventCode ancestor(int target_level) const;

    /// True when this code equals `other` truncated to this code's level.
    bool is_ancestor_of(const EventCode& other) const noexcept;

    /// Canonical text with UTF-8 bullets.
    std::string str() const;

    friend auto operator<=>(const EventCode&, const EventCode&) = default;

private:
    static constexpr char kPad = '.';

    EventCode() = default;

    // kPad stands in for the bullet internally
    std::array<char, kLength> symbols_{};
};

inline int level(const EventCode& code) noexcept { return code.level(); }

inline EventCode ancestor(const EventCode& code, int target_level) {
    return code.ancestor(target_level);
}

inline bool is_ancestor(const EventCode& a, const EventCode& b) noexcept {
    return a.is_ancestor_of(b);
}

}  // namespace adrsig
