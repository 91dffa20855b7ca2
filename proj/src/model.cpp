#include "adrsig/model.hpp"

#include "adrsig/errors.hpp"

namespace adrsig {

std::string normalize_text(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    }
    return out;
}

DrugId::DrugId(std::string_view raw) : id_(normalize_text(raw)) {
    if (id_.empty()) throw PreconditionError("empty drug identifier");
}

EventName::EventName(std::string_view raw) : name_(normalize_text(raw)) {
    if (name_.empty()) throw PreconditionError("empty event name");
}

std::string_view to_string(Gender gender) {
    switch (gender) {
        case Gender::Male: return "M";
        case Gender::Female: return "F";
        case Gender::Unknown: break;
    }
    return "";
}

std::optional<Gender> parse_gender(std::string_view text) {
    const std::string g = normalize_text(text);
    if (g == "m" || g == "male") return Gender::Male;
    if (g == "f" || g == "female") return Gender::Female;
    if (g.empty() || g == "u" || g == "unknown") return Gender::Unknown;
    return std::nullopt;
}

const EventCode& EventKey::code() const {
    if (const auto* c = std::get_if<EventCode>(&value_)) return *c;
    throw PreconditionError("event key " + str() + " is a name, not a code");
}

const EventName& EventKey::name() const {
    if (const auto* n = std::get_if<EventName>(&value_)) return *n;
    throw PreconditionError("event key " + str() + " is a code, not a name");
}

std::string EventKey::str() const {
    if (const auto* c = std::get_if<EventCode>(&value_)) return c->str();
    return std::get<EventName>(value_).str();
}

}  // namespace adrsig
