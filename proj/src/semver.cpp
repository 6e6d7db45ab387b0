#include "sami/semver.hpp"

#include <algorithm>
#include <charconv>

namespace sami {

namespace {

bool is_numeric(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_ident_char(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '-';
}

std::optional<std::uint64_t> parse_core_number(std::string_view s) {
    if (!is_numeric(s) || (s.size() > 1 && s[0] == '0')) return std::nullopt;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

bool valid_identifiers(const std::vector<std::string_view>& ids, bool forbid_leading_zero) {
    for (auto id : ids) {
        if (id.empty() || !std::all_of(id.begin(), id.end(), is_ident_char)) return false;
        if (forbid_leading_zero && is_numeric(id) && id.size() > 1 && id[0] == '0') return false;
    }
    return true;
}

}  // namespace

std::optional<SemVer> SemVer::parse(std::string_view text) {
    std::string_view rest = text;
    if (auto plus = rest.find('+'); plus != std::string_view::npos) {
        if (!valid_identifiers(split(rest.substr(plus + 1), '.'), false)) return std::nullopt;
        rest = rest.substr(0, plus);
    }
    std::string_view pre;
    bool has_pre = false;
    if (auto dash = rest.find('-'); dash != std::string_view::npos) {
        pre = rest.substr(dash + 1);
        rest = rest.substr(0, dash);
        has_pre = true;
    }
    auto core = split(rest, '.');
    if (core.size() != 3) return std::nullopt;
    SemVer v;
    auto maj = parse_core_number(core[0]);
    auto min = parse_core_number(core[1]);
    auto pat = parse_core_number(core[2]);
    if (!maj || !min || !pat) return std::nullopt;
    v.major = *maj;
    v.minor = *min;
    v.patch = *pat;
    if (has_pre) {
        auto ids = split(pre, '.');
        if (!valid_identifiers(ids, true)) return std::nullopt;
        for (auto id : ids) v.prerelease.emplace_back(id);
    }
    return v;
}

std::strong_ordering compare(const SemVer& a, const SemVer& b) {
    if (auto c = a.major <=> b.major; c != 0) return c;
    if (auto c = a.minor <=> b.minor; c != 0) return c;
    if (auto c = a.patch <=> b.patch; c != 0) return c;
    // A version without prerelease has higher precedence.
    if (a.prerelease.empty() || b.prerelease.empty()) {
        return a.prerelease.empty() <=> b.prerelease.empty();
    }
    const auto n = std::min(a.prerelease.size(), b.prerelease.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = a.prerelease[i];
        const auto& y = b.prerelease[i];
        const bool xn = is_numeric(x);
        const bool yn = is_numeric(y);
        if (xn && yn) {
            if (auto c = x.size() <=> y.size(); c != 0) return c;
            if (auto c = x <=> y; c != 0) return c;
        } else if (xn != yn) {
            return xn ? std::strong_ordering::less : std::strong_ordering::greater;
        } else if (auto c = x <=> y; c != 0) {
            return c;
        }
    }
    return a.prerelease.size() <=> b.prerelease.size();
}

}  // namespace sami
