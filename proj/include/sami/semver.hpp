#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sami {

// MAJOR.MINOR.PATCH[-prerelease][+build]; build metadata is ignored for
// precedence.
struct SemVer {
    std::uint64_t major = 0;
    std::uint64_t minor = 0;
    std::uint64_t patch = 0;
    std::vector<std::string> prerelease;

    static std::optional<SemVer> parse(std::string_view text);
};

std::strong_ordering compare(const SemVer& a, const SemVer& b);

inline bool operator<(const SemVer& a, const SemVer& b) { return compare(a, b) < 0; }
inline bool operator==(const SemVer& a, const SemVer& b) { return compare(a, b) == 0; }

}  // namespace sami
