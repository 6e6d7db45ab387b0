#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sami/model.hpp"

namespace sami {

inline constexpr std::size_t kMaxTags = 16;
inline constexpr std::size_t kMaxDescriptionChars = 2048;

// Controlled tag vocabulary. A default-constructed vocabulary accepts any
// lowercase tag.
class Vocabulary {
public:
    Vocabulary() = default;
    explicit Vocabulary(std::set<std::string> tags) : tags_(std::move(tags)) {}

    // One lowercase tag per line; blank lines and '#' comments are skipped.
    static Vocabulary load(const std::filesystem::path& path);

    bool restricted() const { return tags_.has_value(); }
    bool contains(const std::string& tag) const { return !tags_ || tags_->count(tag) > 0; }
    const std::optional<std::set<std::string>>& tags() const { return tags_; }

private:
    std::optional<std::set<std::string>> tags_;
};

struct Violation {
    std::string field;
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

std::string format_violation(const Violation& v);

// Schema checks on a descriptor, in a fixed order. Empty result means the
// descriptor conforms.
std::vector<Violation> enforce_standard(const ServiceDescriptor& desc, const Vocabulary& vocab = {});

}  // namespace sami
