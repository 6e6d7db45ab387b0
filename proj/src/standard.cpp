#include "sami/standard.hpp"

#include <algorithm>
#include <fstream>

#include "sami/error.hpp"
#include "sami/semver.hpp"

namespace sami {

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot open vocabulary file " + path.string());
    std::set<std::string> tags;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        auto last = line.find_last_not_of(" \t\r");
        tags.insert(line.substr(first, last - first + 1));
    }
    return Vocabulary(std::move(tags));
}

std::string format_violation(const Violation& v) {
    return v.field + ": " + v.message;
}

namespace {

bool is_lowercase_tag(const std::string& tag) {
    return !tag.empty() && std::none_of(tag.begin(), tag.end(), [](char c) { return c >= 'A' && c <= 'Z'; }) &&
           std::none_of(tag.begin(), tag.end(), [](char c) { return c == ' ' || c == '\t' || c == '\n'; });
}

}  // namespace

std::vector<Violation> enforce_standard(const ServiceDescriptor& desc, const Vocabulary& vocab) {
    std::vector<Violation> out;
    if (desc.id.empty()) out.push_back({"id", "required field missing"});
    if (desc.name.empty()) out.push_back({"name", "required field missing"});
    if (desc.version.empty()) {
        out.push_back({"version", "required field missing"});
    } else if (!SemVer::parse(desc.version)) {
        out.push_back({"version", "'" + desc.version + "' is not a semantic version (MAJOR.MINOR.PATCH)"});
    }
    if (desc.capability_tags.empty()) out.push_back({"capability_tags", "at least one tag is required"});
    if (desc.capability_tags.size() > kMaxTags) {
        out.push_back({"capability_tags", "tag count " + std::to_string(desc.capability_tags.size()) +
                                              " exceeds limit of " + std::to_string(kMaxTags)});
    }
    for (const auto& tag : desc.capability_tags) {
        if (!is_lowercase_tag(tag)) {
            out.push_back({"capability_tags", "tag '" + tag + "' must be a lowercase word"});
        } else if (!vocab.contains(tag)) {
            out.push_back({"capability_tags", "tag '" + tag + "' is not in the controlled vocabulary"});
        }
    }
    if (desc.description.size() > kMaxDescriptionChars) {
        out.push_back({"description", "length " + std::to_string(desc.description.size()) + " exceeds " +
                                          std::to_string(kMaxDescriptionChars) + " characters"});
    }
    const std::pair<const char*, double> demands[] = {
        {"cpu_demand", desc.cpu_demand},     {"mem_demand", desc.mem_demand},
        {"storage_demand", desc.storage_demand}, {"payload_in", desc.payload_in},
        {"payload_out", desc.payload_out},
    };
    for (const auto& [field, value] : demands) {
        if (!(value >= 0)) out.push_back({field, "must be non-negative"});
    }
    if (!(desc.sla_latency_ms > 0)) out.push_back({"sla_latency_ms", "must be > 0"});
    return out;
}

}  // namespace sami
