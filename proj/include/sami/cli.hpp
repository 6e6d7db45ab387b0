#pragma once

// Batch commands behind the `sami` binary. Each returns a process exit code:
// 0 success, 2 configuration/parse/standard errors, 3 NoAdmissibleNode at
// setup, 1 anything else. Diagnostics go to `err`.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace sami::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNoPlacement = 3;

enum class Format { Csv, Json, Both };

std::optional<Format> parse_format(std::string_view s);

// `seed` defaults to the scenario's own seed.
int cmd_run(const std::filesystem::path& scenario_path, std::optional<std::uint64_t> seed, const std::string& policy,
            const std::filesystem::path& out_dir, Format format, std::ostream& err);

int cmd_compare(const std::filesystem::path& scenario_path, std::optional<std::uint64_t> seed,
                const std::filesystem::path& out_dir, std::ostream& err);

// Prints every violation found, one per line, to `out`.
int cmd_validate(const std::filesystem::path& scenario_path, std::ostream& out, std::ostream& err);

// Registers the scenario's services, then answers one JSON envelope per
// input line with one JSON response per output line.
int cmd_request(const std::filesystem::path& scenario_path, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace sami::cli
