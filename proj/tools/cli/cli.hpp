#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "majorana/trap_model.hpp"

namespace majorana::cli {

inline constexpr const char* tool_name = "majorana";
const char* tool_version();

enum class Command { derive, rate, sweep, table, verify };
enum class Format { csv, json };

struct SweepSpec {
    std::string parameter; // bias_field | radial_gradient | g_factor
    double from = 0.0;
    double to = 0.0;
    int steps = 0;

    void validate() const;
};

struct RunConfig {
    std::optional<TrapConfig> trap;
    Command command = Command::derive;
    std::optional<SweepSpec> sweep;
    std::optional<std::filesystem::path> output_path;
    Format format = Format::csv;
    int pmax = 8;                             // table
    std::optional<double> temperature_kelvin; // rate: thermal momentum form
    bool fast = false;                        // verify
};

/// Flat `key = value` document, `#` comments. Throws ValidationError naming
/// the key for unknown, duplicate, missing or out-of-domain entries.
TrapConfig parse_trap_config(std::istream& in);

/// Reads and validates a config file into a RunConfig with `trap` set.
/// I/O failures raise IoError.
RunConfig load_config(const std::filesystem::path& path);

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One table cell. Doubles render with 12 significant digits; strings carry
/// exact rationals verbatim.
using Cell = std::variant<double, long long, bool, std::string>;

struct Report {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Ordered metadata: tool, version, constants, flags, notes.
    std::vector<std::pair<std::string, std::string>> meta;
    /// Human-readable summary printed by `verify`.
    std::string text;
    /// A hard-gated check failed (verify) - maps to exit status 2.
    bool failed = false;
};

Report run(const RunConfig& config);

/// CSV: `# key: value` metadata lines, the header, then rows.
/// JSON: {"meta": {...}, "columns": [...], "rows": [{column: value}, ...]}.
void write_output(const Report& report, std::ostream& out, Format format);

/// Throws IoError when the file cannot be written.
void write_output(const Report& report, const std::filesystem::path& path, Format format);

std::string format_double(double value);

/// Exit codes: 0 ok, 1 validation, 2 computation/oracle, 3 I/O.
int main_entry(int argc, char** argv);

} // namespace majorana::cli
