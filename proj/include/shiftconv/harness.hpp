#pragma once
//
// Suite runner and reporting
//
// A run is configured by (suite, params, out_dir, threads, seed), executes a
// fixed battery of named checks, and leaves two kinds of files in out_dir:
// CSV/SVG artifacts and a report.json describing every check exactly once.
// All files are written atomically (temp file + rename) after the whole
// suite has finished, so a crashed or interrupted run leaves no partial
// artifacts behind.
//
// Exit code convention (shared with the CLI):
//   0 all checks passed, 1 a check failed, 2 bad configuration,
//   3 resource/integrity problem.
//

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "shiftconv/errors.hpp"

namespace shiftconv {

enum class Suite { delta, stationary, dual, scan, coeffs, all };

Suite parse_suite(const std::string& name);   // config_error on unknown name
const char* suite_name(Suite s);

struct RunConfig {
    Suite suite = Suite::all;
    std::map<std::string, std::string> params;  // unknown keys are rejected
    std::filesystem::path out_dir = "out";
    int threads = 1;
    uint64_t seed = 1;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double expected = 0.0;   // the gate the measurement was compared against
    std::string detail;      // direction of the gate plus context
};

struct RunReport {
    int schema_version = 1;
    std::string suite;
    std::map<std::string, std::string> params;
    std::vector<CheckResult> checks;
    std::vector<std::string> artifacts;  // paths relative to out_dir
    double elapsed_seconds = 0.0;

    bool all_pass() const;
};

RunReport run_suite(const RunConfig& cfg);

void write_json_report(const RunReport& rep, const std::filesystem::path& file);

// temp-file-plus-rename text write
void write_text_atomic(const std::filesystem::path& file, const std::string& content);

// shortest representation that round-trips a double (printf %.17g)
std::string format_double(double v);

// cache directory maintenance; action is "list", "verify" or "purge".
// Returns a process exit code (verify: 3 if any entry fails).
int cache_manager(const std::string& action, const std::filesystem::path& dir,
                  std::ostream& out);

// Static-chunked parallel loop over [begin, end).  Items must be
// independent; each writes only its own slot, so results do not depend on
// the thread count.  Exceptions are captured and rethrown on the caller.
void parallel_for(int64_t begin, int64_t end, int threads,
                  const std::function<void(int64_t)>& fn);

} // namespace shiftconv
