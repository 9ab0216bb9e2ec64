#pragma once
//
// On-disk cache for coefficient tables
//
// Binary layout (little endian throughout):
//
//   offset  size  field
//   0       5     magic "SCSV1"
//   5       1     kind  (u8, CoefficientKind)
//   6       1     degree (u8)
//   7       8     length N (u64)
//   15      8N    values (f64 bit patterns)
//   15+8N   8     FNV-1a 64 checksum over bytes 5 .. 15+8N-1
//
// Writes go to a temp file in the destination directory followed by an
// atomic rename, so a crashed writer can never leave a half-written table
// under the final name.  The cache directory comes from $SHIFTCONV_CACHE,
// falling back to ./cache.
//

#include <filesystem>
#include <string>

#include "shiftconv/coefficients.hpp"

namespace shiftconv {

std::filesystem::path default_cache_dir();

// label -> canonical file name, e.g. "tau4_100000.scs"
std::string cache_file_name(const CoefficientTable& t);

void save_table(const CoefficientTable& t, const std::filesystem::path& file);

// Throws resource_error on missing file, bad magic, truncation or checksum
// mismatch.  The label is recovered from the file stem.
CoefficientTable load_table(const std::filesystem::path& file);

struct CacheEntryInfo {
    bool ok = false;
    std::string message;
    CoefficientKind kind = CoefficientKind::divisor;
    int degree = 0;
    uint64_t length = 0;
};

// Header + checksum validation without keeping the table in memory.
CacheEntryInfo verify_cache_file(const std::filesystem::path& file);

} // namespace shiftconv
