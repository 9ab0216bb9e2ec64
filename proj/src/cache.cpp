#include "shiftconv/cache.hpp"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <vector>

#include <unistd.h>

namespace shiftconv {

namespace {

constexpr char kMagic[5] = {'S', 'C', 'S', 'V', '1'};

uint64_t fnv1a64(const uint8_t* data, size_t n, uint64_t h = 14695981039346656037ULL) {
    for (size_t i = 0; i < n; ++i) {
        h ^= data[i];
        h *= 1099511628211ULL;
    }
    return h;
}

void put_u64(std::vector<uint8_t>& buf, uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint64_t get_u64(const uint8_t* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(p[i]) << (8 * i);
    return v;
}

} // namespace

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("SHIFTCONV_CACHE"); env && *env)
        return std::filesystem::path(env);
    return std::filesystem::path("cache");
}

std::string cache_file_name(const CoefficientTable& t) {
    std::string label = t.label.empty() ? std::string(kind_name(t.kind)) : t.label;
    for (char& c : label)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') c = '_';
    return label + "_" + std::to_string(t.size()) + ".scs";
}

void save_table(const CoefficientTable& t, const std::filesystem::path& file) {
    if (t.degree < 0 || t.degree > 255)
        throw config_error("save_table: degree does not fit the header byte");

    std::vector<uint8_t> payload;
    payload.reserve(10 + 8 * t.values.size());
    payload.push_back(static_cast<uint8_t>(t.kind));
    payload.push_back(static_cast<uint8_t>(t.degree));
    put_u64(payload, static_cast<uint64_t>(t.values.size()));
    for (double v : t.values) {
        uint64_t bits;
        std::memcpy(&bits, &v, 8);
        put_u64(payload, bits);
    }
    const uint64_t sum = fnv1a64(payload.data(), payload.size());

    const std::filesystem::path dir = file.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    const std::filesystem::path tmp =
        file.string() + ".tmp." + std::to_string(static_cast<unsigned>(::getpid()));
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw resource_error("save_table: cannot open " + tmp.string());
        os.write(kMagic, 5);
        os.write(reinterpret_cast<const char*>(payload.data()),
                 static_cast<std::streamsize>(payload.size()));
        std::vector<uint8_t> tail;
        put_u64(tail, sum);
        os.write(reinterpret_cast<const char*>(tail.data()), 8);
        if (!os) throw resource_error("save_table: short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
}

namespace {

// shared loader; values == nullptr means header/checksum verification only
CacheEntryInfo read_file(const std::filesystem::path& file, std::vector<double>* values) {
    CacheEntryInfo info;
    std::ifstream is(file, std::ios::binary);
    if (!is) {
        info.message = "cannot open " + file.string();
        return info;
    }
    std::vector<uint8_t> raw((std::istreambuf_iterator<char>(is)),
                             std::istreambuf_iterator<char>());
    if (raw.size() < 23) {
        info.message = "truncated header";
        return info;
    }
    if (std::memcmp(raw.data(), kMagic, 5) != 0) {
        info.message = "bad magic";
        return info;
    }
    const uint8_t kind_raw = raw[5];
    if (kind_raw > 3) {
        info.message = "unknown kind byte";
        return info;
    }
    info.kind = static_cast<CoefficientKind>(kind_raw);
    info.degree = raw[6];
    info.length = get_u64(raw.data() + 7);
    const uint64_t need = 5 + 10 + 8 * info.length + 8;
    if (raw.size() != need) {
        info.message = "size mismatch (" + std::to_string(raw.size()) + " bytes, expected " +
                       std::to_string(need) + ")";
        return info;
    }
    const uint64_t stored = get_u64(raw.data() + raw.size() - 8);
    const uint64_t sum = fnv1a64(raw.data() + 5, raw.size() - 13);
    if (stored != sum) {
        info.message = "checksum mismatch";
        return info;
    }
    if (values) {
        values->resize(info.length);
        for (uint64_t i = 0; i < info.length; ++i) {
            const uint64_t bits = get_u64(raw.data() + 15 + 8 * i);
            double v;
            std::memcpy(&v, &bits, 8);
            (*values)[i] = v;
        }
    }
    info.ok = true;
    info.message = "ok";
    return info;
}

} // namespace

CoefficientTable load_table(const std::filesystem::path& file) {
    std::vector<double> values;
    const CacheEntryInfo info = read_file(file, &values);
    if (!info.ok) throw resource_error("load_table: " + file.string() + ": " + info.message);
    CoefficientTable t;
    t.label = file.stem().string();
    t.degree = info.degree;
    t.kind = info.kind;
    t.values = std::move(values);
    return t;
}

CacheEntryInfo verify_cache_file(const std::filesystem::path& file) {
    return read_file(file, nullptr);
}

} // namespace shiftconv
