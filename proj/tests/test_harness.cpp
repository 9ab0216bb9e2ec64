//
// Suite runner plumbing: parameter validation, report structure on disk,
// thread-count independence of artifacts, atomic writes, number formatting
// and the cache maintenance actions.
//

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "shiftconv/cache.hpp"
#include "shiftconv/errors.hpp"
#include "shiftconv/harness.hpp"
#include "support/testkit.hpp"

using namespace shiftconv;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* leaf) {
    fs::path d = fs::temp_directory_path() / leaf;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp_text(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

size_t count_occurrences(const std::string& hay, const std::string& needle) {
    size_t n = 0;
    for (size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

} // namespace

TEST_CASE("suite names round-trip and unknowns are rejected") {
    for (const char* s : {"delta", "stationary", "dual", "scan", "coeffs", "all"})
        CHECK(std::string(suite_name(parse_suite(s))) == s);
    CHECK_THROWS_AS(parse_suite("omega"), config_error);
    CHECK_THROWS_AS(parse_suite(""), config_error);
}

TEST_CASE("unknown and malformed parameters are rejected") {
    RunConfig cfg;
    cfg.suite = Suite::scan;
    cfg.out_dir = fresh_dir("shiftconv_badparam");
    cfg.params["no_such_knob"] = "1";
    CHECK_THROWS_AS(run_suite(cfg), config_error);
    cfg.params.clear();
    cfg.params["pmin"] = "eleven";
    CHECK_THROWS_AS(run_suite(cfg), config_error);
    cfg.params.clear();
    cfg.params["pmin"] = "40";   // out of range
    CHECK_THROWS_AS(run_suite(cfg), config_error);
    cfg.params.clear();
    cfg.params["pmin"] = "10";
    cfg.params["pmax"] = "9";    // inverted
    CHECK_THROWS_AS(run_suite(cfg), config_error);
    // the umbrella suite accepts no overrides at all
    cfg.suite = Suite::all;
    cfg.params.clear();
    cfg.params["theta"] = "0.6";
    CHECK_THROWS_AS(run_suite(cfg), config_error);
    fs::remove_all(cfg.out_dir);
}

TEST_CASE("scan suite: report on disk, determinism across thread counts") {
    fs::path d1 = fresh_dir("shiftconv_scan_t1");
    fs::path d4 = fresh_dir("shiftconv_scan_t4");
    RunConfig cfg;
    cfg.suite = Suite::scan;
    cfg.params["kind"] = "ones";
    cfg.params["pmin"] = "8";
    cfg.params["pmax"] = "11";
    cfg.out_dir = d1;
    cfg.threads = 1;
    RunReport r1 = run_suite(cfg);
    cfg.out_dir = d4;
    cfg.threads = 4;
    RunReport r4 = run_suite(cfg);

    CHECK(r1.all_pass());
    CHECK(r4.all_pass());
    CHECK(fs::exists(d1 / "report.json"));
    CHECK(fs::exists(d1 / "scan.csv"));
    CHECK(fs::exists(d1 / "scan.svg"));

    const std::string csv1 = slurp_text(d1 / "scan.csv");
    const std::string csv4 = slurp_text(d4 / "scan.csv");
    CHECK(csv1 == csv4);
    CHECK(csv1.substr(0, csv1.find('\n')) == "N,H,B_sharp,B_smooth,log_slope_partial");

    const std::string rep = slurp_text(d1 / "report.json");
    CHECK(count_occurrences(rep, "\"schema_version\": 1") == 1);
    CHECK(count_occurrences(rep, "\"scan_slope\"") == 1);
    CHECK(count_occurrences(rep, "\"scan_points_included\"") == 1);

    // no temp droppings from the atomic writes
    for (const auto& e : fs::recursive_directory_iterator(d1))
        CHECK(e.path().string().find(".tmp.") == std::string::npos);
    fs::remove_all(d1);
    fs::remove_all(d4);
}

TEST_CASE("check names are unique within a report") {
    fs::path d = fresh_dir("shiftconv_uniqnames");
    RunConfig cfg;
    cfg.suite = Suite::scan;
    cfg.params["kind"] = "ones";
    cfg.params["pmin"] = "8";
    cfg.params["pmax"] = "10";
    cfg.out_dir = d;
    RunReport rep = run_suite(cfg);
    std::vector<std::string> names;
    for (const CheckResult& c : rep.checks) names.push_back(c.name);
    std::sort(names.begin(), names.end());
    CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
    CHECK(!rep.checks.empty());
    for (const CheckResult& c : rep.checks) CHECK(!c.detail.empty());
    fs::remove_all(d);
}

TEST_CASE("atomic text writes replace, not append") {
    fs::path d = fresh_dir("shiftconv_atomic");
    fs::path f = d / "x.txt";
    write_text_atomic(f, "first version\n");
    write_text_atomic(f, "second\n");
    CHECK(slurp_text(f) == "second\n");
    size_t entries = 0;
    for (const auto& e : fs::directory_iterator(d)) { (void)e; ++entries; }
    CHECK(entries == 1);  // no temp file left behind

    // a missing parent is created on the fly
    write_text_atomic(d / "sub" / "y.txt", "z\n");
    CHECK(slurp_text(d / "sub" / "y.txt") == "z\n");

    // but a parent blocked by a regular file is a resource failure
    CHECK_THROWS_AS(write_text_atomic(f / "under_a_file.txt", "y"), resource_error);
    fs::remove_all(d);
}

TEST_CASE("double formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -0.0, 12345.678901234567, 2.0}) {
        const std::string s = format_double(v);
        const double back = std::strtod(s.c_str(), nullptr);
        CHECK(back == v);
    }
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("parallel_for covers the range once and rethrows") {
    std::vector<int> hits(1000, 0);
    parallel_for(0, 1000, 8, [&](int64_t i) { hits[size_t(i)] += 1; });
    for (int h : hits) CHECK(h == 1);
    std::atomic<int> before{0};
    try {
        parallel_for(0, 100, 4, [&](int64_t i) {
            if (i == 57) throw domain_error("boom");
            before.fetch_add(1);
        });
        CHECK(false);  // must not get here
    } catch (const domain_error&) {
        CHECK(true);
    }
}

TEST_CASE("cache manager lists, verifies and purges") {
    fs::path d = fresh_dir("shiftconv_cachemgr");
    CoefficientTable t = gen_divisor(2, 64);
    save_table(t, d / cache_file_name(t));
    CoefficientTable u = gen_ramanujan(64);
    save_table(u, d / cache_file_name(u));

    std::ostringstream list_out;
    CHECK(cache_manager("list", d, list_out) == 0);
    CHECK(count_occurrences(list_out.str(), ".scs") == 2);

    std::ostringstream verify_out;
    CHECK(cache_manager("verify", d, verify_out) == 0);

    // corrupt one file: verify must now fail with the resource exit code
    {
        std::fstream f(d / cache_file_name(t),
                       std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(20);
        char c;
        f.seekg(20);
        f.get(c);
        c = char(c ^ 0x01);
        f.seekp(20);
        f.put(c);
    }
    std::ostringstream verify_bad;
    CHECK(cache_manager("verify", d, verify_bad) == 3);
    CHECK(verify_bad.str().find("BAD") != std::string::npos);

    std::ostringstream purge_out;
    CHECK(cache_manager("purge", d, purge_out) == 0);
    size_t left = 0;
    for (const auto& e : fs::directory_iterator(d)) { (void)e; ++left; }
    CHECK(left == 0);

    CHECK_THROWS_AS(cache_manager("defrag", d, purge_out), config_error);
    fs::remove_all(d);
}
