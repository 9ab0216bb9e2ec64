//
// shiftconv command-line driver
//
// Verbs map onto the library's check suites and table generators.  Verb
// options are bare KEY=VALUE tokens; only the four global flags use dashes.
// A --config file supplies KEY=VALUE defaults that explicit tokens override.
//
// Exit codes: 0 ok, 1 a check failed, 2 bad configuration, 3 resource
// problem (missing file, cache corruption, overflow).
//

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftconv/cache.hpp"
#include "shiftconv/coefficients.hpp"
#include "shiftconv/errors.hpp"
#include "shiftconv/harness.hpp"

namespace fs = std::filesystem;
using namespace shiftconv;

namespace {

const char* usage_text =
    "shiftconv - delta-symbol and shifted-convolution toolkit\n"
    "\n"
    "usage: shiftconv VERB [KEY=VALUE ...] [--threads N] [--seed S] [--out DIR]\n"
    "                 [--config FILE]\n"
    "\n"
    "verbs:\n"
    "  suite NAME        run a check suite: delta, stationary, dual, scan,\n"
    "                    coeffs or all\n"
    "  check-delta       shorthand for 'suite delta'      (keys: Q nmax eps)\n"
    "  check-stationary  shorthand for 'suite stationary' (keys: tol points)\n"
    "  check-dual        shorthand for 'suite dual'       (keys: N theta k)\n"
    "  scan              shorthand for 'suite scan'  (keys: kind theta pmin pmax)\n"
    "  gen               generate a coefficient table into the cache\n"
    "                    keys: kind=divisor|gl2|sym|random length=N\n"
    "                          [degree=D] [k=K] [dir=PATH]\n"
    "  report            print the report.json of a finished run (honors --out)\n"
    "  cache ACTION      cache maintenance: list, verify or purge  [dir=PATH]\n"
    "\n"
    "Suite artifacts and report.json land in --out (default 'out').  The\n"
    "cache directory defaults to $SHIFTCONV_CACHE, falling back to 'cache'.\n"
    "exit codes: 0 ok, 1 check failed, 2 bad configuration, 3 resource problem\n";

struct CliArgs {
    std::vector<std::string> pos;
    std::map<std::string, std::string> kv;
    std::optional<int> threads;
    std::optional<uint64_t> seed;
    std::optional<std::string> out;
    std::string config_file;
    bool help = false;
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

int64_t parse_int(const std::string& text, const char* what) {
    size_t pos = 0;
    int64_t v = 0;
    try {
        v = std::stoll(text, &pos);
    } catch (const std::exception&) {
        throw config_error(std::string(what) + " must be an integer, got '" + text + "'");
    }
    if (pos != text.size())
        throw config_error(std::string(what) + " must be an integer, got '" + text + "'");
    return v;
}

CliArgs parse_args(int argc, char** argv) {
    CliArgs a;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--help" || arg == "-h") {
            a.help = true;
            continue;
        }
        if (arg.rfind("--", 0) == 0) {
            std::string name = arg.substr(2), value;
            size_t eq = name.find('=');
            if (eq != std::string::npos) {
                value = name.substr(eq + 1);
                name = name.substr(0, eq);
            } else {
                if (i + 1 >= argc)
                    throw config_error("flag --" + name + " needs a value");
                value = argv[++i];
            }
            if (name == "threads") {
                int64_t t = parse_int(value, "--threads");
                if (t < 1 || t > 256) throw config_error("--threads out of range [1, 256]");
                a.threads = static_cast<int>(t);
            } else if (name == "seed") {
                a.seed = static_cast<uint64_t>(parse_int(value, "--seed"));
            } else if (name == "out") {
                a.out = value;
            } else if (name == "config") {
                a.config_file = value;
            } else {
                throw config_error("unknown flag --" + name);
            }
            continue;
        }
        size_t eq = arg.find('=');
        if (eq != std::string::npos && eq > 0) {
            a.kv[arg.substr(0, eq)] = arg.substr(eq + 1);
        } else {
            a.pos.push_back(arg);
        }
    }
    return a;
}

// config files hold one KEY=VALUE per line; '#' starts a comment.  The
// reserved keys threads, seed and out feed the corresponding flags; all
// other keys become suite parameters.  Explicit flags and tokens win.
void apply_config(CliArgs& a) {
    if (a.config_file.empty()) return;
    std::ifstream in(a.config_file);
    if (!in) throw config_error("cannot read config file " + a.config_file);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos || eq == 0)
            throw config_error(a.config_file + ":" + std::to_string(lineno) +
                               ": expected KEY=VALUE");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "threads") {
            if (!a.threads) {
                int64_t t = parse_int(value, "config threads");
                if (t < 1 || t > 256) throw config_error("config threads out of range");
                a.threads = static_cast<int>(t);
            }
        } else if (key == "seed") {
            if (!a.seed) a.seed = static_cast<uint64_t>(parse_int(value, "config seed"));
        } else if (key == "out") {
            if (!a.out) a.out = value;
        } else {
            a.kv.emplace(key, value);  // does not override explicit tokens
        }
    }
}

RunConfig make_run_config(const CliArgs& a, Suite suite) {
    RunConfig cfg;
    cfg.suite = suite;
    cfg.params = a.kv;
    if (a.threads) cfg.threads = *a.threads;
    if (a.seed) cfg.seed = *a.seed;
    if (a.out) cfg.out_dir = *a.out;
    return cfg;
}

int do_suite(const CliArgs& a, Suite suite) {
    RunConfig cfg = make_run_config(a, suite);
    RunReport rep = run_suite(cfg);
    int passed = 0;
    for (const CheckResult& c : rep.checks) {
        std::printf("[%s] %-32s measured %.6g  gate %.6g\n", c.pass ? " ok " : "FAIL",
                    c.name.c_str(), c.measured, c.expected);
        if (c.pass) ++passed;
    }
    std::printf("suite %s: %d/%zu checks passed in %.2f s; report %s\n",
                rep.suite.c_str(), passed, rep.checks.size(), rep.elapsed_seconds,
                (cfg.out_dir / "report.json").string().c_str());
    return rep.all_pass() ? exit_ok : exit_check;
}

int do_gen(const CliArgs& a) {
    auto get = [&](const char* key) -> std::optional<std::string> {
        auto it = a.kv.find(key);
        if (it == a.kv.end()) return std::nullopt;
        return it->second;
    };
    for (const auto& [k, v] : a.kv)
        if (k != "kind" && k != "length" && k != "degree" && k != "k" && k != "dir")
            throw config_error("unknown gen option '" + k + "'");

    std::string kind = get("kind").value_or("");
    if (kind.empty()) throw config_error("gen needs kind=divisor|gl2|sym|random");
    auto len_s = get("length");
    if (!len_s) throw config_error("gen needs length=N");
    int64_t length = parse_int(*len_s, "length");

    CoefficientTable t;
    if (kind == "divisor") {
        int64_t d = get("degree") ? parse_int(*get("degree"), "degree") : 2;
        t = gen_divisor(static_cast<int>(d), length);
    } else if (kind == "gl2") {
        t = gen_ramanujan(length);
    } else if (kind == "sym") {
        int64_t k = get("k") ? parse_int(*get("k"), "k") : 3;
        CoefficientTable base = gen_ramanujan(length);
        t = gen_sym_power(base, static_cast<int>(k), length);
    } else if (kind == "random") {
        int64_t d = get("degree") ? parse_int(*get("degree"), "degree") : 4;
        uint64_t seed = a.seed.value_or(1);
        t = gen_random_model(length, seed, static_cast<int>(d));
    } else {
        throw config_error("gen kind must be divisor, gl2, sym or random");
    }

    fs::path dir = get("dir") ? fs::path(*get("dir")) : default_cache_dir();
    fs::create_directories(dir);
    fs::path file = dir / cache_file_name(t);
    save_table(t, file);
    std::printf("wrote %s  (%s, degree %d, length %lld)\n", file.string().c_str(),
                kind_name(t.kind), t.degree, static_cast<long long>(t.size()));
    return exit_ok;
}

// Pretty-print a report produced by this tool.  The format is our own
// line-oriented JSON, so a scan for the fixed field markers is reliable.
int do_report(const CliArgs& a) {
    fs::path dir = a.out ? fs::path(*a.out) : fs::path("out");
    if (a.pos.size() > 2) throw config_error("report takes at most one path");
    if (a.pos.size() == 2) {
        // accept either the run directory or the report file itself
        fs::path p(a.pos[1]);
        dir = p.filename() == "report.json" ? p.parent_path() : p;
    }
    fs::path file = dir / "report.json";
    std::ifstream in(file);
    if (!in) throw config_error("no report at " + file.string());
    auto field = [](const std::string& line, const char* marker) -> std::string {
        size_t p = line.find(marker);
        if (p == std::string::npos) return "";
        p += std::strlen(marker);
        size_t e = line.find_first_of(",}\"", p);
        if (e == std::string::npos) e = line.size();
        return line.substr(p, e - p);
    };
    auto quoted = [](const std::string& line, const char* marker) -> std::string {
        size_t p = line.find(marker);
        if (p == std::string::npos) return "";
        p += std::strlen(marker);
        size_t e = line.find('"', p);
        if (e == std::string::npos) return "";
        return line.substr(p, e - p);
    };
    std::string line;
    bool all_pass = true;
    bool any = false;
    while (std::getline(in, line)) {
        if (line.find("\"suite\"") != std::string::npos)
            std::printf("suite: %s\n", quoted(line, "\"suite\": \"").c_str());
        if (line.find("\"name\"") == std::string::npos) continue;
        any = true;
        std::string name = quoted(line, "\"name\": \"");
        bool pass = line.find("\"pass\": true") != std::string::npos;
        if (!pass) all_pass = false;
        std::printf("[%s] %-32s measured %s  gate %s\n", pass ? " ok " : "FAIL",
                    name.c_str(), field(line, "\"measured\": ").c_str(),
                    field(line, "\"expected\": ").c_str());
    }
    if (!any) throw config_error("no checks found in " + file.string());
    std::printf("overall: %s\n", all_pass ? "pass" : "FAIL");
    return all_pass ? exit_ok : exit_check;
}

int do_cache(const CliArgs& a) {
    if (a.pos.size() < 2)
        throw config_error("cache needs an action: list, verify or purge");
    for (const auto& [k, v] : a.kv)
        if (k != "dir") throw config_error("unknown cache option '" + k + "'");
    fs::path dir =
        a.kv.count("dir") ? fs::path(a.kv.at("dir")) : default_cache_dir();
    return cache_manager(a.pos[1], dir, std::cout);
}

int run_cli(int argc, char** argv) {
    CliArgs a = parse_args(argc, argv);
    if (a.help || a.pos.empty()) {
        std::fputs(usage_text, stdout);
        return a.help ? exit_ok : exit_config;
    }
    apply_config(a);
    const std::string& verb = a.pos[0];

    if (verb == "suite") {
        if (a.pos.size() < 2)
            throw config_error("suite needs a name: delta, stationary, dual, scan, "
                               "coeffs or all");
        return do_suite(a, parse_suite(a.pos[1]));
    }
    if (verb == "check-delta") return do_suite(a, Suite::delta);
    if (verb == "check-stationary") return do_suite(a, Suite::stationary);
    if (verb == "check-dual") return do_suite(a, Suite::dual);
    if (verb == "scan") return do_suite(a, Suite::scan);
    if (verb == "gen") return do_gen(a);
    if (verb == "report") return do_report(a);
    if (verb == "cache") return do_cache(a);
    throw config_error("unknown verb '" + verb + "' (see --help)");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const config_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_config;
    } catch (const domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_config;
    } catch (const numeric_error& e) {
        std::fprintf(stderr, "numeric failure: %s (best estimate %.17g%+.17gi, "
                     "achieved tolerance %.3g)\n",
                     e.what(), e.best_real, e.best_imag, e.achieved_tol);
        return exit_check;
    } catch (const resource_error& e) {
        std::fprintf(stderr, "resource error: %s\n", e.what());
        return exit_resource;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return exit_resource;
    }
}
