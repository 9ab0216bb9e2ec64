//
// Suite runner
//
// Each suite executes a fixed battery of named checks against the library
// and collects CSV/SVG artifacts.  Artifact contents are accumulated in
// memory while the suite runs and flushed with atomic writes only after the
// whole battery has finished, so an interrupted run leaves nothing partial
// behind.  All loops that run under a thread pool write to preassigned
// slots, which keeps every byte of the output independent of the thread
// count.
//

#include "shiftconv/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "shiftconv/cache.hpp"
#include "shiftconv/coefficients.hpp"
#include "shiftconv/convolution.hpp"
#include "shiftconv/delta_method.hpp"
#include "shiftconv/dual_sum.hpp"
#include "shiftconv/fit.hpp"
#include "shiftconv/gamma.hpp"
#include "shiftconv/oscillatory.hpp"
#include "shiftconv/phases.hpp"
#include "shiftconv/quadrature.hpp"
#include "shiftconv/windows.hpp"

namespace shiftconv {

namespace fs = std::filesystem;

// --------------------------------------------------------------------------
// formatting and file plumbing
// --------------------------------------------------------------------------

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

void write_text_atomic(const fs::path& file, const std::string& content) {
    fs::path dir = file.parent_path();
    if (!dir.empty()) {
        std::error_code dec;
        fs::create_directories(dir, dec);
        if (dec)
            throw resource_error("cannot create " + dir.string() + ": " + dec.message());
    }
    fs::path tmp = file;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw resource_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw resource_error("short write to " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, file, ec);
    if (ec) {
        std::error_code ec2;
        fs::remove(tmp, ec2);
        throw resource_error("cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

void parallel_for(int64_t begin, int64_t end, int threads,
                  const std::function<void(int64_t)>& fn) {
    if (end <= begin) return;
    const int64_t count = end - begin;
    int nt = std::max(1, threads);
    if (static_cast<int64_t>(nt) > count) nt = static_cast<int>(count);
    if (nt == 1) {
        for (int64_t i = begin; i < end; ++i) fn(i);
        return;
    }
    const int64_t chunk = (count + nt - 1) / nt;
    std::vector<std::thread> pool;
    std::mutex mu;
    std::exception_ptr first;
    for (int t = 0; t < nt; ++t) {
        const int64_t lo = begin + chunk * t;
        const int64_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (int64_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(mu);
                if (!first) first = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first) std::rethrow_exception(first);
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (unsigned char c : s) {
        switch (c) {
            case '"':  out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

// JSON has no literal for NaN or infinity; report those as null
std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";
    return format_double(v);
}

} // namespace

bool RunReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void write_json_report(const RunReport& rep, const fs::path& file) {
    std::string s;
    s += "{\n";
    s += "  \"schema_version\": " + std::to_string(rep.schema_version) + ",\n";
    s += "  \"suite\": \"" + json_escape(rep.suite) + "\",\n";
    s += "  \"params\": {";
    bool first = true;
    for (const auto& [k, v] : rep.params) {
        if (!first) s += ", ";
        s += "\"" + json_escape(k) + "\": \"" + json_escape(v) + "\"";
        first = false;
    }
    s += "},\n";
    s += "  \"checks\": [\n";
    for (size_t i = 0; i < rep.checks.size(); ++i) {
        const CheckResult& c = rep.checks[i];
        s += "    {\"name\": \"" + json_escape(c.name) + "\"";
        s += ", \"pass\": ";
        s += c.pass ? "true" : "false";
        s += ", \"measured\": " + json_number(c.measured);
        s += ", \"expected\": " + json_number(c.expected);
        s += ", \"detail\": \"" + json_escape(c.detail) + "\"}";
        s += (i + 1 < rep.checks.size()) ? ",\n" : "\n";
    }
    s += "  ],\n";
    s += "  \"artifacts\": [";
    for (size_t i = 0; i < rep.artifacts.size(); ++i) {
        if (i) s += ", ";
        s += "\"" + json_escape(rep.artifacts[i]) + "\"";
    }
    s += "],\n";
    s += "  \"elapsed_seconds\": " + json_number(rep.elapsed_seconds) + ",\n";
    s += "  \"all_pass\": ";
    s += rep.all_pass() ? "true" : "false";
    s += "\n}\n";
    write_text_atomic(file, s);
}

// --------------------------------------------------------------------------
// suite names and parameters
// --------------------------------------------------------------------------

Suite parse_suite(const std::string& name) {
    if (name == "delta") return Suite::delta;
    if (name == "stationary") return Suite::stationary;
    if (name == "dual") return Suite::dual;
    if (name == "scan") return Suite::scan;
    if (name == "coeffs") return Suite::coeffs;
    if (name == "all") return Suite::all;
    throw config_error("unknown suite '" + name +
                       "' (expected delta, stationary, dual, scan, coeffs or all)");
}

const char* suite_name(Suite s) {
    switch (s) {
        case Suite::delta:      return "delta";
        case Suite::stationary: return "stationary";
        case Suite::dual:       return "dual";
        case Suite::scan:       return "scan";
        case Suite::coeffs:     return "coeffs";
        case Suite::all:        return "all";
    }
    return "?";
}

namespace {

// typed access to the string parameter map, with rejection of unknown keys
class Params {
public:
    Params(const std::map<std::string, std::string>& raw, const char* suite,
           std::initializer_list<const char*> allowed)
        : raw_(raw) {
        for (const auto& [k, v] : raw_) {
            bool known = false;
            for (const char* a : allowed)
                if (k == a) { known = true; break; }
            if (!known)
                throw config_error("unknown parameter '" + k + "' for suite '" +
                                   suite + "'");
        }
    }

    int64_t get_int(const char* key, int64_t defv, int64_t lo, int64_t hi) const {
        auto it = raw_.find(key);
        if (it == raw_.end()) return defv;
        int64_t v = 0;
        size_t pos = 0;
        try {
            v = std::stoll(it->second, &pos);
        } catch (const std::exception&) {
            throw config_error(std::string("parameter '") + key + "' must be an integer");
        }
        if (pos != it->second.size())
            throw config_error(std::string("parameter '") + key + "' must be an integer");
        if (v < lo || v > hi)
            throw config_error(std::string("parameter '") + key + "' out of range [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return v;
    }

    double get_double(const char* key, double defv, double lo, double hi) const {
        auto it = raw_.find(key);
        if (it == raw_.end()) return defv;
        double v = 0.0;
        size_t pos = 0;
        try {
            v = std::stod(it->second, &pos);
        } catch (const std::exception&) {
            throw config_error(std::string("parameter '") + key + "' must be a number");
        }
        if (pos != it->second.size() || !std::isfinite(v))
            throw config_error(std::string("parameter '") + key + "' must be a number");
        if (v < lo || v > hi)
            throw config_error(std::string("parameter '") + key + "' out of range [" +
                               format_double(lo) + ", " + format_double(hi) + "]");
        return v;
    }

    std::string get_str(const char* key, const std::string& defv) const {
        auto it = raw_.find(key);
        return it == raw_.end() ? defv : it->second;
    }

private:
    const std::map<std::string, std::string>& raw_;
};

void add_check(RunReport& rep, std::string name, bool pass, double measured,
               double expected, std::string detail) {
    rep.checks.push_back({std::move(name), pass, measured, expected, std::move(detail)});
}

// artifact content staged for the post-run atomic flush
using FileSet = std::vector<std::pair<std::string, std::string>>;

// --------------------------------------------------------------------------
// tiny SVG line plot (self-contained, no styling dependencies)
// --------------------------------------------------------------------------

std::string svg_line_plot(const std::vector<double>& xs, const std::vector<double>& ys,
                          const std::string& title, const std::string& xlabel,
                          const std::string& ylabel) {
    const int W = 640, H = 400;
    const int ml = 64, mr = 20, mt = 34, mb = 46;
    double xmin = xs.empty() ? 0.0 : *std::min_element(xs.begin(), xs.end());
    double xmax = xs.empty() ? 1.0 : *std::max_element(xs.begin(), xs.end());
    double ymin = ys.empty() ? 0.0 : *std::min_element(ys.begin(), ys.end());
    double ymax = ys.empty() ? 1.0 : *std::max_element(ys.begin(), ys.end());
    if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
    if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }
    const double xpad = 0.04 * (xmax - xmin), ypad = 0.06 * (ymax - ymin);
    xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;
    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto Y = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };
    auto num = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.4g", v);
        return std::string(b);
    };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
      << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    s << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    s << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    // axes
    s << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
      << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double tx = xmin + (xmax - xmin) * i / 4.0;
        double ty = ymin + (ymax - ymin) * i / 4.0;
        s << "<line x1=\"" << X(tx) << "\" y1=\"" << H - mb << "\" x2=\"" << X(tx)
          << "\" y2=\"" << H - mb + 5 << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << X(tx) << "\" y=\"" << H - mb + 18
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
          << num(tx) << "</text>\n";
        s << "<line x1=\"" << ml - 5 << "\" y1=\"" << Y(ty) << "\" x2=\"" << ml
          << "\" y2=\"" << Y(ty) << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << ml - 8 << "\" y=\"" << Y(ty) + 4
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
          << num(ty) << "</text>\n";
    }
    s << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 8
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << xlabel << "</text>\n";
    s << "<text x=\"14\" y=\"" << (mt + H - mb) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
      << "transform=\"rotate(-90 14 " << (mt + H - mb) / 2 << ")\">" << ylabel
      << "</text>\n";
    s << "<polyline fill=\"none\" stroke=\"#1660a8\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) s << " ";
        s << X(xs[i]) << "," << Y(ys[i]);
    }
    s << "\"/>\n</svg>\n";
    return s.str();
}

// --------------------------------------------------------------------------
// delta suite
// --------------------------------------------------------------------------
//
// Exactness of the divisor-reflected expansion on the lattice, flatness and
// mass of the frequency weight, the frequency-side repackaging with its DC
// atom, and the shift-average alias ratio in and out of the regime the
// asymptotics assume.

void run_delta(const RunConfig& cfg, RunReport& rep, FileSet& files) {
    // Default Q = 128: the plateau gate samples |x| <= Q^{-0.1}, and that
    // window only sits inside the analytic plateau (|x| < 0.625) once
    // Q^{-0.1} <= 0.625, i.e. Q >= 111.  Smaller Q are allowed but will
    // honestly fail the plateau check.
    Params p(cfg.params, "delta", {"Q", "nmax", "eps"});
    const int64_t Qi = p.get_int("Q", 128, 2, 20000);
    const double Q = static_cast<double>(Qi);
    const int64_t nmax = p.get_int("nmax", 2 * Qi, 1, 2000000);
    const double eps = p.get_double("eps", 1.15, 0.3, 2.0);

    DeltaExpansion expQ(Q);

    // lattice identity; warm the arithmetic sieves serially so the parallel
    // sweep only reads them
    evaluate_delta(expQ, nmax);
    std::vector<double> err(static_cast<size_t>(2 * nmax + 1));
    parallel_for(-nmax, nmax + 1, cfg.threads, [&](int64_t n) {
        const double target = (n == 0) ? 1.0 : 0.0;
        err[static_cast<size_t>(n + nmax)] = std::abs(evaluate_delta(expQ, n) - target);
    });
    const double max_err = *std::max_element(err.begin(), err.end());
    add_check(rep, "delta_identity_max_err", max_err < 1e-5, max_err, 1e-5,
              "max |expansion - [n==0]| over |n| <= " + std::to_string(nmax) +
                  " at Q = " + std::to_string(Qi) + "; gate <");

    // plateau of the frequency weight near x = 0
    const double xcap = std::pow(Q, -0.1);
    std::vector<double> grid(101);
    for (int i = 0; i <= 100; ++i) grid[static_cast<size_t>(i)] = xcap * i / 100.0;
    std::vector<cplx> gv = g_weight(expQ, 1, grid);
    double plateau_dev = 0.0;
    for (const cplx& v : gv) plateau_dev = std::max(plateau_dev, std::abs(v.real() - 1.0));
    add_check(rep, "weight_plateau_max_dev", plateau_dev < 0.1, plateau_dev, 0.1,
              "max |g - 1| on |x| <= Q^{-0.1}; gate <");

    // L1 + L2 mass of the weight over |x| <= 32
    const double h = 0.01;
    std::vector<double> mass_grid;
    mass_grid.reserve(6401);
    for (int i = -3200; i <= 3200; ++i) mass_grid.push_back(i * h);
    std::vector<cplx> gm = g_weight(expQ, 1, mass_grid);
    double mass = 0.0;
    for (const cplx& v : gm) mass += (std::abs(v.real()) + v.real() * v.real()) * h;
    const double mass_gate = 10.0 * std::log(Q);
    add_check(rep, "weight_mass_l1l2", mass <= mass_gate, mass, mass_gate,
              "int (|g| + g^2) over |x| <= 32; gate <= 10 log Q");

    // frequency-side repackaging with the plateau window and DC atom
    const std::vector<int64_t> b0_ns = {0, 1, -1, 2, 5, -12};
    B0FormReport b0 = b0_form_check(expQ, eps, b0_ns);
    add_check(rep, "packaged_residual", b0.max_residual < 5e-3, b0.max_residual, 5e-3,
              "frequency-side reconstruction of [n==0], DC atom restored; gate <");
    add_check(rep, "packaged_bias_no_atom", b0.max_residual_no_atom > 0.02,
              b0.max_residual_no_atom, 0.02,
              "same reconstruction without the atom keeps a visible constant bias; gate >");

    // shift-average alias ratio, in and out of the long-shift regime
    ZeroFrequencyReport in_reg = zero_frequency_check(199.0, 10000, 100, -1.0);
    add_check(rep, "alias_in_regime_ratio", in_reg.ratio < 0.3, in_reg.ratio, 0.3,
              "N = 10^4, H = 199 >= N^{0.51}, q = 100, x = -1; gate <");
    ZeroFrequencyReport out_reg = zero_frequency_check(80.0, 10000, 100, -1.0);
    add_check(rep, "alias_out_regime_ratio", out_reg.ratio > 1e-3, out_reg.ratio, 1e-3,
              "N = 10^4, H = 80 < sqrt(N) leaks through the aliases; gate >");

    // weight profile artifact
    std::vector<double> px, py;
    std::string csv = "x,g\n";
    for (int i = -256; i <= 256; ++i) {
        px.push_back(i * 0.125);
    }
    std::vector<cplx> pg = g_weight(expQ, 1, px);
    for (size_t i = 0; i < px.size(); ++i) {
        py.push_back(pg[i].real());
        csv += format_double(px[i]) + "," + format_double(pg[i].real()) + "\n";
    }
    files.emplace_back("weight_profile.csv", csv);
    files.emplace_back("weight_profile.svg",
                       svg_line_plot(px, py, "frequency weight g", "x", "g(x)"));
}

// --------------------------------------------------------------------------
// stationary suite
// --------------------------------------------------------------------------
//
// Three phase families with a single interior stationary point each; the
// order-0 expansion error must decay at least like scale^{-0.8}.  A fourth
// check exercises the first-derivative bound on a stationary-point-free
// window.

struct StationaryRow {
    double scale = 0.0;
    cplx direct{0.0, 0.0};
    cplx sp0{0.0, 0.0};
    cplx sp1{0.0, 0.0};
    double rel0 = 0.0;
    double rel1 = 0.0;
    double x0 = 0.0;
};

void run_stationary(const RunConfig& cfg, RunReport& rep, FileSet& files) {
    Params p(cfg.params, "stationary", {"tol", "points"});
    const double tol = p.get_double("tol", 1e-9, 1e-13, 1e-3);
    const int64_t points = p.get_int("points", 7, 2, 40);

    struct Family {
        const char* name;
        SmoothWindow w;
        std::function<Phase(double)> make;
        double root;
    };
    std::vector<Family> fams;
    fams.push_back({"linear_log", SmoothWindow::plateau_U(),
                    [](double l) { return linear_log_phase(l, -1.3 * l); }, 1.3});
    fams.push_back({"quad_cubic", SmoothWindow::bump_V(),
                    [](double l) { return quadratic_phase(l, 1.5, l / 10.0); }, 1.5});
    fams.push_back({"power_diff", SmoothWindow::bump_V(),
                    [](double l) {
                        const double A = l * l * l * l;
                        const double B = std::pow(1.45, 0.25) * l * l * l;
                        return power_difference_phase(A, B, 5, 4);
                    },
                    1.45});

    std::vector<double> scales(static_cast<size_t>(points));
    for (int64_t i = 0; i < points; ++i)
        scales[static_cast<size_t>(i)] =
            100.0 * std::pow(100.0, double(i) / double(points - 1));

    for (const Family& fam : fams) {
        std::vector<StationaryRow> rows(scales.size());
        parallel_for(0, static_cast<int64_t>(scales.size()), cfg.threads, [&](int64_t i) {
            StationaryRow& r = rows[static_cast<size_t>(i)];
            r.scale = scales[static_cast<size_t>(i)];
            Phase f = fam.make(r.scale);
            auto sps = find_stationary(f, fam.w.support_a(), fam.w.support_b());
            r.direct = integrate_direct(fam.w, f, tol).value;
            for (const StationaryPoint& sp : sps) {
                r.sp0 += stationary_phase_main(fam.w, f, sp, 0);
                r.sp1 += stationary_phase_main(fam.w, f, sp, 1);
            }
            r.x0 = sps.empty() ? std::nan("") : sps.front().x0;
            const double mag = std::abs(r.direct);
            r.rel0 = std::abs(r.direct - r.sp0) / mag;
            r.rel1 = std::abs(r.direct - r.sp1) / mag;
        });

        std::string csv =
            "scale,direct_re,direct_im,sp0_re,sp0_im,sp1_re,sp1_im,rel_err0,rel_err1\n";
        std::vector<double> lx, ly;
        for (const StationaryRow& r : rows) {
            csv += format_double(r.scale) + "," + format_double(r.direct.real()) + "," +
                   format_double(r.direct.imag()) + "," + format_double(r.sp0.real()) +
                   "," + format_double(r.sp0.imag()) + "," + format_double(r.sp1.real()) +
                   "," + format_double(r.sp1.imag()) + "," + format_double(r.rel0) + "," +
                   format_double(r.rel1) + "\n";
            lx.push_back(std::log(r.scale));
            ly.push_back(std::log(std::max(r.rel0, 1e-300)));
        }
        files.emplace_back(std::string("stationary_") + fam.name + ".csv", csv);

        LineFit fit = fit_line(lx, ly);
        add_check(rep, std::string("slope_") + fam.name, fit.slope <= -0.8, fit.slope,
                  -0.8, "log-log decay of the order-0 relative error; gate <=");
        const double root_dev = std::abs(rows.front().x0 - fam.root);
        add_check(rep, std::string("root_") + fam.name, root_dev < 1e-8, root_dev, 1e-8,
                  "located stationary point vs the analytic root " +
                      format_double(fam.root) + "; gate <");
    }

    // no stationary point: integral obeys the variation / min|f'| bound
    NonstationaryReport ns =
        nonstationary_bound_check(SmoothWindow::bump_V(), linear_phase(50.0));
    add_check(rep, "nonstationary_bound", ns.within, std::abs(ns.integral), ns.bound,
              "|integral| against Var(w)/min|f'| for a root-free phase; gate <=");
}

// --------------------------------------------------------------------------
// dual suite
// --------------------------------------------------------------------------
//
// The dual-sum identity at the natural twist |x| = Q/H, agreement of the
// two transform evaluations, the normalized gamma quotient (centre value,
// unitarity on the critical line, functional-equation composites), the
// Stirling ratio model, the Mellin window asymptotic, and the cross-degree
// stationary point.

void run_dual(const RunConfig& cfg, RunReport& rep, FileSet& files) {
    Params p(cfg.params, "dual", {"N", "theta", "k"});
    const int64_t N = p.get_int("N", 10000, 64, 1000000);
    const double theta = p.get_double("theta", 0.6, 0.05, 0.95);
    const int64_t k = p.get_int("k", 3, 1, 7);
    const int d = static_cast<int>(k) + 1;

    int64_t H = static_cast<int64_t>(std::floor(std::pow(double(N), theta) + 1e-9));
    if (H < 1) H = 1;
    const double Q = 2.0 * std::ceil(std::sqrt(double(N)));
    DualSumParams dp = make_dual_params(N, double(H), -Q / double(H), d);

    const double dual_hi = dp.Ntilde * std::pow(2.0, d - 1);
    const int64_t len =
        std::max<int64_t>(2 * N, static_cast<int64_t>(std::ceil(dual_hi)) + 2);
    CoefficientTable base = gen_ramanujan(len);
    CoefficientTable tab = (k == 1) ? base : gen_sym_power(base, static_cast<int>(k), len);

    DualSumReport ds = dual_sum_check(tab, dp);
    add_check(rep, "dual_modulus_rel", ds.rel_err < 0.25, ds.rel_err, 0.25,
              "| |twisted sum| - |dual expansion| | / |twisted sum| at N = " +
                  std::to_string(N) + ", H = " + std::to_string(H) + ", degree " +
                  std::to_string(d) + "; gate <");

    // transform evaluations agree away from the dual-window edges
    std::string csv = "n,u0,closed_re,closed_im,quad_re,quad_im,ratio\n";
    double mode_dev = 0.0;
    const double u0s[5] = {1.2, 1.35, 1.5, 1.65, 1.8};
    for (double u0 : u0s) {
        const int64_t n =
            std::llround(std::pow(u0, d - 1) * dp.Ntilde);
        const cplx closed = omega_transform(dp, n, OmegaMode::closed_form);
        const cplx quad = omega_transform(dp, n, OmegaMode::quadrature);
        const double ratio = std::abs(quad) / std::abs(closed);
        mode_dev = std::max(mode_dev, std::abs(ratio - 1.0));
        csv += std::to_string(n) + "," + format_double(u0) + "," +
               format_double(closed.real()) + "," + format_double(closed.imag()) + "," +
               format_double(quad.real()) + "," + format_double(quad.imag()) + "," +
               format_double(ratio) + "\n";
    }
    files.emplace_back("dual.csv", csv);
    add_check(rep, "omega_mode_dev", mode_dev < 0.25, mode_dev, 0.25,
              "max | |quadrature|/|closed form| - 1 | at five interior dual points; gate <");

    // normalized gamma quotient
    GammaData gd;
    gd.d = d;
    gd.delta0 = 0;
    const cplx half(0.5, 0.0);
    const double centre = std::abs(gamma_factor(gd, half) - cplx(1.0, 0.0));
    add_check(rep, "gamma_center", centre < 1e-12, centre, 1e-12,
              "|gamma(1/2) - 1| for the trivial spectral data; gate <");
    double unit_dev = 0.0;
    for (double tau : {5.0, 10.0, 20.0})
        unit_dev = std::max(unit_dev,
                            std::abs(std::abs(gamma_factor(gd, half + cplx(0.0, tau))) - 1.0));
    add_check(rep, "gamma_unitary", unit_dev < 1e-8, unit_dev, 1e-8,
              "modulus on the critical line at tau = 5, 10, 20; gate <");

    // functional-equation composites against a direct zeta evaluation
    double fe_dev = 0.0;
    for (int dd = 1; dd <= 3; ++dd) {
        GammaData gz;
        gz.d = dd;
        gz.delta0 = 0;
        for (const cplx s : {cplx(2.0, 0.0), cplx(2.5, 0.0), cplx(1.75, 1.25)}) {
            const cplx lhs = std::pow(zeta_em(s), double(dd));
            const cplx rhs = gamma_factor(gz, s) * std::pow(zeta_em(1.0 - s), double(dd));
            fe_dev = std::max(fe_dev, std::abs(lhs - rhs) / std::abs(lhs));
        }
    }
    add_check(rep, "zeta_functional", fe_dev < 1e-6, fe_dev, 1e-6,
              "zeta^d = gamma_d * (zeta at the reflected point)^d, d = 1..3; gate <");

    // Stirling ratio: drift halves when tau doubles, model gap small
    auto st = stirling_ratio_check({40.0, 80.0, 100.0});
    const double drift_ratio = st[0].drift / st[1].drift;
    add_check(rep, "stirling_drift_ratio",
              drift_ratio > 1.5 && drift_ratio < 2.5, drift_ratio, 2.0,
              "drift(40)/drift(80), expected ~2 for a 1/tau correction; band (1.5, 2.5)");
    add_check(rep, "stirling_model_gap", st[2].model_gap < 0.02, st[2].model_gap, 0.02,
              "|R(100) - unimodular model|; gate <");

    // Mellin window modulus against the stationary-phase prediction
    const int64_t Nm = 1000;
    const double Qm = 64.0, xm = -0.5, z0 = 1.5;
    const double tau = z0 * 2.0 * M_PI * double(Nm) * std::abs(xm) / Qm;
    const cplx mw = mellin_window(Nm, xm, Qm, 1.0, tau);
    const double predicted =
        std::sqrt(2.0 * M_PI) * SmoothWindow::bump_V().value(z0) * z0 / std::sqrt(tau);
    const double mrel = std::abs(std::abs(mw) - predicted) / predicted;
    add_check(rep, "mellin_modulus_rel", mrel < 10.0 / tau, mrel, 10.0 / tau,
              "|window transform| vs stationary-phase modulus at z0 = 1.5; gate < 10/tau");
    const double mpos = std::abs(mellin_window(Nm, -xm, Qm, 1.0, tau));
    add_check(rep, "mellin_positive_side", mpos < 1e-3, mpos, 1e-3,
              "no stationary point for x > 0: only the window transform's tail "
              "survives, three orders under the stationary modulus; gate <");

    // cross-degree stationary point against the closed form
    StationaryPoint sp = cross_degree_stationary_point(16.0, 81.0, 100.0, 5, 4);
    const double y0_exact = 1050945.3369140625;  // 100 * 81^4 / 16^3
    const double y0_rel = std::abs(sp.x0 - y0_exact) / y0_exact;
    add_check(rep, "cross_degree_y0", y0_rel < 1e-12, y0_rel, 1e-12,
              "root of the cross-degree phase vs H (m^{d1-1}/n^{d2-1})^{1/(d1-d2)}; gate <");
}

// --------------------------------------------------------------------------
// scan suite
// --------------------------------------------------------------------------
//
// Dyadic growth of the averaged shifted sum for one coefficient family.
// Structured input must show cancellation (slope well below the trivial 1);
// the all-ones control must sit at slope 1; the random model is reported
// without a gate.

void run_scan(const RunConfig& cfg, RunReport& rep, FileSet& files) {
    Params p(cfg.params, "scan", {"kind", "theta", "pmin", "pmax"});
    const std::string kind = p.get_str("kind", "sym3");
    const double theta = p.get_double("theta", 0.6, 0.05, 0.95);
    const int64_t pmin = p.get_int("pmin", 13, 8, 21);
    const int64_t pmax = p.get_int("pmax", 16, 9, 22);
    if (pmin >= pmax)
        throw config_error("scan: pmin must be below pmax");
    if (kind != "sym3" && kind != "ones" && kind != "random")
        throw config_error("scan: kind must be sym3, ones or random");

    const int64_t Nmax = int64_t(1) << pmax;
    const int64_t Hmax =
        std::max<int64_t>(1, static_cast<int64_t>(std::floor(std::pow(double(Nmax), theta) + 1e-9)));
    const int64_t need = 2 * Nmax + 2 * Hmax + 2;

    CoefficientTable t;
    if (kind == "sym3") {
        CoefficientTable base = gen_ramanujan(need);
        t = gen_sym_power(base, 3, need);
    } else if (kind == "ones") {
        t = gen_divisor(1, need);
    } else {
        t = gen_random_model(need, cfg.seed, 4);
    }

    std::vector<int64_t> grid;
    for (int64_t q = pmin; q <= pmax; ++q) grid.push_back(int64_t(1) << q);
    ExponentScan scan = exponent_scan(t, t, theta, grid);

    std::string csv = "N,H,B_sharp,B_smooth,log_slope_partial\n";
    std::vector<double> px, py;
    std::string excluded;
    int64_t included = 0;
    for (const ScanRow& r : scan.rows) {
        csv += std::to_string(r.N) + "," + std::to_string(r.H) + "," +
               format_double(r.B_sharp) + "," + format_double(r.B_smooth) + "," +
               format_double(r.partial_slope) + "\n";
        if (r.excluded) {
            if (!excluded.empty()) excluded += " ";
            excluded += std::to_string(r.N);
        } else {
            ++included;
            px.push_back(std::log2(double(r.N)));
            py.push_back(std::log10(std::abs(r.B_smooth)));
        }
    }
    files.emplace_back("scan.csv", csv);
    files.emplace_back("scan.svg", svg_line_plot(px, py,
                                                 "averaged shifted sum, " + kind +
                                                     ", theta = " + format_double(theta),
                                                 "log2 N", "log10 |B|"));

    std::string note = excluded.empty()
                           ? std::string("no rows excluded")
                           : ("rows with vanishing B excluded at N = " + excluded);
    add_check(rep, "scan_points_included", included >= 2, double(included),
              2.0, note + "; gate >=");

    if (kind == "sym3") {
        add_check(rep, "scan_slope", scan.fit.slope <= 0.8, scan.fit.slope, 0.8,
                  "structured input must cancel well below the trivial slope 1; gate <=");
    } else if (kind == "ones") {
        const double dev = std::abs(scan.fit.slope - 1.0);
        add_check(rep, "scan_slope", dev <= 0.02, scan.fit.slope, 1.0,
                  "all-ones control grows linearly; |slope - 1| <= 0.02");
    } else {
        add_check(rep, "scan_slope", true, scan.fit.slope, std::nan(""),
                  "random-model slope reported without a gate");
    }
}

// --------------------------------------------------------------------------
// coeffs suite
// --------------------------------------------------------------------------
//
// Generator invariants: normalization, spot values against the integer
// sequence, the Hecke recursion, the prime bound, prime-power binomials,
// multiplicativity, random-model moments, cache round-trip and corruption
// detection, and the flatness of the second-moment profile.

void run_coeffs(const RunConfig& cfg, RunReport& rep, FileSet& files) {
    Params p(cfg.params, "coeffs", {"N"});
    const int64_t N = p.get_int("N", 100000, 1000, 10000000);

    CoefficientTable gl2 = gen_ramanujan(N);

    add_check(rep, "first_value", gl2.at(1) == 1.0, std::abs(gl2.at(1) - 1.0), 0.0,
              "normalized first coefficient; exact");

    const int64_t spot_n[9] = {2, 3, 4, 5, 6, 7, 9, 10, 11};
    const double spot_tau[9] = {-24.0,   252.0,    -1472.0,  4830.0,  -6048.0,
                                -16744.0, -113643.0, -115920.0, 534612.0};
    double spot_dev = 0.0;
    for (int i = 0; i < 9; ++i) {
        const double rec = gl2.at(spot_n[i]) * std::pow(double(spot_n[i]), 5.5);
        spot_dev = std::max(spot_dev, std::abs(rec - spot_tau[i]) / std::abs(spot_tau[i]));
    }
    add_check(rep, "tau_spot_rel", spot_dev < 1e-12, spot_dev, 1e-12,
              "normalized values times n^{11/2} against the integer sequence; gate <");

    const double hd = hecke_defect(gl2);
    add_check(rep, "hecke_defect", hd < 1e-9, hd, 1e-9,
              "lambda(p) lambda(p^j) - lambda(p^{j+1}) - lambda(p^{j-1}); gate <");

    const double ratio = prime_bound_ratio(gl2);
    add_check(rep, "prime_bound_ratio", ratio <= 1.0 + 1e-12, ratio, 1.0,
              "max |lambda(p)| / 2 over primes in range; gate <= 1 + 1e-12");

    CoefficientTable tau4 = gen_divisor(4, std::min<int64_t>(N, 100000));
    const bool binom_ok = binomial_prime_power_check(tau4);
    add_check(rep, "binomial_prime_powers", binom_ok, binom_ok ? 1.0 : 0.0, 1.0,
              "degree-4 divisor values at prime powers are binomials; exact");
    const double dmult = multiplicativity_defect(tau4);
    add_check(rep, "divisor_multiplicativity", dmult == 0.0, dmult, 0.0,
              "a(mn) = a(m) a(n) on coprime pairs; exact for integer tables");

    CoefficientTable sym3 = gen_sym_power(gl2, 3, std::min<int64_t>(N, 20000));
    add_check(rep, "sym_first_value", sym3.at(1) == 1.0, std::abs(sym3.at(1) - 1.0), 0.0,
              "normalized first coefficient of the lifted table; exact");
    const double smult = multiplicativity_defect(sym3);
    add_check(rep, "sym_multiplicativity", smult < 1e-9, smult, 1e-9,
              "coprime multiplicativity of the lifted table; gate <");

    CoefficientTable rnd = gen_random_model(std::min<int64_t>(N, 100000), cfg.seed, 4);
    double mean = 0.0, m2 = 0.0;
    for (double v : rnd.values) {
        mean += v;
        m2 += v * v;
    }
    mean /= double(rnd.size());
    m2 /= double(rnd.size());
    add_check(rep, "random_mean", std::abs(mean) < 0.05, mean, 0.0,
              "empirical mean of the unit-variance model; |mean| < 0.05");
    add_check(rep, "random_second_moment", std::abs(m2 - 1.0) < 0.05, m2, 1.0,
              "empirical second moment; |m2 - 1| < 0.05");

    // cache round-trip and integrity
    const fs::path cdir = cfg.out_dir / "cache_check";
    fs::create_directories(cdir);
    const fs::path cfile = cdir / cache_file_name(sym3);
    save_table(sym3, cfile);
    CoefficientTable back = load_table(cfile);
    int64_t mismatches = 0;
    if (back.size() != sym3.size() || back.kind != sym3.kind || back.degree != sym3.degree) {
        mismatches = -1;
    } else {
        for (int64_t i = 1; i <= sym3.size(); ++i) {
            if (std::memcmp(&back.values[static_cast<size_t>(i - 1)],
                            &sym3.values[static_cast<size_t>(i - 1)], sizeof(double)) != 0)
                ++mismatches;
        }
    }
    add_check(rep, "cache_roundtrip", mismatches == 0, double(mismatches), 0.0,
              "save/load preserves kind, degree and every value bit for bit");

    {
        std::ifstream in(cfile, std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
        in.close();
        if (bytes.size() > 20) bytes[20] = static_cast<char>(bytes[20] ^ 0x01);
        std::ofstream out(cfile, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    CacheEntryInfo info = verify_cache_file(cfile);
    add_check(rep, "cache_detects_corruption", !info.ok, info.ok ? 1.0 : 0.0, 0.0,
              "one flipped payload byte must fail the checksum");
    std::error_code ec;
    fs::remove_all(cdir, ec);

    // second-moment flatness
    std::vector<double> Xs;
    for (int64_t X = 1024; X <= std::min<int64_t>(N, 131072); X *= 2)
        Xs.push_back(double(X));
    RankinProfile rk = rankin_selberg_profile(gl2, Xs);
    const double rmax = *std::max_element(rk.S2_over_X.begin(), rk.S2_over_X.end());
    const double rmin = *std::min_element(rk.S2_over_X.begin(), rk.S2_over_X.end());
    const double flat = rmax / rmin;
    add_check(rep, "rankin_flatness", flat < 3.0, flat, 3.0,
              "max/min of (1/X) sum a(n)^2 over dyadic X; gate <");

    std::string rcsv = "X,S2_over_X\n";
    for (size_t i = 0; i < rk.X.size(); ++i)
        rcsv += format_double(rk.X[i]) + "," + format_double(rk.S2_over_X[i]) + "\n";
    files.emplace_back("rankin.csv", rcsv);

    // partial-sum growth of the lifted table, reported without a gate
    std::vector<double> pXs;
    for (int64_t X = 256; X <= sym3.size(); X *= 2) pXs.push_back(double(X));
    PartialSumProfile ps = partial_sum_profile(sym3, pXs);
    add_check(rep, "partial_sum_slope", true, ps.fit.slope, ps.reference_slope,
              "log-log slope of |sum a(n)|, square-root reference (d-1)/(d+1); informational");

    std::string ccsv = "n,gl2,tau4,sym3\n";
    for (int64_t n = 1; n <= 64; ++n)
        ccsv += std::to_string(n) + "," + format_double(gl2.at(n)) + "," +
                format_double(tau4.at(n)) + "," + format_double(sym3.at(n)) + "\n";
    files.emplace_back("coeffs.csv", ccsv);
}

} // namespace

// --------------------------------------------------------------------------
// dispatch
// --------------------------------------------------------------------------

RunReport run_suite(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.suite = suite_name(cfg.suite);
    rep.params = cfg.params;
    fs::create_directories(cfg.out_dir);

    FileSet files;
    switch (cfg.suite) {
        case Suite::delta:      run_delta(cfg, rep, files); break;
        case Suite::stationary: run_stationary(cfg, rep, files); break;
        case Suite::dual:       run_dual(cfg, rep, files); break;
        case Suite::scan:       run_scan(cfg, rep, files); break;
        case Suite::coeffs:     run_coeffs(cfg, rep, files); break;
        case Suite::all: {
            if (!cfg.params.empty())
                throw config_error("suite 'all' accepts no parameters");
            const Suite order[5] = {Suite::delta, Suite::stationary, Suite::dual,
                                    Suite::scan, Suite::coeffs};
            for (Suite s : order) {
                RunConfig sub = cfg;
                sub.suite = s;
                sub.params.clear();
                RunReport part;
                switch (s) {
                    case Suite::delta:      run_delta(sub, part, files); break;
                    case Suite::stationary: run_stationary(sub, part, files); break;
                    case Suite::dual:       run_dual(sub, part, files); break;
                    case Suite::scan:       run_scan(sub, part, files); break;
                    default:                run_coeffs(sub, part, files); break;
                }
                for (CheckResult& c : part.checks) {
                    c.name = std::string(suite_name(s)) + "." + c.name;
                    rep.checks.push_back(std::move(c));
                }
            }
            break;
        }
    }

    for (const auto& [name, content] : files) {
        write_text_atomic(cfg.out_dir / name, content);
        rep.artifacts.push_back(name);
    }

    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_json_report(rep, cfg.out_dir / "report.json");
    return rep;
}

// --------------------------------------------------------------------------
// cache maintenance
// --------------------------------------------------------------------------

int cache_manager(const std::string& action, const fs::path& dir, std::ostream& out) {
    if (action != "list" && action != "verify" && action != "purge")
        throw config_error("cache action must be list, verify or purge");

    std::vector<fs::path> entries;
    if (fs::exists(dir)) {
        for (const auto& e : fs::directory_iterator(dir))
            if (e.is_regular_file() && e.path().extension() == ".scs")
                entries.push_back(e.path());
    }
    std::sort(entries.begin(), entries.end());

    if (action == "purge") {
        for (const fs::path& f : entries) fs::remove(f);
        out << "removed " << entries.size() << " cache file(s) from " << dir.string()
            << "\n";
        return exit_ok;
    }

    int bad = 0;
    for (const fs::path& f : entries) {
        CacheEntryInfo info = verify_cache_file(f);
        out << f.filename().string() << "  ";
        if (info.ok) {
            out << kind_name(info.kind) << "  degree " << info.degree << "  length "
                << info.length << "  ok\n";
        } else {
            out << "BAD (" << info.message << ")\n";
            ++bad;
        }
    }
    if (entries.empty()) out << "no cache files in " << dir.string() << "\n";
    if (action == "verify" && bad > 0) return exit_resource;
    return exit_ok;
}

} // namespace shiftconv
