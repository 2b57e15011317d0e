#include "sobwidth/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sobwidth/bignum.hpp"
#include "sobwidth/envelopes.hpp"
#include "sobwidth/lattice.hpp"
#include "sobwidth/limitspace.hpp"
#include "sobwidth/oracle.hpp"
#include "sobwidth/profile.hpp"
#include "sobwidth/spectrum.hpp"
#include "sobwidth/tractability.hpp"
#include "sobwidth/verify.hpp"
#include "sobwidth/volumetrics.hpp"

namespace sobwidth::cli {
namespace {

using nlohmann::json;

struct Cell {
    enum class Kind { kText, kReal, kInt, kBigInt, kBool, kEmpty } kind = Kind::kEmpty;
    std::string text;
    double real = 0.0;
    long long integer = 0;
    bool flag = false;
};

Cell cell() { return {}; }
Cell cell(double v) { return {Cell::Kind::kReal, {}, v, 0, false}; }
Cell cell(long long v) { return {Cell::Kind::kInt, {}, 0.0, v, false}; }
Cell cell(std::uint64_t v) { return cell(static_cast<long long>(v)); }
Cell cell(int v) { return cell(static_cast<long long>(v)); }
Cell cell(bool v) { return {Cell::Kind::kBool, {}, 0.0, 0, v}; }
Cell cell(const std::string& v) { return {Cell::Kind::kText, v, 0.0, 0, false}; }
Cell cell(const char* v) { return cell(std::string(v)); }
Cell cell(const mpz_class& v) { return {Cell::Kind::kBigInt, v.get_str(), 0.0, 0, false}; }

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

struct Manifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::optional<std::uint64_t> seed;
    std::string format = "csv";

    void set(const std::string& k, const std::string& v) { params.emplace_back(k, v); }
};

std::string csv_cell(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::kText:
        case Cell::Kind::kBigInt: return c.text;
        case Cell::Kind::kReal: return fmt_real(c.real);
        case Cell::Kind::kInt: return std::to_string(c.integer);
        case Cell::Kind::kBool: return c.flag ? "true" : "false";
        case Cell::Kind::kEmpty: return "";
    }
    return "";
}

json json_cell(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::kText: return c.text;
        case Cell::Kind::kBigInt: return c.text;  // full decimal, beyond double range
        case Cell::Kind::kReal: return c.real;
        case Cell::Kind::kInt: return c.integer;
        case Cell::Kind::kBool: return c.flag;
        case Cell::Kind::kEmpty: return nullptr;
    }
    return nullptr;
}

void emit(const Manifest& man, const Table& table, std::ostream& out, std::ostream& err) {
    if (man.format == "json") {
        json doc;
        doc["manifest"]["command"] = man.command;
        json params = json::object();
        for (const auto& [k, v] : man.params) params[k] = v;
        doc["manifest"]["parameters"] = params;
        if (man.seed)
            doc["manifest"]["seed"] = *man.seed;
        else
            doc["manifest"]["seed"] = nullptr;
        doc["manifest"]["tool_version"] = kToolVersion;
        doc["manifest"]["output_format"] = man.format;
        json rows = json::array();
        for (const auto& r : table.rows) {
            json row = json::object();
            for (std::size_t i = 0; i < table.columns.size(); ++i) row[table.columns[i]] = json_cell(r[i]);
            rows.push_back(row);
        }
        doc["rows"] = rows;
        out << doc.dump(2) << "\n";
        return;
    }
    err << "# command=" << man.command;
    for (const auto& [k, v] : man.params) err << " " << k << "=" << v;
    if (man.seed) err << " seed=" << *man.seed;
    err << " tool_version=" << kToolVersion << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << "\n";
    for (const auto& r : table.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_cell(r[i]);
        out << "\n";
    }
}

int emit_to(const Manifest& man, const Table& table, const std::string& out_path, std::ostream& out,
            std::ostream& err) {
    if (out_path.empty()) {
        emit(man, table, out, err);
        return kOk;
    }
    std::ofstream f(out_path);
    if (!f) {
        err << "cannot open output file: " << out_path << "\n";
        return kUsageError;
    }
    emit(man, table, f, err);
    return kOk;
}

// "1,2,0.5" or isotropic shorthand "1.5^8"
std::vector<double> parse_r(const std::string& spec) {
    std::vector<double> r;
    auto caret = spec.find('^');
    if (caret != std::string::npos) {
        double s = std::stod(spec.substr(0, caret));
        int d = std::stoi(spec.substr(caret + 1));
        if (d < 1) throw std::invalid_argument("isotropic shorthand needs d >= 1");
        r.assign(static_cast<std::size_t>(d), s);
        return r;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        r.push_back(std::stod(item));
    }
    if (r.empty()) throw std::invalid_argument("empty smoothness vector");
    return r;
}

// "k", "a:b", "a:b:step", or "a,b,c"; inclusive ends.
std::vector<std::uint64_t> parse_range(const std::string& spec) {
    std::vector<std::uint64_t> out;
    if (spec.find(':') != std::string::npos) {
        std::stringstream ss(spec);
        std::string part;
        std::vector<std::uint64_t> f;
        while (std::getline(ss, part, ':')) f.push_back(std::stoull(part));
        if (f.size() < 2 || f.size() > 3) throw std::invalid_argument("range must be a:b or a:b:step");
        std::uint64_t step = f.size() == 3 ? f[2] : 1;
        if (step == 0) throw std::invalid_argument("range step must be positive");
        if (f[1] >= f[0] && (f[1] - f[0]) / step + 1 > 2'000'000)
            throw std::overflow_error("rank range too large to materialize");
        for (std::uint64_t v = f[0]; v <= f[1]; v += step) {
            out.push_back(v);
            if (v > f[1] - step) break;  // no wraparound near the top
        }
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoull(item));
    }
    if (out.empty()) throw std::invalid_argument("empty rank list");
    return out;
}

std::vector<mpz_class> parse_range_big(const std::string& spec) {
    std::vector<mpz_class> out;
    auto big = [](const std::string& s) {
        mpz_class v;
        if (v.set_str(s, 10) != 0) throw std::invalid_argument("bad integer: " + s);
        return v;
    };
    if (spec.find(':') != std::string::npos) {
        std::stringstream ss(spec);
        std::string part;
        std::vector<mpz_class> f;
        while (std::getline(ss, part, ':')) f.push_back(big(part));
        if (f.size() < 2 || f.size() > 3) throw std::invalid_argument("range must be a:b or a:b:step");
        mpz_class step = f.size() == 3 ? f[2] : mpz_class(1);
        if (step <= 0) throw std::invalid_argument("range step must be positive");
        mpz_class span = (f[1] - f[0]) / step + 1;
        if (span > 2'000'000) throw std::overflow_error("rank range too large to materialize");
        for (mpz_class v = f[0]; v <= f[1]; v += step) out.push_back(v);
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(big(item));
    }
    if (out.empty()) throw std::invalid_argument("empty rank list");
    return out;
}

// Spectrum entries for a batch of ranks: one shell enumeration when the batch
// is dense, per-rank binary searches otherwise.
std::vector<SpectrumEntry> batch_spectrum(const SmoothnessProfile& prof, std::vector<std::uint64_t> ns) {
    std::vector<SpectrumEntry> out;
    std::uint64_t n_hi = 0;
    for (auto n : ns) n_hi = std::max(n_hi, n);
    if (ns.size() >= 16 && n_hi / 64 <= ns.size()) {
        auto shells = spectrum_prefix(prof, n_hi);
        for (auto n : ns) {
            mpz_class rank(static_cast<unsigned long>(n));
            // first shell whose rank range reaches n
            std::size_t lo = 0, hi = shells.size() - 1;
            while (lo < hi) {
                std::size_t mid = lo + (hi - lo) / 2;
                if (shells[mid].rank_hi >= rank)
                    hi = mid;
                else
                    lo = mid + 1;
            }
            SpectrumEntry e = shells[lo];
            e.n = n;
            out.push_back(e);
        }
        return out;
    }
    for (auto n : ns) out.push_back(approx_number(prof, n));
    return out;
}

std::string join_reals(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += fmt_real(v[i]);
    }
    return s;
}

int cmd_spectrum(const std::string& r_spec, const std::string& n_spec, const std::string& format,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
    SmoothnessProfile prof = make_profile(parse_r(r_spec));
    std::vector<std::uint64_t> ns = parse_range(n_spec);
    Manifest man;
    man.command = "spectrum";
    man.format = format;
    man.set("R", join_reals(prof.r));
    man.set("n", n_spec);
    Table t;
    t.columns = {"n", "a_n", "shell", "rank_lo", "rank_hi", "exact"};
    for (const auto& e : batch_spectrum(prof, ns))
        t.add({cell(e.n), cell(e.value), cell(e.shell), cell(e.rank_lo), cell(e.rank_hi), cell(e.exact)});
    return emit_to(man, t, out_path, out, err);
}

int cmd_limit_spectrum(int d, const std::string& n_spec, const std::string& format,
                       const std::string& out_path, std::ostream& out, std::ostream& err) {
    Manifest man;
    man.command = "limit-spectrum";
    man.format = format;
    man.set("d", std::to_string(d));
    man.set("n", n_spec);
    Table t;
    t.columns = {"n", "m", "a_n", "C_prev", "C_m"};
    mpz_class dim = limit_dim(d);
    for (const mpz_class& n : parse_range_big(n_spec)) {
        if (n < 1) throw std::invalid_argument("ranks must be >= 1");
        if (n > dim) {
            t.add({cell(n), cell(), cell(0.0), cell(), cell()});
            continue;
        }
        int m = limit_shell_index(d, n);
        mpz_class c_prev = m == 0 ? mpz_class(0) : limit_count(d, m - 1).cumulative;
        LimitShell s = limit_count(d, m);
        t.add({cell(n), cell(m), cell(s.value), cell(c_prev), cell(s.cumulative)});
    }
    return emit_to(man, t, out_path, out, err);
}

int cmd_volume(const std::string& r_spec, double scale, bool exp2r, bool log_only,
               const std::string& format, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
    std::vector<double> exps = parse_r(r_spec);
    if (exp2r)
        for (double& e : exps) e *= 2.0;
    Manifest man;
    man.command = "volume";
    man.format = format;
    man.set("exponents", join_reals(exps));
    man.set("scale", fmt_real(scale));
    LogVolume v = scale == 1.0 ? log_volume_ball(exps) : log_scaled_volume(exps, scale);
    Table t;
    if (log_only) {
        t.columns = {"d", "scale", "log_volume"};
        t.add({cell(v.d), cell(scale), cell(v.log_value)});
    } else {
        t.columns = {"d", "scale", "log_volume", "volume"};
        t.add({cell(v.d), cell(scale), cell(v.log_value), cell(std::exp(v.log_value))});
    }
    return emit_to(man, t, out_path, out, err);
}

int cmd_envelope(const std::string& r_spec, const std::string& n_spec, bool with_an,
                 const std::string& format, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
    SmoothnessProfile prof = make_profile(parse_r(r_spec));
    std::vector<std::uint64_t> ns = parse_range(n_spec);
    Manifest man;
    man.command = "envelope";
    man.format = format;
    man.set("R", join_reals(prof.r));
    man.set("n", n_spec);
    Table t;
    t.columns = {"n", "regime", "comparison", "lower", "upper", "upper_tight", "guaranteed", "a_n", "ratio"};
    std::vector<SpectrumEntry> entries;
    if (with_an) entries = batch_spectrum(prof, ns);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        Envelope env = piecewise_envelope(prof, ns[i]);
        std::vector<Cell> row = {cell(ns[i]),
                                 cell(to_string(env.regime)),
                                 cell(env.comparison),
                                 env.lower ? cell(*env.lower) : cell(),
                                 env.upper ? cell(*env.upper) : cell(),
                                 env.upper_tight ? cell(*env.upper_tight) : cell(),
                                 cell(env.guaranteed)};
        if (with_an) {
            row.push_back(cell(entries[i].value));
            row.push_back(cell(entries[i].value / env.comparison));
        } else {
            row.push_back(cell());
            row.push_back(cell());
        }
        t.add(std::move(row));
    }
    return emit_to(man, t, out_path, out, err);
}

int cmd_sweep(const std::string& r_spec, int decades, const std::string& format,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
    SmoothnessProfile prof = make_profile(parse_r(r_spec));
    if (decades < 1 || decades > 9) throw std::invalid_argument("decades must lie in [1, 9]");
    Manifest man;
    man.command = "sweep";
    man.format = format;
    man.set("R", join_reals(prof.r));
    man.set("decades", std::to_string(decades));
    double limit = strong_equiv_constant(prof);
    Table t;
    t.columns = {"n", "ng_an", "bracket_lo", "bracket_hi", "limit", "ratio"};
    std::uint64_t n = 1;
    for (int k = 1; k <= decades; ++k) {
        n *= 10;
        SpectrumEntry e = approx_number(prof, n);
        auto [blo, bhi] = strong_equiv_bracket(prof, n);
        double ng_an = std::pow(static_cast<double>(n), prof.g) * e.value;
        t.add({cell(n), cell(ng_an), cell(blo), cell(bhi), cell(limit), cell(ng_an / limit)});
    }
    return emit_to(man, t, out_path, out, err);
}

int cmd_complexity(const std::string& r_spec, bool limit_space, int d, double eps, double max_points,
                   const std::string& format, const std::string& out_path, std::ostream& out,
                   std::ostream& err) {
    Manifest man;
    man.command = "complexity";
    man.format = format;
    man.set("eps", fmt_real(eps));
    Table t;
    t.columns = {"space", "d", "eps", "n_eps"};
    if (limit_space) {
        man.set("space", "limit");
        man.set("d", std::to_string(d));
        t.add({cell("LIMIT"), cell(d), cell(eps), cell(limit_info_complexity(d, eps))});
    } else {
        SmoothnessProfile prof = make_profile(parse_r(r_spec));
        man.set("space", "aniso");
        man.set("R", join_reals(prof.r));
        double budget = 1.0 / (eps * eps) - 1.0;
        if (node_estimate(prof, budget) > max_points) {
            err << "resource guard: counting at eps = " << fmt_real(eps) << " would walk about "
                << fmt_real(node_estimate(prof, budget)) << " nodes (cap " << fmt_real(max_points)
                << "); raise --max-points to proceed\n";
            return kResourceGuard;
        }
        t.add({cell("ANISO"), cell(prof.d), cell(eps), cell(info_complexity(prof, eps))});
    }
    return emit_to(man, t, out_path, out, err);
}

int cmd_tractability(int d_max, int d_step, double alpha, double beta, const std::string& format,
                     const std::string& out_path, std::ostream& out, std::ostream& err) {
    if (d_max < 1 || d_step < 1) throw std::invalid_argument("d-max and d-step must be >= 1");
    Manifest man;
    man.command = "tractability";
    man.format = format;
    man.set("space", "limit");
    man.set("alpha", fmt_real(alpha));
    man.set("beta", fmt_real(beta));
    man.set("d_max", std::to_string(d_max));
    man.set("d_step", std::to_string(d_step));
    Table t;
    t.columns = {"d", "eps", "n_eps", "ratio"};
    for (int d = 1; d <= d_max; d += d_step) {
        TractabilityReport rep = make_limit_report(d, limit_witness_eps(d), alpha, beta);
        t.add({cell(rep.d), cell(rep.eps), cell(rep.n_eps), cell(rep.ratio)});
    }
    return emit_to(man, t, out_path, out, err);
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int cases, const std::string& format,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
    SuiteResult res = run_suite(suite, seed, cases);
    Manifest man;
    man.command = "verify";
    man.format = format;
    man.seed = seed;
    man.set("suite", suite);
    man.set("cases", std::to_string(res.cases));
    Table t;
    t.columns = {"suite", "seed", "cases", "failures", "status"};
    t.add({cell(res.suite), cell(static_cast<long long>(res.seed)), cell(res.cases), cell(res.failures),
           cell(res.failures == 0 ? "pass" : "fail")});
    int rc = emit_to(man, t, out_path, out, err);
    if (rc != kOk) return rc;
    for (const auto& note : res.notes) err << "note: " << note << "\n";
    if (format == "csv") out << (res.cases - res.failures) << "/" << res.cases << " pass\n";
    return res.failures == 0 ? kOk : kVerifyFailure;
}

}  // namespace

std::string fmt_real(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eni") == std::string::npos) s += ".0";
    return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"approximation numbers of anisotropic Sobolev embeddings"};
    app.require_subcommand(1);

    std::string r_spec, n_spec, format = "csv", out_path, suite;
    int d = 1, decades = 5, cases = 0, d_max = 10, d_step = 1;
    double scale = 1.0, eps = 0.5, alpha = 1.0, beta = 1.0, max_points = 1e8;
    bool exp2r = false, log_only = false, limit_space = false, no_an = false;
    std::uint64_t seed = 12345;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "write the table to this file instead of stdout");
    };

    CLI::App* sp = app.add_subcommand("spectrum", "a_n for the anisotropic space");
    sp->add_option("--R", r_spec, "smoothness vector, e.g. 1,2,0.5 or 1.5^8")->required();
    sp->add_option("--n", n_spec, "rank, range a:b[:step], or comma list")->required();
    add_common(sp);

    CLI::App* ls = app.add_subcommand("limit-spectrum", "a_n for the limit space");
    ls->add_option("--d", d, "dimension")->required()->check(CLI::PositiveNumber);
    ls->add_option("--n", n_spec, "rank, range a:b[:step], or comma list")->required();
    add_common(ls);

    CLI::App* vo = app.add_subcommand("volume", "generalized-ball volume");
    vo->add_option("--R", r_spec, "ball exponents")->required();
    vo->add_option("--scale", scale, "budget t of B(t)");
    vo->add_flag("--exp2R", exp2r, "double the exponents (B_{2R} from a smoothness vector)");
    vo->add_flag("--log", log_only, "emit the natural log only");
    add_common(vo);

    CLI::App* en = app.add_subcommand("envelope", "theoretical bounds around a_n");
    en->add_option("--R", r_spec)->required();
    en->add_option("--n", n_spec)->required();
    en->add_flag("--no-an", no_an, "skip computing the actual a_n");
    add_common(en);

    CLI::App* sw = app.add_subcommand("sweep", "strong-equivalence convergence by decades");
    sw->add_option("--R", r_spec)->required();
    sw->add_option("--decades", decades, "largest n = 10^decades");
    add_common(sw);

    CLI::App* co = app.add_subcommand("complexity", "information complexity n(eps, d)");
    CLI::Option* co_r = co->add_option("--R", r_spec, "anisotropic space");
    co->add_flag("--limit-space", limit_space, "use the limit space");
    CLI::Option* co_d = co->add_option("--d", d, "dimension (limit space)");
    co->add_option("--eps", eps, "error threshold in (0, 1]")->required();
    co->add_option("--max-points", max_points, "node-count guard for the lattice walk");
    add_common(co);

    CLI::App* tr = app.add_subcommand("tractability", "weak-tractability ratio sweep");
    tr->add_flag("--limit-space", limit_space, "use the limit space (required)");
    tr->add_option("--alpha", alpha)->required();
    tr->add_option("--beta", beta)->required();
    tr->add_option("--d-max", d_max)->required();
    tr->add_option("--d-step", d_step);
    add_common(tr);

    CLI::App* ve = app.add_subcommand("verify", "seeded cross-validation suites");
    ve->add_option("--suite", suite, "oracle|sandwich|bracket|gamma|quasi-triangle|limit")->required();
    ve->add_option("--seed", seed);
    ve->add_option("--cases", cases, "0 means the suite default");
    add_common(ve);

    std::vector<const char*> argv;
    argv.push_back("sobwidth");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        err << "run with --help for usage\n";
        return kUsageError;
    }

    try {
        if (sp->parsed()) return cmd_spectrum(r_spec, n_spec, format, out_path, out, err);
        if (ls->parsed()) return cmd_limit_spectrum(d, n_spec, format, out_path, out, err);
        if (vo->parsed()) return cmd_volume(r_spec, scale, exp2r, log_only, format, out_path, out, err);
        if (en->parsed()) return cmd_envelope(r_spec, n_spec, !no_an, format, out_path, out, err);
        if (sw->parsed()) return cmd_sweep(r_spec, decades, format, out_path, out, err);
        if (co->parsed()) {
            bool well_formed = limit_space ? (co_d->count() > 0 && co_r->count() == 0)
                                           : co_r->count() > 0;
            if (!well_formed) {
                err << "complexity needs either --R <list> or --limit-space --d <int>\n";
                return kUsageError;
            }
            return cmd_complexity(r_spec, limit_space, d, eps, max_points, format, out_path, out, err);
        }
        if (tr->parsed()) {
            if (!limit_space) {
                err << "tractability sweeps are defined for --limit-space\n";
                return kUsageError;
            }
            return cmd_tractability(d_max, d_step, alpha, beta, format, out_path, out, err);
        }
        if (ve->parsed()) return cmd_verify(suite, seed, cases, format, out_path, out, err);
    } catch (const std::overflow_error& e) {
        err << "resource guard: " << e.what() << "\n";
        return kResourceGuard;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
    err << "no subcommand\n";
    return kUsageError;
}

}  // namespace sobwidth::cli
