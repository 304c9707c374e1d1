#pragma once

// Command-line front end. run() takes the arguments without the program name
// and writes the report to `out`; exit codes are 0 (ok), 1 (invalid input),
// 2 (failed verification or a transform outside its domain).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "lhy/lhy.hpp"

namespace lhy::cli {

enum Exit : int { Ok = 0, InvalidArgs = 1, Failed = 2 };

/// %.17g, which round-trips every double. Non-finite values print as inf/-inf/nan.
inline std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Cell = std::variant<double, long, bool, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    bool record = false;  ///< single-row table rendered as a JSON object

    void add(std::vector<Cell> r) { rows.push_back(std::move(r)); }
};

inline std::string cell_text(const Cell& c) {
    struct V {
        std::string operator()(double d) const { return fmt_num(d); }
        std::string operator()(long l) const { return std::to_string(l); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(V{}, c);
}

inline std::string json_escape(const std::string& s) {
    std::string o = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') o += '\\';
        o += ch;
    }
    return o + "\"";
}

inline std::string cell_json(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return json_escape(fmt_num(*d));
        return fmt_num(*d);
    }
    if (std::holds_alternative<std::string>(c)) return json_escape(std::get<std::string>(c));
    return cell_text(c);
}

inline std::string render_csv(const std::vector<Table>& tables) {
    std::ostringstream os;
    for (std::size_t t = 0; t < tables.size(); ++t) {
        const auto& tb = tables[t];
        if (t) os << '\n';
        os << "# " << tb.name << '\n';
        for (std::size_t i = 0; i < tb.columns.size(); ++i) os << (i ? "," : "") << tb.columns[i];
        os << '\n';
        for (const auto& r : tb.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell_text(r[i]);
            os << '\n';
        }
    }
    return os.str();
}

inline std::string render_json(const std::string& command, const std::vector<Table>& tables) {
    std::ostringstream os;
    os << "{\n  \"command\": " << json_escape(command);
    const auto object = [&](const Table& tb, const std::vector<Cell>& r) {
        std::string s = "{";
        for (std::size_t i = 0; i < r.size(); ++i)
            s += (i ? ", " : "") + json_escape(tb.columns[i]) + ": " + cell_json(r[i]);
        return s + "}";
    };
    for (const auto& tb : tables) {
        os << ",\n  " << json_escape(tb.name) << ": ";
        if (tb.record && tb.rows.size() == 1) {
            os << object(tb, tb.rows[0]);
            continue;
        }
        os << "[";
        for (std::size_t i = 0; i < tb.rows.size(); ++i) os << (i ? ",\n    " : "\n    ") << object(tb, tb.rows[i]);
        os << (tb.rows.empty() ? "]" : "\n  ]");
    }
    os << "\n}\n";
    return os.str();
}

/// "re" or "re,im".
inline cplx parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    try {
        std::size_t used = 0;
        if (comma == std::string::npos) {
            const double re = std::stod(s, &used);
            require(used == s.size(), "malformed number");
            return {re, 0.0};
        }
        const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
        const double re = std::stod(a, &used);
        require(used == a.size(), "malformed number");
        const double im = std::stod(b, &used);
        require(used == b.size(), "malformed number");
        return {re, im};
    } catch (const std::logic_error&) {
        throw InvalidInput("expected a complex number as re or re,im: '" + s + "'");
    }
}

/// "n1,n2,n3".
inline std::array<int, 3> parse_triple(const std::string& s) {
    std::array<int, 3> n{};
    std::istringstream is(s);
    std::string part;
    int i = 0;
    while (std::getline(is, part, ',')) {
        if (i >= 3) throw InvalidInput("expected three integers n1,n2,n3: '" + s + "'");
        try {
            std::size_t used = 0;
            n[i] = std::stoi(part, &used);
            require(used == part.size(), "malformed integer");
        } catch (const std::logic_error&) {
            throw InvalidInput("expected three integers n1,n2,n3: '" + s + "'");
        }
        ++i;
    }
    if (i != 3) throw InvalidInput("expected three integers n1,n2,n3: '" + s + "'");
    return n;
}

struct Output {
    std::string format = "csv";
    std::string out_path;
};

struct Result {
    std::vector<Table> tables;
    int code = Ok;
};

inline Result cmd_spectrum(double a, double rho, double L, int nmax, std::optional<double> N) {
    const ModelParams mp = N ? ModelParams::make(a, rho, L, *N) : ModelParams::from_density(a, rho, L);
    Result res;
    Table model{"model", {"a", "rho", "L", "N", "mean_field"}, {}, true};
    model.add({mp.a(), mp.rho(), mp.L(), mp.N(), mp.mean_field()});

    Table modes{"modes", {"n1", "n2", "n3", "k", "y", "ytilde", "alpha", "epsilon"}, {}, false};
    double depletion = 0.0;
    for (const auto& k : half_lattice(L, nmax)) {
        const ModeParams m = mode_params(mp, k);
        modes.add({long(k.n[0]), long(k.n[1]), long(k.n[2]), k.norm(), m.y, m.ytilde, m.alpha, m.epsilon});
        depletion += 2.0 * m.alpha * m.alpha / (1.0 - m.alpha * m.alpha);
    }
    const AlphaSum as = alpha_sum(mp, L, nmax);
    Table footer{"constants",
                 {"mean_field_energy", "alpha_sum", "alpha_sum_grows_with_cutoff", "depletion", "depletion_over_N"},
                 {},
                 true};
    footer.add({mp.mean_field() * mp.N(), as.value, as.grows_with_cutoff, depletion, depletion / mp.N()});
    res.tables = {std::move(model), std::move(modes), std::move(footer)};
    return res;
}

struct EigenArgs {
    std::optional<double> y;
    std::string k_mode;
    double a = 0, rho = 1, L = 2 * pi;
    int p = 0;
    std::string theta = "0";
    std::size_t smax = 20;
    bool mirror = false;
    std::optional<double> transform;
    std::size_t horizon = 400;
};

inline Table coefficient_table(const std::string& name, const LadderState& st) {
    Table t{name, {"s", "n_a", "n_b", "re", "im"}, {}, false};
    for (std::size_t s = 0; s < st.size(); ++s) {
        const long na = st.mirror ? long(s) : long(st.p + s);
        const long nb = st.mirror ? long(st.p + s) : long(s);
        t.add({long(s), na, nb, st.coeffs[s].real(), st.coeffs[s].imag()});
    }
    return t;
}

inline Result cmd_eigenstate(const EigenArgs& ea) {
    double y = 0.0;
    if (ea.y) {
        require(ea.k_mode.empty(), "give either --y or --k-mode, not both");
        y = *ea.y;
    } else {
        require(!ea.k_mode.empty(), "one of --y or --k-mode is required");
        const ModelParams mp = ModelParams::from_density(ea.a, ea.rho, ea.L);
        y = mode_params(mp, make_momentum(ea.L, parse_triple(ea.k_mode))).y;
    }
    require(y > 0.0, "the coupling y must be positive (a > 0)");
    require(ea.p >= 0, "p must be non-negative");
    const cplx theta = parse_complex(ea.theta);
    const double yt = ytilde_of(y);
    const auto cls = classify_normalizable(yt, theta, ea.p);
    const auto st = psi_p_theta({ea.p, theta, yt, ea.smax, ea.mirror, false});
    const cplx E = 0.5 * ea.p + theta;

    Result res;
    Table summary{"state",
                  {"y", "ytilde", "alpha_c", "p", "mirror", "theta_re", "theta_im", "classification", "energy_re",
                   "energy_im", "coefficients"},
                  {},
                  true};
    summary.add({y, yt, alpha_c(y), long(ea.p), ea.mirror, theta.real(), theta.imag(), std::string(to_string(cls)),
                 E.real(), E.imag(), long(st.size())});
    res.tables.push_back(std::move(summary));
    res.tables.push_back(coefficient_table("coefficients", st));

    if (ea.transform) {
        const double alpha = *ea.transform;
        require(alpha >= 0.0 && alpha <= alpha_c(y) * (1.0 + 1e-12), "--transform alpha must lie in [0, alpha_c(y)]");
        const auto wide = psi_p_theta({ea.p, theta, yt, ea.horizon, ea.mirror, false});
        const auto rep = domain_check(
            [&](std::size_t s) { return s < wide.size() ? wide.coeffs[s] : cplx{}; }, alpha, ea.p, ea.horizon);
        Table dom{"domain", {"alpha", "verdict", "finite_support", "growth_rate", "last_decade_increment"}, {}, true};
        dom.add({alpha, std::string(to_string(rep.verdict)), rep.finite_support, rep.growth_rate,
                 rep.last_decade_increment});
        res.tables.push_back(std::move(dom));
        if (rep.verdict == DomainVerdict::NotInDomain) {
            res.code = Failed;
            return res;
        }
        const auto tr = apply_exp_pair(st, -alpha, ea.smax);
        const cplx Eab = (1.0 - 2.0 * alpha * y) * E - alpha * y;
        const Couplings c = y12(y, alpha);
        Table ts{"transformed", {"alpha", "hab_energy_re", "hab_energy_im", "y1", "y2"}, {}, true};
        ts.add({alpha, Eab.real(), Eab.imag(), c.y1, c.y2});
        res.tables.push_back(std::move(ts));
        res.tables.push_back(coefficient_table("transformed_coefficients", tr));
    }
    return res;
}

inline Result cmd_verify(const std::string& suite, std::uint64_t seed, bool inject_fault) {
    const auto rep = verify::run(suite, {seed, inject_fault});
    Result res;
    Table checks{"checks", {"suite", "invariant", "measured", "tolerance", "passed"}, {}, false};
    long passed = 0;
    for (const auto& c : rep.checks) {
        checks.add({c.suite, c.name, c.deviation, c.tolerance, c.passed});
        passed += c.passed;
    }
    Table summary{"summary", {"suite", "seed", "checks", "passed", "failed", "all_passed"}, {}, true};
    summary.add({suite, long(seed), long(rep.checks.size()), passed, long(rep.checks.size()) - passed,
                 rep.all_passed()});
    res.tables = {std::move(checks), std::move(summary)};
    res.code = rep.all_passed() ? Ok : Failed;
    return res;
}

inline Result cmd_gram(double y, int p, int nmax, std::size_t smax) {
    if (smax == 0) smax = std::max<std::size_t>(80, 10 * std::size_t(std::max(nmax, 1)));
    const auto w = completeness_witness(p, y, nmax, smax);
    Result res;
    Table sv{"singular_values", {"index", "value", "value_doubled_smax"}, {}, false};
    for (std::size_t i = 0; i < w.coarse.singular_values.size(); ++i)
        sv.add({long(i), w.coarse.singular_values[i], w.fine.singular_values[i]});
    Table nr{"raw_norms2", {"N", "norm2"}, {}, false};
    for (std::size_t i = 0; i < w.coarse.raw_norms2.size(); ++i) nr.add({long(i), w.coarse.raw_norms2[i]});
    Table summary{"summary",
                  {"y", "ytilde", "p", "nmax", "smax", "rank", "smallest_ratio", "relative_change", "full_rank",
                   "stable"},
                  {},
                  true};
    summary.add({y, ytilde_of(y), long(p), long(nmax), long(smax), long(w.coarse.rank()), w.coarse.smallest_ratio(),
                 w.relative_change, w.full_rank, w.stable});
    res.tables = {std::move(summary), std::move(sv), std::move(nr)};
    res.code = (w.full_rank && w.stable) ? Ok : Failed;
    return res;
}

inline Result cmd_wu(double a, double rho, double L, const std::string& kn, int Ntot, int p) {
    const ModelParams mp = ModelParams::from_density(a, rho, L);
    const WuSector sec(Ntot, p, make_momentum(L, parse_triple(kn)));
    const ModeParams mode = mode_params(mp, sec.k);
    const WuCoupling cpl = wu_ytilde(mode, mp);
    const auto T = build_transformed_wu(sec, mp);
    const auto spec = wu_spectrum(sec, mp);

    Result res;
    Table summary{"sector", {"Ntot", "p", "dim", "k", "epsilon", "alpha", "ytilde", "free_limit", "max_residual"}, {},
                  true};
    Table levels{"levels", {"s", "n_k", "n_minus_k", "n_0", "energy", "above_ground", "residual"}, {}, false};
    double worst = 0.0;
    for (std::size_t s = 0; s < sec.dim(); ++s) {
        const auto v = wu_eigenstate(sec, mp, s);
        const double r = wu_relative_residual(T, v, spec[s]);
        worst = std::max(worst, r);
        levels.add({long(s), long(p + s), long(s), long(sec.n0(s)), spec[s], spec[s] - spec[0], r});
    }
    summary.add({long(Ntot), long(p), long(sec.dim()), sec.k.norm(), mode.epsilon, mode.alpha, cpl.ytilde,
                 cpl.free_limit, worst});
    res.tables = {std::move(summary), std::move(levels)};
    res.code = worst <= 1e-10 ? Ok : Failed;
    return res;
}

inline Result cmd_degenerate(double E, int max_p) {
    Result res;
    Table t{"states", {"p", "N", "mirror", "energy"}, {}, false};
    for (const auto& d : enumerate_degenerate(E, max_p)) t.add({long(d.p), long(d.N), d.mirror, 0.5 * d.p + d.N});
    res.tables = {std::move(t)};
    return res;
}

/// Parses and runs one command. `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pair-excitation toolkit for the Lee-Huang-Yang Hamiltonian", "lhy"};
    app.require_subcommand(1);
    Output o;
    const auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", o.out_path, "Also write the report to this file");
    };

    double a = 1.0 / (16.0 * pi), rho = 1.0, L = 2.0 * pi;
    int nmax = 1;
    std::optional<double> N;
    auto* sp = app.add_subcommand("spectrum", "Mode table over the half lattice");
    sp->add_option("--a", a, "Scattering length");
    sp->add_option("--rho", rho, "Density");
    sp->add_option("--L", L, "Box side");
    sp->add_option("--nmax", nmax, "Lattice cutoff");
    sp->add_option("--N", N, "Particle count (must equal rho L^3)");
    add_output(sp);

    EigenArgs ea;
    auto* es = app.add_subcommand("eigenstate", "Closed-form excited state on one ladder");
    es->add_option("--y", ea.y, "Coupling y in (0, 1/2)");
    es->add_option("--k-mode", ea.k_mode, "Lattice mode n1,n2,n3 (uses --a --rho --L)");
    es->add_option("--a", ea.a, "Scattering length for --k-mode");
    es->add_option("--rho", ea.rho, "Density for --k-mode");
    es->add_option("--L", ea.L, "Box side for --k-mode");
    es->add_option("--p", ea.p, "Ladder imbalance");
    es->add_option("--theta", ea.theta, "Theta as re or re,im");
    es->add_option("--smax", ea.smax, "Truncation index");
    es->add_flag("--mirror", ea.mirror, "Use the |s, p+s> branch");
    es->add_option("--transform", ea.transform, "Apply exp(-alpha a*b*) with this alpha");
    es->add_option("--horizon", ea.horizon, "Domain-check horizon")->check(CLI::Range(100, 100000));
    add_output(es);

    std::string suite = "all";
    std::uint64_t seed = 1;
    bool fault = false;
    auto* vf = app.add_subcommand("verify", "Run invariant suites");
    vf->add_option("--suite", suite, "Suite")->check(CLI::IsMember({"lattice", "eigen", "genfunc", "hypergeom", "wu", "all"}));
    vf->add_option("--seed", seed, "Random seed");
    vf->add_flag("--inject-fault", fault, "Flip signs inside the checks (negative control)");
    add_output(vf);

    double gy = 0.45;
    int gp = 0, gn = 4;
    std::size_t gs = 0;
    auto* gr = app.add_subcommand("gram", "Gram-matrix witness for the transported family");
    gr->add_option("--y", gy, "Coupling y");
    gr->add_option("--p", gp, "Ladder imbalance");
    gr->add_option("--nmax", gn, "Largest N");
    gr->add_option("--smax", gs, "Truncation (default max(80, 10 nmax))");
    add_output(gr);

    double wa = 1.0 / (16.0 * pi), wrho = 1.0, wL = 2.0 * pi;
    std::string kn = "1,0,0";
    int wN = 4, wp = 0;
    auto* wu = app.add_subcommand("wu", "Fixed-N three-mode sector");
    wu->add_option("--a", wa, "Scattering length");
    wu->add_option("--rho", wrho, "Density");
    wu->add_option("--L", wL, "Box side");
    wu->add_option("--kn", kn, "Mode n1,n2,n3");
    wu->add_option("--N", wN, "Total particle number");
    wu->add_option("--p", wp, "Imbalance");
    add_output(wu);

    double dE = 1.0;
    int dmax = -1;
    auto* dg = app.add_subcommand("degenerate", "States with p/2 + N = E");
    dg->add_option("--E", dE, "Energy (half-integer)");
    dg->add_option("--max-p", dmax, "Largest p (negative: none)");
    add_output(dg);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return InvalidArgs;
    }

    Result res;
    std::string command;
    try {
        if (*sp) {
            command = "spectrum";
            res = cmd_spectrum(a, rho, L, nmax, N);
        } else if (*es) {
            command = "eigenstate";
            res = cmd_eigenstate(ea);
        } else if (*vf) {
            command = "verify";
            res = cmd_verify(suite, seed, fault);
        } else if (*gr) {
            command = "gram";
            res = cmd_gram(gy, gp, gn, gs);
        } else if (*wu) {
            command = "wu";
            res = cmd_wu(wa, wrho, wL, kn, wN, wp);
        } else {
            command = "degenerate";
            res = cmd_degenerate(dE, dmax);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return InvalidArgs;
    }

    const std::string text = o.format == "json" ? render_json(command, res.tables) : render_csv(res.tables);
    out << text;
    if (!o.out_path.empty()) {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot open " << o.out_path << '\n';
            return InvalidArgs;
        }
        f << text;
    }
    return res.code;
}

} // namespace lhy::cli
