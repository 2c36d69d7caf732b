#include "bdk/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "bdk/io.hpp"
#include "bdk/nevanlinna.hpp"
#include "bdk/parse.hpp"
#include "bdk/suites.hpp"
#include "bdk/zw.hpp"

namespace bdk {

namespace {

struct RunConfig {
    int level = 40;
    int delta = 0;  // 0: level / 2
    double r_max = default_rmax;
    double tol = 1e-3;
    std::uint64_t seed = 0x5EED;
    std::string output = "-";
    std::string format = "csv";
    int jobs = 1;

    void validate() const {
        if (!(r_max > 0.0 && r_max < 1.0)) throw InvalidInput("--rmax must lie in (0, 1)");
        if (level < 4) throw InvalidInput("--level must be at least 4");
        if (delta < 0) throw InvalidInput("--delta must be nonnegative");
        if (!(tol > 0.0)) throw InvalidInput("--tol must be positive");
        if (jobs < 1) throw InvalidInput("--jobs must be at least 1");
    }
    TruncationPolicy policy() const {
        TruncationPolicy p;
        p.delta = delta;
        p.r_max = r_max;
        return p;
    }
};

// order token: k >= 0, or -1 for the gap, -2 for the HS norm
struct Order {
    int k;
    std::string label() const { return k >= 0 ? std::to_string(k) : k == -1 ? "gap" : "hs"; }
};

std::vector<Order> parse_orders(const std::string& s) {
    std::vector<Order> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
        if (tok == "gap") {
            out.push_back({-1});
        } else if (tok == "hs") {
            out.push_back({-2});
        } else {
            char* end = nullptr;
            const long k = std::strtol(tok.c_str(), &end, 10);
            if (tok.empty() || *end != '\0' || k < 0 || k > 1000) throw ParseError("bad order '" + tok + "'");
            out.push_back({int(k)});
        }
    }
    if (out.empty()) throw ParseError("empty order list");
    return out;
}

std::string num(double v) {
    if (v == 0.0) v = 0.0;  // no "-0" in the output
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* csv_header = "a_re,a_im,b_re,b_im,order,value,tail,level\n";

std::string csv_row(const Order& o, const InvariantValue& v) {
    return num(v.a.real()) + "," + num(v.a.imag()) + "," + num(v.b.real()) + "," + num(v.b.imag()) + "," + o.label() +
           "," + num(v.value) + "," + num(v.tail_estimate) + "," + std::to_string(v.level) + "\n";
}

void emit(const RunConfig& c, const std::string& data, std::ostream& out) {
    if (c.output == "-" || c.output.empty()) {
        out << data;
        return;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw InvalidInput("cannot open output file '" + c.output + "'");
    f << data;
}

// Evaluates one order at one point; the zw oracle replaces the generic engine when present.
struct Evaluator {
    const InvariantEngine* engine = nullptr;
    bool oracle = false;
    const BlaschkeProduct* theta = nullptr;
    const BlaschkeProduct* phi = nullptr;
    double r_max = default_rmax;

    InvariantValue operator()(const Order& o, cplx a, cplx b) const {
        if (!oracle) {
            if (o.k == -1) return engine->gap(a, b);
            if (o.k == -2) return engine->hs_norm_squared(a, b);
            return engine->sigma(o.k, a, b);
        }
        check_radius(a, r_max, "a");
        check_radius(b, r_max, "b");
        // Σ_k of the lift at (a, b) is Σ_k of [z - w] at (θ(a), φ(b))
        const cplx ta = theta ? (*theta)(a) : a, tb = phi ? (*phi)(b) : b;
        InvariantValue v = sigma1_zw(ta, tb);
        v.a = a;
        v.b = b;
        if (o.k == 1) return v;
        if (o.k == 0) {
            v.order = 0;
            v.value += 1.0;
            v.raw += 1.0;
            v.refined += 1.0;
        } else if (o.k == -1) {
            v.quantity = Quantity::gap;
            v.order = 0;
            v.value = v.raw = v.refined = 1.0;
            v.tail_estimate = 0.0;
        } else if (o.k == -2) {
            v.quantity = Quantity::hs_norm_squared;
            v.order = 0;
            v.value = 2.0 * v.value + 1.0;
            v.raw = 2.0 * v.raw + 1.0;
            v.refined = 2.0 * v.refined + 1.0;
            v.tail_estimate *= 2.0;
        } else {
            throw InvalidInput("the zw oracle provides orders 0, 1, gap and hs only");
        }
        return v;
    }
};

bool is_zw(const std::vector<Series2D>& g) {
    if (g.size() != 1) return false;
    const Series2D t = g[0].trimmed();
    const Caps d = t.degree();
    if (d.z != 1 || d.w != 1) return false;
    const cplx c = t.coeff(1, 0);
    return std::abs(c) > 0 && std::abs(t.coeff(0, 1) + c) < 1e-14 * std::abs(c) && std::abs(t.coeff(0, 0)) == 0.0 &&
           std::abs(t.coeff(1, 1)) == 0.0;
}

struct Common {
    RunConfig cfg;
    std::string generators, point = "0,0", orders = "0,1", theta, phi, oracle;
    bool level_set = false;
};

void add_config(CLI::App* s, Common& c) {
    s->add_option("--level", c.cfg.level, "truncation level N (default 40, env BDK_LEVEL)");
    s->add_option("--delta", c.cfg.delta, "refinement step; level N+delta is the comparison level (default N/2)");
    s->add_option("--rmax", c.cfg.r_max, "evaluation radius guard");
    s->add_option("--tol", c.cfg.tol, "tolerance");
    s->add_option("--seed", c.cfg.seed, "seed for generated point sets");
    s->add_option("-o,--output", c.cfg.output, "output path, '-' for stdout");
    s->add_option("--format", c.cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--jobs", c.cfg.jobs, "worker threads for sweeps");
}

// [generators] at the configured level, lifted through --theta/--phi when given.
SubmoduleApprox resolve_submodule(const Common& c) {
    SubmoduleApprox m = build_submodule(parse_generators(c.generators), c.cfg.level);
    if (c.theta.empty() && c.phi.empty()) return m;
    const BlaschkeProduct t = c.theta.empty() ? BlaschkeProduct::identity() : parse_blaschke(c.theta);
    const BlaschkeProduct p = c.phi.empty() ? BlaschkeProduct::identity() : parse_blaschke(c.phi);
    return lift(m, t, p, c.cfg.level).lifted;
}

struct OracleSymbols {
    std::optional<BlaschkeProduct> theta, phi;
};

int cmd_invariants_or_sweep(const Common& c, const std::string& grid, const std::string& bspec, bool sweep,
                            std::ostream& out) {
    const auto orders = parse_orders(c.orders);
    const bool oracle = c.oracle == "zw";
    if (!c.oracle.empty() && !oracle) throw ParseError("unknown oracle '" + c.oracle + "'");

    // points
    std::vector<std::pair<cplx, cplx>> pts;
    if (!sweep) {
        const BiPoint p = parse_point(c.point);
        pts.emplace_back(p.z, p.w);
    } else if (grid == "empty") {
    } else if (grid.rfind("polar:", 0) == 0) {
        std::stringstream ss(grid.substr(6));
        std::string a, b, r;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        std::getline(ss, r, ',');
        const int nr = std::atoi(a.c_str()), nt = std::atoi(b.c_str());
        const double rad = r.empty() ? c.cfg.r_max : std::atof(r.c_str());
        if (nr < 1 || nt < 1 || !(rad >= 0.0)) throw ParseError("grid must be polar:NR,NT[,R]");
        const cplx bb = parse_complex(bspec);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nt; ++j) {
                const double rho = nr == 1 ? rad : rad * i / (nr - 1);
                pts.emplace_back(std::polar(rho, 2.0 * std::numbers::pi * j / nt), bb);
            }
    } else if (grid.rfind("list:", 0) == 0) {
        std::stringstream ss(grid.substr(5));
        std::string item;
        while (std::getline(ss, item, ';')) {
            const BiPoint p = parse_point(item);
            pts.emplace_back(p.z, p.w);
        }
    } else {
        throw ParseError("unknown grid '" + grid + "' (use polar:NR,NT[,R], list:a,b;..., or empty)");
    }
    for (const auto& [a, b] : pts) {
        check_radius(a, c.cfg.r_max, "a");
        check_radius(b, c.cfg.r_max, "b");
    }

    std::optional<InvariantEngine> engine;
    OracleSymbols sym;
    if (oracle) {
        if (!c.generators.empty() && !is_zw(parse_generators(c.generators)))
            throw InvalidInput("the zw oracle applies to the generator z-w only");
        if (!c.theta.empty()) sym.theta = parse_blaschke(c.theta);
        if (!c.phi.empty()) sym.phi = parse_blaschke(c.phi);
    } else {
        if (c.generators.empty()) throw ParseError("missing generators (-g)");
        const SubmoduleApprox m = resolve_submodule(c);  // parse errors surface even for empty grids
        if (!pts.empty()) engine.emplace(m, c.cfg.policy());
    }
    Evaluator ev{engine ? &*engine : nullptr, oracle, sym.theta ? &*sym.theta : nullptr, sym.phi ? &*sym.phi : nullptr,
                 c.cfg.r_max};

    // deterministic order: points row-major, then orders; workers fill slots by index
    const std::size_t n = pts.size() * orders.size();
    std::vector<InvariantValue> vals(n);
    std::vector<std::exception_ptr> errs(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                vals[i] = ev(orders[i % orders.size()], pts[i / orders.size()].first, pts[i / orders.size()].second);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    const int jobs = std::min<int>(c.cfg.jobs, int(std::max<std::size_t>(n, 1)));
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (const auto& e : errs)
        if (e) std::rethrow_exception(e);

    std::string data;
    if (c.cfg.format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < n; ++i) {
            json j = to_json(vals[i]);
            j["order"] = orders[i % orders.size()].label();
            arr.push_back(j);
        }
        data = arr.dump(2) + "\n";
    } else {
        data = csv_header;
        for (std::size_t i = 0; i < n; ++i) data += csv_row(orders[i % orders.size()], vals[i]);
    }
    emit(c.cfg, data, out);
    return 0;
}

int cmd_verify(const Common& c, const std::string& suite, std::ostream& out) {
    const auto& names = suite_names();
    if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
        throw ParseError("unknown suite '" + suite + "'");
    SuiteConfig sc;
    sc.level = c.cfg.level;
    sc.delta = c.cfg.delta;
    sc.r_max = c.cfg.r_max;
    sc.tol = c.cfg.tol;
    sc.seed = c.cfg.seed;
    const auto results = run_suite(suite, sc);
    json arr = json::array();
    bool pass = true;
    for (const auto& r : results) {
        arr.push_back(r.report);
        pass = pass && r.pass;
    }
    emit(c.cfg, json{{"suites", arr}, {"pass", pass}}.dump(2) + "\n", out);
    return pass ? 0 : 1;
}

int cmd_nevanlinna(const Common& c, int targets, std::ostream& out) {
    if (c.phi.empty()) throw ParseError("missing --phi");
    if (targets < 0) throw InvalidInput("--targets must be nonnegative");
    const BlaschkeProduct phi = parse_blaschke(c.phi);
    std::mt19937_64 g(c.cfg.seed);
    std::string data = "w_re,w_im,N_root,N_closed,abs_gap\n";
    for (int k = 0; k < targets;) {
        const double rho = 0.95 * std::sqrt(double(g() >> 11) * 0x1.0p-53);
        const cplx w = std::polar(rho, 2.0 * std::numbers::pi * double(g() >> 11) * 0x1.0p-53);
        if (std::abs(w - phi.at_zero()) < 1e-6) continue;
        const double nr = counting_function(phi, w).value, nc = counting_closed_form(phi, w);
        data += num(w.real()) + "," + num(w.imag()) + "," + num(nr) + "," + num(nc) + "," + num(std::abs(nr - nc)) + "\n";
        ++k;
    }
    emit(c.cfg, data, out);
    return 0;
}

int cmd_export(const Common& c, const std::string& basis_path, std::ostream& out) {
    if (c.generators.empty()) throw ParseError("missing generators (-g)");
    const SubmoduleApprox m = resolve_submodule(c);
    emit(c.cfg, to_json(m).dump(2) + "\n", out);
    if (!basis_path.empty()) {
        std::ofstream f(basis_path, std::ios::binary);
        if (!f) throw InvalidInput("cannot open basis file '" + basis_path + "'");
        write_basis_binary(f, m.basis_matrix());
    }
    return 0;
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Core-operator invariants of submodules of the Hardy space over the bidisk", "bdk"};
    app.require_subcommand(1);

    Common c;
    if (const char* env = std::getenv("BDK_LEVEL")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*env == '\0' || *end != '\0') {
            err << "error: BDK_LEVEL must be an integer\n";
            return 2;
        }
        c.cfg.level = int(v);
    }
    std::string grid = "empty", bspec = "0", suite, basis_path;
    int targets = 100;

    auto* inv = app.add_subcommand("invariants", "Σ_k, gap and HS norm at one point");
    auto* swp = app.add_subcommand("sweep", "one CSV row per grid point and order");
    for (auto* s : {inv, swp}) {
        s->add_option("-g,--generators", c.generators, "comma-separated polynomials in z, w");
        s->add_option("-k,--orders", c.orders, "orders: integers, 'gap', 'hs'");
        s->add_option("--theta", c.theta, "Blaschke symbol in z, e.g. 'zeros=0.5,0.3i;gamma=1'");
        s->add_option("--phi", c.phi, "Blaschke symbol in w");
        s->add_option("--oracle", c.oracle, "'zw' evaluates [z-w] through the closed-form series");
        add_config(s, c);
    }
    inv->add_option("-p,--point", c.point, "a,b");
    swp->add_option("--grid", grid, "polar:NR,NT[,R] | list:a,b;a,b | empty");
    swp->add_option("-b", bspec, "fixed second coordinate for polar grids");

    auto* ver = app.add_subcommand("verify", "run a verification suite; exit 0 iff all checks pass");
    ver->add_option("suite", suite, "kernel-identity, core-pullback, invariant-pullback, sandwich, zw, nevanlinna, all")
        ->required();
    add_config(ver, c);

    auto* nev = app.add_subcommand("nevanlinna", "root-based vs closed-form counting function (CSV)");
    nev->add_option("--phi", c.phi, "Blaschke product")->required();
    nev->add_option("--targets", targets, "number of seeded targets");
    add_config(nev, c);

    auto* exp = app.add_subcommand("export", "submodule description as JSON, basis as binary");
    exp->add_option("-g,--generators", c.generators, "comma-separated polynomials in z, w");
    exp->add_option("--theta", c.theta, "Blaschke symbol in z");
    exp->add_option("--phi", c.phi, "Blaschke symbol in w");
    exp->add_option("--basis", basis_path, "write the orthonormal basis here");
    add_config(exp, c);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        c.cfg.validate();
        if (inv->parsed()) return cmd_invariants_or_sweep(c, grid, bspec, false, out);
        if (swp->parsed()) return cmd_invariants_or_sweep(c, grid, bspec, true, out);
        if (ver->parsed()) return cmd_verify(c, suite, out);
        if (nev->parsed()) return cmd_nevanlinna(c, targets, out);
        if (exp->parsed()) return cmd_export(c, basis_path, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const SingularTarget& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace bdk
