#include "qarc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qarc/json_io.hpp"
#include "qarc/laurent.hpp"
#include "qarc/qms.hpp"
#include "qarc/schur.hpp"
#include "qarc/verify.hpp"

namespace qarc {

namespace {

// Numerical failures exit with code 1 and a diagnostic JSON on stderr;
// configuration problems exit with code 2 and name the offending flag.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    double q = 1.0;
    double q0 = 1.0;
    int n = 0;
    int M = 0;
    int N = 0;
    int W = 0;
    std::uint64_t seed = 0;
    std::string ensemble = "gaussian";
    std::vector<double> angles;
    std::vector<double> q_list;
    std::vector<int> m_list;
    double theta_a = 0.0;
    double theta_b = 0.0;
    std::string poly_path;
    std::string output;  // empty = stdout
    std::string format = "json";
    bool full = false;
};

std::vector<double> parse_double_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(std::string(flag) + ": cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) throw ConfigError(std::string(flag) + ": empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* flag) {
    std::vector<int> out;
    for (const double v : parse_double_list(text, flag)) {
        if (v != std::floor(v)) throw ConfigError(std::string(flag) + ": expected integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

LaurentPoly load_poly(const std::string& path) {
    Json j;
    if (path == "-") {
        try {
            j = Json::parse(std::cin);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("--poly: invalid JSON on stdin: ") + e.what());
        }
    } else {
        std::ifstream in(path);
        if (!in) throw ConfigError("--poly: cannot open '" + path + "'");
        try {
            j = Json::parse(in);
        } catch (const std::exception& e) {
            throw ConfigError("--poly: invalid JSON in '" + path + "': " + e.what());
        }
    }
    try {
        return laurent_from_json(j);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("--poly: ") + e.what());
    }
}

void check_q(double q, const char* flag) {
    if (!(q > 0.0) || q > 1.0) throw ConfigError(std::string(flag) + ": must lie in (0, 1]");
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) throw ConfigError("--output: cannot open '" + cfg.output + "' for writing");
    file << text;
}

Ensemble parse_ensemble(const std::string& name) {
    if (name == "gaussian") return Ensemble::gaussian;
    if (name == "sparse") return Ensemble::sparse;
    if (name == "rank_one") return Ensemble::rank_one;
    throw ConfigError("--ensemble: must be one of gaussian, sparse, rank_one");
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
    if (cfg.format != "json" && cfg.format != "csv")
        throw ConfigError("--format: must be json or csv");

    if (cfg.command == "qint") {
        check_q(cfg.q, "--q");
        const double v = q_integer(cfg.n, QDeformation(cfg.q));
        emit(cfg, dump_g12(Json{{"value", v}}), out);
        return 0;
    }
    if (cfg.command == "deriv" || cfg.command == "integrate") {
        check_q(cfg.q, "--q");
        if (cfg.poly_path.empty()) throw ConfigError("--poly: required for this command");
        const LaurentPoly f = load_poly(cfg.poly_path);
        const QDeformation q(cfg.q);
        const LaurentPoly g = cfg.command == "deriv" ? d_q(f, q) : q_integral(f, q);
        emit(cfg, dump_g12(to_json(g)), out);
        return 0;
    }
    if (cfg.command == "fejer") {
        if (cfg.M < 0) throw ConfigError("--M: must be non-negative");
        if (cfg.poly_path.empty()) throw ConfigError("--poly: required for this command");
        emit(cfg, dump_g12(to_json(fejer(load_poly(cfg.poly_path), cfg.M))), out);
        return 0;
    }
    if (cfg.command == "norm") {
        if (!cfg.poly_path.empty()) {
            const LaurentPoly f = load_poly(cfg.poly_path);
            if (cfg.N != 0 && cfg.N <= 2 * f.band())
                throw ConfigError("--N: grid must exceed twice the band of the polynomial");
            emit(cfg, dump_g12(to_json(sup_norm(f, cfg.N))), out);
            return 0;
        }
        if (cfg.W <= 0) throw ConfigError("--poly or --W: norm needs a polynomial or a random-operator window");
        const BandedOperator t = random_operator(cfg.W, cfg.seed, parse_ensemble(cfg.ensemble));
        emit(cfg,
             dump_g12(Json{{"op_norm", op_norm(t)},
                           {"window", cfg.W},
                           {"seed", cfg.seed},
                           {"ensemble", cfg.ensemble}}),
             out);
        return 0;
    }
    if (cfg.command == "mk") {
        check_q(cfg.q, "--q");
        if (cfg.M < 0) throw ConfigError("--M: must be non-negative");
        if (cfg.N != 0 && cfg.N <= 2 * cfg.M) throw ConfigError("--N: must exceed 2*M");
        const MKProblem p{{cfg.M, QDeformation(cfg.q)}, EvalState(cfg.theta_a), EvalState(cfg.theta_b),
                          cfg.N};
        emit(cfg, dump_g12(to_json(mk_distance(p))), out);
        return 0;
    }
    if (cfg.command == "diameter") {
        check_q(cfg.q, "--q");
        if (cfg.M < 0) throw ConfigError("--M: must be non-negative");
        if (cfg.N != 0 && cfg.N <= 2 * cfg.M) throw ConfigError("--N: must exceed 2*M");
        std::vector<double> angles = cfg.angles;
        if (angles.empty())
            for (int i = 0; i < 8; ++i) angles.push_back(2.0 * std::numbers::pi * i / 8);
        if (angles.size() < 2) throw ConfigError("--angles: need at least two angles");
        const double worst = diameter_scan({cfg.M, QDeformation(cfg.q)}, angles, cfg.N);
        emit(cfg,
             dump_g12(Json{{"max_upper", worst},
                           {"diameter_bound", 2.0 * std::numbers::pi / std::sqrt(3.0)},
                           {"angles", angles},
                           {"M", cfg.M},
                           {"q", cfg.q}}),
             out);
        return 0;
    }
    if (cfg.command == "leibniz") {
        check_q(cfg.q, "--q");
        if (cfg.n < 1) throw ConfigError("--n: must be positive");
        emit(cfg, dump_g12(Json{{"ratio", leibniz_ratio(cfg.n, QDeformation(cfg.q))}}), out);
        return 0;
    }
    if (cfg.command == "gh") {
        check_q(cfg.q, "--q");
        check_q(cfg.q0, "--q0");
        if (cfg.M < 0) throw ConfigError("--M: must be non-negative");
        emit(cfg, dump_g12(to_json(gh_band_bound(cfg.M, QDeformation(cfg.q), QDeformation(cfg.q0)))), out);
        return 0;
    }
    if (cfg.command == "continuity") {
        check_q(cfg.q0, "--q0");
        if (cfg.q_list.empty()) throw ConfigError("--q-list: required for this command");
        for (const double q : cfg.q_list) check_q(q, "--q-list");
        std::vector<int> ms = cfg.m_list;
        if (ms.empty()) ms = {1, 2, 4, 8, 16, 32, 64, 128, 256};
        for (const int m : ms)
            if (m < 0) throw ConfigError("--M-list: bands must be non-negative");
        const ContinuityScan scan = continuity_scan(QDeformation(cfg.q0), cfg.q_list, ms);
        emit(cfg, cfg.format == "csv" ? to_csv(scan) : dump_g12(to_json(scan)), out);
        return 0;
    }
    if (cfg.command == "verify") {
        const std::vector<PropertyReport> reports = run_verify(cfg.full ? VerifyLevel::full : VerifyLevel::quick);
        std::ostringstream table;
        std::size_t passed = 0;
        double total = 0.0;
        for (const PropertyReport& r : reports) {
            char line[384];
            std::snprintf(line, sizeof(line), "[%s] %-30s (%7.2fs) %s\n", r.passed ? "PASS" : "FAIL",
                          r.name.c_str(), r.seconds, r.detail.c_str());
            table << line;
            if (r.passed) ++passed;
            total += r.seconds;
        }
        char tail[128];
        std::snprintf(tail, sizeof(tail), "verify (%s): %zu/%zu properties passed in %.1fs\n",
                      cfg.full ? "full" : "quick", passed, reports.size(), total);
        table << tail;
        emit(cfg, table.str(), out);
        return passed == reports.size() ? 0 : 1;
    }
    throw ConfigError("unknown command '" + cfg.command + "'");
}

// Values from --config fill in flags that were not given on the command
// line; explicit flags win.
void merge_config(RunConfig& cfg, const Json& file, const CLI::App& cmd) {
    const auto given = [&](const std::string& flag) {
        const CLI::Option* opt = cmd.get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };
    const auto num = [&](const char* key, auto& slot, const char* flag) {
        if (file.contains(key) && !given(flag)) slot = file[key].get<std::decay_t<decltype(slot)>>();
    };
    num("q", cfg.q, "--q");
    num("q0", cfg.q0, "--q0");
    num("n", cfg.n, "--n");
    num("M", cfg.M, "--M");
    num("N", cfg.N, "--N");
    num("W", cfg.W, "--W");
    num("seed", cfg.seed, "--seed");
    num("theta_a", cfg.theta_a, "--theta-a");
    num("theta_b", cfg.theta_b, "--theta-b");
    if (file.contains("ensemble") && !given("--ensemble")) cfg.ensemble = file["ensemble"].get<std::string>();
    if (file.contains("poly") && !given("--poly")) cfg.poly_path = file["poly"].get<std::string>();
    if (file.contains("output") && !given("--output")) cfg.output = file["output"].get<std::string>();
    if (file.contains("format") && !given("--format")) cfg.format = file["format"].get<std::string>();
    if (file.contains("full") && !given("--full")) cfg.full = file["full"].get<bool>();
    if (file.contains("angles") && !given("--angles"))
        cfg.angles = file["angles"].get<std::vector<double>>();
    if (file.contains("q_list") && !given("--q-list"))
        cfg.q_list = file["q_list"].get<std::vector<double>>();
    if (file.contains("M_list") && !given("--M-list")) cfg.m_list = file["M_list"].get<std::vector<int>>();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"q-deformed calculus on the circle: derivatives, integrals, Fejer compressions,\n"
                 "Monge-Kantorovich distances on spectral bands and Gromov-Hausdorff bounds"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string angles_text, q_list_text, m_list_text;

    const auto add_common = [&](CLI::App* c) {
        c->add_option("--output", cfg.output, "write the report to this path instead of stdout");
        c->add_option("--format", cfg.format, "json or csv (csv applies to table reports)");
        c->add_option("--config", config_path, "JSON file with defaults; explicit flags win");
        return c;
    };

    CLI::App* qint = add_common(app.add_subcommand("qint", "evaluate the q-integer [n]_q"));
    qint->add_option("--n", cfg.n, "integer to deform");
    qint->add_option("--q", cfg.q, "deformation parameter in (0,1]");

    CLI::App* deriv = add_common(app.add_subcommand("deriv", "q-derivative of a polynomial"));
    deriv->add_option("--q", cfg.q, "deformation parameter");
    deriv->add_option("--poly", cfg.poly_path, "polynomial JSON file, or - for stdin");

    CLI::App* integ = add_common(app.add_subcommand("integrate", "q-integral of a polynomial"));
    integ->add_option("--q", cfg.q, "deformation parameter");
    integ->add_option("--poly", cfg.poly_path, "polynomial JSON file, or - for stdin");

    CLI::App* fej = add_common(app.add_subcommand("fejer", "Fejer compression onto the band [-M, M]"));
    fej->add_option("--M", cfg.M, "band half-width");
    fej->add_option("--poly", cfg.poly_path, "polynomial JSON file, or - for stdin");

    CLI::App* norm = add_common(app.add_subcommand("norm", "certified sup norm of a polynomial, or the"
                                                           " operator norm of a seeded random matrix"));
    norm->add_option("--poly", cfg.poly_path, "polynomial JSON file, or - for stdin");
    norm->add_option("--N", cfg.N, "evaluation grid (default max(4096, 16*band))");
    norm->add_option("--W", cfg.W, "window half-width for the random-operator mode");
    norm->add_option("--seed", cfg.seed, "random-operator seed");
    norm->add_option("--ensemble", cfg.ensemble, "gaussian, sparse or rank_one");

    CLI::App* mk = add_common(app.add_subcommand("mk", "Monge-Kantorovich distance between two"
                                                       " evaluation states on a spectral band"));
    mk->add_option("--q", cfg.q, "deformation parameter");
    mk->add_option("--M", cfg.M, "band half-width");
    mk->add_option("--theta-a", cfg.theta_a, "first evaluation angle (radians)");
    mk->add_option("--theta-b", cfg.theta_b, "second evaluation angle (radians)");
    mk->add_option("--N", cfg.N, "constraint sampling grid (default max(8M, 1024))");

    CLI::App* diam = add_common(app.add_subcommand("diameter", "max MK distance over a set of angles"));
    diam->add_option("--q", cfg.q, "deformation parameter");
    diam->add_option("--M", cfg.M, "band half-width");
    diam->add_option("--angles", angles_text, "comma-separated angles (default: 8 equispaced)");
    diam->add_option("--N", cfg.N, "constraint sampling grid");

    CLI::App* leib = add_common(app.add_subcommand("leibniz", "[2n]_q / (2 [n]_q)"));
    leib->add_option("--q", cfg.q, "deformation parameter");
    leib->add_option("--n", cfg.n, "frequency");

    CLI::App* gh = add_common(app.add_subcommand("gh", "Gromov-Hausdorff upper bound between the q- and"
                                                       " q0-deformations through the band A_M"));
    gh->add_option("--q", cfg.q, "deformation parameter");
    gh->add_option("--q0", cfg.q0, "reference deformation parameter");
    gh->add_option("--M", cfg.M, "band half-width");

    CLI::App* cont = add_common(app.add_subcommand("continuity", "sweep of GH bounds over q and M"));
    cont->add_option("--q0", cfg.q0, "reference deformation parameter");
    cont->add_option("--q-list", q_list_text, "comma-separated deformation values");
    cont->add_option("--M-list", m_list_text, "comma-separated band sizes (default powers of two to 256)");

    CLI::App* ver = add_common(app.add_subcommand("verify", "run the invariant suite of every module"));
    ver->add_flag("--full", cfg.full, "full sample sizes (dominated by the q=1 arc-length scan)");
    ver->add_flag("--quick", "reduced sample sizes (default)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "qarc: " << e.what() << "\n";
        return 2;
    }

    CLI::App* active = app.get_subcommands().front();
    cfg.command = active->get_name();
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("--config: cannot open '" + config_path + "'");
            Json file;
            try {
                file = Json::parse(in);
            } catch (const std::exception& e) {
                throw ConfigError(std::string("--config: invalid JSON: ") + e.what());
            }
            merge_config(cfg, file, *active);
        }
        if (!angles_text.empty()) cfg.angles = parse_double_list(angles_text, "--angles");
        if (!q_list_text.empty()) cfg.q_list = parse_double_list(q_list_text, "--q-list");
        if (!m_list_text.empty()) cfg.m_list = parse_int_list(m_list_text, "--M-list");
        return dispatch(cfg, out);
    } catch (const ConfigError& e) {
        err << "qarc: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "qarc: " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        err << dump_g12(Json{{"error", "overflow"}, {"message", e.what()}});
        return 1;
    } catch (const std::exception& e) {
        // LP non-convergence, power-iteration cap, and similar numerical failures
        err << dump_g12(Json{{"error", "numerical"}, {"message", e.what()}});
        return 1;
    }
}

}  // namespace qarc
