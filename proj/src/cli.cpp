#include "hltasep/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "hltasep/acceptance.hpp"
#include "hltasep/asymptotics.hpp"
#include "hltasep/dynamics.hpp"
#include "hltasep/exact.hpp"
#include "hltasep/io.hpp"
#include "hltasep/moment_integrals.hpp"
#include "hltasep/monte_carlo.hpp"
#include "hltasep/sde.hpp"

namespace hltasep::cli {

using nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

namespace {

constexpr int kSchemaVersion = 1;

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            if constexpr (std::is_same_v<T, int>)
                out.push_back(std::stoi(tok, &used));
            else
                out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw DomainError(std::string("bad ") + what + " list '" + text + "'");
        }
    }
    if (out.empty()) throw DomainError(std::string("empty ") + what + " list");
    return out;
}

void require_open_unit(double t) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("--t must lie in (0,1)");
}

void require_positive(double v, const char* flag) {
    if (!(v > 0.0)) throw DomainError(std::string(flag) + " must be positive");
}

struct Output {
    std::string name;
    std::string content;
};

struct Run {
    std::string subcommand;
    json params = json::object();
    std::uint64_t seed = kDefaultSeed;
    std::string seed_source = "default";
    std::vector<Output> outputs;
    int exit_code = 0;
};

std::string csv_or_json(const std::string& format, const std::string& csv, const json& j) {
    return format == "json" ? j.dump(2) + "\n" : csv;
}

void simulate_cmd(Run& run, const std::string& format, const std::string& process, double t, double horizon,
                  std::optional<int> rows) {
    require_open_unit(t);
    if (horizon < 0.0) throw DomainError("--horizon must be nonnegative");
    std::vector<JumpEvent> events;
    std::string final_state;
    if (process == "ttasep") {
        const auto tr = simulate_ttasep(ParticleConfig(), t, horizon, run.seed);
        events = tr.events;
        final_state = tr.final_state.to_string();
    } else {
        if (rows && *rows < 1) throw DomainError("--n must be positive");
        const auto tr = simulate_hl(Partition(), HLParams(t, rows), horizon, run.seed);
        events = tr.events;
        final_state = tr.final_state.to_string();
    }
    std::ostringstream csv;
    write_events_csv(csv, events);
    json j = json::array();
    for (const auto& e : events) j.push_back({{"time", e.time}, {"index", e.index}, {"new_value", e.new_value}});
    run.outputs.push_back({format == "json" ? "trajectory.json" : "trajectory.csv", csv_or_json(format, csv.str(), j)});
    json summary{{"process", process}, {"events", events.size()}, {"final_state", final_state}, {"seed", run.seed}};
    run.outputs.push_back({"summary.json", summary.dump(2) + "\n"});
}

json quad_json(const QuadratureResult& q) {
    return {{"value", q.value}, {"imag_residual", q.imag_residual}, {"N", q.nodes},
            {"richardson_error", q.richardson_error}, {"converged", q.converged}};
}

void moments_cmd(Run& run, double t, double tau, const std::string& r_text, long long replicas, int nodes) {
    require_open_unit(t);
    if (tau < 0.0) throw DomainError("--tau must be nonnegative");
    if (replicas < 1000) throw DomainError("--replicas must be at least 1000");
    const auto r_list = parse_list<int>(r_text, "r");
    for (int r : r_list)
        if (r < 1) throw DomainError("--r entries must be positive");
    const auto mc = moment_mc(r_list, t, tau, replicas, run.seed);
    json j{{"estimate", mc.estimate}, {"stderr", mc.std_error}, {"replicas", mc.replicas}, {"seed", mc.seed},
           {"noisy", mc.noisy}};
    int total = 0;
    for (int r : r_list) total += r;
    if (total <= 4) j["contour"] = quad_json(t_moment_integral(r_list, t, tau, default_moment_contour(r_list, t, tau, nodes)));
    if (r_list.size() == 1) j["exact"] = t_moment_exact(r_list[0], t, tau);
    run.outputs.push_back({"moments.json", j.dump(2) + "\n"});
}

void lln_cmd(Run& run, const std::string& format, double tau, const std::string& eps_text, int k_max, long long replicas) {
    if (tau < 0.0) throw DomainError("--tau must be nonnegative");
    if (k_max < 1) throw DomainError("--k must be at least 1");
    if (replicas < 2) throw DomainError("--replicas must be at least 2");
    const auto eps = parse_list<double>(eps_text, "epsilon");
    for (std::size_t i = 0; i < eps.size(); ++i) {
        require_positive(eps[i], "--epsilon");
        if (i > 0 && !(eps[i] < eps[i - 1])) throw DomainError("--epsilon list must be decreasing");
    }
    const auto rows = lln_experiment(k_max, tau, eps, replicas, run.seed);
    std::ostringstream csv;
    csv << "eps,k,mean,stderr,c_k,gap\n";
    json j = json::array();
    for (const auto& r : rows) {
        csv << format_double(r.eps) << ',' << r.k << ',' << format_double(r.mean) << ',' << format_double(r.std_error)
            << ',' << format_double(r.limit) << ',' << format_double(r.gap) << '\n';
        j.push_back({{"eps", r.eps}, {"k", r.k}, {"mean", r.mean}, {"stderr", r.std_error}, {"c_k", r.limit},
                     {"gap", r.gap}});
    }
    run.outputs.push_back({format == "json" ? "lln.json" : "lln.csv", csv_or_json(format, csv.str(), j)});
}

void covariance_cmd(Run& run, const std::string& format, int nmax, std::optional<double> tau, std::optional<int> r,
                    std::optional<int> s, int nodes) {
    if (r || s) {
        if (!tau) throw DomainError("--r/--s select a finite-tau covariance and need --tau");
        if (!r || !s) throw DomainError("--r and --s must be given together");
        if (*s < 1 || *r < *s) throw DomainError("finite-tau covariance requires r >= s >= 1");
        if (*r > 4) throw DomainError("finite-tau covariance supports r <= 4");
    }
    if (tau && *tau < 0.0) throw DomainError("--tau must be nonnegative");
    if (nmax < 1 || nmax > 64) throw DomainError("--n must lie in [1, 64]");
    const auto table = stationary_cov_table(nmax);
    std::ostringstream csv;
    table.write_csv(csv);
    run.outputs.push_back({format == "json" ? "covariance.json" : "covariance.csv",
                           format == "json" ? table.to_json() + "\n" : csv.str()});
    if (!tau) return;
    std::ostringstream fcsv;
    fcsv << "r,s,partial_sum_cov,cov_x,imag_residual,richardson_error\n";
    json j = json::array();
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= a; ++b) {
            if (r && (a != *r || b != *s)) continue;
            const auto sum = finite_tau_cov(a, b, *tau, default_cov_contour(*tau, nodes));
            const auto x = cov_X(a, b, *tau, nodes);
            fcsv << a << ',' << b << ',' << format_double(sum.value) << ',' << format_double(x.value) << ','
                 << format_double(sum.imag_residual) << ',' << format_double(sum.richardson_error) << '\n';
            j.push_back({{"r", a}, {"s", b}, {"partial_sum_cov", quad_json(sum)}, {"cov_x", quad_json(x)}});
        }
    run.outputs.push_back({format == "json" ? "finite_tau.json" : "finite_tau.csv", csv_or_json(format, fcsv.str(), j)});
}

void identities_cmd(Run& run, const std::string& format, int rmax) {
    if (rmax < 1 || rmax > 64) throw DomainError("--r must lie in [1, 64]");
    std::ostringstream csv;
    csv << "kind,r,s,numerator,denominator,double\n";
    json j = json::array();
    auto emit = [&](const char* kind, int r, int s, const Rational& q) {
        csv << kind << ',' << r << ',' << s << ',' << numerator(q) << ',' << denominator(q) << ','
            << format_double(q.convert_to<double>()) << '\n';
        j.push_back({{"kind", kind}, {"r", r}, {"s", s}, {"numerator", numerator(q).str()},
                     {"denominator", denominator(q).str()}});
    };
    int nonzero = 0;
    for (int r = 1; r <= rmax; ++r)
        for (int s = 1; s <= r; ++s) {
            const auto q = identity_defect(IdentityKind::Zero, r, s);
            nonzero += q != 0;
            emit("zero", r, s, q);
        }
    for (int r = 2; r <= rmax; ++r) {
        const auto q = identity_defect(IdentityKind::One, r);
        nonzero += q != 0;
        emit("one", r, 0, q);
    }
    for (int r = 1; r <= rmax; ++r)
        for (int s = 1; s <= r; ++s) emit("stationary", r, s, stationarity_residual(r, s));
    run.params["nonzero_identity_defects"] = nonzero;
    run.outputs.push_back({format == "json" ? "identities.json" : "identities.csv", csv_or_json(format, csv.str(), j)});
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(row);
    }
    return rows;
}

void stationarity_cmd(Run& run, int n, double horizon, double dt, long long paths) {
    if (n < 1 || n > 8) throw DomainError("--n must lie in [1, 8]");
    require_positive(dt, "--dt");
    if (horizon < 0.0) throw DomainError("--horizon must be nonnegative");
    if (paths < 2) throw DomainError("--replicas must be at least 2");
    const auto rep = stationarity_test(n, horizon, dt, paths, run.seed);
    json j{{"target", matrix_json(rep.target)},       {"estimate", matrix_json(rep.estimate)},
           {"gap", matrix_json(rep.gap)},             {"allowance", matrix_json(rep.allowance)},
           {"max_gap", rep.max_gap},                  {"within_allowance", rep.within_allowance}};
    run.outputs.push_back({"stationarity.json", j.dump(2) + "\n"});
}

void bulk_cmd(Run& run, const std::string& format, const std::string& k_text, double a, double b,
              const std::string& rounding) {
    if (a < b) throw DomainError("bulk requires a >= b");
    const auto ks = parse_list<int>(k_text, "k");
    for (int k : ks)
        if (k < 1 || k > 4000) throw DomainError("--k entries must lie in [1, 4000]");
    const auto rows = bulk_convergence(ks, a, b, rounding == "ceil" ? Rounding::Ceil : Rounding::Floor);
    std::ostringstream csv;
    csv << "k,a,b,r,s,scaled,limit,gap\n";
    json j = json::array();
    for (const auto& r : rows) {
        csv << r.k << ',' << format_double(a) << ',' << format_double(b) << ',' << r.r << ',' << r.s << ','
            << format_double(r.scaled) << ',' << format_double(r.limit) << ',' << format_double(r.gap) << '\n';
        j.push_back({{"k", r.k}, {"a", a}, {"b", b}, {"r", r.r}, {"s", r.s}, {"scaled", r.scaled}, {"limit", r.limit},
                     {"gap", r.gap}});
    }
    run.outputs.push_back({format == "json" ? "bulk.json" : "bulk.csv", csv_or_json(format, csv.str(), j)});
}

void sample_path_cmd(Run& run, const std::string& format, int tmax, long long paths) {
    if (tmax < 1 || tmax > 2000) throw DomainError("--k (Tmax) must lie in [1, 2000]");
    if (paths < 1) throw DomainError("--replicas must be positive");
    const YProcessSampler sampler(tmax);
    std::ostringstream csv;
    csv << "time,component,value\n";
    json j = json::array();
    for (long long p = 0; p < paths; ++p) {
        const auto path = sampler.path(run.seed, p);
        for (int T = 0; T <= tmax; ++T) {
            csv << T << ',' << p << ',' << format_double(path.values[T]) << '\n';
            if (format == "json") j.push_back({{"time", T}, {"component", p}, {"value", path.values[T]}});
        }
    }
    run.params["clipped_factor"] = sampler.clipped();
    run.outputs.push_back({format == "json" ? "path.json" : "path.csv", csv_or_json(format, csv.str(), j)});
}

void verify_all_cmd(Run& run, std::ostream& out) {
    json j = json::array();
    bool all = true;
    for (const auto& r : run_acceptance(run.seed)) {
        out << format_result(r) << '\n';
        j.push_back({{"criterion", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail},
                     {"seconds", r.seconds}});
        all = all && r.passed;
    }
    run.outputs.push_back({"verify.json", j.dump(2) + "\n"});
    if (!all) run.exit_code = 2;
}

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_outputs(const Run& run, const std::filesystem::path& dir, const std::vector<std::string>& args,
                   double seconds, const std::string& started) {
    std::filesystem::create_directories(dir);
    json files = json::array();
    for (const auto& o : run.outputs) {
        std::ofstream f(dir / o.name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (dir / o.name).string());
        f << o.content;
        files.push_back({{"file", o.name}, {"bytes", o.content.size()}, {"sha256", sha256_hex(o.content)}});
    }
    json manifest{{"schema_version", kSchemaVersion},
                  {"tool", "hltasep"},
                  {"version", HLTASEP_VERSION},
                  {"subcommand", run.subcommand},
                  {"argv", args},
                  {"params", run.params},
                  {"seed", run.seed},
                  {"seed_source", run.seed_source},
                  {"started_at", started},
                  {"wall_clock_seconds", seconds},
                  {"exit_code", run.exit_code},
                  {"outputs", files}};
    std::ofstream f(dir / "manifest.json", std::ios::binary);
    f << manifest.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Slowed t-TASEP and Hall-Littlewood process laboratory", "hltasep"};
    app.require_subcommand(1);

    std::string out_dir = "out";
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    double t = 0.5, tau = 1.0, horizon = 10.0, dt = 1e-3, a = 0.0, b = 0.0;
    std::optional<double> tau_opt;
    std::string r_text = "1", eps_text = "0.1,0.05,0.02", k_text = "25,100,400,1600";
    std::string process = "ttasep", rounding = "floor";
    std::optional<int> n_opt, r_opt, s_opt;
    int k = 2, nodes = 64;
    long long replicas = 100000;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", out_dir, "output directory")->capture_default_str();
        sub->add_option("--format", format, "table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        sub->add_option("--seed", seed, "master seed (falls back to HLTASEP_SEED)");
    };

    auto* simulate = app.add_subcommand("simulate", "simulate one trajectory from the packed / empty state");
    common(simulate);
    simulate->add_option("--process", process)->check(CLI::IsMember({"ttasep", "hl"}))->capture_default_str();
    simulate->add_option("--t", t)->capture_default_str();
    simulate->add_option("--horizon", horizon)->capture_default_str();
    simulate->add_option("--n", n_opt, "row count for the hl process (default infinite)");

    auto* moments = app.add_subcommand("moments", "Monte Carlo and contour values of t-moments");
    common(moments);
    moments->add_option("--t", t)->capture_default_str();
    moments->add_option("--tau", tau)->capture_default_str();
    moments->add_option("--r", r_text, "group sizes, e.g. 1 or 1,1")->capture_default_str();
    moments->add_option("--replicas", replicas)->capture_default_str();
    moments->add_option("--nodes", nodes)->capture_default_str();

    auto* lln = app.add_subcommand("lln", "law of large numbers experiment");
    common(lln);
    lln->add_option("--tau", tau)->capture_default_str();
    lln->add_option("--epsilon", eps_text, "decreasing list")->capture_default_str();
    lln->add_option("--k", k, "largest particle index")->capture_default_str();
    lln->add_option("--replicas", replicas, "default 10000");

    auto* covariance = app.add_subcommand("covariance", "stationary covariance table and finite-tau covariances");
    common(covariance);
    int nmax = 12;
    covariance->add_option("--n", nmax, "table size")->capture_default_str();
    covariance->add_option("--tau", tau_opt, "also evaluate finite-tau covariances");
    covariance->add_option("--r", r_opt);
    covariance->add_option("--s", s_opt);
    covariance->add_option("--nodes", nodes)->capture_default_str();

    auto* identities = app.add_subcommand("identities", "exact residue identity defects");
    common(identities);
    int rmax = 12;
    identities->add_option("--r", rmax)->capture_default_str();

    auto* stationarity = app.add_subcommand("stationarity", "SDE stationarity test from the exact table");
    common(stationarity);
    int sde_n = 5;
    stationarity->add_option("--n", sde_n)->capture_default_str();
    stationarity->add_option("--horizon", horizon, "default 2");
    stationarity->add_option("--dt", dt)->capture_default_str();
    stationarity->add_option("--replicas", replicas, "default 10000");

    auto* bulk = app.add_subcommand("bulk", "bulk covariance convergence table");
    common(bulk);
    bulk->add_option("--k", k_text)->capture_default_str();
    bulk->add_option("--a", a)->capture_default_str();
    bulk->add_option("--b", b)->capture_default_str();
    bulk->add_option("--rounding", rounding)->check(CLI::IsMember({"floor", "ceil"}))->capture_default_str();

    auto* sample_path = app.add_subcommand("sample-path", "Gaussian sample paths of the interpolated process");
    common(sample_path);
    int tmax = 1600;
    sample_path->add_option("--k", tmax, "Tmax")->capture_default_str();
    sample_path->add_option("--replicas", replicas, "number of paths (default 1)");

    auto* verify = app.add_subcommand("verify-all", "run the acceptance suite");
    common(verify);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n" << app.help();
        return 1;
    }

    Run run;
    CLI::App* chosen = app.get_subcommands().front();
    run.subcommand = chosen->get_name();
    if (seed) {
        run.seed = *seed;
        run.seed_source = "flag";
    } else if (const char* env = std::getenv("HLTASEP_SEED")) {
        try {
            run.seed = std::stoull(env);
            run.seed_source = "env";
        } catch (const std::exception&) {
            err << "error: HLTASEP_SEED must be an unsigned integer\n";
            return 1;
        }
    }
    for (const CLI::Option* opt : chosen->get_options()) {
        if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
        if (opt->count() > 0) run.params[opt->get_name().substr(2)] = opt->as<std::string>();
    }

    const auto started = std::chrono::steady_clock::now();
    const std::string started_at = utc_now();
    try {
        const auto given = [&](const char* name) {
            const CLI::Option* opt = chosen->get_option_no_throw(name);
            return opt != nullptr && opt->count() > 0;
        };
        const bool replicas_given = given("--replicas");
        if (run.subcommand == "simulate") {
            simulate_cmd(run, format, process, t, horizon, n_opt);
        } else if (run.subcommand == "moments") {
            moments_cmd(run, t, tau, r_text, replicas, nodes);
        } else if (run.subcommand == "lln") {
            lln_cmd(run, format, tau, eps_text, k, replicas_given ? replicas : 10000);
        } else if (run.subcommand == "covariance") {
            covariance_cmd(run, format, nmax, tau_opt, r_opt, s_opt, nodes);
        } else if (run.subcommand == "identities") {
            identities_cmd(run, format, rmax);
        } else if (run.subcommand == "stationarity") {
            stationarity_cmd(run, sde_n, given("--horizon") ? horizon : 2.0, dt,
                             replicas_given ? replicas : 10000);
        } else if (run.subcommand == "bulk") {
            bulk_cmd(run, format, k_text, a, b, rounding);
        } else if (run.subcommand == "sample-path") {
            sample_path_cmd(run, format, tmax, replicas_given ? replicas : 1);
        } else if (run.subcommand == "verify-all") {
            verify_all_cmd(run, out);
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        write_outputs(run, out_dir, args, seconds, started_at);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    for (const auto& o : run.outputs) out << (std::filesystem::path(out_dir) / o.name).string() << '\n';
    return run.exit_code;
}

}  // namespace hltasep::cli
