#include "entangle/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "entangle/lmfdb.hpp"
#include "entangle/predict.hpp"

namespace entangle {

namespace {

struct CommonOpts {
    std::string family;
    std::string config;
    std::string x_str;
    std::string ladder_str;
    long ell = 0;
    long z = 100;
    double tol = 1e-8;
    int threads = 0;
    std::string format = "json";
    std::string out_path;
    bool offline = false;
};

void add_family_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--family", o.family, "builtin family name (F1 or F2)");
    cmd->add_option("--config", o.config, "path to a family config JSON file");
}

FamilySpec resolve_family(const CommonOpts& o) {
    if (!o.family.empty() && !o.config.empty())
        throw CLI::ValidationError("--family and --config are mutually exclusive");
    if (!o.family.empty()) return builtin(o.family);
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in) throw CLI::ValidationError("cannot open config file: " + o.config);
        std::stringstream buf;
        buf << in.rdbuf();
        return from_config_json(buf.str());
    }
    throw CLI::ValidationError("one of --family or --config is required");
}

std::vector<BigInt> parse_ladder(const std::string& s) {
    std::vector<BigInt> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_bigint(item));
    if (!std::is_sorted(out.begin(), out.end()))
        throw CLI::ValidationError("--ladder must be ascending");
    return out;
}

std::string rat_str(const Rational& q) {
    return dec(BigInt(q.get_num())) + "/" + dec(BigInt(q.get_den()));
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

int emit(const CommonOpts& o, std::ostream& out, const std::string& text) {
    if (!o.out_path.empty()) {
        std::ofstream f(o.out_path);
        if (!f) throw std::runtime_error("cannot open output file: " + o.out_path);
        f << text;
        return 0;
    }
    out << text;
    return 0;
}

int cmd_check_family(const CommonOpts& o, std::ostream& out) {
    FamilySpec spec;
    try {
        spec = resolve_family(o);
    } catch (const FamilyValidationError& e) {
        nlohmann::json j;
        j["valid"] = false;
        auto& issues = j["issues"] = nlohmann::json::array();
        for (const auto& is : e.issues())
            issues.push_back({{"condition", is.condition}, {"detail", is.detail}});
        emit(o, out, j.dump(2) + "\n");
        return 1;
    }
    nlohmann::json j;
    j["valid"] = true;
    j["name"] = spec.name;
    j["d"] = spec.d;
    j["r"] = spec.r;
    j["sigma"] = spec.sigma;
    auto& w = j["sigma_witnesses"] = nlohmann::json::array();
    for (const auto& x : spec.sigma_witnesses) w.push_back(dec(x));
    j["C"] = nlohmann::json::array();
    for (const auto& c : spec.C.coeffs()) j["C"].push_back(dec(c));
    emit(o, out, j.dump(2) + "\n");
    return 0;
}

int cmd_enumerate(const CommonOpts& o, std::ostream& out) {
    FamilySpec spec = resolve_family(o);
    if (o.x_str.empty()) throw CLI::ValidationError("--X is required");
    auto records = enumerate_F(spec, parse_bigint(o.x_str), o.threads);
    RecordFormat rf = (o.format == "csv") ? RecordFormat::Csv : RecordFormat::Jsonl;
    std::ostringstream buf;
    write_records(records, buf, rf);
    return emit(o, out, buf.str());
}

int cmd_count(const CommonOpts& o, std::ostream& out) {
    FamilySpec spec = resolve_family(o);
    std::vector<BigInt> xs;
    if (!o.x_str.empty())
        xs.push_back(parse_bigint(o.x_str));
    else if (!o.ladder_str.empty())
        xs = parse_ladder(o.ladder_str);
    else
        throw CLI::ValidationError("--X or --ladder is required");

    std::ostringstream buf;
    if (o.format == "csv") {
        buf << "X,count_F,count_Dz,count_C,distinct_models\n";
        for (const auto& X : xs) {
            CountSummary s = count_scan(spec, X, o.z, o.threads);
            buf << dec(X) << ',' << s.count_F << ',' << s.count_Dz << ',' << s.count_C << ','
                << s.distinct_models << '\n';
        }
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& X : xs) {
            CountSummary s = count_scan(spec, X, o.z, o.threads);
            rows.push_back({{"X", dec(X)},
                            {"count_F", s.count_F},
                            {"count_Dz", s.count_Dz},
                            {"count_C", s.count_C},
                            {"distinct_models", s.distinct_models}});
        }
        nlohmann::json j;
        j["family"] = spec.name;
        j["z"] = o.z;
        j["counts"] = rows;
        buf << j.dump(2) << '\n';
    }
    return emit(o, out, buf.str());
}

int cmd_density(const CommonOpts& o, std::ostream& out, const std::string& method) {
    FamilySpec spec = resolve_family(o);
    if (o.ell < 2) throw CLI::ValidationError("--ell is required");
    DensityValue dv;
    if (method == "closed" || method == "auto")
        dv = density_closed(spec, o.ell);
    else if (method == "def")
        dv = density_def(spec, o.ell, DefMode::FullScan, o.threads);
    else if (method == "structured")
        dv = density_def(spec, o.ell, DefMode::Structured, o.threads);
    else if (method == "via-c")
        dv = density_via_C(spec, o.ell, o.threads);
    else
        throw CLI::ValidationError("unknown density method: " + method);

    if (o.format == "csv") {
        std::ostringstream buf;
        buf << "family,ell,method,value\n"
            << spec.name << ',' << dv.prime << ',' << dv.method << ',' << rat_str(dv.value)
            << '\n';
        return emit(o, out, buf.str());
    }
    return emit(o, out, density_to_json(spec.name, dv) + "\n");
}

int cmd_euler(const CommonOpts& o, std::ostream& out) {
    FamilySpec spec = resolve_family(o);
    EulerBracket br = euler_product(spec, o.z, DensitySource::Closed, o.threads);
    if (o.format == "csv") {
        std::ostringstream buf;
        buf << "family,z,partial,lower,upper\n"
            << spec.name << ',' << br.z << ',' << rat_str(br.partial) << ',' << rat_str(br.lower)
            << ',' << rat_str(br.upper) << '\n';
        return emit(o, out, buf.str());
    }
    nlohmann::json j;
    j["family"] = spec.name;
    j["z"] = br.z;
    j["partial"] = {{"num", dec(BigInt(br.partial.get_num()))},
                    {"den", dec(BigInt(br.partial.get_den()))}};
    j["lower"] = {{"num", dec(BigInt(br.lower.get_num()))},
                  {"den", dec(BigInt(br.lower.get_den()))}};
    j["upper"] = {{"num", dec(BigInt(br.upper.get_num()))},
                  {"den", dec(BigInt(br.upper.get_den()))}};
    j["lower_approx"] = mpq_get_d(br.lower.get_mpq_t());
    j["upper_approx"] = mpq_get_d(br.upper.get_mpq_t());
    return emit(o, out, j.dump(2) + "\n");
}

int cmd_area(const CommonOpts& o, std::ostream& out, const std::string& method, int grid_n) {
    FamilySpec spec = resolve_family(o);
    AreaEstimate est = (method == "grid") ? area_grid(spec, grid_n, o.threads)
                                          : area_polar(spec, o.tol);
    if (o.format == "csv") {
        std::ostringstream buf;
        buf << "family,method,value,err,evaluations\n"
            << spec.name << ',' << est.method << ',' << fmt(est.value) << ',' << fmt(est.err)
            << ',' << est.evaluations << '\n';
        return emit(o, out, buf.str());
    }
    return emit(o, out, area_to_json(spec.name, est) + "\n");
}

int cmd_predict(const CommonOpts& o, std::ostream& out) {
    FamilySpec spec = resolve_family(o);
    std::vector<BigInt> ladder =
        o.ladder_str.empty() ? default_ladder(spec) : parse_ladder(o.ladder_str);
    PredictionReport rep = ratio_table(spec, ladder, o.z, o.tol, o.threads);
    if (o.format == "csv") return emit(o, out, prediction_to_csv(rep));
    return emit(o, out, prediction_to_json(rep) + "\n");
}

int cmd_fit(const CommonOpts& o, std::ostream& out) {
    FamilySpec spec = resolve_family(o);
    std::vector<BigInt> ladder =
        o.ladder_str.empty() ? default_ladder(spec) : parse_ladder(o.ladder_str);
    std::vector<std::pair<double, double>> pts;
    for (const auto& X : ladder) {
        const size_t n = enumerate_F(spec, X, o.threads).size();
        if (n > 0) pts.push_back({X.get_d(), static_cast<double>(n)});
    }
    ExponentFit fit = fit_exponent(pts);
    nlohmann::json j;
    j["family"] = spec.name;
    j["slope"] = fit.slope;
    j["max_residual"] = fit.max_residual;
    j["expected"] = 2.0 / spec.d;
    return emit(o, out, j.dump(2) + "\n");
}

int cmd_verify_paper(const CommonOpts& o, std::ostream& out) {
    FamilySpec spec = resolve_family(o);
    VerifyReport rep = verify_paper(spec, o.threads);
    if (o.format == "json") {
        emit(o, out, verify_to_json(rep) + "\n");
    } else {
        std::ostringstream buf;
        for (const auto& c : rep.checks)
            buf << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << '\n';
        buf << (rep.all_pass() ? "all checks passed\n" : "some checks FAILED\n");
        emit(o, out, buf.str());
    }
    return rep.all_pass() ? 0 : 1;
}

int cmd_lmfdb_check(const CommonOpts& o, std::ostream& out, const std::string& ainvs_str) {
    std::array<long, 5> ainvs{};
    std::stringstream ss(ainvs_str);
    std::string item;
    size_t i = 0;
    while (std::getline(ss, item, ',') && i < 5) ainvs[i++] = std::stol(item);
    if (i != 5) throw CLI::ValidationError("--ainvs needs five comma-separated integers");

    LmfdbClient client(make_http_transport(), cache_directory(), o.offline);
    CurveLookup lk = client.lookup_by_ainvs(ainvs);
    emit(o, out, lookup_to_json(lk) + "\n");
    return lk.label ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"entangle-census: counting elliptic curves in entangled families"};
    app.require_subcommand(1);

    CommonOpts o;
    o.format = "";  // per-command default: text for verify-paper, json elsewhere
    std::string density_method = "closed";
    std::string area_method = "polar";
    std::string ainvs_str = "0,-1,0,-1033,-12438";
    int grid_n = 1024;

    auto add_common = [&](CLI::App* cmd, bool family = true) {
        if (family) add_family_opts(cmd, o);
        cmd->add_option("--X", o.x_str, "height bound (decimal)");
        cmd->add_option("--ladder", o.ladder_str, "comma-separated ascending height bounds");
        cmd->add_option("--ell", o.ell, "prime");
        cmd->add_option("--z", o.z, "prime cutoff")->check(CLI::PositiveNumber);
        cmd->add_option("--tol", o.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
        cmd->add_option("--threads", o.threads, "worker thread cap (default: all cores)");
        cmd->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"json", "jsonl", "csv"}));
        cmd->add_option("--out", o.out_path, "write output to this path");
        cmd->add_flag("--offline", o.offline, "never touch the network");
    };

    CLI::App* check = app.add_subcommand("check-family", "validate a family and report invariants");
    add_common(check);
    CLI::App* enumerate = app.add_subcommand("enumerate", "emit all curve records with H <= X");
    add_common(enumerate);
    CLI::App* count = app.add_subcommand("count", "count F(X), D^z(X), C(X)");
    add_common(count);
    CLI::App* density = app.add_subcommand("density", "exact local density at a prime");
    add_common(density);
    density->add_option("--method", density_method, "closed|def|structured|via-c")
        ->check(CLI::IsMember({"auto", "closed", "def", "structured", "via-c"}));
    CLI::App* euler = app.add_subcommand("euler", "partial Euler product with tail bracket");
    add_common(euler);
    CLI::App* area = app.add_subcommand("area", "area of the unit height region");
    add_common(area);
    area->add_option("--method", area_method, "polar|grid")
        ->check(CLI::IsMember({"polar", "grid"}));
    area->add_option("--grid-n", grid_n, "grid resolution")->check(CLI::PositiveNumber);
    CLI::App* predict = app.add_subcommand("predict", "predicted vs actual counts over a ladder");
    add_common(predict);
    CLI::App* fit = app.add_subcommand("fit", "growth exponent fit over a ladder");
    add_common(fit);
    CLI::App* verify = app.add_subcommand("verify-paper", "run the verification suite");
    add_common(verify);
    CLI::App* lmfdb = app.add_subcommand("lmfdb-check", "resolve a curve by a-invariants");
    add_common(lmfdb, false);
    lmfdb->add_option("--ainvs", ainvs_str, "a1,a2,a3,a4,a6");

    try {
        std::vector<const char*> argv;
        argv.push_back("entangle-census");
        for (auto it = args.begin(); it != args.end(); ++it) argv.push_back(it->c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(check)) return cmd_check_family(o, out);
        if (app.got_subcommand(enumerate)) return cmd_enumerate(o, out);
        if (app.got_subcommand(count)) return cmd_count(o, out);
        if (app.got_subcommand(density)) return cmd_density(o, out, density_method);
        if (app.got_subcommand(euler)) return cmd_euler(o, out);
        if (app.got_subcommand(area)) return cmd_area(o, out, area_method, grid_n);
        if (app.got_subcommand(predict)) return cmd_predict(o, out);
        if (app.got_subcommand(fit)) return cmd_fit(o, out);
        if (app.got_subcommand(verify)) return cmd_verify_paper(o, out);
        if (app.got_subcommand(lmfdb)) return cmd_lmfdb_check(o, out, ainvs_str);
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const FamilyValidationError& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace entangle
