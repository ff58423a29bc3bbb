// elliptica: identity catalog, randomized verification and direct evaluation.

#include "elliptica/catalog.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace
{

using namespace elliptica;

constexpr int default_digits = 30;

int env_digits()
{
    const char *s = std::getenv("ELLIPTICA_DIGITS");
    if (!s || !*s)
        return default_digits;
    try {
        std::size_t used = 0;
        const int d = std::stoi(s, &used);
        if (used != std::string(s).size())
            throw std::invalid_argument(s);
        return d;
    } catch (const std::exception &) {
        throw std::invalid_argument(std::string("ELLIPTICA_DIGITS: not an integer: '") + s + "'");
    }
}

struct VerifyOptions
{
    int samples = 32;
    std::string tol = "1e-9";
    int digits = 0;
    std::uint64_t seed = SampleConfig{}.seed;
    int threads = 1;
    std::string json_path;
    bool no_timing = false;
};

void add_verify_options(CLI::App *cmd, VerifyOptions &o)
{
    cmd->add_option("--samples", o.samples, "random sample points per identity")
        ->capture_default_str();
    cmd->add_option("--tol", o.tol, "relative error tolerance")->capture_default_str();
    cmd->add_option("--digits", o.digits,
                    "working decimal digits (default: $ELLIPTICA_DIGITS or 30)");
    cmd->add_option("--seed", o.seed, "64-bit seed")->capture_default_str();
    cmd->add_option("--threads", o.threads, "worker threads")->capture_default_str();
    cmd->add_option("--json", o.json_path, "write the JSON report to PATH ('-' for stdout)");
    cmd->add_flag("--no-timing", o.no_timing, "omit elapsed_ms from the JSON report");
}

SampleConfig sample_config(const VerifyOptions &o, int digits)
{
    SampleConfig cfg;
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    try {
        cfg.tolerance = std::stod(o.tol);
    } catch (const std::exception &) {
        throw std::invalid_argument("--tol: not a decimal number: '" + o.tol + "'");
    }
    cfg.threads = o.threads;
    cfg.precision = precision_for_digits(digits);
    cfg.validate();
    return cfg;
}

void print_report(std::ostream &os, const VerificationReport &r)
{
    os << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(30) << r.id
              << " max_rel_err=" << std::scientific << std::setprecision(3) << r.max_rel_err
              << " samples=" << r.samples;
    if (r.exact_points_checked > 0)
        os << " exact=" << r.exact_points_checked << (r.exact_pass ? "/ok" : "/FAIL");
    os << std::defaultfloat << " (" << std::fixed << std::setprecision(1) << r.elapsed_ms
              << " ms)" << std::defaultfloat << '\n';
    if (!r.exact_detail.empty())
        os << "    exact: " << r.exact_detail << '\n';
    for (std::size_t i = 0; i < r.failures.size() && i < 3; ++i) {
        const auto &f = r.failures[i];
        os << "    sample " << f.sample << " side " << f.side << ": rel_err " << f.rel_err
                  << " lhs " << f.lhs.first << " " << f.lhs.second << "i rhs " << f.rhs.first
                  << " " << f.rhs.second << "i\n";
    }
}

void write_json(const std::string &path, const nlohmann::json &j)
{
    if (path.empty())
        return;
    if (path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

template <typename Real>
bool run_identities(const std::vector<const Identity<Real> *> &ids, const VerifyOptions &o,
                    int digits)
{
    const SampleConfig cfg = sample_config(o, digits);
    bool all = true;
    nlohmann::json reports = nlohmann::json::array();
    for (const auto *id : ids) {
        const auto r = verify(*id, cfg);
        // keep stdout parseable when the JSON report goes there
        print_report(o.json_path == "-" ? std::cerr : std::cout, r);
        all = all && r.pass;
        reports.push_back(to_json(r, !o.no_timing));
    }
    write_json(o.json_path, {{"pass", all}, {"reports", reports}});
    return all;
}

int cmd_catalog_list(bool as_json)
{
    const auto all = catalog<boost::multiprecision::float128>();
    if (as_json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto &i : all) {
            nlohmann::json vars = nlohmann::json::array();
            for (const auto &v : i.variables)
                vars.push_back({{"name", v.name},
                                {"role", v.role == VariableRole::torus ? "torus" : "dynamical"}});
            nlohmann::json sides = nlohmann::json::array();
            for (const auto &s : i.sides)
                sides.push_back(s.name);
            j.push_back({{"id", i.id},
                         {"summary", i.summary},
                         {"variables", vars},
                         {"sides", sides},
                         {"exact_mode", i.exact_mode()},
                         {"delta_degree", i.delta_degree ? nlohmann::json(*i.delta_degree)
                                                         : nlohmann::json(nullptr)}});
        }
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    for (const auto &i : all)
        std::cout << std::left << std::setw(30) << i.id << ' ' << i.summary << '\n';
    return 0;
}

int cmd_verify(const std::vector<std::string> &patterns, const VerifyOptions &o, int digits)
{
    return with_scalar(digits, [&](auto tag) {
        using Real = typename decltype(tag)::type;
        const auto all = catalog<Real>();
        std::vector<const Identity<Real> *> ids;
        for (const auto &p : patterns) {
            const auto found = select(all, p);
            if (found.empty())
                throw std::invalid_argument("no catalog entry matches '" + p + "'");
            ids.insert(ids.end(), found.begin(), found.end());
        }
        return run_identities(ids, o, digits) ? 0 : 1;
    });
}

int cmd_verify_custom(const std::string &lhs, const std::string &rhs, const VerifyOptions &o,
                      int digits)
{
    const AnyModel l = load_model(lhs), r = load_model(rhs);
    return with_scalar(digits, [&](auto tag) {
        using Real = typename decltype(tag)::type;
        const auto id = model_identity<Real>("custom", l, r);
        return run_identities<Real>({&id}, o, digits) ? 0 : 1;
    });
}

struct EvalOptions
{
    std::string tau;
    std::vector<std::string> args;
};

int cmd_eval(const std::string &fn, const EvalOptions &o, int digits)
{
    static const std::map<std::string, std::size_t> arity = {
        {"theta", 1}, {"delta", 2}, {"phi", 3}, {"psi", 4}};
    const auto it = arity.find(fn);
    if (it == arity.end())
        throw std::invalid_argument("eval: unknown function '" + fn + "'");
    if (o.args.size() != it->second)
        throw std::invalid_argument("eval " + fn + ": expected " + std::to_string(it->second) +
                                    " arguments, got " + std::to_string(o.args.size()));
    return with_scalar(digits, [&](auto tag) {
        using Real = typename decltype(tag)::type;
        using C = complex_t<Real>;
        ThetaContext<Real> ctx(ModularParam<Real>(parse_complex<Real>(o.tau)),
                               precision_for_digits(digits));
        std::vector<C> a;
        for (const auto &s : o.args)
            a.push_back(parse_complex<Real>(s));
        C value;
        if (fn == "theta")
            value = theta(ctx, a[0]);
        else if (fn == "delta")
            value = delta(ctx, a[0], a[1]);
        else if (fn == "phi")
            value = phi(ctx, a[0], a[1], a[2]);
        else
            value = psi(ctx, a[0], a[1], a[2], a[3]);
        std::cout << to_decimal(Real(real(value)), digits) << ' '
                  << to_decimal(Real(imag(value)), digits) << "i\n";
        return 0;
    });
}

struct ClassOptions
{
    std::string model;
    std::string tau;
    std::vector<std::string> t;
    std::string z;
    bool symplectic = false;
};

int cmd_class(const std::string &kind, const ClassOptions &o, int digits)
{
    const AnyModel model = load_model(o.model);
    const bool is_resolution = std::holds_alternative<ResolutionModel>(model);
    if ((kind == "resolution") != is_resolution)
        throw std::invalid_argument("class " + kind + ": '" + o.model + "' holds a " +
                                    (is_resolution ? "resolution" : "orbifold") + " model");
    return with_scalar(digits, [&](auto tag) {
        using Real = typename decltype(tag)::type;
        ThetaContext<Real> ctx(ModularParam<Real>(parse_complex<Real>(o.tau)),
                               precision_for_digits(digits));
        TorusPoint<Real> p;
        for (const auto &s : o.t)
            p.t.push_back(parse_complex<Real>(s));
        p.z = parse_complex<Real>(o.z);
        complex_t<Real> value;
        if (is_resolution)
            value = localized_class_resolution(ctx, std::get<ResolutionModel>(model), p);
        else if (o.symplectic)
            value = orbifold_class_symplectic(ctx, std::get<OrbifoldModel>(model), p);
        else
            value = orbifold_class(ctx, std::get<OrbifoldModel>(model), p);
        std::cout << to_decimal(Real(real(value)), digits) << ' '
                  << to_decimal(Real(imag(value)), digits) << "i\n";
        return 0;
    });
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"elliptica: elliptic genera, localization and McKay identities"};
    app.require_subcommand(1);

    auto *cat = app.add_subcommand("catalog", "inspect the identity catalog");
    auto *cat_list = cat->add_subcommand("list", "list identity ids");
    bool cat_json = false;
    cat_list->add_flag("--json", cat_json, "print the catalog as JSON");
    cat->require_subcommand(1);

    auto *ver = app.add_subcommand("verify", "verify catalog identities at random points");
    std::vector<std::string> patterns;
    VerifyOptions vopt;
    ver->add_option("ids", patterns, "identity ids or family prefixes (e.g. fay)")->required();
    add_verify_options(ver, vopt);

    auto *custom = app.add_subcommand("verify-custom", "McKay check for two model files");
    std::string lhs_model, rhs_model;
    VerifyOptions copt;
    custom->add_option("--lhs-model", lhs_model, "model JSON")->required()->check(
        CLI::ExistingFile);
    custom->add_option("--rhs-model", rhs_model, "model JSON")->required()->check(
        CLI::ExistingFile);
    add_verify_options(custom, copt);

    auto *ev = app.add_subcommand("eval", "evaluate theta, delta, phi or psi");
    std::string fn;
    EvalOptions eopt;
    int eval_digits = 0;
    ev->add_option("function", fn, "theta | delta | phi | psi")
        ->required()
        ->check(CLI::IsMember({"theta", "delta", "phi", "psi"}));
    ev->add_option("--tau", eopt.tau, "modular parameter a+bi, b > 0")->required();
    ev->add_option("--args", eopt.args,
                   "additive arguments: theta v | delta a b | phi lambda t h | psi lambda t1 t2 h")
        ->required();
    ev->add_option("--digits", eval_digits, "working decimal digits");

    auto *cls = app.add_subcommand("class", "localized or orbifold elliptic class of a model");
    std::string kind;
    ClassOptions clopt;
    int class_digits = 0;
    cls->add_option("kind", kind, "resolution | orbifold")
        ->required()
        ->check(CLI::IsMember({"resolution", "orbifold"}));
    cls->add_option("--model", clopt.model, "model JSON")->required()->check(CLI::ExistingFile);
    cls->add_option("--tau", clopt.tau, "modular parameter a+bi")->required();
    cls->add_option("--t", clopt.t, "torus coordinates (additive)")->required();
    cls->add_option("--z", clopt.z, "dynamical parameter, h = e(-z)")->required();
    cls->add_flag("--symplectic", clopt.symplectic, "use the paired Psi evaluation (orbifold)");
    cls->add_option("--digits", class_digits, "working decimal digits");

    CLI11_PARSE(app, argc, argv);

    try {
        const int base_digits = env_digits();
        auto pick = [&](int d) { return d > 0 ? d : base_digits; };
        if (*cat_list)
            return cmd_catalog_list(cat_json);
        if (*ver)
            return cmd_verify(patterns, vopt, pick(vopt.digits));
        if (*custom)
            return cmd_verify_custom(lhs_model, rhs_model, copt, pick(copt.digits));
        if (*ev)
            return cmd_eval(fn, eopt, pick(eval_digits));
        if (*cls)
            return cmd_class(kind, clopt, pick(class_digits));
    } catch (const std::exception &e) {
        std::cerr << "elliptica: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
