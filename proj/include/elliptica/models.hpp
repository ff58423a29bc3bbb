#ifndef ELLIPTICA_MODELS_HPP
#define ELLIPTICA_MODELS_HPP

#include "elliptica/expression.hpp"

#include "json.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace elliptica
{

/// Invalid model data. The message starts with the offending field path.
class ModelError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

using Weight = std::vector<long long>;

struct FixedPointDatum
{
    std::vector<Weight> weights;
    std::vector<Rational> exponents;

    friend bool operator==(const FixedPointDatum &, const FixedPointDatum &) = default;
};

struct ResolutionModel
{
    int rank = 0;
    int dim = 0;
    Rational prefactor{1};
    std::vector<FixedPointDatum> fixed_points;
    std::vector<std::string> labels;

    void validate() const;
    friend bool operator==(const ResolutionModel &, const ResolutionModel &) = default;
};

struct OrbifoldPairDatum
{
    std::vector<Rational> lambda;
    std::vector<Rational> nu;
    std::vector<Weight> weights;
    std::vector<Rational> exponents;
    long long multiplicity = 1;
    Rational h_shift{0};

    friend bool operator==(const OrbifoldPairDatum &, const OrbifoldPairDatum &) = default;
};

struct OrbifoldModel
{
    int rank = 0;
    int dim = 0;
    long long group_order = 1;
    std::vector<OrbifoldPairDatum> pairs;
    // Number of commuting pairs in G x G, when known independently.
    std::optional<long long> commuting_pairs;

    long long total_multiplicity() const
    {
        long long s = 0;
        for (const auto &p : pairs)
            s += p.multiplicity;
        return s;
    }

    void validate() const;
    friend bool operator==(const OrbifoldModel &, const OrbifoldModel &) = default;
};

namespace detail
{

inline std::string idx(const std::string &path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

inline void check_weights(const std::string &path, const std::vector<Weight> &weights,
                          const std::vector<Rational> &exponents, int dim, int rank)
{
    if (static_cast<int>(weights.size()) != dim)
        throw ModelError(path + ".weights: expected " + std::to_string(dim) + " weights, got " +
                         std::to_string(weights.size()));
    if (static_cast<int>(exponents.size()) != dim)
        throw ModelError(path + ".exponents: expected " + std::to_string(dim) +
                         " exponents, got " + std::to_string(exponents.size()));
    for (std::size_t k = 0; k < weights.size(); ++k)
        if (static_cast<int>(weights[k].size()) != rank)
            throw ModelError(idx(path + ".weights", k) + ": expected length " +
                             std::to_string(rank) + ", got " +
                             std::to_string(weights[k].size()));
    for (std::size_t k = 0; k < exponents.size(); ++k)
        if (!(exponents[k] < 1))
            throw ModelError(idx(path + ".exponents", k) + ": klt violation, exponent " +
                             format_rational(exponents[k]) + " must be < 1");
}

} // namespace detail

inline void ResolutionModel::validate() const
{
    if (rank < 1)
        throw ModelError("rank: must be >= 1");
    if (dim < 1)
        throw ModelError("dim: must be >= 1");
    if (fixed_points.empty())
        throw ModelError("fixed_points: at least one fixed point required");
    if (!labels.empty() && labels.size() != fixed_points.size())
        throw ModelError("labels: one label per fixed point required");
    for (std::size_t i = 0; i < fixed_points.size(); ++i) {
        const auto &fp = fixed_points[i];
        detail::check_weights(detail::idx("fixed_points", i), fp.weights, fp.exponents, dim, rank);
    }
}

inline void OrbifoldModel::validate() const
{
    if (rank < 1)
        throw ModelError("rank: must be >= 1");
    if (dim < 1)
        throw ModelError("dim: must be >= 1");
    if (group_order < 1)
        throw ModelError("group_order: must be >= 1");
    if (pairs.empty())
        throw ModelError("pairs: at least one pair required");
    auto check_log = [&](const std::string &path, const std::vector<Rational> &v) {
        if (static_cast<int>(v.size()) != dim)
            throw ModelError(path + ": expected " + std::to_string(dim) + " entries, got " +
                             std::to_string(v.size()));
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k] < 0 || !(v[k] < 1))
                throw ModelError(detail::idx(path, k) + ": " + format_rational(v[k]) +
                                 " lies outside [0, 1)");
            if (group_order % static_cast<long long>(mp::denominator(v[k])) != 0)
                throw ModelError(detail::idx(path, k) + ": denominator of " +
                                 format_rational(v[k]) + " does not divide group_order " +
                                 std::to_string(group_order));
        }
    };
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto &p = pairs[i];
        const std::string path = detail::idx("pairs", i);
        check_log(path + ".lambda", p.lambda);
        check_log(path + ".nu", p.nu);
        detail::check_weights(path, p.weights, p.exponents, dim, rank);
        if (p.multiplicity < 1)
            throw ModelError(path + ".multiplicity: must be >= 1");
    }
    if (commuting_pairs && *commuting_pairs != total_multiplicity())
        throw ModelError("pairs: total multiplicity " + std::to_string(total_multiplicity()) +
                         " differs from commuting_pairs " + std::to_string(*commuting_pairs));
}

/// Eigen-data come in reciprocal pairs: coordinate k and k + dim/2 have
/// lambda and nu summing to 0 mod 1.
inline bool is_symplectic_paired(const OrbifoldModel &model)
{
    if (model.dim % 2 != 0)
        return false;
    const int half = model.dim / 2;
    for (const auto &p : model.pairs)
        for (int k = 0; k < half; ++k)
            if (frac(p.lambda[k] + p.lambda[k + half]) != 0 ||
                frac(p.nu[k] + p.nu[k + half]) != 0)
                return false;
    return true;
}

// JSON

namespace detail
{

using nlohmann::json;

inline const json &field(const json &j, const std::string &path, const char *key)
{
    if (!j.is_object() || !j.contains(key))
        throw ModelError(path + (path.empty() ? "" : ".") + key + ": missing");
    return j.at(key);
}

inline std::string join(const std::string &path, const char *key)
{
    return path.empty() ? std::string(key) : path + "." + key;
}

inline long long get_int(const json &j, const std::string &path)
{
    if (!j.is_number_integer())
        throw ModelError(path + ": expected an integer");
    return j.get<long long>();
}

inline Rational get_rational(const json &j, const std::string &path)
{
    try {
        if (j.is_number_integer())
            return Rational(j.get<long long>());
        if (j.is_string())
            return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument &e) {
        throw ModelError(path + ": " + e.what());
    }
    throw ModelError(path + ": expected a rational string \"p/q\"");
}

inline std::vector<Rational> get_rationals(const json &j, const std::string &path)
{
    if (!j.is_array())
        throw ModelError(path + ": expected an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(get_rational(j[i], idx(path, i)));
    return out;
}

inline std::vector<Weight> get_weights(const json &j, const std::string &path)
{
    if (!j.is_array())
        throw ModelError(path + ": expected an array of integer arrays");
    std::vector<Weight> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array())
            throw ModelError(idx(path, i) + ": expected an integer array");
        Weight w;
        for (std::size_t k = 0; k < j[i].size(); ++k)
            w.push_back(get_int(j[i][k], idx(idx(path, i), k)));
        out.push_back(std::move(w));
    }
    return out;
}

inline json rationals_json(const std::vector<Rational> &v)
{
    json a = json::array();
    for (const auto &r : v)
        a.push_back(format_rational(r));
    return a;
}

} // namespace detail

inline ResolutionModel resolution_from_json(const nlohmann::json &j)
{
    using namespace detail;
    ResolutionModel m;
    m.rank = static_cast<int>(get_int(field(j, "", "rank"), "rank"));
    m.dim = static_cast<int>(get_int(field(j, "", "dim"), "dim"));
    if (j.contains("prefactor_rational"))
        m.prefactor = get_rational(j.at("prefactor_rational"), "prefactor_rational");
    const auto &fps = field(j, "", "fixed_points");
    if (!fps.is_array())
        throw ModelError("fixed_points: expected an array");
    for (std::size_t i = 0; i < fps.size(); ++i) {
        const std::string path = idx("fixed_points", i);
        FixedPointDatum fp;
        fp.weights = get_weights(field(fps[i], path, "weights"), join(path, "weights"));
        fp.exponents = get_rationals(field(fps[i], path, "exponents"), join(path, "exponents"));
        m.fixed_points.push_back(std::move(fp));
    }
    if (j.contains("labels")) {
        if (!j.at("labels").is_array())
            throw ModelError("labels: expected an array of strings");
        for (const auto &l : j.at("labels"))
            m.labels.push_back(l.get<std::string>());
    }
    m.validate();
    return m;
}

inline OrbifoldModel orbifold_from_json(const nlohmann::json &j)
{
    using namespace detail;
    OrbifoldModel m;
    m.dim = static_cast<int>(get_int(field(j, "", "dim"), "dim"));
    m.group_order = get_int(field(j, "", "group_order"), "group_order");
    if (j.contains("commuting_pairs"))
        m.commuting_pairs = get_int(j.at("commuting_pairs"), "commuting_pairs");
    const auto &pairs = field(j, "", "pairs");
    if (!pairs.is_array())
        throw ModelError("pairs: expected an array");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string path = idx("pairs", i);
        const auto &pj = pairs[i];
        OrbifoldPairDatum p;
        p.lambda = get_rationals(field(pj, path, "lambda"), join(path, "lambda"));
        p.nu = get_rationals(field(pj, path, "nu"), join(path, "nu"));
        p.weights = get_weights(field(pj, path, "weights"), join(path, "weights"));
        p.exponents = get_rationals(field(pj, path, "exponents"), join(path, "exponents"));
        if (pj.contains("multiplicity"))
            p.multiplicity = get_int(pj.at("multiplicity"), join(path, "multiplicity"));
        if (pj.contains("h_shift_rational"))
            p.h_shift = get_rational(pj.at("h_shift_rational"), join(path, "h_shift_rational"));
        m.pairs.push_back(std::move(p));
    }
    if (j.contains("rank"))
        m.rank = static_cast<int>(get_int(j.at("rank"), "rank"));
    else if (!m.pairs.empty() && !m.pairs[0].weights.empty())
        m.rank = static_cast<int>(m.pairs[0].weights[0].size());
    m.validate();
    return m;
}

inline nlohmann::json to_json(const ResolutionModel &m)
{
    nlohmann::json j;
    j["kind"] = "resolution";
    j["rank"] = m.rank;
    j["dim"] = m.dim;
    j["prefactor_rational"] = format_rational(m.prefactor);
    j["fixed_points"] = nlohmann::json::array();
    for (const auto &fp : m.fixed_points)
        j["fixed_points"].push_back(
            {{"weights", fp.weights}, {"exponents", detail::rationals_json(fp.exponents)}});
    if (!m.labels.empty())
        j["labels"] = m.labels;
    return j;
}

inline nlohmann::json to_json(const OrbifoldModel &m)
{
    nlohmann::json j;
    j["kind"] = "orbifold";
    j["rank"] = m.rank;
    j["dim"] = m.dim;
    j["group_order"] = m.group_order;
    if (m.commuting_pairs)
        j["commuting_pairs"] = *m.commuting_pairs;
    j["pairs"] = nlohmann::json::array();
    for (const auto &p : m.pairs)
        j["pairs"].push_back({{"lambda", detail::rationals_json(p.lambda)},
                              {"nu", detail::rationals_json(p.nu)},
                              {"weights", p.weights},
                              {"exponents", detail::rationals_json(p.exponents)},
                              {"multiplicity", p.multiplicity},
                              {"h_shift_rational", format_rational(p.h_shift)}});
    return j;
}

using AnyModel = std::variant<ResolutionModel, OrbifoldModel>;

inline AnyModel model_from_json(const nlohmann::json &j)
{
    if (!j.is_object())
        throw ModelError("model: expected a JSON object");
    const auto &kind = detail::field(j, "", "kind");
    if (kind == "resolution")
        return resolution_from_json(j);
    if (kind == "orbifold")
        return orbifold_from_json(j);
    throw ModelError("kind: expected \"resolution\" or \"orbifold\"");
}

inline AnyModel load_model(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open model file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error &e) {
        throw ModelError(path + ": " + e.what());
    }
    return model_from_json(j);
}

inline void save_model(const AnyModel &model, const std::string &path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write model file '" + path + "'");
    std::visit([&](const auto &m) { out << to_json(m).dump(2) << '\n'; }, model);
}

// Presets

namespace detail
{

inline Weight unit(int i, int rank, long long scale = 1)
{
    Weight w(rank, 0);
    w[i] = scale;
    return w;
}

} // namespace detail

/// Minimal resolution of C^2/Z_n with the divisor a1 D1 + a2 D2 (chain of
/// n toric charts).
inline ResolutionModel a_n_resolution(int n, const Rational &a1 = 0, const Rational &a2 = 0)
{
    if (n < 1)
        throw std::invalid_argument("a_n_resolution: n must be >= 1");
    ResolutionModel m;
    m.rank = 2;
    m.dim = 2;
    for (int k = 1; k <= n; ++k) {
        FixedPointDatum fp;
        fp.weights = {{n - k + 1, -(k - 1)}, {-(n - k), k}};
        fp.exponents = {(a1 * k + a2 * (n - k)) / n, (a1 * (k - 1) + a2 * (n - k + 1)) / n};
        m.fixed_points.push_back(std::move(fp));
        m.labels.push_back("vertex " + std::to_string(k));
    }
    m.validate();
    return m;
}

/// C^2 with Z_n acting by diag(e(1/n), e(-1/n)); all n^2 commuting pairs.
inline OrbifoldModel a_n_orbifold(int n, const Rational &a1 = 0, const Rational &a2 = 0)
{
    if (n < 1)
        throw std::invalid_argument("a_n_orbifold: n must be >= 1");
    OrbifoldModel m;
    m.rank = 2;
    m.dim = 2;
    m.group_order = n;
    m.commuting_pairs = static_cast<long long>(n) * n;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            OrbifoldPairDatum p;
            p.lambda = {Rational(k, n), frac(Rational(n - k, n))};
            p.nu = {Rational(l, n), frac(Rational(n - l, n))};
            p.weights = {{1, 0}, {0, 1}};
            p.exponents = {a1, a2};
            m.pairs.push_back(std::move(p));
        }
    m.validate();
    return m;
}

/// C^n itself: one fixed point with the coordinate weights.
inline ResolutionModel affine_space(int n, std::vector<Rational> a = {})
{
    if (n < 1)
        throw std::invalid_argument("affine_space: n must be >= 1");
    if (a.empty())
        a.assign(n, Rational(0));
    if (static_cast<int>(a.size()) != n)
        throw std::invalid_argument("affine_space: one exponent per coordinate");
    ResolutionModel m;
    m.rank = n;
    m.dim = n;
    FixedPointDatum fp;
    for (int i = 0; i < n; ++i)
        fp.weights.push_back(detail::unit(i, n));
    fp.exponents = a;
    m.fixed_points.push_back(std::move(fp));
    m.validate();
    return m;
}

/// Blowup of C^n at the origin, divisor sum a_i D_i pulled back with the
/// exceptional coefficient sum a_i - n + 1.
inline ResolutionModel blowup(int n, std::vector<Rational> a = {})
{
    if (n < 2)
        throw std::invalid_argument("blowup: n must be >= 2");
    if (a.empty())
        a.assign(n, Rational(0));
    if (static_cast<int>(a.size()) != n)
        throw std::invalid_argument("blowup: one exponent per coordinate");
    Rational total = 0;
    for (const auto &x : a)
        total += x;
    ResolutionModel m;
    m.rank = n;
    m.dim = n;
    for (int i = 0; i < n; ++i) {
        FixedPointDatum fp;
        fp.weights.push_back(detail::unit(i, n));
        fp.exponents.push_back(total - n + 1);
        for (int j = 0; j < n; ++j) {
            if (j == i)
                continue;
            Weight w(n, 0);
            w[j] = 1;
            w[i] = -1;
            fp.weights.push_back(std::move(w));
            fp.exponents.push_back(a[j]);
        }
        m.fixed_points.push_back(std::move(fp));
    }
    m.validate();
    return m;
}

/// C^m / Z_n, scalar action. Resolution: total space of O(-n) over P^{m-1}.
struct DiagonalQuotient
{
    ResolutionModel resolution;
    OrbifoldModel orbifold;
};

inline DiagonalQuotient diagonal_quotient(int m, int n)
{
    if (m < 1 || n < 2)
        throw std::invalid_argument("diagonal_quotient: needs m >= 1, n >= 2");
    DiagonalQuotient d;
    d.resolution.rank = m;
    d.resolution.dim = m;
    for (int i = 0; i < m; ++i) {
        FixedPointDatum fp;
        fp.weights.push_back(detail::unit(i, m, n));
        fp.exponents.push_back(1 - Rational(m, n));
        for (int j = 0; j < m; ++j) {
            if (j == i)
                continue;
            Weight w(m, 0);
            w[j] = 1;
            w[i] = -1;
            fp.weights.push_back(std::move(w));
            fp.exponents.push_back(0);
        }
        d.resolution.fixed_points.push_back(std::move(fp));
    }
    d.resolution.validate();

    auto &o = d.orbifold;
    o.rank = m;
    o.dim = m;
    o.group_order = n;
    o.commuting_pairs = static_cast<long long>(n) * n;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            OrbifoldPairDatum p;
            p.lambda.assign(m, Rational(k, n));
            p.nu.assign(m, Rational(l, n));
            for (int i = 0; i < m; ++i)
                p.weights.push_back(detail::unit(i, m));
            p.exponents.assign(m, Rational(0));
            o.pairs.push_back(std::move(p));
        }
    o.validate();
    return d;
}

/// Phi(lambda) over the variables of e, with lambda = c0 + c_tau tau.
inline Term phi_term(const Expression &e, const Rational &coefficient, const Rational &c0,
                     const Rational &c_tau, const std::string &t = "t")
{
    const LinearForm h = -e.var("z");
    const LinearForm lambda = e.constant(c0) + e.tau(c_tau);
    return {coefficient, {e.delta(lambda + e.var(t), h), e.delta(e.var(t) - lambda, h)}};
}

/// D4 = C^2 / Q8 with the scalar one-dimensional torus.
struct D4Preset
{
    Expression resolution; // variables t, z
    OrbifoldModel orbifold;
};

inline D4Preset d4()
{
    D4Preset p{Expression({"t", "z"}), {}};
    auto &e = p.resolution;
    const LinearForm t = e.var("t");
    const LinearForm h = -e.var("z");
    e.add(3, {e.delta(-2 * t, h), e.delta(4 * t, h)});
    // the fixed P^1 through the A_1 neighbourhood
    const Rational half(1, 2);
    for (auto [c0, ct] : {std::pair{Rational(0), Rational(0)},
                          {half, Rational(0)},
                          {Rational(0), -half},
                          {half, -half}}) {
        auto term = phi_term(e, half, c0, ct);
        e.add(term.coefficient, term.factors);
    }

    auto &o = p.orbifold;
    o.rank = 1;
    o.dim = 2;
    o.group_order = 8;
    o.commuting_pairs = 40;
    auto add = [&](Rational l, Rational n, long long mult) {
        o.pairs.push_back({{l, frac(-l)}, {n, frac(-n)}, {{1}, {1}}, {0, 0}, mult, 0});
    };
    const Rational q(1, 4);
    for (const Rational &nu : {Rational(0), half}) {
        add(0, nu, 1);
        add(half, nu, 1);
        add(q, nu, 6);
    }
    for (const Rational &l : {Rational(0), q, half, 3 * q})
        add(l, q, 6);
    o.validate();
    return p;
}

/// One row of the Lehn-Sorger conjugacy class table.
struct ConjugacyRow
{
    std::string name;
    std::vector<Rational> nu;
    long long centralizer_order;
    long long class_size;
    std::vector<std::vector<Rational>> centralizer_logs;
};

struct LehnSorgerPreset
{
    Expression resolution; // variables t1, t2, z
    OrbifoldModel orbifold;
    std::vector<ConjugacyRow> rows;
};

namespace detail
{

// delta(t1^i t2^j, h) as a factor
inline Factor mono(const Expression &e, int i, int j)
{
    return e.delta(i * e.var("t1") + j * e.var("t2"), -e.var("z"));
}

inline void add_f(Expression &e)
{
    e.add(1, {mono(e, 1, -1), mono(e, 3, -1), mono(e, 0, 2), mono(e, -2, 2)});
    e.add(1, {mono(e, 2, 0), mono(e, 4, -2), mono(e, -1, 1), mono(e, -3, 3)});
    e.add(1, {mono(e, 3, -3), mono(e, 2, -2), mono(e, -1, 3), mono(e, -2, 4)});
}

inline void add_f0(Expression &e, bool swapped)
{
    auto m = [&](int i, int j) { return swapped ? mono(e, j, i) : mono(e, i, j); };
    e.add(1, {m(1, -5), m(1, -3), m(0, 4), m(0, 6)});
    e.add(1, {m(2, -4), m(1, -1), m(0, 2), m(-1, 5)});
}

} // namespace detail

/// The resolution-side expression F(t1, t2) shared by both crepant
/// resolutions of (W + W*)/G.
inline Expression lehn_sorger_f()
{
    Expression e({"t1", "t2", "z"});
    detail::add_f(e);
    return e;
}

inline LehnSorgerPreset lehn_sorger()
{
    LehnSorgerPreset p{Expression({"t1", "t2", "z"}), {}, {}};
    detail::add_f0(p.resolution, false);
    detail::add_f0(p.resolution, true);
    detail::add_f(p.resolution);

    const Rational h(1, 2);
    auto r = [](long long a, long long b) { return Rational(a, b); };
    std::vector<std::vector<Rational>> center_logs;
    auto rep = [&](std::vector<Rational> v, int times) {
        for (int i = 0; i < times; ++i)
            center_logs.push_back(v);
    };
    rep({0, 0}, 1);
    rep({h, h}, 1);
    rep({r(1, 6), h}, 4);
    rep({r(1, 3), 0}, 4);
    rep({r(2, 3), 0}, 4);
    rep({r(5, 6), h}, 4);
    rep({r(1, 4), r(3, 4)}, 6);

    std::vector<std::vector<Rational>> z6, z4;
    for (int j = 0; j < 6; ++j)
        z6.push_back({r(j, 6), frac(r(j, 2))});
    for (int j = 0; j < 4; ++j)
        z4.push_back({r(j, 4), frac(r(3 * j, 4))});

    p.rows.push_back({"id", {0, 0}, 24, 1, center_logs});
    p.rows.push_back({"-id", {h, h}, 24, 1, center_logs});
    for (int j : {1, 2, 4, 5})
        p.rows.push_back({"h1^" + std::to_string(j), {r(j, 6), frac(r(j, 2))}, 6, 4, z6});
    p.rows.push_back({"h2", {r(1, 4), r(3, 4)}, 4, 6, z4});

    auto &o = p.orbifold;
    o.rank = 2;
    o.dim = 4;
    o.group_order = 24;
    o.commuting_pairs = 168;
    for (const auto &row : p.rows)
        for (const auto &g : row.centralizer_logs) {
            OrbifoldPairDatum d;
            d.lambda = {g[0], g[1], frac(-g[0]), frac(-g[1])};
            d.nu = {row.nu[0], row.nu[1], frac(-row.nu[0]), frac(-row.nu[1])};
            d.weights = {{1, 0}, {1, 0}, {0, 1}, {0, 1}};
            d.exponents = {0, 0, 0, 0};
            d.multiplicity = row.class_size;
            o.pairs.push_back(std::move(d));
        }
    o.validate();
    return p;
}

} // namespace elliptica

#endif
