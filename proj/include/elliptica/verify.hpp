#ifndef ELLIPTICA_VERIFY_HPP
#define ELLIPTICA_VERIFY_HPP

#include "elliptica/exact.hpp"
#include "elliptica/rng.hpp"
#include "elliptica/theta.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace elliptica
{

enum class VariableRole
{
    torus,    // equivariant parameter t
    dynamical // h, mu or any twisting parameter
};

struct Variable
{
    std::string name;
    VariableRole role = VariableRole::torus;
};

template <typename Real>
using SideFunction = std::function<complex_t<Real>(const ThetaContext<Real> &,
                                                   std::span<const complex_t<Real>>)>;

template <typename Real>
struct Side
{
    std::string name;
    SideFunction<Real> eval;
};

/// Exact evaluation of every side at a rational point, for identities
/// between rational functions.
using ExactFunction = std::function<std::vector<Cyclotomic>(const std::vector<Rational> &)>;

/// A named equality between two or more evaluators sharing the same
/// variables. Every side is compared against side 0.
template <typename Real>
struct Identity
{
    std::string id;
    std::string summary;
    std::vector<Variable> variables;
    std::vector<Side<Real>> sides;
    ExactFunction exact;
    std::vector<std::vector<Rational>> exact_points;
    // number of delta factors per term when every term has the same count;
    // the additive-normalized form carries an extra (2 pi i)^degree
    std::optional<int> delta_degree;

    bool exact_mode() const { return static_cast<bool>(exact); }
};

struct SampleConfig
{
    int samples = 32;
    std::uint64_t seed = 20240601;
    double tolerance = 1e-9;
    PrecisionConfig precision{};
    double tau_im_min = 0.8;
    double tau_im_max = 2.0;
    double pole_epsilon = default_pole_epsilon;
    int threads = 1;
    int max_retries = 100;

    void validate() const
    {
        if (samples < 1)
            throw std::invalid_argument("samples must be >= 1");
        if (!(tolerance > 0))
            throw std::invalid_argument("tolerance must be > 0");
        if (!(tau_im_min > 0 && tau_im_max >= tau_im_min))
            throw std::invalid_argument("tau_im range must satisfy 0 < min <= max");
        if (threads < 1)
            throw std::invalid_argument("threads must be >= 1");
        precision.validate();
    }
};

/// Tail tolerance matched to the number of working digits (1e-25 at 30).
inline PrecisionConfig precision_for_digits(int digits)
{
    PrecisionConfig p;
    p.working_digits = digits;
    p.tail_tolerance = std::pow(10.0, -(digits - 5));
    p.validate();
    return p;
}

using ComplexText = std::pair<std::string, std::string>;

struct SampleFailure
{
    int sample = 0;
    int side = 1;
    ComplexText tau;
    std::vector<ComplexText> point;
    ComplexText lhs;
    ComplexText rhs;
    double rel_err = 0;
};

struct VerificationReport
{
    std::string id;
    int samples = 0;
    std::uint64_t seed = 0;
    double tolerance = 0;
    int working_digits = 0;
    double max_abs_err = 0;
    double max_rel_err = 0;
    std::vector<SampleFailure> failures;
    std::vector<int> truncation_orders;
    int exact_points_checked = 0;
    bool exact_pass = true;
    std::string exact_detail;
    double elapsed_ms = 0;
    bool pass = false;
};

namespace detail
{

template <typename Real>
ComplexText text(const complex_t<Real> &z, int digits)
{
    return {to_decimal(Real(real(z)), digits), to_decimal(Real(imag(z)), digits)};
}

template <typename Real>
struct SamplePoint
{
    complex_t<Real> tau;
    std::vector<complex_t<Real>> values;
};

template <typename Real>
SamplePoint<Real> draw(SplitMix64 &rng, std::size_t variables, const SampleConfig &cfg)
{
    using C = complex_t<Real>;
    SamplePoint<Real> p;
    const double tau_re = rng.uniform(-0.5, 0.5);
    const double tau_im = rng.uniform(cfg.tau_im_min, cfg.tau_im_max);
    p.tau = C(Real(tau_re), Real(tau_im));
    for (std::size_t i = 0; i < variables; ++i) {
        const double re = rng.uniform(-0.5, 0.5);
        const double im = rng.uniform(-tau_im / 4, tau_im / 4);
        p.values.emplace_back(Real(re), Real(im));
    }
    return p;
}

template <typename Real>
struct SampleOutcome
{
    SamplePoint<Real> point;
    std::vector<complex_t<Real>> values;
    int order = 0;
};

template <typename Real>
SampleOutcome<Real> run_sample(const Identity<Real> &identity, const SampleConfig &cfg,
                               int index)
{
    SplitMix64 rng = SplitMix64::stream(cfg.seed, static_cast<std::uint64_t>(index));
    std::string last;
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        SampleOutcome<Real> out;
        out.point = draw<Real>(rng, identity.variables.size(), cfg);
        try {
            ThetaContext<Real> ctx(ModularParam<Real>(out.point.tau), cfg.precision,
                                   cfg.pole_epsilon);
            out.order = ctx.order();
            for (const auto &side : identity.sides)
                out.values.push_back(side.eval(ctx, out.point.values));
            return out;
        } catch (const PoleError &e) {
            last = e.what();
        } catch (const std::domain_error &e) {
            // zero denominators of rational forms are resampled the same way
            last = e.what();
        }
    }
    throw std::domain_error(identity.id + ": no pole-free sample found in " +
                            std::to_string(cfg.max_retries) + " retries (last: " + last + ")");
}

inline void check_exact(const ExactFunction &f, const std::vector<std::vector<Rational>> &points,
                        VerificationReport &report)
{
    for (const auto &pt : points) {
        const auto values = f(pt);
        ++report.exact_points_checked;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!values[i].is_rational()) {
                report.exact_pass = false;
                report.exact_detail = "side " + std::to_string(i) + " is not rational";
                return;
            }
            if (i > 0 && !(values[i] == values[0])) {
                report.exact_pass = false;
                std::string at;
                for (const auto &r : pt)
                    at += (at.empty() ? "" : ", ") + format_rational(r);
                report.exact_detail = "side " + std::to_string(i) + " = " +
                                      format_rational(values[i].rational_value()) +
                                      " differs from side 0 = " +
                                      format_rational(values[0].rational_value()) +
                                      " at (" + at + ")";
                return;
            }
        }
    }
}

} // namespace detail

/// Randomized verification. Deterministic given the seed, for any thread count.
template <typename Real>
VerificationReport verify(const Identity<Real> &identity, const SampleConfig &cfg)
{
    cfg.validate();
    if (identity.sides.size() < 2)
        throw std::invalid_argument(identity.id + ": an identity needs at least two sides");
    const auto start = std::chrono::steady_clock::now();

    std::vector<std::optional<detail::SampleOutcome<Real>>> outcomes(cfg.samples);
    std::vector<std::string> errors(cfg.samples);
    auto work = [&](int first, int stride) {
        for (int i = first; i < cfg.samples; i += stride) {
            try {
                outcomes[i] = detail::run_sample(identity, cfg, i);
            } catch (const std::exception &e) {
                errors[i] = e.what();
            }
        }
    };
    const int threads = std::min(cfg.threads, cfg.samples);
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(work, t, threads);
        for (auto &th : pool)
            th.join();
    }
    for (const auto &e : errors)
        if (!e.empty())
            throw std::domain_error(e);

    VerificationReport report;
    report.id = identity.id;
    report.samples = cfg.samples;
    report.seed = cfg.seed;
    report.tolerance = cfg.tolerance;
    report.working_digits = cfg.precision.working_digits;
    const int digits = cfg.precision.working_digits;
    for (int i = 0; i < cfg.samples; ++i) {
        const auto &o = *outcomes[i];
        report.truncation_orders.push_back(o.order);
        for (std::size_t s = 1; s < o.values.size(); ++s) {
            const Real abs_err = abs(o.values[s] - o.values[0]);
            const Real rel_err = relative_error(o.values[0], o.values[s]);
            const double rel = static_cast<double>(rel_err);
            const double ab = static_cast<double>(abs_err);
            const bool finite = std::isfinite(rel);
            report.max_abs_err = std::max(report.max_abs_err, finite ? ab : INFINITY);
            report.max_rel_err = std::max(report.max_rel_err, finite ? rel : INFINITY);
            if (!finite || !(rel < cfg.tolerance)) {
                SampleFailure f;
                f.sample = i;
                f.side = static_cast<int>(s);
                f.tau = detail::text<Real>(o.point.tau, digits);
                for (const auto &v : o.point.values)
                    f.point.push_back(detail::text<Real>(v, digits));
                f.lhs = detail::text<Real>(o.values[0], digits);
                f.rhs = detail::text<Real>(o.values[s], digits);
                f.rel_err = finite ? rel : INFINITY;
                report.failures.push_back(std::move(f));
            }
        }
    }
    if (identity.exact_mode())
        detail::check_exact(identity.exact, identity.exact_points, report);
    report.pass = report.failures.empty() && report.max_rel_err < cfg.tolerance &&
                  report.exact_pass;
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

inline nlohmann::json to_json(const VerificationReport &r, bool with_timing = true)
{
    using nlohmann::json;
    auto cx = [](const ComplexText &c) { return json::array({c.first, c.second}); };
    json failures = json::array();
    for (const auto &f : r.failures) {
        json point = json::array();
        for (const auto &p : f.point)
            point.push_back(cx(p));
        failures.push_back({{"sample", f.sample},
                            {"side", f.side},
                            {"tau", cx(f.tau)},
                            {"point", point},
                            {"lhs", cx(f.lhs)},
                            {"rhs", cx(f.rhs)},
                            {"rel_err", f.rel_err}});
    }
    json j = {{"id", r.id},
              {"samples", r.samples},
              {"seed", r.seed},
              {"tolerance", r.tolerance},
              {"working_digits", r.working_digits},
              {"max_abs_err", r.max_abs_err},
              {"max_rel_err", r.max_rel_err},
              {"failures", failures},
              {"truncation_orders", r.truncation_orders},
              {"pass", r.pass}};
    if (r.exact_points_checked > 0)
        j["exact"] = {{"points", r.exact_points_checked},
                      {"pass", r.exact_pass},
                      {"detail", r.exact_detail}};
    if (with_timing)
        j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

} // namespace elliptica

#endif
