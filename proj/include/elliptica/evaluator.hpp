#ifndef ELLIPTICA_EVALUATOR_HPP
#define ELLIPTICA_EVALUATOR_HPP

#include "elliptica/exact.hpp"
#include "elliptica/models.hpp"
#include "elliptica/theta.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace elliptica
{

/// Equivariant parameters t_i = e(t[i]) and h = e(-z).
template <typename Real>
struct TorusPoint
{
    std::vector<complex_t<Real>> t;
    complex_t<Real> z;
};

namespace detail
{

template <typename Real>
complex_t<Real> pairing(const Weight &w, const std::vector<complex_t<Real>> &t)
{
    complex_t<Real> x(0);
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != 0)
            x += t[i] * Real(w[i]);
    return x;
}

template <typename Real>
void check_rank(const TorusPoint<Real> &p, int rank)
{
    if (static_cast<int>(p.t.size()) != rank)
        throw std::invalid_argument("torus point has " + std::to_string(p.t.size()) +
                                    " coordinates, model rank is " + std::to_string(rank));
}

} // namespace detail

/// prefactor * sum over fixed points of prod_k delta(t^{w_k}, h^{1 - a_k}).
template <typename Real>
complex_t<Real> localized_class_resolution(const ThetaContext<Real> &ctx,
                                           const ResolutionModel &model,
                                           const TorusPoint<Real> &p)
{
    using C = complex_t<Real>;
    detail::check_rank(p, model.rank);
    C sum(0);
    for (std::size_t i = 0; i < model.fixed_points.size(); ++i) {
        const auto &fp = model.fixed_points[i];
        C prod(1);
        for (std::size_t k = 0; k < fp.weights.size(); ++k) {
            const C a = detail::pairing<Real>(fp.weights[k], p.t);
            const C b = -p.z * to_real<Real>(1 - fp.exponents[k]);
            try {
                prod *= delta(ctx, a, b);
            } catch (const PoleError &e) {
                std::string where = "fixed point " + std::to_string(i);
                if (i < model.labels.size())
                    where += " (" + model.labels[i] + ")";
                throw PoleError(where + ", factor " + std::to_string(k) + ": " + e.what());
            }
        }
        sum += prod;
    }
    return sum * to_real<Real>(model.prefactor);
}

namespace detail
{

template <typename Real>
[[noreturn]] void rethrow_pair_pole(const PoleError &e, std::size_t pair, std::size_t k)
{
    throw PoleError("pair " + std::to_string(pair) + ", factor " + std::to_string(k) + ": " +
                    e.what());
}

} // namespace detail

/// (1/|G|) sum over commuting pairs of
///   prod_k delta(e(lambda_k - nu_k tau) t^{w_k}, h^{1-a_k}) h^{(a_k - 1) nu_k},
/// times h^{h_shift} per pair.
template <typename Real>
complex_t<Real> orbifold_class(const ThetaContext<Real> &ctx, const OrbifoldModel &model,
                               const TorusPoint<Real> &p)
{
    using C = complex_t<Real>;
    detail::check_rank(p, model.rank);
    C sum(0);
    for (std::size_t i = 0; i < model.pairs.size(); ++i) {
        const auto &pair = model.pairs[i];
        C prod(1);
        C h_power = C(to_real<Real>(pair.h_shift));
        for (std::size_t k = 0; k < pair.weights.size(); ++k) {
            const Real lambda = to_real<Real>(pair.lambda[k]);
            const Real nu = to_real<Real>(pair.nu[k]);
            const C a = detail::pairing<Real>(pair.weights[k], p.t) + lambda - ctx.tau() * nu;
            const C b = -p.z * to_real<Real>(1 - pair.exponents[k]);
            try {
                prod *= delta(ctx, a, b);
            } catch (const PoleError &e) {
                detail::rethrow_pair_pole<Real>(e, i, k);
            }
            h_power += C(to_real<Real>((pair.exponents[k] - 1) * pair.nu[k]));
        }
        // h^x = e(-z x)
        sum += prod * e_of<Real>(C(-p.z * h_power)) * Real(pair.multiplicity);
    }
    return sum / Real(model.group_order);
}

/// Same value as orbifold_class for models whose eigen-data pair coordinate
/// k with k + dim/2. Each pair of coordinates contributes
///   Psi(lambda_k - nu_k tau) h^{nu_k (a_k - a_{k+dim/2})}.
template <typename Real>
complex_t<Real> orbifold_class_symplectic(const ThetaContext<Real> &ctx,
                                          const OrbifoldModel &model,
                                          const TorusPoint<Real> &p)
{
    using C = complex_t<Real>;
    if (!is_symplectic_paired(model))
        throw std::invalid_argument("orbifold_class_symplectic: model is not symplectic-paired");
    detail::check_rank(p, model.rank);
    const std::size_t half = static_cast<std::size_t>(model.dim / 2);
    C sum(0);
    for (std::size_t i = 0; i < model.pairs.size(); ++i) {
        const auto &pair = model.pairs[i];
        C prod(1);
        Rational h_power = pair.h_shift;
        for (std::size_t k = 0; k < half; ++k) {
            const std::size_t kk = k + half;
            const C lambda =
                C(to_real<Real>(pair.lambda[k])) - ctx.tau() * to_real<Real>(pair.nu[k]);
            const C t1 = detail::pairing<Real>(pair.weights[k], p.t);
            const C t2 = detail::pairing<Real>(pair.weights[kk], p.t);
            try {
                if (pair.exponents[k] == pair.exponents[kk]) {
                    const C h = -p.z * to_real<Real>(1 - pair.exponents[k]);
                    prod *= psi(ctx, lambda, t1, t2, h);
                } else {
                    prod *= delta(ctx, C(lambda + t1), C(-p.z * to_real<Real>(1 - pair.exponents[k])));
                    prod *= delta(ctx, C(t2 - lambda), C(-p.z * to_real<Real>(1 - pair.exponents[kk])));
                    h_power += pair.nu[k] * (pair.exponents[k] - pair.exponents[kk]);
                }
            } catch (const PoleError &e) {
                detail::rethrow_pair_pole<Real>(e, i, k);
            }
        }
        sum += prod * e_of<Real>(C(-p.z * to_real<Real>(h_power))) * Real(pair.multiplicity);
    }
    return sum / Real(model.group_order);
}

/// Evaluates a resolution-side expression over (t..., z) at a torus point.
template <typename Real>
complex_t<Real> evaluate(const ThetaContext<Real> &ctx, const CompiledExpression<Real> &e,
                         const TorusPoint<Real> &p)
{
    std::vector<complex_t<Real>> v = p.t;
    v.push_back(p.z);
    return e(ctx, v);
}

/// (2 pi i theta(-z) / theta'(0))^dim: turns the normalized class into the
/// unreduced one, whose q -> 0 limit is a rational function.
template <typename Real>
complex_t<Real> unreduced_factor(const ThetaContext<Real> &ctx, const complex_t<Real> &z,
                                 int dim)
{
    using C = complex_t<Real>;
    const C f = two_pi_i<Real>() * theta(ctx, C(-z)) / ctx.theta_prime_zero();
    C r(1);
    for (int i = 0; i < dim; ++i)
        r *= f;
    return r;
}

// q -> 0 limits

namespace detail
{

inline bool is_zero_value(const Cyclotomic &x)
{
    return x.is_zero();
}

template <typename C>
bool is_zero_value(const C &x)
{
    return x == C(0);
}

template <typename T>
T checked_div(const T &num, const T &den, const char *what)
{
    if (is_zero_value(den))
        throw std::domain_error(std::string("zero denominator in ") + what);
    return num / den;
}

template <typename T>
T power(const T &x, int n, const T &one)
{
    T r = one;
    for (int i = 0; i < n; ++i)
        r = r * x;
    return r;
}

} // namespace detail

template <typename T>
struct HirzebruchForms
{
    T star;        // sum over the n resolution charts
    T double_star; // average over the n-torsion points
    T triple_star; // closed form
};

/// The three rational forms of the unreduced A_{n-1} class at q = 0 with
/// D = 0, y = h^{-1}. `one` fixes the field; `root(k)` returns e(k/n).
template <typename T, typename Root>
HirzebruchForms<T> hirzebruch_limit_forms(int n, const T &t1, const T &t2, const T &y,
                                          const T &one, Root root)
{
    using detail::checked_div;
    using detail::power;
    if (n < 1)
        throw std::invalid_argument("hirzebruch_limit_forms: n must be >= 1");
    const T yinv = checked_div(one, y, "y^{-1}");
    auto frac_factor = [&](const T &r, const char *what) {
        return checked_div(T(one - y * r), T(one - r), what);
    };

    T star = one - one;
    for (int k = 1; k <= n; ++k) {
        const T r1 = checked_div(power(t2, k - 1, one), power(t1, n - k + 1, one), "(*)");
        const T r2 = checked_div(power(t1, n - k, one), power(t2, k, one), "(*)");
        star = star + frac_factor(r1, "(*)") * frac_factor(r2, "(*)");
    }
    star = yinv * star;

    T avg = one - one;
    for (int k = 0; k < n; ++k) {
        const T w = root(k);
        const T winv = root(-k);
        avg = avg + frac_factor(checked_div(w, t1, "(**)"), "(**)") *
                        frac_factor(checked_div(winv, t2, "(**)"), "(**)");
    }
    T nn = one;
    for (int k = 1; k < n; ++k)
        nn = nn + one;
    const T double_star = yinv * checked_div(avg, nn, "(**)") + (nn - one);

    const T pinv = checked_div(one, T(t1 * t2), "(***)");
    const T num = (one - y) * (one - y * pinv) * (one - power(pinv, n, one));
    const T den = (one - pinv) * (one - power(checked_div(one, t1, "(***)"), n, one)) *
                  (one - power(checked_div(one, t2, "(***)"), n, one));
    const T triple_star = yinv * checked_div(num, den, "(***)") + nn;
    return {star, double_star, triple_star};
}

template <typename Real>
HirzebruchForms<complex_t<Real>> hirzebruch_limit_forms(int n, const complex_t<Real> &t1,
                                                        const complex_t<Real> &t2,
                                                        const complex_t<Real> &y)
{
    using C = complex_t<Real>;
    return hirzebruch_limit_forms<C>(n, t1, t2, y, C(1), [n](int k) {
        return e_of<Real>(C(Real(k) / Real(n)));
    });
}

/// Exact evaluation at rational t1, t2, y in Q(e(1/n)).
inline HirzebruchForms<Cyclotomic> hirzebruch_limit_forms_exact(int n, const Rational &t1,
                                                                const Rational &t2,
                                                                const Rational &y)
{
    const Cyclotomic one(n, 1);
    return hirzebruch_limit_forms<Cyclotomic>(n, one.constant(t1), one.constant(t2),
                                              one.constant(y), one,
                                              [&](int k) { return one.root(k); });
}

/// Both sides of the trigonometric identity obtained at t1 = t2 = T^{-1}:
///   (1/n) sum_k (1 - 2 cos(2 pi k/n) y T + y^2 T^2) / (1 - 2 cos(2 pi k/n) T + T^2)
///   (1 - y)(1 - y T^2)(1 - T^{2n}) / ((1 - T^2)(1 - T^n)^2) + y.
/// `cosine(k)` returns cos(2 pi k / n) in the field of `one`.
template <typename T, typename Cosine>
std::pair<T, T> trig_forms(int n, const T &x, const T &y, const T &one, Cosine cosine)
{
    using detail::checked_div;
    using detail::power;
    if (n < 1)
        throw std::invalid_argument("trig_forms: n must be >= 1");
    const T two = one + one;
    T lhs = one - one;
    T nn = one - one;
    for (int k = 0; k < n; ++k) {
        const T c = cosine(k);
        lhs = lhs + checked_div(T(one - two * c * y * x + y * y * x * x),
                                T(one - two * c * x + x * x), "trigonometric sum");
        nn = nn + one;
    }
    lhs = lhs / nn;
    const T xn = power(x, n, one);
    const T rhs = checked_div(T((one - y) * (one - y * x * x) * (one - xn * xn)),
                              T((one - x * x) * (one - xn) * (one - xn)), "trigonometric closed form") +
                  y;
    return {lhs, rhs};
}

template <typename Real>
std::pair<complex_t<Real>, complex_t<Real>> trig_forms(int n, const complex_t<Real> &x,
                                                       const complex_t<Real> &y)
{
    using C = complex_t<Real>;
    return trig_forms<C>(n, x, y, C(1), [n](int k) {
        return C(cos(2 * pi<Real>() * Real(k) / Real(n)));
    });
}

/// Exact trigonometric identity; cos(2 pi k/n) = (zeta^k + zeta^{-k}) / 2.
inline std::pair<Cyclotomic, Cyclotomic> trig_forms_exact(int n, const Rational &x,
                                                          const Rational &y)
{
    const Cyclotomic one(n, 1);
    const Cyclotomic half = one.constant(Rational(1, 2));
    return trig_forms<Cyclotomic>(n, one.constant(x), one.constant(y), one, [&](int k) {
        return half * (one.root(k) + one.root(-k));
    });
}

/// theta(v + nu tau - z) / theta(v + nu tau) = delta(v + nu tau, -z) 2 pi i theta(-z) / theta'(0),
/// paired with its q -> 0 limit:
///   y^{-1/2}                          for -1 < nu < 0,
///   y^{-1/2} (1 - y e(-v)) / (1 - e(-v)) for nu = 0,
///   y^{1/2}                           for 0 < nu < 1,
/// with y = e(z).
template <typename Real>
std::pair<complex_t<Real>, complex_t<Real>> q_limit_delta(const ThetaContext<Real> &ctx,
                                                          const Rational &nu,
                                                          const complex_t<Real> &v,
                                                          const complex_t<Real> &z)
{
    using C = complex_t<Real>;
    if (!(nu > -1 && nu < 1))
        throw std::invalid_argument("q_limit_delta: nu must lie in (-1, 1)");
    const C arg = v + ctx.tau() * to_real<Real>(nu);
    const C value = delta(ctx, arg, C(-z)) * unreduced_factor(ctx, z, 1);
    const C half_y = e_of<Real>(C(z / Real(2)));
    C predicted;
    if (nu < 0)
        predicted = C(1) / half_y;
    else if (nu > 0)
        predicted = half_y;
    else {
        const C ev = e_of<Real>(C(-v));
        predicted = (C(1) - e_of<Real>(z) * ev) / ((C(1) - ev) * half_y);
    }
    return {value, predicted};
}

} // namespace elliptica

#endif
