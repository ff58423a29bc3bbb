#ifndef ELLIPTICA_THETA_HPP
#define ELLIPTICA_THETA_HPP

#include "elliptica/numeric.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace elliptica
{

/// Raised when a sample point sits within the pole tolerance of the period
/// lattice Z + tau Z.
class PoleError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

inline constexpr double default_pole_epsilon = 1e-4;

/// Evaluated form of tau: truncation order, the signed theta-series weights
/// (-1)^n q0^{(n+1/2)^2} and theta'(0). Immutable once built.
template <typename Real>
class ThetaContext
{
public:
    using real_type = Real;
    using complex_type = complex_t<Real>;

    ThetaContext(ModularParam<Real> modular, PrecisionConfig precision = {},
                 double pole_epsilon = default_pole_epsilon)
        : modular_(std::move(modular)), precision_(precision), pole_epsilon_(pole_epsilon)
    {
        precision_.validate();
        if (!(pole_epsilon_ > 0.0))
            throw std::invalid_argument("pole epsilon must be positive");
        const complex_type &tau = modular_.tau();
        q_ = e_of<Real>(tau);
        const double q_abs = static_cast<double>(abs(q_));
        order_ = truncation_order(q_abs, precision_.tail_tolerance);

        weights_.reserve(order_ + 1);
        theta_prime_ = complex_type(0);
        for (int n = 0; n <= order_; ++n) {
            const Real half = Real(n) + Real(1) / 2;
            complex_type w = e_of<Real>(tau * (half * half / 2));
            if (n % 2)
                w = -w;
            weights_.push_back(w);
            theta_prime_ += w * Real(2 * n + 1);
        }
        theta_prime_ *= 2 * pi<Real>();
    }

    const complex_type &tau() const { return modular_.tau(); }
    const ModularParam<Real> &modular() const { return modular_; }
    const PrecisionConfig &precision() const { return precision_; }
    const complex_type &q() const { return q_; }
    int order() const { return order_; }
    double pole_epsilon() const { return pole_epsilon_; }
    const std::vector<complex_type> &series_weights() const { return weights_; }
    const complex_type &theta_prime_zero() const { return theta_prime_; }

private:
    ModularParam<Real> modular_;
    PrecisionConfig precision_;
    double pole_epsilon_;
    complex_type q_;
    int order_ = 1;
    std::vector<complex_type> weights_;
    complex_type theta_prime_;
};

namespace detail
{

// v = v1 + m + k tau with |im v1| <= im(tau)/2 and |re(v1 - ...)| <= 1/2.
template <typename Real>
struct LatticeReduction
{
    complex_t<Real> v1;
    long long m = 0;
    long long k = 0;
};

template <typename Real>
LatticeReduction<Real> reduce(const ThetaContext<Real> &ctx, const complex_t<Real> &v)
{
    using std::round;
    const complex_t<Real> &tau = ctx.tau();
    LatticeReduction<Real> r;
    Real kk = round(Real(imag(v)) / Real(imag(tau)));
    r.k = static_cast<long long>(kk);
    complex_t<Real> v0 = v - tau * kk;
    Real mm = round(Real(real(v0)));
    r.m = static_cast<long long>(mm);
    r.v1 = v0 - complex_t<Real>(mm, Real(0));
    return r;
}

// theta on the reduced strip by the sine series.
template <typename Real>
complex_t<Real> theta_reduced(const ThetaContext<Real> &ctx, const complex_t<Real> &v1)
{
    using C = complex_t<Real>;
    const C w = e_of<Real>(v1 / Real(2));
    const C winv = C(1) / w;
    const C w2 = w * w;
    const C w2inv = winv * winv;
    C up = w;
    C down = winv;
    C sum(0);
    for (const C &c : ctx.series_weights()) {
        sum += c * (up - down);
        up *= w2;
        down *= w2inv;
    }
    return C(Real(0), Real(-1)) * sum;
}

} // namespace detail

/// Distance from a to the lattice Z + tau Z in the flat metric.
template <typename Real>
Real lattice_distance(const ThetaContext<Real> &ctx, const complex_t<Real> &a)
{
    using C = complex_t<Real>;
    using std::round;
    const C &tau = ctx.tau();
    const Real k0 = round(Real(imag(a)) / Real(imag(tau)));
    Real best = std::numeric_limits<Real>::max();
    for (int dk = -1; dk <= 1; ++dk) {
        const C shifted = a - tau * (k0 + dk);
        const Real m = round(Real(real(shifted)));
        for (int dm = -1; dm <= 1; ++dm) {
            const Real d = abs(shifted - C(m + dm, Real(0)));
            if (d < best)
                best = d;
        }
    }
    return best;
}

/// The odd Jacobi theta function
///   theta_tau(v) = 2 sum_{n>=0} (-1)^n q0^{(n+1/2)^2} sin((2n+1) pi v).
/// The argument is first moved into the fundamental strip with the
/// quasi-periodicities theta(v+1) = -theta(v),
/// theta(v+tau) = -q^{-1/2} e(-v) theta(v).
template <typename Real>
complex_t<Real> theta(const ThetaContext<Real> &ctx, const complex_t<Real> &v)
{
    using C = complex_t<Real>;
    const auto r = detail::reduce(ctx, v);
    C value = detail::theta_reduced(ctx, r.v1);
    if (r.k != 0) {
        const Real k = Real(r.k);
        value *= e_of<Real>(-(ctx.tau() * (k * k / 2)) - r.v1 * k);
    }
    if ((r.k + r.m) % 2 != 0)
        value = -value;
    return value;
}

/// Jacobi product form, evaluated directly without argument reduction:
///   2 q^{1/8} sin(pi v) prod_{l>=1} (1 - q^l)(1 - q^l e(v))(1 - q^l / e(v)).
/// Kept as an independent route for cross-checking theta().
template <typename Real>
complex_t<Real> theta_product(const ThetaContext<Real> &ctx, const complex_t<Real> &v)
{
    using C = complex_t<Real>;
    const C x = e_of<Real>(v);
    const C xinv = C(1) / x;
    const C half = e_of<Real>(v / Real(2));
    const C sine = (half - C(1) / half) / C(Real(0), Real(2));
    C prod = C(2) * e_of<Real>(ctx.tau() / Real(8)) * sine;
    C ql = ctx.q();
    // one extra factor covers the |e(v)| growth on the sampling strip
    for (int l = 1; l <= ctx.order() + 1; ++l) {
        prod *= (C(1) - ql) * (C(1) - ql * x) * (C(1) - ql * xinv);
        ql *= ctx.q();
    }
    return prod;
}

template <typename Real>
const complex_t<Real> &theta_prime_zero(const ThetaContext<Real> &ctx)
{
    return ctx.theta_prime_zero();
}

template <typename Real>
void check_pole(const ThetaContext<Real> &ctx, const complex_t<Real> &a, const char *what)
{
    if (lattice_distance(ctx, a) < Real(ctx.pole_epsilon()))
        throw PoleError(std::string(what) + " lies within the pole tolerance of Z + tau Z");
}

/// delta(A, B) = theta'(0) theta(a+b) / (2 pi i theta(a) theta(b)), with
/// A = e(a), B = e(b). Normalized so that x delta(e^x, B) -> 1 as x -> 0.
template <typename Real>
complex_t<Real> delta(const ThetaContext<Real> &ctx, const complex_t<Real> &a,
                      const complex_t<Real> &b)
{
    check_pole(ctx, a, "delta: first argument");
    check_pole(ctx, b, "delta: second argument");
    return ctx.theta_prime_zero() * theta(ctx, a + b) /
           (two_pi_i<Real>() * theta(ctx, a) * theta(ctx, b));
}

/// Phi(lambda) = delta(e(lambda) t, h) delta(e(-lambda) t, h).
template <typename Real>
complex_t<Real> phi(const ThetaContext<Real> &ctx, const complex_t<Real> &lambda,
                    const complex_t<Real> &t, const complex_t<Real> &h)
{
    return delta(ctx, lambda + t, h) * delta(ctx, t - lambda, h);
}

/// Psi(lambda) = delta(e(lambda) t1, h) delta(e(-lambda) t2, h).
template <typename Real>
complex_t<Real> psi(const ThetaContext<Real> &ctx, const complex_t<Real> &lambda,
                    const complex_t<Real> &t1, const complex_t<Real> &t2,
                    const complex_t<Real> &h)
{
    return delta(ctx, lambda + t1, h) * delta(ctx, t2 - lambda, h);
}

} // namespace elliptica

#endif
