#ifndef ELLIPTICA_SERIES_HPP
#define ELLIPTICA_SERIES_HPP

#include "elliptica/theta.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace elliptica
{

/// Truncated Laurent series sum_{j=0}^{K} c_j x^{lead + j} + O(x^{lead + K + 1}).
template <typename C>
class TruncatedSeries
{
public:
    TruncatedSeries() : coeffs_(1, C(0)) {}

    explicit TruncatedSeries(std::vector<C> coeffs, int lead_order = 0)
        : coeffs_(std::move(coeffs)), lead_(lead_order)
    {
        if (coeffs_.empty())
            throw std::invalid_argument("series needs at least one coefficient");
    }

    static TruncatedSeries constant(const C &c, int truncation)
    {
        std::vector<C> v(truncation + 1, C(0));
        v[0] = c;
        return TruncatedSeries(std::move(v));
    }

    int lead_order() const { return lead_; }
    int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }
    // first power not represented
    int error_order() const { return lead_ + truncation() + 1; }
    const std::vector<C> &coefficients() const { return coeffs_; }

    C coefficient(int power) const
    {
        if (power >= error_order())
            throw std::out_of_range("coefficient beyond the series truncation");
        if (power < lead_)
            return C(0);
        return coeffs_[power - lead_];
    }

    /// Drops exactly-zero leading coefficients.
    TruncatedSeries normalized() const
    {
        std::size_t skip = 0;
        while (skip + 1 < coeffs_.size() && coeffs_[skip] == C(0))
            ++skip;
        return TruncatedSeries(std::vector<C>(coeffs_.begin() + skip, coeffs_.end()),
                               lead_ + static_cast<int>(skip));
    }

    TruncatedSeries truncated(int K) const
    {
        if (K > truncation())
            throw std::invalid_argument("cannot extend a truncated series");
        return TruncatedSeries(std::vector<C>(coeffs_.begin(), coeffs_.begin() + K + 1), lead_);
    }

    TruncatedSeries shifted(int k) const { return TruncatedSeries(coeffs_, lead_ + k); }

    TruncatedSeries operator-() const
    {
        auto v = coeffs_;
        for (auto &c : v)
            c = -c;
        return TruncatedSeries(std::move(v), lead_);
    }

    friend TruncatedSeries operator+(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        const int lead = std::min(a.lead_, b.lead_);
        const int err = std::min(a.error_order(), b.error_order());
        if (err <= lead)
            throw std::domain_error("sum of series has no significant coefficients");
        std::vector<C> v(err - lead, C(0));
        for (int p = lead; p < err; ++p)
            v[p - lead] = a.coefficient(p) + b.coefficient(p);
        return TruncatedSeries(std::move(v), lead);
    }

    friend TruncatedSeries operator-(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        return a + (-b);
    }

    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        const int K = std::min(a.truncation(), b.truncation());
        std::vector<C> v(K + 1, C(0));
        for (int j = 0; j <= K; ++j)
            for (int i = 0; i <= j; ++i)
                v[j] += a.coeffs_[i] * b.coeffs_[j - i];
        return TruncatedSeries(std::move(v), a.lead_ + b.lead_);
    }

    friend TruncatedSeries operator*(const C &s, const TruncatedSeries &a)
    {
        auto v = a.coeffs_;
        for (auto &c : v)
            c *= s;
        return TruncatedSeries(std::move(v), a.lead_);
    }

    /// Multiplicative inverse; the leading coefficient must be nonzero.
    TruncatedSeries inverse() const
    {
        if (coeffs_[0] == C(0))
            throw std::domain_error("series inverse needs a nonzero leading coefficient");
        const int K = truncation();
        std::vector<C> b(K + 1, C(0));
        const C inv0 = C(1) / coeffs_[0];
        b[0] = inv0;
        for (int j = 1; j <= K; ++j) {
            C acc(0);
            for (int i = 1; i <= j; ++i)
                acc += coeffs_[i] * b[j - i];
            b[j] = -inv0 * acc;
        }
        return TruncatedSeries(std::move(b), -lead_);
    }

    TruncatedSeries pow(int n) const
    {
        if (n < 0)
            return inverse().pow(-n);
        TruncatedSeries result = constant(C(1), truncation());
        TruncatedSeries base = *this;
        while (n > 0) {
            if (n & 1)
                result = result * base;
            base = base * base;
            n >>= 1;
        }
        return result;
    }

    /// exp of a series without negative powers.
    TruncatedSeries exp() const
    {
        const auto g = dense_from_zero("exp");
        const int K = static_cast<int>(g.size()) - 1;
        std::vector<C> f(K + 1, C(0));
        using std::exp;
        f[0] = exp(g[0]);
        for (int j = 1; j <= K; ++j) {
            C acc(0);
            for (int i = 1; i <= j; ++i)
                acc += C(i) * g[i] * f[j - i];
            f[j] = acc / C(j);
        }
        return TruncatedSeries(std::move(f));
    }

    /// f(g(s)) for g = O(s). The result keeps the precision of the less
    /// precise of f (relative to its lead) and g / s.
    TruncatedSeries compose(const TruncatedSeries &g) const
    {
        const TruncatedSeries gn = g.normalized();
        if (gn.lead_ < 1 || gn.coeffs_[0] == C(0))
            throw std::domain_error("compose needs an inner series with valuation >= 1");
        const TruncatedSeries G = gn.shifted(-gn.lead_); // g = s^{lg} G(s)
        const int K = std::min(truncation(), G.truncation());
        const TruncatedSeries Gk = G.truncated(K);
        // dense representation of g itself up to s^K
        std::vector<C> gd(K + 1, C(0));
        for (int p = gn.lead_; p <= K; ++p)
            gd[p] = gn.coefficient(p);
        const TruncatedSeries gdense(gd);
        TruncatedSeries inner = constant(coeffs_[K], K);
        for (int j = K - 1; j >= 0; --j)
            inner = inner * gdense + constant(coeffs_[j], K);
        const TruncatedSeries outer = Gk.pow(lead_).shifted(gn.lead_ * lead_ - Gk.lead_ * lead_);
        return outer * inner;
    }

private:
    std::vector<C> dense_from_zero(const char *what) const
    {
        for (int p = lead_; p < 0 && p < error_order(); ++p)
            if (coefficient(p) != C(0))
                throw std::domain_error(std::string(what) + " of a series with a pole");
        const int err = error_order();
        if (err <= 0)
            throw std::domain_error(std::string(what) + ": no nonnegative coefficients");
        std::vector<C> v(err, C(0));
        for (int p = std::max(lead_, 0); p < err; ++p)
            v[p] = coefficient(p);
        return v;
    }

    std::vector<C> coeffs_;
    int lead_ = 0;
};

namespace detail
{

// Taylor coefficients of x -> theta(c + d x), powers 0..terms-1. Each sine
// term is entire, so expanding termwise is exact to the truncation order.
template <typename Real>
TruncatedSeries<complex_t<Real>> theta_taylor(const ThetaContext<Real> &ctx,
                                              const complex_t<Real> &c,
                                              const complex_t<Real> &d, int terms)
{
    using C = complex_t<Real>;
    auto r = reduce(ctx, c);
    const Real snap = std::numeric_limits<Real>::epsilon() * 1024;
    if (abs(r.v1) < snap)
        r.v1 = C(0);

    std::vector<C> s(terms, C(0));
    const C iPi(Real(0), pi<Real>());
    const auto &weights = ctx.series_weights();
    const C w = e_of<Real>(r.v1 / Real(2));
    const C w2 = w * w;
    C up = w;
    C down = C(1) / w;
    const C w2inv = C(1) / w2;
    for (std::size_t n = 0; n < weights.size(); ++n) {
        const C rate = iPi * Real(2 * n + 1) * d;
        C pw(1);
        for (int j = 0; j < terms; ++j) {
            // pw = rate^j / j!
            s[j] += weights[n] * pw * ((j % 2 == 0) ? (up - down) : (up + down));
            pw = pw * rate / Real(j + 1);
        }
        up *= w2;
        down *= w2inv;
    }
    for (auto &x : s)
        x *= C(Real(0), Real(-1));
    TruncatedSeries<C> base(std::move(s));
    if (r.k == 0 && r.m == 0)
        return base;

    // (-1)^{k+m} e(-k^2 tau/2 - k (v1 + d x))
    const Real k = Real(r.k);
    std::vector<C> f(terms, C(0));
    C scale = e_of<Real>(-(ctx.tau() * (k * k / 2)) - r.v1 * k);
    if ((r.k + r.m) % 2 != 0)
        scale = -scale;
    const C rate = -two_pi_i<Real>() * k * d;
    C pw(1);
    for (int j = 0; j < terms; ++j) {
        f[j] = scale * pw;
        pw = pw * rate / Real(j + 1);
    }
    return TruncatedSeries<C>(std::move(f)) * base;
}

} // namespace detail

/// Taylor series of theta(c + d x) in x to order K.
template <typename Real>
TruncatedSeries<complex_t<Real>> theta_series(const ThetaContext<Real> &ctx,
                                              const complex_t<Real> &c,
                                              const complex_t<Real> &d, int K)
{
    if (K < 0)
        throw std::invalid_argument("series order must be nonnegative");
    return detail::theta_taylor(ctx, c, d, K + 1);
}

/// Expansion of x -> delta(e(a0 + direction x), e(b)) to relative order K.
/// When a0 lies on Z + tau Z the result is Laurent with lead order -1.
template <typename Real>
TruncatedSeries<complex_t<Real>> delta_series(const ThetaContext<Real> &ctx,
                                              const complex_t<Real> &a0,
                                              const complex_t<Real> &direction,
                                              const complex_t<Real> &b, int K)
{
    using C = complex_t<Real>;
    if (K < 0)
        throw std::invalid_argument("series order must be nonnegative");
    check_pole(ctx, b, "delta_series: second argument");
    const int terms = K + 3;
    const auto num = detail::theta_taylor(ctx, C(a0 + b), direction, terms).normalized();
    const auto den = detail::theta_taylor(ctx, a0, direction, terms).normalized();
    const C scale = ctx.theta_prime_zero() / (two_pi_i<Real>() * theta(ctx, b));
    auto quotient = scale * (num * den.inverse());
    return quotient.truncated(std::min(K, quotient.truncation()));
}

/// Ell(P^1) = lim_{t->1} (delta(t, h) + delta(1/t, h)), as the constant term
/// of the sum of the two Laurent expansions in t = e^x. `hbar` is the
/// additive coordinate of h.
template <typename Real>
complex_t<Real> ell_genus_p1(const ThetaContext<Real> &ctx, const complex_t<Real> &hbar)
{
    using C = complex_t<Real>;
    const C dir = C(1) / two_pi_i<Real>();
    const auto plus = delta_series(ctx, C(0), dir, hbar, 2);
    const auto minus = delta_series(ctx, C(0), C(-dir), hbar, 2);
    return (plus + minus).coefficient(0);
}

/// Closed form 2 h vartheta'(h) / vartheta(h) = theta'(hbar) / (pi i theta(hbar)).
template <typename Real>
complex_t<Real> ell_genus_p1_closed_form(const ThetaContext<Real> &ctx,
                                         const complex_t<Real> &hbar)
{
    using C = complex_t<Real>;
    check_pole(ctx, hbar, "ell_genus_p1: h");
    const auto s = theta_series(ctx, hbar, C(1), 1);
    return C(2) * s.coefficient(1) / (two_pi_i<Real>() * s.coefficient(0));
}

namespace detail
{

template <typename C>
TruncatedSeries<C> log1p_series(int K)
{
    std::vector<C> v(K + 1, C(0));
    for (int j = 1; j <= K; ++j)
        v[j] = C((j % 2) ? 1 : -1) / C(j);
    return TruncatedSeries<C>(std::move(v));
}

} // namespace detail

/// Two evaluations of the Calabi-Yau residue
///   [x^{n-1}] x^n delta(t e^{-x}, h) delta(e^x, h)^n
///   Res_{u=1} delta(t/u, h) delta(u, h)^n / u,
/// the second taken in the local coordinate s = u - 1 through x = log(1 + s).
template <typename Real>
std::pair<complex_t<Real>, complex_t<Real>>
cy_residue_check(const ThetaContext<Real> &ctx, int n, const complex_t<Real> &t,
                 const complex_t<Real> &hbar)
{
    using C = complex_t<Real>;
    if (n < 2)
        throw std::invalid_argument("cy_residue_check needs n >= 2");
    const int K = n + 2;
    const C dir = C(1) / two_pi_i<Real>();
    const auto shifted = delta_series(ctx, t, C(-dir), hbar, K);
    const auto at_one = delta_series(ctx, C(0), dir, hbar, K);
    const auto integrand = shifted * at_one.pow(n); // lead -n

    const C by_coefficient = integrand.shifted(n).coefficient(n - 1);

    const auto in_s = integrand.compose(detail::log1p_series<C>(K + 1));
    std::vector<C> geo(K + 1, C(0));
    for (int j = 0; j <= K; ++j)
        geo[j] = C((j % 2) ? -1 : 1);
    const auto with_jacobian = in_s * TruncatedSeries<C>(std::move(geo));
    const C by_residue = with_jacobian.coefficient(-1);
    return {by_coefficient, by_residue};
}

/// The specialization t^n = h^{-1} of the Landau-Ginzburg integral:
///   [x^{n-1}] x^n delta((t e^{-x})^n, h) delta(e^x, h)^n
/// versus
///   (vartheta'(1)/vartheta(h))^2 [x^{n-1}] x^n delta(e^{nx}, h)^{-1} delta(e^x, h)^n.
template <typename Real>
std::pair<complex_t<Real>, complex_t<Real>>
cy_specialization_check(const ThetaContext<Real> &ctx, int n, const complex_t<Real> &hbar)
{
    using C = complex_t<Real>;
    if (n < 2)
        throw std::invalid_argument("cy_specialization_check needs n >= 2");
    const int K = n + 2;
    const C dir = C(1) / two_pi_i<Real>();
    const auto at_one = delta_series(ctx, C(0), dir, hbar, K).pow(n);

    // t := h^{-1/n}, so n * t-arg = -hbar.
    const auto twisted = delta_series(ctx, C(-hbar), C(-dir * Real(n)), hbar, K);
    const C lhs = (twisted * at_one).shifted(n).coefficient(n - 1);

    const auto power = delta_series(ctx, C(0), C(dir * Real(n)), hbar, K).inverse();
    const C ratio = ctx.theta_prime_zero() / (two_pi_i<Real>() * theta(ctx, hbar));
    const C rhs = ratio * ratio * (power * at_one).shifted(n).coefficient(n - 1);
    return {lhs, rhs};
}

} // namespace elliptica

#endif
