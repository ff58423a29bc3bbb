#ifndef ELLIPTICA_EXACT_HPP
#define ELLIPTICA_EXACT_HPP

#include "elliptica/numeric.hpp"

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace elliptica
{

namespace exact
{

using elliptica::Rational;
using Poly = std::vector<Rational>; // c[0] + c[1] x + ...

inline void trim(Poly &p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline Poly mul(const Poly &a, const Poly &b)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline Poly sub(Poly a, const Poly &b)
{
    if (a.size() < b.size())
        a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    trim(a);
    return a;
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly &b)
{
    trim(a);
    if (b.empty())
        throw std::domain_error("polynomial division by zero");
    if (a.size() < b.size())
        return {{}, a};
    Poly q(a.size() - b.size() + 1, Rational(0));
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const Rational c = a.back() / b.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] -= c * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

/// n-th cyclotomic polynomial, from x^n - 1 = prod_{d | n} Phi_d.
inline Poly cyclotomic_polynomial(int n)
{
    if (n < 1)
        throw std::invalid_argument("cyclotomic polynomial needs n >= 1");
    Poly p(n + 1, Rational(0));
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0)
            p = divmod(p, cyclotomic_polynomial(d)).first;
    return p;
}

} // namespace exact

/// Element of the cyclotomic field Q(zeta_n), zeta_n = e(1/n), stored as a
/// polynomial in zeta_n reduced modulo the n-th cyclotomic polynomial.
class Cyclotomic
{
public:
    using Poly = exact::Poly;

    explicit Cyclotomic(int n, const Rational &value = Rational(0))
        : n_(n), modulus_(std::make_shared<const Poly>(exact::cyclotomic_polynomial(n)))
    {
        if (value != 0)
            c_ = {value};
    }

    /// zeta_n^k.
    Cyclotomic root(long long k) const
    {
        k %= n_;
        if (k < 0)
            k += n_;
        Poly p(k + 1, Rational(0));
        p[k] = 1;
        return with(std::move(p));
    }

    Cyclotomic constant(const Rational &r) const { return with(r == 0 ? Poly{} : Poly{r}); }

    int order() const { return n_; }
    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }

    Rational rational_value() const
    {
        if (!is_rational())
            throw std::domain_error("cyclotomic number is not rational");
        return c_.empty() ? Rational(0) : c_[0];
    }

    friend Cyclotomic operator+(const Cyclotomic &a, const Cyclotomic &b)
    {
        a.check(b);
        Poly r = a.c_;
        if (r.size() < b.c_.size())
            r.resize(b.c_.size(), Rational(0));
        for (std::size_t i = 0; i < b.c_.size(); ++i)
            r[i] += b.c_[i];
        exact::trim(r);
        return a.with(std::move(r));
    }

    friend Cyclotomic operator-(const Cyclotomic &a, const Cyclotomic &b)
    {
        a.check(b);
        return a.with(exact::sub(a.c_, b.c_));
    }

    friend Cyclotomic operator-(const Cyclotomic &a) { return a.constant(0) - a; }

    friend Cyclotomic operator*(const Cyclotomic &a, const Cyclotomic &b)
    {
        a.check(b);
        return a.with(exact::mul(a.c_, b.c_));
    }

    friend Cyclotomic operator/(const Cyclotomic &a, const Cyclotomic &b)
    {
        return a * b.inverse();
    }

    friend bool operator==(const Cyclotomic &a, const Cyclotomic &b)
    {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }

    Cyclotomic inverse() const
    {
        if (c_.empty())
            throw std::domain_error("division by zero in Q(zeta)");
        // extended Euclid: s * c + t * modulus = g, g constant
        Poly r0 = *modulus_, r1 = c_;
        Poly s0 = {}, s1 = {Rational(1)};
        while (r1.size() > 1) {
            auto [q, r] = exact::divmod(r0, r1);
            Poly s = exact::sub(s0, exact::mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        if (r1.empty())
            throw std::domain_error("division by zero in Q(zeta)");
        for (auto &x : s1)
            x /= r1[0];
        return with(std::move(s1));
    }

private:
    Cyclotomic with(Poly p) const
    {
        Cyclotomic out = *this;
        out.c_ = exact::divmod(std::move(p), *modulus_).second;
        return out;
    }

    void check(const Cyclotomic &o) const
    {
        if (o.n_ != n_)
            throw std::invalid_argument("mixing different cyclotomic fields");
    }

    int n_;
    std::shared_ptr<const Poly> modulus_;
    Poly c_;
};

inline bool is_zero(const Cyclotomic &x)
{
    return x.is_zero();
}

} // namespace elliptica

#endif
