#ifndef ELLIPTICA_NUMERIC_HPP
#define ELLIPTICA_NUMERIC_HPP

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <cstdint>
#include <ios>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace elliptica
{

namespace mp = boost::multiprecision;

/// Exact rational with arbitrary-size numerator and denominator.
using Rational = mp::number<mp::cpp_rational_backend, mp::et_off>;

// Scalar types selected by working precision. Each real type is paired with
// the complex type used throughout the library.
template <typename Real>
struct scalar_traits;

template <>
struct scalar_traits<mp::float128>
{
    using complex_type = mp::complex128;
    static constexpr int digits10 = 33;
};

template <>
struct scalar_traits<mp::cpp_bin_float_50>
{
    using complex_type = mp::cpp_complex_50;
    static constexpr int digits10 = 50;
};

template <>
struct scalar_traits<mp::cpp_bin_float_100>
{
    using complex_type = mp::cpp_complex_100;
    static constexpr int digits10 = 100;
};

template <typename Real>
using complex_t = typename scalar_traits<Real>::complex_type;

/// Additive coordinate a of a multiplicative variable A = e(a).
///
/// Fractional powers such as A^{m/n} or q^{-nu} are exact scalings of the
/// additive coordinate, so no square-root branch ever has to be chosen.
template <typename Real>
using AdditiveArg = complex_t<Real>;

template <typename Real>
inline Real pi()
{
    return boost::math::constants::pi<Real>();
}

template <typename Real>
inline complex_t<Real> two_pi_i()
{
    return complex_t<Real>(Real(0), 2 * pi<Real>());
}

inline constexpr int min_working_digits = 15;
inline constexpr int max_working_digits = 100;

struct PrecisionConfig
{
    int working_digits = 30;
    double tail_tolerance = 1e-25;

    void validate() const
    {
        if (working_digits < min_working_digits)
            throw std::invalid_argument("working_digits must be at least 15, got " +
                                        std::to_string(working_digits));
        if (working_digits > max_working_digits)
            throw std::invalid_argument("working_digits above 100 are not supported, got " +
                                        std::to_string(working_digits));
        if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0))
            throw std::invalid_argument("tail_tolerance must lie in (0, 1)");
    }
};

/// The modular parameter tau, im(tau) > 0.
template <typename Real>
class ModularParam
{
public:
    using complex_type = complex_t<Real>;

    explicit ModularParam(complex_type tau) : tau_(std::move(tau))
    {
        if (!(imag(tau_) > 0))
            throw std::invalid_argument("modular parameter needs im(tau) > 0");
    }

    const complex_type &tau() const { return tau_; }

private:
    complex_type tau_;
};

/// e(x) = exp(2 pi i x).
template <typename Real>
complex_t<Real> e_of(const complex_t<Real> &x)
{
    using std::abs;
    static const Real limit = log(std::numeric_limits<Real>::max()) / 2;
    const Real growth = 2 * pi<Real>() * abs(Real(imag(x)));
    if (growth > limit)
        throw std::overflow_error("e(x): |im x| too large for the working precision");
    return exp(two_pi_i<Real>() * x);
}

template <typename Real>
complex_t<Real> e_of(const Real &x)
{
    return e_of<Real>(complex_t<Real>(x, Real(0)));
}

/// Smallest N >= 1 such that the dropped tails of the Jacobi product and the
/// theta sine series are both below tail_tolerance. Nondecreasing in q_abs.
inline int truncation_order(double q_abs, double tail_tolerance)
{
    if (!(q_abs < 1.0))
        throw std::invalid_argument("invalid modular parameter: |q| must be < 1");
    if (!(q_abs > 0.0))
        return 1;
    if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0))
        throw std::invalid_argument("tail_tolerance must lie in (0, 1)");
    // Product tail: |q|^N. Series tail, in |q0| = |q|^{1/2}: |q0|^{(N+1/2)^2},
    // which is always smaller once the product tail is.
    const double log_q = std::log(q_abs);
    int n = static_cast<int>(std::ceil(std::log(tail_tolerance) / log_q));
    if (n < 1)
        n = 1;
    while (n > 1 && (n - 1) * log_q < std::log(tail_tolerance))
        --n;
    while (n * log_q >= std::log(tail_tolerance))
        ++n;
    return n;
}

/// Parses "p/q", "p" or "-p/q" into an exact rational.
inline Rational parse_rational(const std::string &text)
{
    std::string s;
    for (char c : text)
        if (c != ' ')
            s += c;
    auto valid_int = [](const std::string &p) {
        std::size_t i = (!p.empty() && (p[0] == '-' || p[0] == '+')) ? 1 : 0;
        if (i == p.size())
            return false;
        for (; i < p.size(); ++i)
            if (p[i] < '0' || p[i] > '9')
                return false;
        return true;
    };
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("not a rational 'p/q': '" + text + "'");
    const mp::cpp_int d(den);
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(mp::cpp_int(num), d);
}

inline std::string format_rational(const Rational &r)
{
    std::ostringstream os;
    os << mp::numerator(r);
    if (mp::denominator(r) != 1)
        os << '/' << mp::denominator(r);
    return os.str();
}

/// Fractional part in [0, 1).
inline Rational frac(const Rational &r)
{
    mp::cpp_int q = mp::numerator(r) / mp::denominator(r);
    Rational f = r - Rational(q);
    if (f < 0)
        f += 1;
    return f;
}

template <typename Real>
Real to_real(const Rational &r)
{
    return Real(mp::numerator(r)) / Real(mp::denominator(r));
}

template <typename Real>
std::string to_decimal(const Real &x, int digits = scalar_traits<Real>::digits10 + 2)
{
    return x.str(digits, std::ios_base::scientific);
}

template <typename Real>
Real parse_real(const std::string &s)
{
    try {
        return Real(s);
    } catch (const std::exception &) {
        throw std::invalid_argument("not a decimal number: '" + s + "'");
    }
}

/// Parses "a", "bi", "a+bi", "a-bi" (also "i", "-i").
template <typename Real>
complex_t<Real> parse_complex(std::string s)
{
    std::string t;
    for (char c : s)
        if (c != ' ')
            t += c;
    if (t.empty())
        throw std::invalid_argument("empty complex literal");
    if (t.back() != 'i')
        return complex_t<Real>(parse_real<Real>(t), Real(0));
    t.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t i = t.size(); i-- > 1;) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto im_of = [](const std::string &part) {
        if (part.empty() || part == "+")
            return Real(1);
        if (part == "-")
            return Real(-1);
        return parse_real<Real>(part);
    };
    if (split == std::string::npos)
        return complex_t<Real>(Real(0), im_of(t));
    return complex_t<Real>(parse_real<Real>(t.substr(0, split)), im_of(t.substr(split)));
}

/// Relative error |l - r| / max(|l|, |r|, 1e-300).
template <typename C>
auto relative_error(const C &l, const C &r)
{
    using std::abs;
    auto scale = std::max(abs(l), abs(r));
    decltype(scale) floor(1e-300);
    return abs(l - r) / std::max(scale, floor);
}

/// Runs f with the smallest supported scalar type carrying working_digits.
/// f receives a std::type_identity<Real> tag.
template <typename F>
decltype(auto) with_scalar(int working_digits, F &&f)
{
    if (working_digits < min_working_digits || working_digits > max_working_digits)
        throw std::invalid_argument("working_digits must lie in [15, 100], got " +
                                    std::to_string(working_digits));
    if (working_digits <= scalar_traits<mp::float128>::digits10)
        return f(std::type_identity<mp::float128>{});
    if (working_digits <= 50)
        return f(std::type_identity<mp::cpp_bin_float_50>{});
    return f(std::type_identity<mp::cpp_bin_float_100>{});
}

} // namespace elliptica

#endif
