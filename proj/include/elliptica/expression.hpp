#ifndef ELLIPTICA_EXPRESSION_HPP
#define ELLIPTICA_EXPRESSION_HPP

#include "elliptica/theta.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace elliptica
{

/// c_0 + c_tau tau + sum_i c_i v_i over the variables of an expression.
class LinearForm
{
public:
    LinearForm() = default;
    explicit LinearForm(std::size_t variables) : coeffs_(variables) {}

    static LinearForm variable(std::size_t index, std::size_t variables)
    {
        LinearForm f(variables);
        f.coeffs_.at(index) = 1;
        return f;
    }

    static LinearForm tau_multiple(const Rational &r, std::size_t variables)
    {
        LinearForm f(variables);
        f.tau_ = r;
        return f;
    }

    static LinearForm constant(const Rational &r, std::size_t variables)
    {
        LinearForm f(variables);
        f.constant_ = r;
        return f;
    }

    std::size_t size() const { return coeffs_.size(); }
    const std::vector<Rational> &coefficients() const { return coeffs_; }
    const Rational &tau_coefficient() const { return tau_; }
    const Rational &constant_term() const { return constant_; }
    void add_constant(const Rational &r) { constant_ += r; }

    LinearForm &operator+=(const LinearForm &o)
    {
        check(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            coeffs_[i] += o.coeffs_[i];
        tau_ += o.tau_;
        constant_ += o.constant_;
        return *this;
    }

    LinearForm &operator*=(const Rational &r)
    {
        for (auto &c : coeffs_)
            c *= r;
        tau_ *= r;
        constant_ *= r;
        return *this;
    }

    friend LinearForm operator+(LinearForm a, const LinearForm &b) { return a += b; }
    friend LinearForm operator-(LinearForm a, LinearForm b) { return a += (b *= Rational(-1)); }
    friend LinearForm operator-(LinearForm a) { return a *= Rational(-1); }
    friend LinearForm operator*(const Rational &r, LinearForm a) { return a *= r; }
    friend LinearForm operator*(long long r, LinearForm a) { return a *= Rational(r); }

    friend LinearForm operator+(LinearForm a, const Rational &c)
    {
        a.constant_ += c;
        return a;
    }
    friend LinearForm operator-(LinearForm a, const Rational &c)
    {
        a.constant_ -= c;
        return a;
    }

    friend bool operator==(const LinearForm &, const LinearForm &) = default;

private:
    void check(const LinearForm &o) const
    {
        if (o.coeffs_.size() != coeffs_.size())
            throw std::invalid_argument("linear forms over different variable sets");
    }

    std::vector<Rational> coeffs_;
    Rational tau_{0};
    Rational constant_{0};
};

/// One multiplicative factor of a term.
struct Factor
{
    enum class Kind
    {
        delta, // delta(e(first), e(second))
        theta, // theta(first)
        exp    // e(first)
    };
    Kind kind = Kind::delta;
    LinearForm first;
    LinearForm second;

    friend bool operator==(const Factor &, const Factor &) = default;
};

struct Term
{
    Rational coefficient{1};
    std::vector<Factor> factors;
};

/// A finite sum of rational multiples of products of delta, theta and e(.)
/// factors, each taking affine-linear arguments in the named variables and tau.
class Expression
{
public:
    Expression() = default;
    explicit Expression(std::vector<std::string> variables) : variables_(std::move(variables)) {}

    const std::vector<std::string> &variables() const { return variables_; }
    const std::vector<Term> &terms() const { return terms_; }
    std::vector<Term> &terms() { return terms_; }

    LinearForm var(const std::string &name) const
    {
        for (std::size_t i = 0; i < variables_.size(); ++i)
            if (variables_[i] == name)
                return LinearForm::variable(i, variables_.size());
        throw std::invalid_argument("unknown variable '" + name + "'");
    }
    LinearForm tau(const Rational &r = Rational(1)) const
    {
        return LinearForm::tau_multiple(r, variables_.size());
    }
    LinearForm constant(const Rational &r) const
    {
        return LinearForm::constant(r, variables_.size());
    }
    LinearForm zero() const { return LinearForm(variables_.size()); }

    Factor delta(LinearForm a, LinearForm b) const
    {
        return {Factor::Kind::delta, std::move(a), std::move(b)};
    }
    Factor theta(LinearForm a) const { return {Factor::Kind::theta, std::move(a), zero()}; }
    Factor exp(LinearForm a) const { return {Factor::Kind::exp, std::move(a), zero()}; }

    Expression &add(Rational coefficient, std::vector<Factor> factors)
    {
        for (const auto &f : factors)
            if (f.first.size() != variables_.size() || f.second.size() != variables_.size())
                throw std::invalid_argument("factor built over a different variable set");
        terms_.push_back({std::move(coefficient), std::move(factors)});
        return *this;
    }

    Expression &append(const Expression &other, const Rational &scale = Rational(1))
    {
        if (other.variables_ != variables_)
            throw std::invalid_argument("cannot add expressions over different variables");
        for (auto t : other.terms_) {
            t.coefficient *= scale;
            terms_.push_back(std::move(t));
        }
        return *this;
    }

    /// Copy with every variable replaced by a linear form in a new variable set.
    Expression substitute(std::vector<std::string> new_variables,
                          const std::vector<LinearForm> &images) const
    {
        if (images.size() != variables_.size())
            throw std::invalid_argument("substitution needs one image per variable");
        Expression out(std::move(new_variables));
        auto map = [&](const LinearForm &f) {
            LinearForm g = out.zero();
            for (std::size_t i = 0; i < f.size(); ++i)
                if (f.coefficients()[i] != 0)
                    g += f.coefficients()[i] * images[i];
            g += out.tau(f.tau_coefficient());
            g += out.constant(f.constant_term());
            return g;
        };
        for (const auto &t : terms_) {
            Term nt{t.coefficient, {}};
            for (const auto &f : t.factors)
                nt.factors.push_back({f.kind, map(f.first), map(f.second)});
            out.terms_.push_back(std::move(nt));
        }
        return out;
    }

    /// Adds `shift` to the first argument of one factor.
    Expression perturbed(std::size_t term, std::size_t factor, const Rational &shift) const
    {
        Expression copy = *this;
        copy.terms_.at(term).factors.at(factor).first.add_constant(shift);
        return copy;
    }

private:
    std::vector<std::string> variables_;
    std::vector<Term> terms_;
};

/// Expression with coefficients converted once to the working scalar type.
template <typename Real>
class CompiledExpression
{
public:
    using complex_type = complex_t<Real>;

    CompiledExpression() = default;
    explicit CompiledExpression(const Expression &e) : variables_(e.variables().size())
    {
        for (const auto &t : e.terms()) {
            CTerm ct{to_real<Real>(t.coefficient), {}};
            for (const auto &f : t.factors)
                ct.factors.push_back({f.kind, compile(f.first), compile(f.second)});
            terms_.push_back(std::move(ct));
        }
    }

    std::size_t variable_count() const { return variables_; }

    complex_type operator()(const ThetaContext<Real> &ctx,
                            std::span<const complex_type> values) const
    {
        if (values.size() != variables_)
            throw std::invalid_argument("expression evaluated with the wrong number of variables");
        complex_type sum(0);
        for (const auto &t : terms_) {
            complex_type prod(t.coefficient, Real(0));
            for (const auto &f : t.factors) {
                switch (f.kind) {
                case Factor::Kind::delta:
                    prod *= elliptica::delta(ctx, f.first.eval(ctx, values),
                                             f.second.eval(ctx, values));
                    break;
                case Factor::Kind::theta:
                    prod *= elliptica::theta(ctx, f.first.eval(ctx, values));
                    break;
                case Factor::Kind::exp:
                    prod *= e_of<Real>(f.first.eval(ctx, values));
                    break;
                }
            }
            sum += prod;
        }
        return sum;
    }

private:
    struct CForm
    {
        std::vector<std::pair<std::size_t, Real>> coeffs;
        Real tau;
        Real constant;

        complex_type eval(const ThetaContext<Real> &ctx, std::span<const complex_type> v) const
        {
            complex_type x(constant, Real(0));
            if (tau != 0)
                x += ctx.tau() * tau;
            for (const auto &[i, c] : coeffs)
                x += v[i] * c;
            return x;
        }
    };
    struct CFactor
    {
        Factor::Kind kind;
        CForm first;
        CForm second;
    };
    struct CTerm
    {
        Real coefficient;
        std::vector<CFactor> factors;
    };

    static CForm compile(const LinearForm &f)
    {
        CForm c{{}, to_real<Real>(f.tau_coefficient()), to_real<Real>(f.constant_term())};
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f.coefficients()[i] != 0)
                c.coeffs.emplace_back(i, to_real<Real>(f.coefficients()[i]));
        return c;
    }

    std::size_t variables_ = 0;
    std::vector<CTerm> terms_;
};

} // namespace elliptica

#endif
