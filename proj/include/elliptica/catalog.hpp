#ifndef ELLIPTICA_CATALOG_HPP
#define ELLIPTICA_CATALOG_HPP

#include "elliptica/evaluator.hpp"
#include "elliptica/series.hpp"
#include "elliptica/verify.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace elliptica
{

// A_{n-1} theorem in four independent variables t1, t2, m1, m2
// (t_i = e(t_i), mu_i = e(m_i)).

/// Sum over the n charts of the minimal resolution.
inline Expression an_resolution_expression(int n)
{
    Expression e({"t1", "t2", "m1", "m2"});
    const auto t1 = e.var("t1"), t2 = e.var("t2"), m1 = e.var("m1"), m2 = e.var("m2");
    for (int k = 1; k <= n; ++k)
        e.add(1, {e.delta((n - k + 1) * t1 - (k - 1) * t2, k * m1 + (n - k) * m2),
                  e.delta(k * t2 - (n - k) * t1, (k - 1) * m1 + (n - k + 1) * m2)});
    return e;
}

/// Average over the n-torsion points (k - l tau)/n.
inline Expression an_orbifold_expression(int n)
{
    Expression e({"t1", "t2", "m1", "m2"});
    const auto t1 = e.var("t1"), t2 = e.var("t2"), m1 = e.var("m1"), m2 = e.var("m2");
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const LinearForm shift = e.constant(Rational(k, n)) + e.tau(Rational(-l, n));
            e.add(Rational(1, n), {e.exp(l * (m2 - m1)), e.delta(shift + t1, n * m1),
                                   e.delta(t2 - shift, n * m2)});
        }
    return e;
}

namespace detail
{

template <typename Real>
SideFunction<Real> expression_side(const Expression &e)
{
    auto compiled = std::make_shared<const CompiledExpression<Real>>(e);
    return [compiled](const ThetaContext<Real> &ctx, std::span<const complex_t<Real>> v) {
        return (*compiled)(ctx, v);
    };
}

inline std::vector<Variable> variables_of(const std::vector<std::string> &names)
{
    std::vector<Variable> out;
    for (const auto &n : names) {
        const bool torus = !n.empty() && (n[0] == 't' || n[0] == 'x' || n[0] == 'v');
        out.push_back({n, torus ? VariableRole::torus : VariableRole::dynamical});
    }
    return out;
}

inline std::optional<int>
delta_degree(const std::vector<std::pair<std::string, Expression>> &sides)
{
    std::optional<int> degree;
    for (const auto &side : sides)
        for (const auto &term : side.second.terms()) {
            int d = 0;
            for (const auto &f : term.factors) {
                if (f.kind == Factor::Kind::theta)
                    return std::nullopt;
                d += f.kind == Factor::Kind::delta;
            }
            if (degree && *degree != d)
                return std::nullopt;
            degree = d;
        }
    return degree;
}

template <typename Real>
Identity<Real> expression_identity(std::string id, std::string summary,
                                   const std::vector<std::pair<std::string, Expression>> &sides)
{
    Identity<Real> out;
    out.id = std::move(id);
    out.summary = std::move(summary);
    out.variables = variables_of(sides.front().second.variables());
    for (const auto &[name, e] : sides) {
        if (e.variables() != sides.front().second.variables())
            throw std::logic_error(out.id + ": sides use different variables");
        out.sides.push_back({name, expression_side<Real>(e)});
    }
    out.delta_degree = delta_degree(sides);
    return out;
}

template <typename Real>
TorusPoint<Real> torus_point(std::span<const complex_t<Real>> v, std::size_t rank)
{
    TorusPoint<Real> p;
    p.t.assign(v.begin(), v.begin() + rank);
    p.z = v[rank];
    return p;
}

inline std::vector<std::string> torus_names(int rank)
{
    std::vector<std::string> names;
    for (int i = 1; i <= rank; ++i)
        names.push_back("t" + std::to_string(i));
    names.push_back("z");
    return names;
}

template <typename Real>
Side<Real> resolution_side(std::string name, ResolutionModel model)
{
    auto m = std::make_shared<const ResolutionModel>(std::move(model));
    return {std::move(name), [m](const ThetaContext<Real> &ctx, std::span<const complex_t<Real>> v) {
                return localized_class_resolution(ctx, *m, torus_point<Real>(v, m->rank));
            }};
}

template <typename Real>
Side<Real> orbifold_side(std::string name, OrbifoldModel model, bool symplectic = false)
{
    auto m = std::make_shared<const OrbifoldModel>(std::move(model));
    return {std::move(name),
            [m, symplectic](const ThetaContext<Real> &ctx, std::span<const complex_t<Real>> v) {
                const auto p = torus_point<Real>(v, m->rank);
                return symplectic ? orbifold_class_symplectic(ctx, *m, p)
                                  : orbifold_class(ctx, *m, p);
            }};
}

template <typename Real>
Side<Real> resolution_expression_side(std::string name, const Expression &e)
{
    return {std::move(name), expression_side<Real>(e)};
}

// phi(c0 + c_tau tau) added to e with a coefficient, variables t, z
inline void add_phi(Expression &e, const Rational &coefficient, const Rational &c0,
                    const Rational &c_tau)
{
    auto term = phi_term(e, coefficient, c0, c_tau);
    e.add(term.coefficient, term.factors);
}

inline std::vector<std::string> indexed(const std::string &prefix, int from, int to)
{
    std::vector<std::string> names;
    for (int i = from; i <= to; ++i)
        names.push_back(prefix + std::to_string(i));
    return names;
}

inline std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string> &b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

template <typename Real>
void add_theta_layer(std::vector<Identity<Real>> &out)
{
    using C = complex_t<Real>;
    using V = std::span<const C>;
    auto one = [](std::string id, std::string summary, std::vector<std::string> vars,
                  SideFunction<Real> l, SideFunction<Real> r) {
        Identity<Real> i;
        i.id = std::move(id);
        i.summary = std::move(summary);
        i.variables = variables_of(vars);
        i.sides = {{"lhs", std::move(l)}, {"rhs", std::move(r)}};
        return i;
    };
    out.push_back(one(
        "theta.odd", "theta(-v) = -theta(v)", {"v"},
        [](const ThetaContext<Real> &c, V v) { return theta(c, C(-v[0])); },
        [](const ThetaContext<Real> &c, V v) { return C(-theta(c, v[0])); }));
    out.push_back(one(
        "theta.period", "theta(v + 1) = -theta(v)", {"v"},
        [](const ThetaContext<Real> &c, V v) { return theta(c, C(v[0] + C(1))); },
        [](const ThetaContext<Real> &c, V v) { return C(-theta(c, v[0])); }));
    out.push_back(one(
        "theta.quasiperiod", "theta(v + tau) = -e(-tau/2 - v) theta(v)", {"v"},
        [](const ThetaContext<Real> &c, V v) { return theta(c, C(v[0] + c.tau())); },
        [](const ThetaContext<Real> &c, V v) {
            return C(-e_of<Real>(C(-c.tau() / Real(2) - v[0])) * theta(c, v[0]));
        }));
    out.push_back(one(
        "theta.product", "sine series = Jacobi product", {"v"},
        [](const ThetaContext<Real> &c, V v) { return theta(c, v[0]); },
        [](const ThetaContext<Real> &c, V v) { return theta_product(c, v[0]); }));
    out.push_back(one(
        "delta.quasiperiod", "delta(a + tau, b) = e(-b) delta(a, b)", {"a", "b"},
        [](const ThetaContext<Real> &c, V v) { return delta(c, C(v[0] + c.tau()), v[1]); },
        [](const ThetaContext<Real> &c, V v) {
            return C(e_of<Real>(C(-v[1])) * delta(c, v[0], v[1]));
        }));
    out.push_back(one(
        "delta.period", "delta(a + 1, b) = delta(a, b)", {"a", "b"},
        [](const ThetaContext<Real> &c, V v) { return delta(c, C(v[0] + C(1)), v[1]); },
        [](const ThetaContext<Real> &c, V v) { return delta(c, v[0], v[1]); }));
    out.push_back(one(
        "delta.symmetric", "delta(a, b) = delta(b, a)", {"a", "b"},
        [](const ThetaContext<Real> &c, V v) { return delta(c, v[0], v[1]); },
        [](const ThetaContext<Real> &c, V v) { return delta(c, v[1], v[0]); }));
    out.push_back(one(
        "delta.inversion", "delta(-a, -b) = -delta(a, b)", {"a", "b"},
        [](const ThetaContext<Real> &c, V v) { return delta(c, C(-v[0]), C(-v[1])); },
        [](const ThetaContext<Real> &c, V v) { return C(-delta(c, v[0], v[1])); }));
    out.push_back(one(
        "phi.reflection", "Phi(1 + tau - lambda) = Phi(lambda)", {"l", "t", "z"},
        [](const ThetaContext<Real> &c, V v) {
            return phi(c, C(C(1) + c.tau() - v[0]), v[1], C(-v[2]));
        },
        [](const ThetaContext<Real> &c, V v) { return phi(c, v[0], v[1], C(-v[2])); }));
    out.push_back(one(
        "psi.inversion", "Psi(lambda)(t1, t2, h) = Psi(lambda)(1/t2, 1/t1, 1/h)",
        {"l", "t1", "t2", "z"},
        [](const ThetaContext<Real> &c, V v) { return psi(c, v[0], v[1], v[2], C(-v[3])); },
        [](const ThetaContext<Real> &c, V v) {
            return psi(c, v[0], C(-v[2]), C(-v[1]), v[3]);
        }));
}

template <typename Real>
void add_fay(std::vector<Identity<Real>> &out)
{
    for (int n = 2; n <= 5; ++n) {
        Expression lhs(concat(indexed("t", 1, n), indexed("m", 1, n)));
        Expression rhs(lhs.variables());
        std::vector<Factor> prod;
        LinearForm total = lhs.zero();
        for (int i = 1; i <= n; ++i) {
            const auto ti = lhs.var("t" + std::to_string(i));
            const auto mi = lhs.var("m" + std::to_string(i));
            prod.push_back(lhs.delta(ti, mi));
            total += mi;
        }
        lhs.add(1, prod);
        for (int i = 1; i <= n; ++i) {
            const auto ti = rhs.var("t" + std::to_string(i));
            std::vector<Factor> f{rhs.delta(ti, total)};
            for (int j = 1; j <= n; ++j)
                if (j != i)
                    f.push_back(rhs.delta(rhs.var("t" + std::to_string(j)) - ti,
                                          rhs.var("m" + std::to_string(j))));
            rhs.add(1, f);
        }
        out.push_back(expression_identity<Real>(
            "fay.n" + std::to_string(n), "blowup of C^n: product = sum over n charts",
            {{"product", lhs}, {"blowup", rhs}}));
    }
    for (int n = 2; n <= 5; ++n) {
        const auto names = concat(indexed("x", 0, n), indexed("s", 0, n));
        Expression lhs(names), rhs(names);
        auto term = [&](Expression &e, int i) {
            std::vector<Factor> f;
            for (int j = 0; j <= n; ++j) {
                if (j == i)
                    continue;
                const int prev = j == 0 ? n : j - 1;
                f.push_back(e.delta(e.var("x" + std::to_string(j)) - e.var("x" + std::to_string(i)),
                                    e.var("s" + std::to_string(j)) -
                                        e.var("s" + std::to_string(prev))));
            }
            return f;
        };
        lhs.add(-1, term(lhs, 0));
        for (int i = 1; i <= n; ++i)
            rhs.add(1, term(rhs, i));
        out.push_back(expression_identity<Real>(
            "fay.symmetric.n" + std::to_string(n),
            "symmetric Fay sum vanishes; the i = 0 summand moved to the left",
            {{"minus_term_0", lhs}, {"terms_1_to_n", rhs}}));
    }
    {
        Expression lhs({"a", "b", "c", "d"}), rhs(lhs.variables());
        const auto a = lhs.var("a"), b = lhs.var("b"), c = lhs.var("c"), d = lhs.var("d");
        lhs.add(1, {lhs.theta(a + c), lhs.theta(a - c), lhs.theta(b + d), lhs.theta(b - d)});
        rhs.add(1, {rhs.theta(a + b), rhs.theta(a - b), rhs.theta(c + d), rhs.theta(c - d)});
        rhs.add(1, {rhs.theta(a + d), rhs.theta(a - d), rhs.theta(b + c), rhs.theta(b - c)});
        out.push_back(expression_identity<Real>("trisecant.additive",
                                                "Fay trisecant identity in theta",
                                                {{"lhs", lhs}, {"rhs", rhs}}));
    }
    {
        Expression l({"t1", "t2", "t3", "m1", "m2", "m3", "z"}), r(l.variables());
        const auto t1 = l.var("t1"), t2 = l.var("t2"), t3 = l.var("t3");
        const auto m1 = l.var("m1"), m2 = l.var("m2"), m3 = l.var("m3");
        const auto h = -l.var("z");
        l.add(1, {l.delta(t2 - t1, m3 - m2), l.delta(t3 - t2, m3 - m1), l.delta(t2 - t1, m2 - m1)});
        l.add(1, {l.delta(t1 - t2, h), l.delta(t3 - t1, m3 - m1), l.delta(t2 - t1, h)});
        r.add(1, {r.delta(t3 - t2, m2 - m1), r.delta(t2 - t1, m3 - m1), r.delta(t3 - t2, m3 - m2)});
        r.add(1, {r.delta(t2 - t3, h), r.delta(t3 - t1, m3 - m1), r.delta(t3 - t2, h)});
        out.push_back(expression_identity<Real>("braid.sl3", "s1 s2 s1 = s2 s1 s2 for SL_3",
                                                {{"s1s2s1", l}, {"s2s1s2", r}}));
    }
}

template <typename Real>
void add_a_n(std::vector<Identity<Real>> &out)
{
    for (int n = 1; n <= 6; ++n) {
        const std::string sn = "n" + std::to_string(n);
        out.push_back(expression_identity<Real>(
            "an.mckay." + sn, "A_{n-1}: resolution charts = torsion-point average, free mu",
            {{"resolution", an_resolution_expression(n)},
             {"orbifold", an_orbifold_expression(n)}}));
    }
    for (int n = 1; n <= 6; ++n) {
        const std::string sn = "n" + std::to_string(n);
        Expression l({"x", "z"}), r(l.variables());
        const auto x = l.var("x"), h = -l.var("z");
        l.add(n, {l.delta(n * x, h), l.delta(-n * x, h)});
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) {
                const auto s = r.constant(Rational(k, n)) + r.tau(Rational(-j, n));
                r.add(Rational(1, n), {r.delta(s + x, h), r.delta(-s - x, h)});
            }
        out.push_back(expression_identity<Real>("an.simplified." + sn,
                                                "A_{n-1} at t1 = 1/t2, mu1 = mu2",
                                                {{"lhs", l}, {"rhs", r}}));
    }
    for (int n = 1; n <= 6; ++n) {
        const std::string sn = "n" + std::to_string(n);
        const Expression a = an_resolution_expression(n);
        const auto &names = a.variables();
        // t1 <-> mu1, t2 <-> 1/mu2
        Expression swapped =
            a.substitute(names, {a.var("m1"), -a.var("m2"), a.var("t1"), -a.var("t2")});
        Expression negated(names);
        negated.append(a, Rational(-1));
        out.push_back(expression_identity<Real>("an.selfdual." + sn,
                                                "A_n(mu1, 1/mu2, t1, 1/t2) = -A_n(t1, t2, mu1, mu2)",
                                                {{"swapped", swapped}, {"minus_original", negated}}));
    }
    for (int n = 1; n <= 6; ++n) {
        const std::string sn = "n" + std::to_string(n);
        Expression l({"t1", "t2", "m1", "m2"});
        l.append(an_orbifold_expression(n), Rational(n));
        Expression r(l.variables());
        const auto t1 = r.var("t1"), t2 = r.var("t2"), m1 = r.var("m1"), m2 = r.var("m2");
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) {
                const auto s = r.constant(Rational(k, n)) + r.tau(Rational(-j, n));
                r.add(-1, {r.exp(-j * (t1 + t2)), r.delta(s + m1, n * t1),
                           r.delta(-s - m2, -n * t2)});
            }
        out.push_back(expression_identity<Real>("an.corollary." + sn,
                                                "torsion sums with t and mu exchanged",
                                                {{"lhs", l}, {"rhs", r}}));
    }
    const Rational a1(1, 3), a2(-1, 2);
    for (int n = 1; n <= 6; ++n) {
        Identity<Real> id;
        id.id = "an.models.n" + std::to_string(n);
        id.summary = "A_{n-1} with divisor (1/3) D1 - (1/2) D2: resolution = orbifold = symplectic path";
        id.variables = variables_of(torus_names(2));
        id.sides = {resolution_side<Real>("resolution", a_n_resolution(n, a1, a2)),
                    orbifold_side<Real>("orbifold", a_n_orbifold(n, a1, a2)),
                    orbifold_side<Real>("symplectic", a_n_orbifold(n, a1, a2), true)};
        out.push_back(std::move(id));
    }
}

template <typename Real>
void add_d4_lehn_sorger(std::vector<Identity<Real>> &out)
{
    {
        const auto p = d4();
        Expression s({"t", "z"});
        const Rational e(1, 8), q(1, 4), h(1, 2);
        // S_1
        add_phi(s, e, 0, 0);
        add_phi(s, e, -h, 0);
        add_phi(s, 6 * e, -q, 0);
        // S_{-1}
        add_phi(s, e, 0, -h);
        add_phi(s, e, h, -h);
        add_phi(s, 6 * e, q, -h);
        // 6 S_i
        for (const Rational &c0 : {Rational(0), q, h, 3 * q})
            add_phi(s, 6 * e, c0, -q);
        Identity<Real> id;
        id.id = "d4.mckay";
        id.summary = "D4: 3 delta(t^-2) delta(t^4) + fixed P^1 = (1/8)(S_1 + S_-1 + 6 S_i)";
        id.variables = variables_of(torus_names(1));
        id.variables[0].name = "t";
        id.sides = {resolution_expression_side<Real>("resolution", p.resolution),
                    orbifold_side<Real>("orbifold", p.orbifold),
                    orbifold_side<Real>("symplectic", p.orbifold, true),
                    resolution_expression_side<Real>("s_sums", s)};
        out.push_back(std::move(id));
    }
    {
        Expression l({"t", "z"}), r(l.variables());
        const auto t = l.var("t"), h = -l.var("z");
        l.add(1, {l.delta(-2 * t, h), l.delta(4 * t, h)});
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j)
                add_phi(r, Rational(((k + 1) * (j + 1)) % 2 ? -1 : 1, 8), Rational(k, 4),
                        Rational(-j, 4));
        out.push_back(expression_identity<Real>("d4.remarkable",
                                                "delta(t^-2) delta(t^4) as a signed 4x4 Phi sum",
                                                {{"lhs", l}, {"rhs", r}}));
    }
    {
        const Expression f = lehn_sorger_f();
        const Expression g =
            f.substitute(f.variables(), {f.var("t2"), f.var("t1"), f.var("z")});
        out.push_back(expression_identity<Real>("lehnsorger.fsym", "F(t1, t2) = F(t2, t1)",
                                                {{"F(t1,t2)", f}, {"F(t2,t1)", g}}));
    }
    {
        const auto p = lehn_sorger();
        Identity<Real> id;
        id.id = "lehnsorger.mckay";
        id.summary = "(W + W*)/G: F0(t1,t2) + F0(t2,t1) + F(t1,t2) = orbifold table";
        id.variables = variables_of(torus_names(2));
        id.sides = {resolution_expression_side<Real>("resolution", p.resolution),
                    orbifold_side<Real>("orbifold", p.orbifold),
                    orbifold_side<Real>("symplectic", p.orbifold, true)};
        out.push_back(std::move(id));

        auto m = std::make_shared<const OrbifoldModel>(p.orbifold);
        using C = complex_t<Real>;
        Identity<Real> sym;
        sym.id = "lehnsorger.wwstar.symmetry";
        sym.summary = "orbifold class at (t1, t2, h) = at (1/t2, 1/t1, 1/h)";
        sym.variables = variables_of(torus_names(2));
        sym.sides = {{"original", [m](const ThetaContext<Real> &ctx, std::span<const C> v) {
                          return orbifold_class(ctx, *m, TorusPoint<Real>{{v[0], v[1]}, v[2]});
                      }},
                     {"dual", [m](const ThetaContext<Real> &ctx, std::span<const C> v) {
                          return orbifold_class(ctx, *m,
                                                TorusPoint<Real>{{C(-v[1]), C(-v[0])}, C(-v[2])});
                      }}};
        out.push_back(std::move(sym));
    }
}

template <typename Real>
void add_diagonal(std::vector<Identity<Real>> &out)
{
    for (int m = 1; m <= 3; ++m)
        for (int n = 2; n <= 3; ++n) {
            const auto d = diagonal_quotient(m, n);
            Identity<Real> id;
            id.id = "diag.mckay.m" + std::to_string(m) + ".n" + std::to_string(n);
            id.summary = "C^m/Z_n: localization on O(-n) over P^{m-1} = orbifold sum";
            id.variables = variables_of(torus_names(m));
            id.sides = {resolution_side<Real>("resolution", d.resolution),
                        orbifold_side<Real>("orbifold", d.orbifold)};
            out.push_back(std::move(id));
        }
}

template <typename Real>
void add_limits(std::vector<Identity<Real>> &out)
{
    using C = complex_t<Real>;
    using V = std::span<const C>;
    const std::vector<std::vector<Rational>> hz_points = {
        {Rational(2), Rational(3), Rational(1, 2)},
        {Rational(-3, 2), Rational(5, 7), Rational(3)},
        {Rational(1, 3), Rational(-4), Rational(-2, 5)},
        {Rational(7, 5), Rational(2, 3), Rational(11, 4)},
        {Rational(-5), Rational(-1, 2), Rational(1, 7)}};
    for (int n = 1; n <= 6; ++n) {
        Identity<Real> id;
        id.id = "limit.hirzebruch.n" + std::to_string(n);
        id.summary = "q -> 0: (*) = (**) = (***) with t_i = e(x_i), y = e(w)";
        id.variables = variables_of({"x1", "x2", "w"});
        auto form = [n](int which) {
            return [n, which](const ThetaContext<Real> &, V v) {
                const auto f = hirzebruch_limit_forms<Real>(n, e_of<Real>(v[0]), e_of<Real>(v[1]),
                                                            e_of<Real>(v[2]));
                return which == 0 ? f.star : which == 1 ? f.double_star : f.triple_star;
            };
        };
        id.sides = {{"(*)", form(0)}, {"(**)", form(1)}, {"(***)", form(2)}};
        id.exact = [n](const std::vector<Rational> &p) {
            const auto f = hirzebruch_limit_forms_exact(n, p[0], p[1], p[2]);
            return std::vector<Cyclotomic>{f.star, f.double_star, f.triple_star};
        };
        id.exact_points = hz_points;
        out.push_back(std::move(id));
    }
    const std::vector<std::vector<Rational>> trig_points = {
        {Rational(1, 2), Rational(0)},
        {Rational(1, 3), Rational(2, 5)},
        {Rational(-3, 4), Rational(5)},
        {Rational(2), Rational(-1, 3)},
        {Rational(5, 3), Rational(7, 2)}};
    for (int n = 1; n <= 6; ++n) {
        Identity<Real> id;
        id.id = "limit.trig.n" + std::to_string(n);
        id.summary = "t1 = t2 = 1/T: cosine average = closed form, T = e(x), y = e(w)";
        id.variables = variables_of({"x", "w"});
        auto side = [n](bool right) {
            return [n, right](const ThetaContext<Real> &, V v) {
                const auto f = trig_forms<Real>(n, e_of<Real>(v[0]), e_of<Real>(v[1]));
                return right ? f.second : f.first;
            };
        };
        id.sides = {{"average", side(false)}, {"closed", side(true)}};
        id.exact = [n](const std::vector<Rational> &p) {
            const auto f = trig_forms_exact(n, p[0], p[1]);
            return std::vector<Cyclotomic>{f.first, f.second};
        };
        id.exact_points = trig_points;
        out.push_back(std::move(id));
    }
    for (int n = 1; n <= 6; ++n) {
        Identity<Real> id;
        id.id = "limit.trig.y0.n" + std::to_string(n);
        id.summary = "y = 0 trigonometric identity, T = e(x)";
        id.variables = variables_of({"x"});
        auto side = [n](bool right) {
            return [n, right](const ThetaContext<Real> &, V v) {
                const auto f = trig_forms<Real>(n, e_of<Real>(v[0]), C(0));
                return right ? f.second : f.first;
            };
        };
        id.sides = {{"average", side(false)}, {"closed", side(true)}};
        id.exact = [n](const std::vector<Rational> &p) {
            const auto f = trig_forms_exact(n, p[0], Rational(0));
            return std::vector<Cyclotomic>{f.first, f.second};
        };
        for (const auto &p : trig_points)
            id.exact_points.push_back({p[0]});
        out.push_back(std::move(id));
    }
}

template <typename Real>
void add_series(std::vector<Identity<Real>> &out)
{
    using C = complex_t<Real>;
    using V = std::span<const C>;
    {
        Identity<Real> id;
        id.id = "ell.p1";
        id.summary = "Ell(P^1): constant term of the pole-cancelling sum = closed form";
        id.variables = variables_of({"h"});
        id.sides = {{"series", [](const ThetaContext<Real> &c, V v) { return ell_genus_p1(c, v[0]); }},
                    {"closed", [](const ThetaContext<Real> &c, V v) {
                         return ell_genus_p1_closed_form(c, v[0]);
                     }}};
        out.push_back(std::move(id));
    }
    for (int n = 2; n <= 5; ++n) {
        Identity<Real> id;
        id.id = "cy.residue.n" + std::to_string(n);
        id.summary = "coefficient of x^{n-1} = residue at u = 1";
        id.variables = variables_of({"t", "h"});
        id.sides = {{"coefficient", [n](const ThetaContext<Real> &c, V v) {
                         return cy_residue_check(c, n, v[0], v[1]).first;
                     }},
                    {"residue", [n](const ThetaContext<Real> &c, V v) {
                         return cy_residue_check(c, n, v[0], v[1]).second;
                     }}};
        out.push_back(std::move(id));
    }
    // n = 3 is omitted: both routes vanish identically there.
    for (int n : {2, 4, 5, 6}) {
        Identity<Real> id;
        id.id = "cy.chain.n" + std::to_string(n);
        id.summary = "t^n = 1/h specialization: direct = (theta'/theta)^2 times the CY integrand";
        id.variables = variables_of({"h"});
        id.sides = {{"direct", [n](const ThetaContext<Real> &c, V v) {
                         return cy_specialization_check(c, n, v[0]).first;
                     }},
                    {"chain", [n](const ThetaContext<Real> &c, V v) {
                         return cy_specialization_check(c, n, v[0]).second;
                     }}};
        out.push_back(std::move(id));
    }
}

} // namespace detail

/// Every built-in identity.
template <typename Real>
std::vector<Identity<Real>> catalog()
{
    std::vector<Identity<Real>> out;
    detail::add_theta_layer(out);
    detail::add_fay(out);
    detail::add_a_n(out);
    detail::add_d4_lehn_sorger(out);
    detail::add_diagonal(out);
    detail::add_limits(out);
    detail::add_series(out);
    return out;
}

/// Entries whose id equals `pattern` or starts with `pattern + "."`.
template <typename Real>
std::vector<const Identity<Real> *> select(const std::vector<Identity<Real>> &all,
                                           const std::string &pattern)
{
    std::vector<const Identity<Real> *> out;
    for (const auto &i : all)
        if (i.id == pattern || i.id.rfind(pattern + ".", 0) == 0)
            out.push_back(&i);
    return out;
}

/// McKay check for two user models of the same rank.
template <typename Real>
Identity<Real> model_identity(const std::string &id, const AnyModel &lhs, const AnyModel &rhs)
{
    auto rank = [](const AnyModel &m) {
        return std::visit([](const auto &x) { return x.rank; }, m);
    };
    if (rank(lhs) != rank(rhs))
        throw std::invalid_argument("models have different torus ranks");
    auto side = [](std::string name, const AnyModel &m) {
        if (const auto *r = std::get_if<ResolutionModel>(&m))
            return detail::resolution_side<Real>(std::move(name), *r);
        return detail::orbifold_side<Real>(std::move(name), std::get<OrbifoldModel>(m));
    };
    Identity<Real> out;
    out.id = id;
    out.summary = "user models";
    out.variables = detail::variables_of(detail::torus_names(rank(lhs)));
    out.sides = {side("lhs", lhs), side("rhs", rhs)};
    return out;
}

} // namespace elliptica

#endif
