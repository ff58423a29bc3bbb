// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include "elliptica/catalog.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace
{

using namespace elliptica;
using Real = boost::multiprecision::float128;
using C = complex_t<Real>;

constexpr int digits = 30;

struct Outcome
{
    bool pass = true;
    std::string detail;

    void fail(const std::string &why)
    {
        pass = false;
        if (!detail.empty())
            detail += "; ";
        detail += why;
    }
};

const std::vector<Identity<Real>> &all_identities()
{
    static const auto all = catalog<Real>();
    return all;
}

const Identity<Real> &identity(const std::string &id)
{
    for (const auto &i : all_identities())
        if (i.id == id)
            return i;
    throw std::invalid_argument("missing catalog entry " + id);
}

SampleConfig config(int samples, double tol)
{
    SampleConfig cfg;
    cfg.samples = samples;
    cfg.tolerance = tol;
    cfg.precision = precision_for_digits(digits);
    return cfg;
}

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

// Runs every id; records the worst relative error.
void run_ids(Outcome &out, const std::vector<std::string> &ids, int samples, double tol)
{
    double worst = 0;
    for (const auto &id : ids) {
        const auto r = verify(identity(id), config(samples, tol));
        worst = std::max(worst, r.max_rel_err);
        if (!r.pass)
            out.fail(id + " max_rel_err " + sci(r.max_rel_err) +
                     (r.exact_detail.empty() ? "" : " (" + r.exact_detail + ")"));
    }
    if (out.pass)
        out.detail = std::to_string(ids.size()) + " identities, worst " + sci(worst);
}

std::vector<std::string> numbered(const std::string &prefix, int from, int to)
{
    std::vector<std::string> v;
    for (int i = from; i <= to; ++i)
        v.push_back(prefix + std::to_string(i));
    return v;
}

void append(std::vector<std::string> &a, const std::vector<std::string> &b)
{
    a.insert(a.end(), b.begin(), b.end());
}

void time_limit(Outcome &out, double ms, double limit_s)
{
    if (ms > limit_s * 1000)
        out.fail("took " + sci(ms / 1000) + " s, limit " + sci(limit_s) + " s");
}

Outcome criterion1()
{
    Outcome o;
    run_ids(o, {"theta.odd", "theta.period", "theta.quasiperiod", "theta.product"}, 100, 1e-12);
    return o;
}

Outcome criterion2()
{
    Outcome o;
    ThetaContext<Real> ctx(ModularParam<Real>(C(Real("0.17"), Real("1.3"))),
                           precision_for_digits(digits), 1e-30);
    const C h(Real("0.23"), Real("0.07"));
    // delta(e^x, h) with e^x = e(a): a = x / (2 pi i)
    double prev_ratio = -1;
    std::ostringstream msg;
    for (double x : {1e-4, 1e-6, 1e-8}) {
        const C a = C(Real(x)) / two_pi_i<Real>();
        const double err = static_cast<double>(abs(C(Real(x)) * delta(ctx, a, h) - C(1)));
        const double ratio = err / x;
        msg << "x=" << sci(x) << " err=" << sci(err) << ' ';
        if (!(ratio < 10))
            o.fail("x delta - 1 not O(x) at x = " + sci(x));
        if (prev_ratio > 0 && std::abs(ratio - prev_ratio) > 0.01 * prev_ratio)
            o.fail("err/x not stable at x = " + sci(x));
        prev_ratio = ratio;
    }
    Outcome ell;
    run_ids(ell, {"ell.p1"}, 32, 1e-9);
    if (!ell.pass)
        o.fail(ell.detail);
    if (o.pass)
        o.detail = msg.str() + "| ell.p1 " + ell.detail;
    return o;
}

Outcome criterion3()
{
    Outcome o;
    std::vector<std::string> ids = numbered("fay.n", 2, 5);
    append(ids, numbered("fay.symmetric.n", 2, 5));
    ids.push_back("trisecant.additive");
    run_ids(o, ids, 32, 1e-9);
    return o;
}

Outcome criterion4()
{
    Outcome o;
    run_ids(o, {"braid.sl3"}, 32, 1e-9);
    return o;
}

Outcome criterion5()
{
    Outcome o;
    std::vector<std::string> ids = numbered("an.mckay.n", 1, 6);
    append(ids, numbered("an.simplified.n", 1, 6));
    append(ids, numbered("an.selfdual.n", 1, 6));
    run_ids(o, ids, 32, 1e-9);
    return o;
}

Outcome criterion6()
{
    Outcome o;
    run_ids(o, {"d4.mckay", "d4.remarkable"}, 32, 1e-9);
    return o;
}

Outcome criterion7()
{
    Outcome o;
    run_ids(o, {"lehnsorger.fsym", "lehnsorger.mckay", "lehnsorger.wwstar.symmetry"}, 16, 1e-8);
    return o;
}

Outcome criterion8()
{
    Outcome o;
    run_ids(o, {"diag.mckay.m1.n2", "diag.mckay.m2.n2", "diag.mckay.m2.n3", "diag.mckay.m3.n3"},
            16, 1e-9);
    return o;
}

Outcome criterion9()
{
    Outcome o;
    std::vector<std::string> ids = numbered("limit.hirzebruch.n", 1, 6);
    append(ids, numbered("limit.trig.n", 1, 6));
    append(ids, numbered("limit.trig.y0.n", 1, 6));
    run_ids(o, ids, 32, 1e-12);
    const std::string numeric = o.detail;

    const auto pinned = trig_forms_exact(2, Rational(1, 2), Rational(0));
    if (!(pinned.first == pinned.second && pinned.first.is_rational() &&
          pinned.first.rational_value() == Rational(20, 9)))
        o.fail("y = 0 trig identity at (n, T) = (2, 1/2) is not 20/9 on both sides");

    // |q| = 1e-6: tau = i log(1e6) / (2 pi)
    const Real im_tau = log(Real(1e6)) / (2 * pi<Real>());
    ThetaContext<Real> ctx(ModularParam<Real>(C(Real("0.1"), im_tau)),
                           precision_for_digits(digits));
    const C x1(Real("0.13"), Real("0.02")), x2(Real("-0.21"), Real("0.05")),
        z(Real("0.17"), Real("-0.03"));
    double worst = 0;
    for (int n = 1; n <= 6; ++n) {
        const C value = localized_class_resolution(ctx, a_n_resolution(n), {{x1, x2}, z}) *
                        unreduced_factor(ctx, z, 2);
        const C orbifold = orbifold_class(ctx, a_n_orbifold(n), {{x1, x2}, z}) *
                           unreduced_factor(ctx, z, 2);
        const auto forms =
            hirzebruch_limit_forms<Real>(n, e_of<Real>(x1), e_of<Real>(x2), e_of<Real>(z));
        for (const C &limit : {forms.star, forms.double_star, forms.triple_star}) {
            worst = std::max(worst, static_cast<double>(relative_error(value, limit)));
            worst = std::max(worst, static_cast<double>(relative_error(orbifold, limit)));
        }
    }
    if (!(worst < 1e-4))
        o.fail("|q| = 1e-6 class vs q = 0 form: rel err " + sci(worst));
    if (o.pass)
        o.detail = numeric + ", exact 20/9 ok, |q|=1e-6 convergence " + sci(worst);
    return o;
}

Outcome criterion10()
{
    Outcome o;
    std::vector<std::string> ids = numbered("cy.residue.n", 2, 5);
    for (int n : {2, 4, 5, 6})
        ids.push_back("cy.chain.n" + std::to_string(n));
    run_ids(o, ids, 32, 1e-8);
    return o;
}

Outcome criterion11()
{
    Outcome o;
    const Expression res = an_resolution_expression(3);
    const Expression orb = an_orbifold_expression(3);
    const SampleConfig cfg = config(32, 1e-9);
    const Rational shift(1, 1000);
    int tampered = 0;
    auto try_side = [&](const Expression &perturbed, bool perturb_resolution) {
        auto id = detail::expression_identity<Real>(
            "an.mckay.n3.tampered", "",
            {{"resolution", perturb_resolution ? perturbed : res},
             {"orbifold", perturb_resolution ? orb : perturbed}});
        ++tampered;
        const auto r = verify(id, cfg);
        if (r.pass)
            o.fail("tampered copy " + std::to_string(tampered) + " still passes");
    };
    for (int side = 0; side < 2; ++side) {
        const Expression &e = side == 0 ? res : orb;
        for (std::size_t t = 0; t < e.terms().size(); ++t)
            for (std::size_t f = 0; f < e.terms()[t].factors.size(); ++f)
                if (e.terms()[t].factors[f].kind == Factor::Kind::delta)
                    try_side(e.perturbed(t, f, shift), side == 0);
    }
    const auto honest = verify(identity("an.mckay.n3"), cfg);
    if (!honest.pass)
        o.fail("untampered an.mckay.n3 fails");
    if (o.pass)
        o.detail = std::to_string(tampered) + " single-delta perturbations by 1e-3 all fail";
    return o;
}

Outcome criterion12()
{
    Outcome o;
    const std::vector<std::string> ids = {"fay.n3", "an.mckay.n4", "d4.mckay", "limit.trig.n3"};
    for (const auto &id : ids) {
        SampleConfig serial = config(32, 1e-9);
        SampleConfig parallel = serial;
        parallel.threads = 4;
        const auto a = to_json(verify(identity(id), serial), false).dump();
        const auto b = to_json(verify(identity(id), serial), false).dump();
        const auto c = to_json(verify(identity(id), parallel), false).dump();
        if (a != b)
            o.fail(id + ": two serial runs differ");
        if (a != c)
            o.fail(id + ": serial and 4-thread reports differ");
    }
    if (o.pass)
        o.detail = std::to_string(ids.size()) + " identities, serial x2 and 4 threads identical";
    return o;
}

} // namespace

int main()
{
    struct Criterion
    {
        int number;
        const char *name;
        std::function<Outcome()> run;
        double limit_s; // 0: no time limit
    };
    const std::vector<Criterion> criteria = {
        {1, "theta layer", criterion1, 2},
        {2, "delta normalization and Ell(P^1)", criterion2, 0},
        {3, "Fay identities", criterion3, 10},
        {4, "braid relation", criterion4, 0},
        {5, "A_{n-1} McKay, simplified form, self-duality", criterion5, 30},
        {6, "D4", criterion6, 0},
        {7, "Lehn-Sorger", criterion7, 60},
        {8, "diagonal quotients", criterion8, 0},
        {9, "Hirzebruch limits", criterion9, 0},
        {10, "CY residue", criterion10, 0},
        {11, "anti-vacuity (tampering)", criterion11, 0},
        {12, "determinism", criterion12, 0},
    };
    all_identities();
    bool all = true;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        if (c.limit_s > 0)
            time_limit(o, ms, c.limit_s);
        all = all && o.pass;
        std::printf("[%s] criterion %2d  %-46s %8.1f ms  %s\n", o.pass ? "PASS" : "FAIL",
                    c.number, c.name, ms, o.detail.c_str());
    }
    std::printf("%s\n", all ? "all acceptance criteria pass" : "some acceptance criteria FAIL");
    return all ? 0 : 1;
}
