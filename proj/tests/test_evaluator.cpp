#include <cmath>

#include "cellint/evaluator.hpp"
#include "cellint/recurrences.hpp"
#include "doctest.h"

using namespace cellint;

namespace {

BigFloat apery_value(const std::string& which, long N, int scale, int digits) {
    auto ap = apery_pair(which);
    auto a = extend(ap.rec, ap.a_init, N), b = extend(ap.rec, ap.b_init, N);
    mpfr_prec_t bits = digits_to_bits(digits + 20);
    BigFloat z = named_constant(which, digits + 20);
    return abs(BigFloat(static_cast<long>(scale), bits) * (BigFloat(a.at(N), bits) * z - BigFloat(b.at(N), bits)));
}

const ConfigClass five{5, {5, 2, 4, 1, 3}};
const ConfigClass six{6, {6, 2, 4, 1, 5, 3}};

}  // namespace

TEST_CASE("n=5 quadrature matches the Apery zeta(2) forms") {
    for (long N = 0; N <= 5; ++N) {
        auto r = eval_basic(five, N, 30);
        CHECK(r.converged);
        CHECK(r.error < pow10(-30, 200));
        CHECK(abs(r.value - apery_value("zeta2", N, 1, 30)) < pow10(-25, 200));
    }
    CHECK(abs(eval_basic(five, 0, 20).value - const_zeta(2, 30)) < pow10(-20, 200));
    CHECK(std::fabs(eval_basic(five, 1, 20).value.to_double() - 0.0651978) < 1e-7);
}

TEST_CASE("n=6 normalization constant") {
    // I_N = c (a_N zeta(3) - b_N); only c = 2 fits
    for (long N = 1; N <= 2; ++N) {
        auto r = eval_basic(six, N, 12);
        CHECK(abs(r.value - apery_value("zeta3", N, 2, 12)) < pow10(-12, 200));
        CHECK(abs(r.value - apery_value("zeta3", N, 1, 12)) > r.value / BigFloat(4L, 64));
    }
}

TEST_CASE("general integrals") {
    auto dixon = solve_homogeneity(Perm{5, 2, 4, 1, 3}, {1, 1, 1, 1, 1});
    CHECK(abs(eval_general(dixon, 25).value - eval_basic(five, 1, 25).value) < pow10(-25, 200));
    auto rv = rv_cell_params({1, 1, 1, 1, 1, 1});
    CHECK(abs(eval_general(rv, 12).value - apery_value("zeta3", 1, 2, 12)) < pow10(-12, 200));
    auto bad = solve_homogeneity(Perm{5, 2, 4, 1, 3}, {-1, 1, 1, 1, 1});
    CHECK_THROWS_AS(eval_general(bad, 10), PreconditionError);
    CHECK_THROWS_AS(eval_basic(ConfigClass{8, pi_odd_perm(4)}, 0, 10), PreconditionError);
    CHECK_THROWS_AS(eval_basic(ConfigClass{5, {1, 2, 3, 4, 5}}, 0, 10), PreconditionError);
}

TEST_CASE("monotone in N") {
    BigFloat prev(1000L, 64);
    for (long N = 0; N <= 5; ++N) {
        auto v = eval_basic(five, N, 20).value;
        CHECK(v > BigFloat(0L, 64));
        CHECK(v < prev);
        prev = v;
    }
    prev = BigFloat(1000L, 64);
    for (long N = 0; N <= 5; ++N) {
        QuadOptions o;
        o.max_points = 3000000;
        auto v = eval_basic(six, N, 8, o).value;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("level doubling shrinks the error") {
    for (long N : {0, 2}) {
        auto r = eval_basic(five, N, 100);
        REQUIRE(r.level_diffs.size() >= 3);
        for (std::size_t i = 1; i < r.level_diffs.size(); ++i)
            CHECK(r.level_diffs[i] < 1.5 * r.level_diffs[i - 1]);
    }
}

TEST_CASE("Monte Carlo") {
    McOptions o;
    o.samples = 1 << 20;
    auto c7 = canonical_config(*lookup_named("7pi1"));
    auto r1 = eval_montecarlo(c7, 0, o);
    auto r1b = eval_montecarlo(c7, 0, o);
    CHECK(r1.value == r1b.value);
    o.threads = 3;
    CHECK(eval_montecarlo(c7, 0, o).value == r1.value);
    o.threads = 1;
    o.seed = 77;
    auto r2 = eval_montecarlo(c7, 0, o);
    double s = std::hypot(r1.error.to_double(), r2.error.to_double());
    CHECK(std::fabs(r1.value.to_double() - r2.value.to_double()) < 4 * s);
    double ref = 1.7 * std::pow(const_zeta(2, 20).to_double(), 2);
    CHECK(std::fabs(r1.value.to_double() - ref) < 3 * r1.error.to_double());

    auto r5 = eval_montecarlo(five, 2, o);
    CHECK(std::fabs(r5.value.to_double() - apery_value("zeta2", 2, 1, 20).to_double()) < 4 * r5.error.to_double());
    CHECK(r5.method == "monte-carlo");
    o.samples = 10;
    CHECK_THROWS_AS(eval_montecarlo(five, 0, o), PreconditionError);
}

TEST_CASE("maximum of f on the cell") {
    auto m = max_on_cell(five);
    double g = (std::sqrt(5.0) - 1) / 2;
    CHECK(std::fabs(m.value.to_double() - std::pow(g, 5)) < 1e-10);
    CHECK(m.below_one);
    CHECK(max_on_cell(six).below_one);
    for (int n = 5; n <= 7; ++n)
        for (const auto& c : enumerate_convergent(n)) {
            auto f = to_cubical(build_basic(c).f);
            auto mx = max_on_cell(c);
            CHECK(mx.below_one);
            for (int i = 0; i < c.ell(); ++i)
                for (double edge : {0.0, 1.0}) {
                    std::vector<double> x(c.ell(), 0.37);
                    x[i] = edge;
                    CHECK(eval_cubical_double(f, x) == 0.0);
                }
        }
}
