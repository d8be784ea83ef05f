#include "cellint/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>
#include <thread>

namespace cellint {

nlohmann::json EvalResult::to_json(int digits) const {
    return {{"value", value.str(digits)}, {"err", error.str(3)},  {"method", method},
            {"levels", levels},           {"samples", samples},   {"converged", converged}};
}

namespace {

// factors grouped by their lowest cubical index
struct Compiled {
    int ell = 0;
    std::vector<long long> ex, eu;                            // x_i and (1 - x_i)
    std::vector<std::vector<std::pair<int, long long>>> onem;  // (j, e) for 1 - x_i...x_j, j > i
};

Compiled compile(const FactoredRational& f) {
    if (f.frame() != Frame::cubical) throw PreconditionError("integrand must be in the cubical frame");
    Compiled c;
    c.ell = f.ell();
    c.ex.assign(c.ell, 0);
    c.eu.assign(c.ell, 0);
    c.onem.resize(c.ell);
    for (const auto& [fac, e] : f.exponents()) {
        int i = fac.i - 1;
        if (fac.kind == FactorKind::cube_x)
            c.ex[i] += e;
        else if (fac.j == fac.i)
            c.eu[i] += e;
        else
            c.onem[i].push_back({fac.j - 1, e});
    }
    return c;
}

struct Node {
    BigFloat x, u, w;
};

std::vector<Node> tanh_sinh_nodes(const BigFloat& h, const BigFloat& tmax, mpfr_prec_t bits) {
    BigFloat pi(bits);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    BigFloat half_pi = pi / BigFloat(2L, bits);
    long K = static_cast<long>(std::ceil((tmax / h).to_double()));
    std::vector<Node> pos;
    for (long k = 0; k <= K; ++k) {
        BigFloat t = h * BigFloat(k, bits);
        BigFloat sh(bits), ch(bits);
        mpfr_sinh_cosh(sh.get(), ch.get(), t.get(), MPFR_RNDN);
        BigFloat s = half_pi * sh;
        BigFloat e = exp(BigFloat(-2L, bits) * s);
        BigFloat one(1L, bits);
        BigFloat x = one / (one + e);
        BigFloat u = e / (one + e);
        BigFloat w = h * pi * ch * x * u;
        pos.push_back({x, u, w});
    }
    std::vector<Node> nodes;
    for (long k = K; k >= 1; --k) nodes.push_back({pos[k].u, pos[k].x, pos[k].w});
    for (const auto& nd : pos) nodes.push_back(nd);
    return nodes;
}

// One ordering sector of the cube in u = 1 - x: u_{pi[d]} = r_0 ... r_d.
// Each 1 - x_i...x_j splits into the monomial u_max and a remainder in [1, j-i+1].
struct Sector {
    int ell = 0;
    std::vector<int> pi, rank;
    std::vector<long long> alpha;  // exponent of r_d
    std::vector<long long> ax;     // exponent of x_{pi[d]}
    struct Rem {
        std::vector<int> by_rank;  // member ranks, ascending
        long long e;
    };
    std::vector<std::vector<Rem>> rems;  // grouped by the largest member rank
};

Sector make_sector(const Compiled& cp, const std::vector<int>& pi) {
    Sector s;
    s.ell = cp.ell;
    s.pi = pi;
    s.rank.assign(cp.ell, 0);
    for (int d = 0; d < cp.ell; ++d) s.rank[pi[d]] = d;
    s.alpha.assign(cp.ell, 0);
    s.ax.assign(cp.ell, 0);
    s.rems.resize(cp.ell);
    for (int d = 0; d < cp.ell; ++d) s.alpha[d] += cp.ell - 1 - d;  // Jacobian
    auto add_monomial = [&](int m, long long e) {
        for (int d = 0; d <= m; ++d) s.alpha[d] += e;
    };
    for (int i = 0; i < cp.ell; ++i) {
        s.ax[s.rank[i]] = cp.ex[i];
        if (cp.eu[i]) add_monomial(s.rank[i], cp.eu[i]);
        for (const auto& [j, e] : cp.onem[i]) {
            Sector::Rem r{{}, e};
            for (int k = i; k <= j; ++k) r.by_rank.push_back(s.rank[k]);
            std::sort(r.by_rank.begin(), r.by_rank.end());
            add_monomial(r.by_rank.front(), e);
            s.rems[r.by_rank.back()].push_back(std::move(r));
        }
    }
    return s;
}

struct SectorSum {
    const Sector& sec;
    const std::vector<Node>& nodes;
    std::vector<std::vector<BigFloat>> pre;  // w r^alpha at depth d
    mpfr_prec_t bits;

    SectorSum(const Sector& s, const std::vector<Node>& nd, mpfr_prec_t b) : sec(s), nodes(nd), bits(b) {
        pre.resize(sec.ell);
        for (int d = 0; d < sec.ell; ++d)
            for (const auto& n : nodes) pre[d].push_back(n.w * pow(n.x, sec.alpha[d]));
    }

    struct Scratch {
        std::vector<BigFloat> U, X, term;  // U[d] = r_0..r_d, X[d] = 1 - U[d]
        BigFloat p, q, t1, t2;
        Scratch(int ell, mpfr_prec_t bits)
            : U(ell, BigFloat(bits)), X(ell, BigFloat(bits)), term(ell + 1, BigFloat(bits)), p(bits), q(bits), t1(bits), t2(bits) {}
    };

    void visit(int d, std::size_t k, Scratch& s, BigFloat& acc) const {
        const Node& nd = nodes[k];
        BigFloat& t = s.term[d + 1];
        mpfr_mul(t.get(), s.term[d].get(), pre[d][k].get(), MPFR_RNDN);
        if (t.is_zero()) return;
        if (d == 0) {
            mpfr_set(s.U[0].get(), nd.x.get(), MPFR_RNDN);
            mpfr_set(s.X[0].get(), nd.u.get(), MPFR_RNDN);
        } else {
            // 1 - U r = (1 - U) + U (1 - r)
            mpfr_mul(s.U[d].get(), s.U[d - 1].get(), nd.x.get(), MPFR_RNDN);
            mpfr_fma(s.X[d].get(), s.U[d - 1].get(), nd.u.get(), s.X[d - 1].get(), MPFR_RNDN);
        }
        if (sec.ax[d]) {
            mpfr_pow_si(s.t1.get(), s.X[d].get(), sec.ax[d], MPFR_RNDN);
            mpfr_mul(t.get(), t.get(), s.t1.get(), MPFR_RNDN);
        }
        for (const auto& r : sec.rems[d]) {
            // (1 - prod x_k) / u_max, accumulated without cancellation
            int m = r.by_rank.front();
            mpfr_set_ui(s.p.get(), 1, MPFR_RNDN);
            mpfr_set(s.q.get(), s.X[m].get(), MPFR_RNDN);
            for (std::size_t idx = 1; idx < r.by_rank.size(); ++idx) {
                int e = r.by_rank[idx];
                mpfr_div(s.t1.get(), s.U[e].get(), s.U[m].get(), MPFR_RNDN);
                mpfr_fma(s.p.get(), s.t1.get(), s.q.get(), s.p.get(), MPFR_RNDN);
                mpfr_mul(s.q.get(), s.q.get(), s.X[e].get(), MPFR_RNDN);
            }
            mpfr_pow_si(s.t1.get(), s.p.get(), r.e, MPFR_RNDN);
            mpfr_mul(t.get(), t.get(), s.t1.get(), MPFR_RNDN);
        }
        if (d == sec.ell - 1) {
            mpfr_add(acc.get(), acc.get(), t.get(), MPFR_RNDN);
            return;
        }
        for (std::size_t m = 0; m < nodes.size(); ++m) visit(d + 1, m, s, acc);
    }

    BigFloat outer(std::size_t k, Scratch& s) const {
        BigFloat acc(bits + 32);
        mpfr_set_ui(s.term[0].get(), 1, MPFR_RNDN);
        visit(0, k, s, acc);
        return acc;
    }
};

std::vector<Sector> all_sectors(const Compiled& cp) {
    std::vector<int> pi(cp.ell);
    for (int i = 0; i < cp.ell; ++i) pi[i] = i;
    std::vector<Sector> out;
    do out.push_back(make_sector(cp, pi));
    while (std::next_permutation(pi.begin(), pi.end()));
    return out;
}

BigFloat tensor_sum(const std::vector<Sector>& sectors, const std::vector<Node>& nodes, mpfr_prec_t bits, int threads) {
    std::vector<SectorSum> sums;
    for (const auto& s : sectors) sums.emplace_back(s, nodes, bits);
    std::size_t per = nodes.size();
    std::size_t jobs = sectors.size() * per;
    std::vector<BigFloat> parts(jobs, BigFloat(bits + 32));
    int T = std::max(1, threads);
    int ell = sectors.front().ell;
    auto work = [&](int tid) {
        SectorSum::Scratch s(ell, bits);
        for (std::size_t j = tid; j < jobs; j += T) parts[j] = sums[j / per].outer(j % per, s);
    };
    if (T == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < T; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    BigFloat total(bits + 32);
    for (const auto& p : parts) total += p;
    return total;
}

}  // namespace

EvalResult integrate_cubical(const FactoredRational& integrand, int digits, const QuadOptions& opt) {
    Compiled cp = compile(integrand);
    if (cp.ell < 1) throw PreconditionError("nothing to integrate for l = 0");
    int work = digits + 10 + 5 * cp.ell;
    mpfr_prec_t bits = digits_to_bits(work);
    double tmax_d = std::asinh((work * std::log(10.0) + 10) / M_PI);
    BigFloat tmax(tmax_d, bits);
    BigFloat h = BigFloat(2L * tmax_d, bits) / BigFloat(64L, bits);
    BigFloat target = pow10(-digits, bits);
    BigFloat floor_err = pow10(-work, bits);

    auto sectors = all_sectors(cp);
    for (const auto& sec : sectors)
        for (long long a : sec.alpha)
            if (a < 0) throw PreconditionError("integrand is not integrable at the corner x = (1,...,1)");

    EvalResult res;
    res.method = "tanh-sinh";
    std::vector<BigFloat> sums;
    for (int L = 0; L < opt.max_levels; ++L) {
        auto nodes = tanh_sinh_nodes(h, tmax, bits);
        long double pts = sectors.size() * std::pow(static_cast<long double>(nodes.size()), cp.ell);
        if (L > 0 && pts > opt.max_points) {
            res.converged = false;
            break;
        }
        sums.push_back(tensor_sum(sectors, nodes, bits, opt.threads));
        if (std::getenv("CELLINT_TRACE")) std::cerr << "level " << L << " nodes " << nodes.size() << " sum " << sums.back().str(digits + 5) << "\n";
        res.samples += static_cast<long long>(pts);
        res.levels = L + 1;
        h /= BigFloat(2L, bits);
        if (sums.size() < 2) continue;
        const BigFloat& S = sums.back();
        BigFloat e1 = abs(S - sums[sums.size() - 2]);
        res.level_diffs.push_back(e1.is_zero() ? -work : log10_abs(e1).to_double());
        // relative digits; each level roughly squares the error
        BigFloat scale = abs(S);
        if (scale.is_zero()) scale = floor_err;
        if (e1.is_zero()) {
            res.error = floor_err * scale;
        } else {
            double r1 = log10_abs(e1 / scale).to_double();
            double d = std::min(2 * r1, 0.0);
            if (sums.size() >= 3) {
                BigFloat e2 = abs(S - sums[sums.size() - 3]);
                double r2 = e2.is_zero() ? -work : log10_abs(e2 / scale).to_double();
                if (r1 < 0 && r2 < 0) d = std::max(r1 * r1 / r2, 2 * r1);
            }
            d = std::max(d + 1, static_cast<double>(-work));
            res.error = scale * pow(BigFloat(10L, bits), BigFloat(d, bits));
        }
        if (res.error < target) break;
    }
    res.value = abs(sums.back());
    if (sums.size() < 2) res.error = abs(sums.back());
    res.converged = res.converged && res.error < target;
    return res;
}

FactoredRational basic_cubical_integrand(const ConfigClass& c, long long N) {
    auto b = build_basic(c);
    return to_cubical(b.f).pow(N) * to_cubical(b.omega).coefficient;
}

namespace {

void check_quad_size(int ell, int digits) {
    if (ell <= 3) return;
    if (ell == 4 && digits <= 15) {
        std::cerr << "warning: l = 4 tensor quadrature is slow and limited to 15 digits\n";
        return;
    }
    throw PreconditionError("tensor quadrature supports l <= 3 (l = 4 with at most 15 digits); got l = " + std::to_string(ell));
}

}  // namespace

EvalResult eval_basic(const ConfigClass& c, long long N, int digits, const QuadOptions& opt) {
    if (N < 0) throw PreconditionError("N must be nonnegative");
    check_quad_size(c.ell(), digits);
    if (!is_convergent(c)) throw PreconditionError("configuration is not convergent");
    return integrate_cubical(basic_cubical_integrand(c, N), digits, opt);
}

EvalResult eval_general(const ParamSet& p, int digits, const QuadOptions& opt) {
    check_quad_size(p.n() - 3, digits);
    auto r = is_convergent_params(p);
    if (!r.convergent) throw PreconditionError("parameters do not give a convergent integral (divisor " + r.witness->str() + ")");
    return integrate_cubical(general_integrand_cubical(p).coefficient, digits, opt);
}

namespace {

double ipow(double b, long long e) {
    if (e < 0) return 1.0 / ipow(b, -e);
    double r = 1;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

struct DoubleEval {
    const Compiled& cp;
    mutable std::vector<double> c;  // c[j] for the current i

    double operator()(const double* x, const double* u) const {
        int L = cp.ell;
        c.assign(L, 0.0);
        double v = 1;
        for (int i = L - 1; i >= 0; --i) {
            for (int j = L - 1; j > i; --j) c[j] = u[i] + x[i] * c[j];
            c[i] = u[i];
            v *= ipow(x[i], cp.ex[i]) * ipow(u[i], cp.eu[i]);
            for (const auto& [j, e] : cp.onem[i]) v *= ipow(c[j], e);
        }
        return v;
    }
};

double smoothstep(double y) { return y * y * y * (10 - 15 * y + 6 * y * y); }

// generalized golden ratio Kronecker increments, 64-bit fixed point
std::vector<std::uint64_t> kronecker_alpha(int d) {
    long double phi = 2;
    for (int it = 0; it < 100; ++it) phi = std::pow(1 + phi, 1.0L / (d + 1));
    std::vector<std::uint64_t> a(d);
    long double p = 1;
    for (int k = 0; k < d; ++k) {
        p /= phi;
        long double frac = p - std::floor(p);
        a[k] = static_cast<std::uint64_t>(std::ldexp(frac, 64));
    }
    return a;
}

}  // namespace

EvalResult montecarlo_cubical(const FactoredRational& integrand, const McOptions& opt) {
    Compiled cp = compile(integrand);
    int L = cp.ell;
    if (L < 1 || L > 6) throw PreconditionError("Monte Carlo supports 1 <= l <= 6");
    if (opt.replicas < 2) throw PreconditionError("need at least 2 replicas");
    if (opt.samples < opt.replicas) throw PreconditionError("fewer samples than replicas");
    auto alpha = kronecker_alpha(L);
    std::mt19937_64 rng(opt.seed);
    std::vector<std::vector<std::uint64_t>> shifts(opt.replicas, std::vector<std::uint64_t>(L));
    for (auto& s : shifts)
        for (auto& v : s) v = rng();
    long long per = opt.samples / opt.replicas;
    std::vector<double> means(opt.replicas, 0.0);
    auto run = [&](int r) {
        DoubleEval ev{cp, {}};
        std::vector<std::uint64_t> pt = shifts[r];
        std::vector<double> x(L), u(L);
        double sum = 0, comp = 0;
        for (long long s = 0; s < per; ++s) {
            double jac = 1;
            for (int k = 0; k < L; ++k) {
                pt[k] += alpha[k];
                double y = (static_cast<double>(pt[k] >> 11) + 0.5) * 0x1p-53;
                x[k] = smoothstep(y);
                u[k] = smoothstep(1 - y);
                double yy = y * (1 - y);
                jac *= 30 * yy * yy;
            }
            double v = ev(x.data(), u.data()) * jac;
            double t = sum + v;
            comp += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
            sum = t;
        }
        means[r] = (sum + comp) / static_cast<double>(per);
    };
    int T = std::max(1, opt.threads);
    if (T == 1) {
        for (int r = 0; r < opt.replicas; ++r) run(r);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < T; ++t)
            pool.emplace_back([&, t] {
                for (int r = t; r < opt.replicas; r += T) run(r);
            });
        for (auto& th : pool) th.join();
    }
    double mean = 0;
    for (double m : means) mean += m;
    mean /= opt.replicas;
    double var = 0;
    for (double m : means) var += (m - mean) * (m - mean);
    var /= (opt.replicas - 1);
    EvalResult res;
    res.method = "monte-carlo";
    res.value = BigFloat(std::fabs(mean), 53);
    res.error = BigFloat(std::max(std::sqrt(var / opt.replicas), 1e-300), 53);
    res.samples = per * opt.replicas;
    return res;
}

EvalResult eval_montecarlo(const ConfigClass& c, long long N, const McOptions& opt) {
    if (N < 0) throw PreconditionError("N must be nonnegative");
    if (!is_convergent(c)) throw PreconditionError("configuration is not convergent");
    return montecarlo_cubical(basic_cubical_integrand(c, N), opt);
}

EvalResult eval_montecarlo(const ParamSet& p, const McOptions& opt) {
    auto r = is_convergent_params(p);
    if (!r.convergent) throw PreconditionError("parameters do not give a convergent integral (divisor " + r.witness->str() + ")");
    return montecarlo_cubical(general_integrand_cubical(p).coefficient, opt);
}

double eval_cubical_double(const FactoredRational& f, const std::vector<double>& x) {
    Compiled cp = compile(f);
    std::vector<double> u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = 1 - x[i];
    DoubleEval ev{cp, {}};
    return f.sign() * ev(x.data(), u.data());
}

MaxResult max_on_cell(const ConfigClass& c) {
    if (!is_convergent(c)) throw PreconditionError("configuration is not convergent");
    FactoredRational f = to_cubical(build_basic(c).f);
    Compiled cp = compile(f);
    int L = cp.ell;
    DoubleEval ev{cp, {}};
    auto value = [&](const std::vector<double>& x) {
        std::vector<double> u(L);
        for (int i = 0; i < L; ++i) u[i] = 1 - x[i];
        return std::fabs(ev(x.data(), u.data()));
    };
    static const int grid_size[] = {0, 400, 200, 60, 22, 12, 8};
    int G = grid_size[std::min(L, 6)];
    std::vector<std::pair<double, std::vector<double>>> best;
    std::vector<int> idx(L, 0);
    std::vector<double> x(L);
    const std::size_t keep = 8;
    while (true) {
        for (int i = 0; i < L; ++i) x[i] = (idx[i] + 0.5) / G;
        double v = value(x);
        if (best.size() < keep || v > best.back().first) {
            best.push_back({v, x});
            std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
            if (best.size() > keep) best.pop_back();
        }
        int d = 0;
        while (d < L && ++idx[d] == G) idx[d++] = 0;
        if (d == L) break;
    }
    MaxResult res;
    double top = 0;
    for (auto& [v0, p] : best) {
        double v = v0;
        double step = 1.0 / G;
        while (step > 1e-13) {
            bool moved = false;
            for (int i = 0; i < L; ++i)
                for (double dir : {-1.0, 1.0}) {
                    auto q = p;
                    q[i] = std::clamp(q[i] + dir * step, 0.0, 1.0);
                    double w = value(q);
                    if (w > v) {
                        v = w;
                        p = q;
                        moved = true;
                    }
                }
            if (!moved) step /= 2;
        }
        if (v > top) {
            top = v;
            res.argmax = p;
        }
    }
    res.value = BigFloat(top, 53);
    res.below_one = top < 1 - 1e-6;
    return res;
}

}  // namespace cellint
