#include "cellint/forms.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace cellint {

namespace {

void add_zdiff(FactoredRational& r, int u, int v, long long e) {
    if (e == 0) return;
    if (u > v) {
        std::swap(u, v);
        if (e % 2 != 0) r.negate();
    }
    r.mul_factor(Factor::zdiff(u, v), e);
}

std::vector<int> standard_word(int n) { return identity_perm(n); }

bool is_standard(const std::vector<int>& w) { return DihedralStructure(w) == DihedralStructure::standard(static_cast<int>(w.size())); }

}  // namespace

FactoredRational f_tilde(const std::vector<int>& delta, const std::vector<int>& deltap) {
    int n = static_cast<int>(delta.size());
    FactoredRational r(Frame::z, n);
    for (int k = 0; k < n; ++k) add_zdiff(r, delta[k], delta[(k + 1) % n], 1);
    for (int k = 0; k < n; ++k) add_zdiff(r, deltap[k], deltap[(k + 1) % n], -1);
    return r;
}

DifferentialForm omega_tilde(const std::vector<int>& word) {
    int n = static_cast<int>(word.size());
    FactoredRational r(Frame::z, n);
    for (int k = 0; k < n; ++k) add_zdiff(r, word[k], word[(k + 1) % n], -1);
    return {r};
}

BasicIntegrand build_basic(const Perm& sigma) {
    check_perm(sigma);
    int n = static_cast<int>(sigma.size());
    if (n < 4) throw PreconditionError("basic integrand needs n >= 4");
    if (!is_convergent(sigma)) throw PreconditionError("configuration is not convergent: " + perm_str(sigma));
    BasicIntegrand b;
    b.f = to_simplicial(f_tilde(standard_word(n), sigma));
    b.omega = to_simplicial(omega_tilde(sigma));
    b.f_flip = b.f.sign();
    b.omega_flip = b.omega.coefficient.sign();
    b.f.set_sign(1);
    b.omega.coefficient.set_sign(1);
    return b;
}

BasicIntegrand build_basic(const ConfigClass& c) { return build_basic(c.rep); }

int edge_index(const std::vector<int>& w, int u, int v) {
    int n = static_cast<int>(w.size());
    for (int k = 0; k < n; ++k) {
        int x = w[k], y = w[(k + 1) % n];
        if ((x == u && y == v) || (x == v && y == u)) return k;
    }
    return -1;
}

long long ParamSet::a_edge(int u, int v) const {
    int k = edge_index(delta, u, v);
    if (k < 0) throw PreconditionError("not an edge of delta");
    return a[k];
}

long long ParamSet::b_edge(int u, int v) const {
    int k = edge_index(deltap, u, v);
    if (k < 0) throw PreconditionError("not an edge of delta'");
    return b[k];
}

std::vector<long long> ParamSet::homogeneity_residuals() const {
    int N = n();
    std::vector<long long> r(N + 1, 0);
    for (int k = 0; k < N; ++k) {
        r[delta[k]] += a[k];
        r[delta[(k + 1) % N]] += a[k];
        r[deltap[k]] -= b[k];
        r[deltap[(k + 1) % N]] -= b[k];
    }
    return r;
}

bool ParamSet::homogeneous() const {
    auto r = homogeneity_residuals();
    return std::all_of(r.begin(), r.end(), [](long long x) { return x == 0; });
}

std::string ParamSet::str() const {
    std::ostringstream os;
    int N = n();
    os << "a:";
    for (int k = 0; k < N; ++k) os << " a" << delta[k] << "," << delta[(k + 1) % N] << "=" << a[k];
    os << " b:";
    for (int k = 0; k < N; ++k) os << " b" << deltap[k] << "," << deltap[(k + 1) % N] << "=" << b[k];
    return os.str();
}

nlohmann::json ParamSet::to_json() const {
    nlohmann::json ja = nlohmann::json::array(), jb = nlohmann::json::array();
    int N = n();
    for (int k = 0; k < N; ++k) ja.push_back({{"edge", {delta[k], delta[(k + 1) % N]}}, {"value", a[k]}});
    for (int k = 0; k < N; ++k) jb.push_back({{"edge", {deltap[k], deltap[(k + 1) % N]}}, {"value", b[k]}});
    return {{"delta", delta}, {"deltap", deltap}, {"a", ja}, {"b", jb}};
}

ParamSet basic_params(const std::vector<int>& delta, const std::vector<int>& deltap, long long N) {
    int n = static_cast<int>(delta.size());
    return ParamSet{delta, deltap, std::vector<long long>(n, N), std::vector<long long>(n, N)};
}

ParamSet basic_params(const ConfigClass& c, long long N) { return basic_params(standard_word(c.n), c.rep, N); }

ParamSet solve_homogeneity(const std::vector<int>& delta, const std::vector<int>& deltap, const std::vector<long long>& a,
                           std::optional<long long> b, std::pair<int, int> b_edge) {
    check_perm(delta);
    check_perm(deltap);
    int n = static_cast<int>(delta.size());
    if (static_cast<int>(deltap.size()) != n || static_cast<int>(a.size()) != n)
        throw PreconditionError("solve_homogeneity: size mismatch");
    ParamSet p{delta, deltap, a, std::vector<long long>(n, 0)};
    std::vector<long long> asum(n + 1, 0);
    for (int k = 0; k < n; ++k) {
        asum[delta[k]] += a[k];
        asum[delta[(k + 1) % n]] += a[k];
    }
    // equation at position j of delta': b[j-1] + b[j] = c[j]
    std::vector<long long> c(n);
    for (int j = 0; j < n; ++j) c[j] = asum[deltap[j]];
    if (n % 2 == 1) {
        if (b) throw PreconditionError("for odd n the b parameters are determined by a");
        for (int j = 0; j < n; ++j) {
            long long s = 0;
            for (int k = 0; k < n; ++k) s += (k % 2 ? -1 : 1) * c[((j - k) % n + n) % n];
            p.b[j] = s / 2;
        }
        return p;
    }
    long long alt = 0;
    for (int j = 0; j < n; ++j) alt += (j % 2 ? -1 : 1) * c[j];
    if (alt != 0)
        throw PreconditionError("a violates the alternating-sum condition: sum (-1)^i (a_{s_i-1,s_i} + a_{s_i,s_i+1}) = " +
                                std::to_string(alt));
    int j0 = n - 1;
    if (b_edge.first != 0) {
        j0 = edge_index(deltap, b_edge.first, b_edge.second);
        if (j0 < 0) throw PreconditionError("the given b edge is not an edge of delta'");
    }
    p.b[j0] = b.value_or(0);
    for (int s = 1; s < n; ++s) {
        int j = (j0 + s) % n;
        p.b[j] = c[j] - p.b[(j + n - 1) % n];
    }
    return p;
}

ParamSet solve_homogeneity(const Perm& sigma, const std::vector<long long>& a, std::optional<long long> b, std::pair<int, int> b_edge) {
    return solve_homogeneity(standard_word(static_cast<int>(sigma.size())), sigma, a, b, b_edge);
}

ParamSet solve_homogeneity(const ConfigClass& c, const std::vector<long long>& a, std::optional<long long> b, std::pair<int, int> b_edge) {
    return solve_homogeneity(c.rep, a, b, b_edge);
}

FactoredRational build_general(const ParamSet& p) {
    int n = p.n();
    FactoredRational r(Frame::z, n);
    for (int k = 0; k < n; ++k) add_zdiff(r, p.delta[k], p.delta[(k + 1) % n], p.a[k]);
    for (int k = 0; k < n; ++k) add_zdiff(r, p.deltap[k], p.deltap[(k + 1) % n], -p.b[k]);
    return r;
}

DifferentialForm general_integrand(const ParamSet& p) {
    if (!is_standard(p.delta)) throw PreconditionError("the simplicial integrand needs delta standard");
    FactoredRational f = build_general(p) * omega_tilde(p.deltap).coefficient;
    DifferentialForm w{to_simplicial(f)};
    w.coefficient.set_sign(1);
    return w;
}

DifferentialForm general_integrand_cubical(const ParamSet& p) {
    DifferentialForm w = to_cubical(general_integrand(p));
    w.coefficient.set_sign(1);
    return w;
}

HalfInt ord_along(const ParamSet& p, const StablePartition& D, bool with_omega) {
    int n = p.n();
    if (D.n() != n) throw PreconditionError("divisor and parameters live on different sets");
    long long d = 0;
    int cnt = 0;
    for (int k = 0; k < n; ++k) {
        if (D.same_side(p.delta[k], p.delta[(k + 1) % n])) d += p.a[k];
        if (D.same_side(p.deltap[k], p.deltap[(k + 1) % n])) {
            d -= p.b[k];
            ++cnt;
        }
    }
    if (with_omega) d += (n - 4) - cnt;
    return HalfInt::from_doubled(d);
}

ConvergenceReport is_convergent_params(const ParamSet& p) {
    if (!p.homogeneous()) throw PreconditionError("parameters violate the homogeneity equations");
    int n = p.n();
    std::vector<StablePartition> order;
    for (int k = 0; k < n; ++k) order.emplace_back(n, (1u << (p.delta[k] - 1)) | (1u << (p.delta[(k + 1) % n] - 1)));
    for (const auto& D : finite_distance_divisors(DihedralStructure(p.delta)))
        if (std::popcount(D.block()) != 2 && n - std::popcount(D.block()) != 2) order.push_back(D);
    for (const auto& D : order) {
        HalfInt o = ord_along(p, D, true);
        if (!o.is_integer()) throw std::logic_error("half-integral valuation along " + D.str());
        if (o.doubled < 0) return {false, D, o};
    }
    return {};
}

std::pair<int, int> ofd_term_counts(const ParamSet& p, const StablePartition& D) {
    int n = p.n(), na = 0, nb = 0;
    for (int k = 0; k < n; ++k) {
        na += D.same_side(p.delta[k], p.delta[(k + 1) % n]);
        nb += D.same_side(p.deltap[k], p.deltap[(k + 1) % n]);
    }
    return {na, nb};
}

bool in_region_C(const std::vector<long long>& x, int n) {
    if (x.empty()) return true;
    long long n2 = static_cast<long long>(n) * n;
    // |x_i - m| < m/n^2  <=>  m (n^2 - 1) < n^2 x_i < m (n^2 + 1)
    long long lo = std::max<long long>(1, x[0] * n2 / (n2 + 1));
    long long hi = n2 > 1 ? x[0] * n2 / (n2 - 1) + 1 : x[0] + 1;
    for (long long m = lo; m <= hi; ++m) {
        bool ok = true;
        for (long long v : x) {
            __int128 t = static_cast<__int128>(n2) * v;
            if (!(static_cast<__int128>(m) * (n2 - 1) < t && t < static_cast<__int128>(m) * (n2 + 1))) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

nlohmann::json RegionCheckReport::to_json() const {
    return {{"inside", inside},     {"inside_ok", inside_ok}, {"negative", negative},
            {"negative_ok", negative_ok}, {"attempts", attempts}, {"failures", failures}, {"ok", ok()}};
}

RegionCheckReport region_check(const ConfigClass& c, int points, std::uint64_t seed, long long m_max) {
    int n = c.n;
    long long n2 = static_cast<long long>(n) * n;
    if (m_max < n2) throw PreconditionError("m_max must be at least n^2");
    std::mt19937_64 rng(seed);
    RegionCheckReport rep;
    auto fail = [&](const std::string& what, const ParamSet& p) {
        if (rep.failures.size() < 5) rep.failures.push_back(what + ": " + p.str());
    };
    auto draw = [&](long long m) {
        // strictly inside |x - m| < m/n^2
        long long r = (m - 1) / n2;
        return m + static_cast<long long>(rng() % static_cast<std::uint64_t>(2 * r + 1)) - r;
    };
    // weights of a in the alternating-sum condition (even n)
    std::vector<long long> weight(n, 0);
    std::vector<int> usable;
    if (n % 2 == 0) {
        std::vector<int> sign(n + 1);
        for (int j = 0; j < n; ++j) sign[c.rep[j]] = j % 2 ? -1 : 1;
        for (int k = 0; k < n; ++k) {
            weight[k] = sign[k + 1] + sign[(k + 1) % n + 1];
            if (weight[k] != 0) usable.push_back(k);
        }
        if (usable.size() < 2) throw std::logic_error("alternating-sum condition has too few free parameters");
    }
    // homogeneous parameters near m, optionally with a[fixed] = value
    auto sample = [&](long long m, int fixed, long long value) -> std::optional<ParamSet> {
        std::vector<long long> a(n);
        for (auto& v : a) v = draw(m);
        if (fixed >= 0) a[fixed] = value;
        if (n % 2 == 0) {
            int k0 = usable[rng() % usable.size()];
            if (k0 == fixed) return std::nullopt;
            long long rest = 0;
            for (int k = 0; k < n; ++k)
                if (k != k0) rest += weight[k] * a[k];
            if (rest % weight[k0] != 0) return std::nullopt;
            a[k0] = -rest / weight[k0];
        }
        try {
            if (n % 2) return solve_homogeneity(c, a);
            return solve_homogeneity(c, a, draw(m));
        } catch (const PreconditionError&) {
            return std::nullopt;
        }
    };
    long long cap = 1000LL * points + 1000;
    while ((rep.inside < points || rep.negative < points) && rep.attempts < cap) {
        ++rep.attempts;
        long long m = n2 + static_cast<long long>(rng() % static_cast<std::uint64_t>(m_max - n2 + 1));
        if (rep.inside < points) {
            auto p = sample(m, -1, 0);
            if (p) {
                std::vector<long long> all = p->a;
                all.insert(all.end(), p->b.begin(), p->b.end());
                if (in_region_C(all, n)) {
                    ++rep.inside;
                    if (is_convergent_params(*p).convergent)
                        ++rep.inside_ok;
                    else
                        fail("divergent point of C", *p);
                }
            }
        }
        if (rep.negative < points) {
            int k = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            auto q = sample(m, k, -1 - static_cast<long long>(rng() % static_cast<std::uint64_t>(m)));
            if (q && q->a[k] < 0) {
                ++rep.negative;
                auto cr = is_convergent_params(*q);
                bool hit = false;
                for (int e = 0; e < n && cr.witness; ++e) {
                    if (q->a[e] >= 0) continue;
                    std::uint32_t edge = (1u << (q->delta[e] - 1)) | (1u << (q->delta[(e + 1) % n] - 1));
                    hit |= cr.witness->block() == edge || cr.witness->complement() == edge;
                }
                if (!cr.convergent && hit)
                    ++rep.negative_ok;
                else
                    fail("negative edge not detected", *q);
            }
        }
    }
    return rep;
}

namespace {

struct EdgeMap {
    std::map<std::pair<int, int>, long long> v;
    static std::pair<int, int> key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }
    bool has(int a, int b) const { return v.count(key(a, b)) > 0; }
    long long get(int a, int b) const {
        auto it = v.find(key(a, b));
        if (it == v.end()) throw std::logic_error("missing edge parameter");
        return it->second;
    }
    void set(int a, int b, long long x) { v[key(a, b)] = x; }
};

int other_neighbour(const DihedralStructure& d, int v, int not_this) { return d.next(v) == not_this ? d.prev(v) : d.next(v); }

// T is a run of `full`; T1,T3 adjacent in `adj`; fill the three missing parameters
void extend_three(const DihedralStructure& full, const DihedralStructure& adj, EdgeMap& fm, EdgeMap& am, const Triple& T) {
    int T1 = T[0], T2 = T[1], T3 = T[2];
    int L = other_neighbour(full, T1, T2), R = other_neighbour(full, T3, T2);
    int b1n = other_neighbour(adj, T1, T3), b3n = other_neighbour(adj, T3, T1);
    auto inT = [&](int v) { return v == T1 || v == T2 || v == T3; };
    if (inT(b1n) || inT(b3n) || inT(adj.next(T2)) || inT(adj.prev(T2)) || inT(L) || inT(R))
        throw PreconditionError("parameter extension needs the triple to be separated in the adjacent structure");
    long long aL = fm.get(L, T1), aR = fm.get(T3, R);
    long long B1 = am.get(T1, b1n), B3 = am.get(T3, b3n);
    long long B2 = am.get(adj.prev(T2), T2) + am.get(T2, adj.next(T2));
    long long twoz = B2 - B1 - B3 + aL + aR;
    if (twoz % 2 != 0) throw PreconditionError("parameter extension is not integral");
    long long z = twoz / 2;
    fm.set(T1, T2, z + B1 - aL);
    fm.set(T2, T3, z + B3 - aR);
    am.set(T1, T3, z);
}

ParamSet to_params(const DihedralStructure& d, const DihedralStructure& dp, const EdgeMap& am, const EdgeMap& bm) {
    ParamSet p{d.word(), dp.word(), {}, {}};
    int n = d.n();
    for (int k = 0; k < n; ++k) p.a.push_back(am.get(p.delta[k], p.delta[(k + 1) % n]));
    for (int k = 0; k < n; ++k) p.b.push_back(bm.get(p.deltap[k], p.deltap[(k + 1) % n]));
    return p;
}

}  // namespace

std::pair<ParamSet, ParamSet> extend_factor_params(const ConfigPair& pair1, const ConfigPair& pair2, const Triple& t1,
                                                   const Triple& t2, const ParamSet& params) {
    ConfigPair prod = product(pair1, pair2, t1, t2);
    if (!(DihedralStructure(params.delta) == prod.delta) || !(DihedralStructure(params.deltap) == prod.deltap))
        throw PreconditionError("parameters are not attached to the product pair");
    if (!params.homogeneous()) throw PreconditionError("parameters violate the homogeneity equations");
    int n1 = pair1.delta.n();
    auto lab = product_relabel(n1, pair2, t1, t2);
    auto inT1 = [&](int u) { return u == t1[0] || u == t1[1] || u == t1[2]; };

    EdgeMap a1, b1, a2, b2;
    const auto& d1 = pair1.delta.word();
    const auto& d1p = pair1.deltap.word();
    for (int k = 0; k < n1; ++k) {
        int u = d1[k], v = d1[(k + 1) % n1];
        if (!(inT1(u) && inT1(v))) a1.set(u, v, params.a_edge(u, v));
        u = d1p[k], v = d1p[(k + 1) % n1];
        if (!(inT1(u) && inT1(v))) b1.set(u, v, params.b_edge(u, v));
    }
    extend_three(pair1.delta, pair1.deltap, a1, b1, t1);

    int n2 = pair2.delta.n();
    const auto& d2 = pair2.delta.word();
    const auto& d2p = pair2.deltap.word();
    auto inT2 = [&](int u) { return u == t2[0] || u == t2[1] || u == t2[2]; };
    for (int k = 0; k < n2; ++k) {
        int u = d2[k], v = d2[(k + 1) % n2];
        if (!(inT2(u) && inT2(v))) a2.set(u, v, params.a_edge(lab[u], lab[v]));
        u = d2p[k], v = d2p[(k + 1) % n2];
        if (!(inT2(u) && inT2(v))) b2.set(u, v, params.b_edge(lab[u], lab[v]));
    }
    extend_three(pair2.deltap, pair2.delta, b2, a2, t2);

    ParamSet p1 = to_params(pair1.delta, pair1.deltap, a1, b1);
    ParamSet p2 = to_params(pair2.delta, pair2.deltap, a2, b2);
    if (!p1.homogeneous() || !p2.homogeneous()) throw std::logic_error("extended parameters are not homogeneous");
    return {p1, p2};
}

PullbackReport pullback_check(const ConfigPair& pair1, const ConfigPair& pair2, const Triple& t1, const Triple& t2,
                              const ParamSet& params, int points, std::uint64_t seed) {
    PullbackReport rep;
    auto [p1, p2] = extend_factor_params(pair1, pair2, t1, t2, params);
    rep.factor1 = p1;
    rep.factor2 = p2;
    FactoredRational f1 = build_general(p1), f2 = build_general(p2), fa = build_general(params);
    rep.degree_bound = f1.degree_bound() + f2.degree_bound() + fa.degree_bound();
    int n = params.n(), n1 = pair1.delta.n(), n2 = pair2.delta.n();
    auto lab = product_relabel(n1, pair2, t1, t2);
    std::mt19937_64 rng(seed);
    const double range_bits = 62;
    rep.ok = true;
    for (int pt = 0; pt < points; ++pt) {
        std::vector<mpq_class> z(n);
        std::set<std::uint64_t> used;
        for (int k = 0; k < n; ++k) {
            std::uint64_t r;
            do r = (rng() >> 2) + 1;
            while (!used.insert(r).second);
            mpz_class v;
            mpz_import(v.get_mpz_t(), 1, 1, sizeof(r), 0, 0, &r);
            z[k] = v;
        }
        std::vector<mpq_class> z1(z.begin(), z.begin() + n1), z2(n2);
        for (int v = 1; v <= n2; ++v) z2[v - 1] = z[lab[v] - 1];
        mpq_class ratio = f1.eval(z1) * f2.eval(z2) / fa.eval(z);
        int s = ratio == 1 ? 1 : ratio == -1 ? -1 : 0;
        if (s == 0 || (rep.sign != 0 && s != rep.sign)) {
            rep.ok = false;
            rep.sign = 0;
            rep.points = pt + 1;
            return rep;
        }
        rep.sign = s;
    }
    rep.points = points;
    rep.log2_failure = points * (std::log2(static_cast<double>(std::max<long long>(1, rep.degree_bound))) - range_bits);
    return rep;
}

Substitution identity_substitution(int n) {
    int l = n - 3;
    Substitution s;
    s.nvars = l;
    s.jacobian = FactoredRational(Frame::cubical, n);
    for (int k = 0; k < l; ++k) {
        s.map.emplace_back(SparsePoly::var(l, k), SparsePoly::constant(l, 1));
        FactoredRational img(Frame::cubical, n);
        img.mul_factor(Factor::x(k + 1), 1);
        s.factors.push_back({"x" + std::to_string(k + 1), SparsePoly::var(l, k), img});
        FactoredRational img2(Frame::cubical, n);
        img2.mul_factor(Factor::one_minus(k + 1, k + 1), 1);
        s.factors.push_back({"1-x" + std::to_string(k + 1), SparsePoly::constant(l, 1) - SparsePoly::var(l, k), img2});
    }
    return s;
}

Substitution rv3_substitution() {
    const int n = 6, l = 3;
    auto one = SparsePoly::constant(l, 1);
    auto x = SparsePoly::var(l, 0), y = SparsePoly::var(l, 1), z = SparsePoly::var(l, 2);
    Substitution s;
    s.nvars = l;
    s.map = {{one - x * y, one}, {one - y, one - x * y}, {z, one}};
    auto X = SparsePoly::var(l, 0), Y = SparsePoly::var(l, 1), Z = SparsePoly::var(l, 2);
    auto img = [&](std::initializer_list<std::pair<Factor, int>> fs) {
        FactoredRational r(Frame::cubical, n);
        for (const auto& [f, e] : fs) r.mul_factor(f, e);
        return r;
    };
    s.factors = {
        {"X", X, img({{Factor::one_minus(1, 2), 1}})},
        {"1-X", one - X, img({{Factor::x(1), 1}, {Factor::x(2), 1}})},
        {"Y", Y, img({{Factor::one_minus(2, 2), 1}, {Factor::one_minus(1, 2), -1}})},
        {"1-Y", one - Y, img({{Factor::x(2), 1}, {Factor::one_minus(1, 1), 1}, {Factor::one_minus(1, 2), -1}})},
        {"Z", Z, img({{Factor::x(3), 1}})},
        {"1-Z", one - Z, img({{Factor::one_minus(3, 3), 1}})},
        {"1-(1-XY)Z", one - Z + X * Y * Z, img({{Factor::one_minus(2, 3), 1}})},
    };
    s.jacobian = img({{Factor::x(2), 1}, {Factor::one_minus(1, 2), -1}});
    return s;
}

namespace {

std::vector<mpq_class> random_cube_point(int l, std::mt19937_64& rng) {
    std::vector<mpq_class> x(l);
    for (int k = 0; k < l; ++k) {
        unsigned long den = 1000003ul + rng() % 1000000ul;
        unsigned long num = 1 + rng() % (den - 1);
        x[k] = mpq_class(num, den);
        x[k].canonicalize();
    }
    return x;
}

std::vector<mpq_class> apply_map(const Substitution& s, const std::vector<mpq_class>& x) {
    std::vector<mpq_class> X;
    for (const auto& [num, den] : s.map) X.push_back(num.eval(x) / den.eval(x));
    return X;
}

mpq_class determinant(std::vector<std::vector<mpq_class>> m) {
    int n = static_cast<int>(m.size());
    mpq_class det = 1;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            mpq_class f = m[r][c] / m[c][c];
            for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

}  // namespace

bool validate_dictionary(const Substitution& s, int points, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int p = 0; p < points; ++p) {
        auto x = random_cube_point(s.nvars, rng);
        auto X = apply_map(s, x);
        for (const auto& f : s.factors)
            if (f.poly.eval(X) != f.image.eval(x)) return false;
    }
    return true;
}

bool validate_jacobian(const Substitution& s, int points, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int l = s.nvars;
    for (int p = 0; p < points; ++p) {
        auto x = random_cube_point(l, rng);
        std::vector<std::vector<mpq_class>> J(l, std::vector<mpq_class>(l));
        for (int r = 0; r < l; ++r) {
            const auto& [N, D] = s.map[r];
            mpq_class nv = N.eval(x), dv = D.eval(x);
            for (int c = 0; c < l; ++c) J[r][c] = (N.derivative(c).eval(x) * dv - nv * D.derivative(c).eval(x)) / (dv * dv);
        }
        mpq_class det = determinant(J);
        if (abs(det) != abs(s.jacobian.eval(x))) return false;
    }
    return true;
}

FactoredRational pullback(const Substitution& s, const std::vector<long long>& exps, bool with_jacobian) {
    if (exps.size() != s.factors.size()) throw PreconditionError("one exponent per dictionary factor expected");
    FactoredRational r = with_jacobian ? s.jacobian : FactoredRational(s.jacobian.frame(), s.jacobian.n());
    for (std::size_t k = 0; k < exps.size(); ++k) r *= s.factors[k].image.pow(exps[k]);
    return r;
}

ParamSet rv_cell_params(const RvParams& rv) {
    std::vector<long long> a{rv.l, rv.s, rv.k, rv.q, rv.l + rv.s - rv.q, rv.r};
    return solve_homogeneity(Perm{1, 4, 2, 6, 3, 5}, a, rv.r - rv.q - rv.h + rv.s + rv.k, {3, 6});
}

std::vector<long long> rv3_exponents(const RvParams& rv) {
    return {rv.h, rv.l, rv.k, rv.s, rv.j(), rv.q, -(rv.q + rv.h - rv.r + 1)};
}

Rv3Report rv3_change_of_variables_check(const RvParams& rv) {
    Rv3Report rep;
    Substitution s = rv3_substitution();
    rep.dictionary_ok = validate_dictionary(s, 20, 17);
    rep.jacobian_ok = validate_jacobian(s, 20, 19);
    rep.cellular = general_integrand_cubical(rv_cell_params(rv)).coefficient;
    rep.pulled_back = pullback(s, rv3_exponents(rv));
    bool same = rep.cellular.equal_up_to_sign(rep.pulled_back);
    rep.sign = same ? rep.cellular.sign() * rep.pulled_back.sign() : 0;
    rep.ok = rep.dictionary_ok && rep.jacobian_ok && same;
    return rep;
}

bool rv3_change_of_variables_check() {
    for (const RvParams& rv : {RvParams{0, 0, 0, 0, 0, 0}, RvParams{1, 1, 1, 1, 1, 1}, RvParams{3, 2, 4, 1, 5, 2}, RvParams{2, 5, 1, 3, 4, 0}})
        if (!rv3_change_of_variables_check(rv).ok) return false;
    return true;
}

}  // namespace cellint
