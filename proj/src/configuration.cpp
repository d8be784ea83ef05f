#include "cellint/configuration.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <iostream>
#include <set>
#include <thread>
#include <unordered_set>

namespace cellint {

namespace {

constexpr int kMaxN = 31;

// lexicographic minimum over the double dihedral orbit; s and out hold n entries
void canon_raw(const int* s, int n, int* out) {
    int w[kMaxN];
    bool have = false;
    for (int r = 0; r < 2; ++r) {
        for (int sh = 0; sh < n; ++sh) {
            int p1 = -1;
            for (int k = 0; k < n; ++k) {
                int v = s[k];
                int g = r == 0 ? ((v - 1 + sh) % n) + 1 : ((n - v + sh) % n) + 1;
                w[k] = g;
                if (g == 1) p1 = k;
            }
            for (int dir : {1, n - 1}) {
                if (!have) {
                    for (int k = 0; k < n; ++k) out[k] = w[(p1 + dir * k) % n];
                    have = true;
                    continue;
                }
                int k = 0;
                while (k < n && w[(p1 + dir * k) % n] == out[k]) ++k;
                if (k < n && w[(p1 + dir * k) % n] < out[k])
                    for (; k < n; ++k) out[k] = w[(p1 + dir * k) % n];
            }
        }
    }
}

std::uint64_t encode(const int* s, int n) {
    std::uint64_t key = 0;
    for (int k = 0; k < n; ++k) key = key << 4 | static_cast<std::uint64_t>(s[k] - 1);
    return key;
}

Perm decode(std::uint64_t key, int n) {
    Perm p(n);
    for (int k = n - 1; k >= 0; --k) {
        p[k] = static_cast<int>(key & 15u) + 1;
        key >>= 4;
    }
    return p;
}

struct Scanner {
    int n;
    std::uint32_t full;
    int s[kMaxN];
    std::uint32_t pre[kMaxN + 1];
    std::unordered_set<std::uint64_t> found;

    bool leaf_ok() const {
        for (int i = 1; i < n; ++i)
            for (int len = 2; len <= n - 2; ++len) {
                int e = i + len - n;
                if (e <= 0) continue;
                std::uint32_t m = (full & ~pre[i]) | pre[e];
                if (is_cyclic_run(m, n)) return false;
            }
        return true;
    }

    void dfs(int k, std::uint32_t used) {
        if (k == n) {
            if (!leaf_ok()) return;
            int c[kMaxN];
            canon_raw(s, n, c);
            found.insert(encode(c, n));
            return;
        }
        for (int v = 1; v <= n; ++v) {
            std::uint32_t b = 1u << (v - 1);
            if (used & b) continue;
            std::uint32_t P = pre[k] | b;
            bool bad = false;
            for (int i = std::max(0, k - (n - 3)); i <= k - 1; ++i)
                if (is_cyclic_run(P & ~pre[i], n)) {
                    bad = true;
                    break;
                }
            if (bad) continue;
            s[k] = v;
            pre[k + 1] = P;
            dfs(k + 1, used | b);
        }
    }
};

}  // namespace

ConfigClass canonical_config(const Perm& p) {
    check_perm(p);
    int n = static_cast<int>(p.size());
    ConfigClass c;
    c.n = n;
    c.rep.resize(n);
    canon_raw(p.data(), n, c.rep.data());
    return c;
}

std::optional<StablePartition> convergence_witness(const Perm& p) {
    check_perm(p);
    int n = static_cast<int>(p.size());
    if (n < 4) throw PreconditionError("convergence needs n >= 4");
    for (int len = 2; len <= n - 2; ++len)
        for (int i = 0; i < n; ++i) {
            std::uint32_t m = 0;
            for (int k = 0; k < len; ++k) m |= 1u << (p[(i + k) % n] - 1);
            if (is_cyclic_run(m, n)) return StablePartition(n, m);
        }
    return std::nullopt;
}

bool is_convergent(const Perm& p) { return !convergence_witness(p).has_value(); }

bool is_dinner_valid(const Perm& p) {
    check_perm(p);
    int n = static_cast<int>(p.size());
    for (int i = 0; i < n; ++i) {
        int d = (p[(i + 1) % n] - p[i] + n) % n;
        if (d == 1 || d == n - 1) return false;
    }
    return true;
}

std::vector<ConfigClass> enumerate_convergent(int n, EnumerateOptions opt) {
    if (n < 4) throw PreconditionError("enumerate_convergent needs n >= 4");
    if (n > 15) throw PreconditionError("enumerate_convergent supports n <= 15");
    if (n > 12) std::cerr << "warning: enumeration for n=" << n << " is slow\n";
    int threads = std::max(1, opt.threads);
    // shard on the second entry; the first is fixed to n
    std::vector<int> shards;
    for (int v = 1; v < n; ++v) shards.push_back(v);
    std::vector<std::unordered_set<std::uint64_t>> results(shards.size());
    auto work = [&](int tid) {
        for (std::size_t si = tid; si < shards.size(); si += threads) {
            Scanner sc;
            sc.n = n;
            sc.full = (1u << n) - 1;
            sc.s[0] = n;
            sc.pre[0] = 0;
            sc.pre[1] = 1u << (n - 1);
            int v = shards[si];
            std::uint32_t P = sc.pre[1] | (1u << (v - 1));
            if (n - 2 >= 2 && is_cyclic_run(P, n)) continue;
            sc.s[1] = v;
            sc.pre[2] = P;
            sc.dfs(2, P);
            results[si] = std::move(sc.found);
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    std::set<std::uint64_t> all;
    for (auto& r : results) all.insert(r.begin(), r.end());
    std::vector<ConfigClass> out;
    out.reserve(all.size());
    for (auto key : all) out.push_back(ConfigClass{n, decode(key, n)});
    std::sort(out.begin(), out.end());
    return out;
}

ConfigClass dual(const ConfigClass& c) { return canonical_config(inverse(c.rep)); }

bool is_self_dual(const ConfigClass& c) { return dual(c) == c; }

Perm pi_odd_perm(int m) {
    if (m < 2) throw PreconditionError("pi_odd needs m >= 2");
    Perm p;
    for (int k = 0; k <= m - 2; ++k) {
        p.push_back(2 * m - k);
        p.push_back(k + 2);
    }
    p.push_back(1);
    p.push_back(m + 1);
    return p;
}

Perm pi_even_perm(int m) {
    if (m < 2) throw PreconditionError("pi_even needs m >= 2");
    Perm p;
    for (int k = 0; k <= m - 2; ++k) {
        p.push_back(2 * m + 1 - k);
        p.push_back(k + 2);
    }
    p.push_back(m + 2);
    p.push_back(1);
    p.push_back(m + 1);
    return p;
}

ConfigClass pi_odd(int m) {
    if (m < 3) throw PreconditionError("pi_odd needs m >= 3");
    return canonical_config(pi_odd_perm(m));
}

ConfigClass pi_even(int m) {
    if (m < 2) throw PreconditionError("pi_even needs m >= 2");
    return canonical_config(pi_even_perm(m));
}

bool is_multipliable(const ConfigPair& pair, const Triple& t) {
    int n = pair.delta.n();
    if (n < 3 || pair.deltap.n() != n) throw PreconditionError("multipliability needs a pair on the same set with |S| >= 3");
    for (int v : t)
        if (v < 1 || v > n) throw PreconditionError("triple entry out of range");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) throw PreconditionError("triple must be injective");
    const auto& d = pair.delta;
    bool run = d.adjacent(t[0], t[1]) && d.adjacent(t[1], t[2]);
    return run && pair.deltap.adjacent(t[0], t[2]);
}

ConfigPair dual_pair(const ConfigPair& p) { return ConfigPair{p.deltap, p.delta}; }

std::vector<int> product_relabel(int n1, const ConfigPair& pair2, const Triple& t1, const Triple& t2) {
    int n2 = pair2.delta.n();
    std::vector<int> lab(n2 + 1, 0);
    for (int k = 0; k < 3; ++k) lab[t2[k]] = t1[k];
    int next = n1 + 1;
    for (int v = 1; v <= n2; ++v)
        if (!lab[v]) lab[v] = next++;
    return lab;
}

namespace {

std::vector<int> walk(const std::vector<int>& w, int start, int dir) {
    int n = static_cast<int>(w.size());
    int p = static_cast<int>(std::find(w.begin(), w.end(), start) - w.begin());
    std::vector<int> out(n);
    for (int k = 0; k < n; ++k) out[k] = w[(p + dir * k + n * n) % n];
    return out;
}

// full contains T1,T2,T3 as a run; adj has T1,T3 adjacent
std::vector<int> glue(const std::vector<int>& full, const std::vector<int>& adj, const Triple& T) {
    auto f = walk(full, T[0], 1);
    if (f[1] != T[1]) f = walk(full, T[0], -1);
    auto a = walk(adj, T[0], 1);
    if (a[1] != T[2]) a = walk(adj, T[0], -1);
    std::vector<int> A, B;
    std::size_t k = 2;
    for (; a[k] != T[1]; ++k) A.push_back(a[k]);
    for (++k; k < a.size(); ++k) B.push_back(a[k]);
    std::vector<int> out{T[0]};
    out.insert(out.end(), B.rbegin(), B.rend());
    out.push_back(T[1]);
    out.insert(out.end(), A.rbegin(), A.rend());
    out.push_back(T[2]);
    out.insert(out.end(), f.begin() + 3, f.end());
    return out;
}

std::vector<int> relabel(const std::vector<int>& w, const std::vector<int>& lab) {
    std::vector<int> out;
    for (int v : w) out.push_back(lab[v]);
    return out;
}

}  // namespace

ConfigPair product(const ConfigPair& pair1, const ConfigPair& pair2, const Triple& t1, const Triple& t2) {
    if (!is_multipliable(pair1, t1)) throw PreconditionError("first factor is not multipliable along t1");
    if (!is_multipliable(dual_pair(pair2), t2)) throw PreconditionError("dual of second factor is not multipliable along t2");
    int n1 = pair1.delta.n();
    auto lab = product_relabel(n1, pair2, t1, t2);
    auto d2 = relabel(pair2.delta.word(), lab);
    auto d2p = relabel(pair2.deltap.word(), lab);
    auto alpha = glue(pair1.delta.word(), d2, t1);
    auto alphap = glue(d2p, pair1.deltap.word(), t1);
    return ConfigPair{DihedralStructure(alpha), DihedralStructure(alphap)};
}

ConfigClass config_of_pair(const ConfigPair& p) {
    const auto& a = p.delta.word();
    int n = p.delta.n();
    std::vector<int> lab(n + 1);
    for (int k = 0; k < n; ++k) lab[a[k]] = k + 1;
    return canonical_config(relabel(p.deltap.word(), lab));
}

ConfigPair pair_of_config(const ConfigClass& c) { return ConfigPair{c.delta(), c.deltap()}; }

const std::vector<NamedConfig>& catalog() {
    static const std::vector<std::string> z22{"zeta2^2"};
    static const std::vector<std::string> w5{"zeta5", "zeta2zeta3"};
    static const std::vector<NamedConfig> cat = {
        {"5pi", {5, 2, 4, 1, 3}, {"zeta2"}, {{1, 1}}},
        {"6pi", {6, 2, 4, 1, 5, 3}, {"zeta3"}, {{2, 1}}},
        {"7pi1", {7, 2, 4, 1, 6, 3, 5}, z22, {{17, 10}}},
        {"7pi1v", {7, 2, 5, 1, 4, 6, 3}, z22, {{7, 10}}},
        {"7pi2", {7, 2, 4, 6, 1, 3, 5}, z22, {{27, 10}}},
        {"7pi2v", {7, 3, 6, 2, 5, 1, 4}, z22, {{3, 10}}},
        {"7pi3", {7, 2, 5, 1, 3, 6, 4}, z22, {{1, 1}}},
        {"8pi1", {8, 2, 4, 1, 5, 7, 3, 6}, w5, {{0, 1}, {2, 1}}},
        {"8pi1v", {8, 2, 5, 1, 7, 4, 6, 3}, w5, {{0, 1}, {2, 1}}},
        {"8pi2", {8, 2, 4, 1, 6, 3, 7, 5}, w5, {{1, 1}, {1, 1}}},
        {"8pi3", {8, 2, 5, 1, 7, 3, 6, 4}, w5, {{1, 1}, {1, 1}}},
        {"8pi4", {8, 2, 4, 7, 1, 6, 3, 5}, w5, {{9, 1}, {-2, 1}}},
        {"8pi4v", {8, 2, 4, 7, 3, 6, 1, 5}, w5, {{9, 1}, {-4, 1}}},
        {"8pi5", {8, 2, 5, 3, 7, 1, 6, 4}, w5, {{9, 1}, {-2, 1}}},
        {"8pi5v", {8, 2, 6, 1, 5, 3, 7, 4}, w5, {{9, 1}, {-4, 1}}},
        {"8pi6", {8, 3, 6, 1, 4, 7, 2, 5}, w5, {{16, 1}, {-8, 1}}},
        {"8pi7", {8, 2, 4, 6, 1, 3, 7, 5}, w5, {{1, 1}, {3, 1}}},
        {"8pi7v", {8, 2, 5, 1, 6, 3, 7, 4}, w5, {{-1, 1}, {1, 1}}},
        {"8pi8", {8, 2, 5, 1, 6, 4, 7, 3}, w5, {{2, 1}, {0, 1}}},
        {"8pi8v", {8, 2, 4, 1, 7, 5, 3, 6}, w5, {{2, 1}, {4, 1}}},
        {"8pi9", {8, 2, 5, 7, 3, 1, 6, 4}, w5, {{-7, 1}, {6, 1}}},
        {"8pi9v", {8, 3, 6, 1, 5, 2, 7, 4}, w5, {{-7, 1}, {4, 1}}},
        {"8pi10", {8, 2, 5, 7, 3, 6, 1, 4}, w5, {{-8, 1}, {5, 1}}},
        {"8pi10v", {8, 2, 5, 7, 4, 1, 6, 3}, w5, {{8, 1}, {-3, 1}}},
        {"9sd1", {9, 2, 4, 1, 5, 7, 3, 8, 6}, {}, {}},
        {"9sd2", {9, 2, 4, 1, 5, 8, 6, 3, 7}, {}, {}},
        {"9sd3", {9, 2, 4, 6, 1, 7, 5, 8, 3}, {}, {}},
        {"9sd4", {9, 2, 4, 7, 5, 1, 6, 8, 3}, {}, {}},
    };
    return cat;
}

std::optional<Perm> lookup_named(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e.rep;
    return std::nullopt;
}

std::vector<std::string> names_of(const ConfigClass& c) {
    std::vector<std::string> out;
    for (const auto& e : catalog())
        if (static_cast<int>(e.rep.size()) == c.n && canonical_config(e.rep) == c) out.push_back(e.name);
    return out;
}

}  // namespace cellint
