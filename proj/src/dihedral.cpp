#include "cellint/dihedral.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace cellint {

long long HalfInt::as_integer() const {
    if (!is_integer()) throw std::logic_error("half-integer valuation used where an integer is required");
    return doubled / 2;
}

std::string HalfInt::str() const {
    if (is_integer()) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

void check_perm(const Perm& p) {
    int n = static_cast<int>(p.size());
    if (n < 3) throw PreconditionError("permutation needs n >= 3");
    if (n > 31) throw PreconditionError("n too large");
    std::vector<bool> seen(n + 1, false);
    for (int v : p) {
        if (v < 1 || v > n || seen[v]) throw PreconditionError("not a permutation of 1..n: " + perm_str(p));
        seen[v] = true;
    }
}

Perm inverse(const Perm& p) {
    Perm q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[p[i] - 1] = static_cast<int>(i) + 1;
    return q;
}

Perm identity_perm(int n) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i + 1;
    return p;
}

std::string perm_str(const Perm& p, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(p[i]);
    }
    return s;
}

Perm parse_perm(const std::string& s) {
    Perm p;
    std::string tok;
    std::stringstream ss(s);
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](char c) { return c == ' ' || c == '[' || c == ']' || c == '(' || c == ')'; }), tok.end());
        if (tok.empty()) continue;
        try {
            p.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw PreconditionError("cannot parse permutation entry '" + tok + "'");
        }
    }
    check_perm(p);
    return p;
}

int popcount32(std::uint32_t m) { return std::popcount(m); }

bool is_cyclic_run(std::uint32_t mask, int n) {
    std::uint32_t full = (1u << n) - 1;
    mask &= full;
    if (mask == 0 || mask == full) return false;
    std::uint32_t rot = ((mask << 1) | (mask >> (n - 1))) & full;
    return std::popcount(mask & ~rot) == 1;
}

DihedralStructure::DihedralStructure(std::vector<int> cyclic) {
    check_perm(cyclic);
    int n = static_cast<int>(cyclic.size());
    int p1 = static_cast<int>(std::find(cyclic.begin(), cyclic.end(), 1) - cyclic.begin());
    int nxt = cyclic[(p1 + 1) % n], prv = cyclic[(p1 + n - 1) % n];
    int dir = nxt < prv ? 1 : n - 1;
    word_.resize(n);
    for (int k = 0; k < n; ++k) word_[k] = cyclic[(p1 + dir * k) % n];
    pos_.assign(n + 1, 0);
    for (int k = 0; k < n; ++k) pos_[word_[k]] = k;
}

DihedralStructure DihedralStructure::standard(int n) { return DihedralStructure(identity_perm(n)); }

int DihedralStructure::next(int v) const { return word_[(pos_[v] + 1) % n()]; }
int DihedralStructure::prev(int v) const { return word_[(pos_[v] + n() - 1) % n()]; }

bool DihedralStructure::adjacent(int u, int v) const { return next(u) == v || prev(u) == v; }

bool DihedralStructure::is_run(std::uint32_t mask) const {
    std::uint32_t m = 0;
    for (int v = 1; v <= n(); ++v)
        if (mask >> (v - 1) & 1u) m |= 1u << pos_[v];
    return is_cyclic_run(m, n());
}

StablePartition::StablePartition(int n, std::uint32_t block) : n_(n), block_(block) {
    if (n < 4 || n > 31) throw PreconditionError("stable partitions need 4 <= n <= 31");
    block_ &= full();
    int k = std::popcount(block_);
    if (k < 2 || n - k < 2) throw PreconditionError("both blocks of a stable partition need at least 2 elements");
    // keep the block containing 1
    if (!(block_ & 1u)) block_ = complement();
}

std::vector<int> StablePartition::elements() const {
    std::vector<int> e;
    for (int v = 1; v <= n_; ++v)
        if (contains(v)) e.push_back(v);
    return e;
}

std::string StablePartition::str() const {
    std::string s = "{";
    bool first = true;
    for (int v = 1; v <= n_; ++v)
        if (contains(v)) {
            if (!first) s += ",";
            s += std::to_string(v);
            first = false;
        }
    s += "}|{";
    first = true;
    for (int v = 1; v <= n_; ++v)
        if (!contains(v)) {
            if (!first) s += ",";
            s += std::to_string(v);
            first = false;
        }
    return s + "}";
}

std::set<StablePartition> finite_distance_divisors(const DihedralStructure& d) {
    int n = d.n();
    if (n < 4) throw PreconditionError("finite_distance_divisors needs n >= 4");
    std::set<StablePartition> out;
    const auto& w = d.word();
    for (int start = 0; start < n; ++start) {
        std::uint32_t m = 0;
        for (int len = 1; len <= n - 2; ++len) {
            m |= 1u << (w[(start + len - 1) % n] - 1);
            if (len >= 2) out.insert(StablePartition(n, m));
        }
    }
    return out;
}

std::vector<StablePartition> all_stable_partitions(int n) {
    if (n < 4) throw PreconditionError("stable partitions need n >= 4");
    std::vector<StablePartition> out;
    std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t m = 1; m < full; m += 2) {
        int k = std::popcount(m);
        if (k >= 2 && n - k >= 2) out.emplace_back(n, m);
    }
    return out;
}

long long infinite_divisor_count(int n) {
    if (n < 4) throw PreconditionError("infinite_divisor_count needs n >= 4");
    if (n > 26) return (1LL << (n - 1)) - 1 - static_cast<long long>(n) * (n - 1) / 2;
    long long c = 0;
    std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t m = 1; m < full; m += 2) {
        int k = std::popcount(m);
        if (k >= 2 && n - k >= 2 && !is_cyclic_run(m, n)) ++c;
    }
    return c;
}

HalfInt indicator_ID(const StablePartition& D, int i, int j) {
    if (i == j) throw PreconditionError("indicator needs i != j");
    return HalfInt::from_doubled(D.same_side(i, j) ? 1 : 0);
}

HalfInt indicator_sum(const StablePartition& D, const DihedralStructure& d) {
    long long c = 0;
    const auto& w = d.word();
    int n = d.n();
    for (int k = 0; k < n; ++k) c += D.same_side(w[k], w[(k + 1) % n]);
    return HalfInt::from_doubled(c);
}

HalfInt ord_f(const DihedralStructure& delta, const DihedralStructure& deltap, const StablePartition& D) {
    HalfInt r = indicator_sum(D, delta) - indicator_sum(D, deltap);
    if (!r.is_integer()) throw std::logic_error("non-integral order of f");
    return r;
}

HalfInt ord_omega(const DihedralStructure& sigma, const StablePartition& D) {
    int l = sigma.n() - 3;
    return HalfInt::from_doubled(l - 1) - indicator_sum(D, sigma);
}

}  // namespace cellint
