#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>

#include "cellint/configuration.hpp"
#include "cellint/dihedral.hpp"
#include "doctest.h"

using namespace cellint;

namespace {

// orbit under the four generators by breadth-first closure
std::set<Perm> orbit(const Perm& p) {
    int n = static_cast<int>(p.size());
    std::set<Perm> seen{p};
    std::vector<Perm> todo{p};
    while (!todo.empty()) {
        Perm q = todo.back();
        todo.pop_back();
        Perm a(n), b(n), c(n), d(n);
        for (int i = 0; i < n; ++i) {
            a[i] = q[(i + 1) % n];
            b[i] = q[n - 1 - i];
            c[i] = q[i] % n + 1;
            d[i] = n + 1 - q[i];
        }
        for (auto& r : {a, b, c, d})
            if (seen.insert(r).second) todo.push_back(r);
    }
    return seen;
}

bool brute_convergent(const Perm& p) {
    auto a = finite_distance_divisors(DihedralStructure::standard(static_cast<int>(p.size())));
    auto b = finite_distance_divisors(DihedralStructure(p));
    for (const auto& d : a)
        if (b.count(d)) return false;
    return true;
}

Perm random_perm(int n, std::mt19937_64& rng) {
    Perm p = identity_perm(n);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace

TEST_CASE("half integers") {
    HalfInt h = HalfInt::from_doubled(3);
    CHECK(h.str() == "3/2");
    CHECK_FALSE(h.is_integer());
    CHECK((h + h).as_integer() == 3);
    CHECK_THROWS(h.as_integer());
    CHECK(HalfInt::from_int(-2).str() == "-2");
}

TEST_CASE("dihedral structure canonical word") {
    CHECK(DihedralStructure({3, 2, 1, 5, 4}).word() == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(DihedralStructure::standard(6).word() == identity_perm(6));
    DihedralStructure d({2, 4, 1, 3, 5});
    CHECK(d.word() == std::vector<int>{1, 3, 5, 2, 4});
    CHECK(d.adjacent(4, 1));
    CHECK_FALSE(d.adjacent(1, 2));
    CHECK_THROWS_AS(DihedralStructure({1, 2, 2}), PreconditionError);
}

TEST_CASE("stable partitions") {
    StablePartition a(5, 0b11100);
    CHECK(a.block() == 0b00011);
    CHECK(a == StablePartition(5, 0b00011));
    CHECK(a.str() == "{1,2}|{3,4,5}");
    CHECK_THROWS_AS(StablePartition(5, 0b00001), PreconditionError);
    CHECK_THROWS_AS(StablePartition(3, 0b011), PreconditionError);
    CHECK(all_stable_partitions(8).size() == 119u);
}

TEST_CASE("finite distance divisors") {
    auto d4 = finite_distance_divisors(DihedralStructure::standard(4));
    CHECK(d4 == std::set<StablePartition>{StablePartition(4, 0b0011), StablePartition(4, 0b0110)});
    CHECK_THROWS_AS(finite_distance_divisors(DihedralStructure::standard(3)), PreconditionError);
    for (int n = 4; n <= 10; ++n) {
        auto ds = finite_distance_divisors(DihedralStructure::standard(n));
        CHECK(ds.size() == static_cast<std::size_t>(n * (n - 3) / 2));
        // brute force: consecutive blocks of the standard order
        std::size_t runs = 0;
        for (const auto& D : all_stable_partitions(n)) {
            auto e = D.elements();
            bool consecutive = false;
            for (int s = 1; s <= n && !consecutive; ++s) {
                std::set<int> w;
                for (int k = 0; k < static_cast<int>(e.size()); ++k) w.insert((s - 1 + k) % n + 1);
                consecutive = w == std::set<int>(e.begin(), e.end());
                std::vector<int> comp;
                for (int v = 1; v <= n; ++v)
                    if (!D.contains(v)) comp.push_back(v);
                std::set<int> w2;
                for (int k = 0; k < static_cast<int>(comp.size()); ++k) w2.insert((s - 1 + k) % n + 1);
                consecutive = consecutive || w2 == std::set<int>(comp.begin(), comp.end());
            }
            runs += consecutive;
            CHECK(consecutive == static_cast<bool>(ds.count(D)));
        }
        CHECK(runs == ds.size());
    }
}

TEST_CASE("infinite divisor count") {
    CHECK(infinite_divisor_count(4) == 1);
    CHECK(infinite_divisor_count(5) == 5);
    CHECK(infinite_divisor_count(6) == 16);
    for (int n = 4; n <= 12; ++n) {
        long long total = (1LL << (n - 1)) - 1 - n;
        CHECK(static_cast<long long>(all_stable_partitions(n).size()) == total);
        CHECK(infinite_divisor_count(n) + n * (n - 3) / 2 == total);
        CHECK(infinite_divisor_count(n) == (1LL << (n - 1)) - n * (n - 1) / 2 - 1);
    }
}

TEST_CASE("canonical_config") {
    CHECK(canonical_config({5, 2, 4, 1, 3}).rep == Perm{1, 3, 5, 2, 4});
    CHECK(canonical_config({8, 2, 7, 3, 6, 4, 1, 5}) == canonical_config({8, 2, 5, 1, 6, 4, 7, 3}));
    CHECK(canonical_config(identity_perm(7)).rep == identity_perm(7));
    CHECK_THROWS_AS(canonical_config({1, 2}), PreconditionError);
    std::mt19937_64 rng(7);
    for (int n = 3; n <= 7; ++n)
        for (int trial = 0; trial < 40; ++trial) {
            Perm p = random_perm(n, rng);
            auto orb = orbit(p);
            CHECK(canonical_config(p).rep == *orb.begin());
        }
    for (int n = 4; n <= 9; ++n)
        for (int trial = 0; trial < 1000; ++trial) {
            Perm p = random_perm(n, rng);
            auto c = canonical_config(p);
            CHECK(canonical_config(c.rep) == c);
            Perm g = p;
            int steps = static_cast<int>(rng() % 12);
            for (int s = 0; s < steps; ++s) {
                Perm h(n);
                int kind = static_cast<int>(rng() % 4);
                for (int i = 0; i < n; ++i)
                    h[i] = kind == 0 ? g[(i + 1) % n] : kind == 1 ? g[n - 1 - i] : kind == 2 ? g[i] % n + 1 : n + 1 - g[i];
                g = h;
            }
            CHECK(canonical_config(g) == c);
            CHECK(is_convergent(g) == is_convergent(p));
        }
}

TEST_CASE("is_convergent") {
    CHECK(is_convergent(Perm{5, 2, 4, 1, 3}));
    CHECK_FALSE(is_convergent(Perm{2, 4, 1, 3, 6, 8, 5, 7}));
    auto w = convergence_witness({2, 4, 1, 3, 6, 8, 5, 7});
    REQUIRE(w);
    CHECK(w->str() == "{1,2,3,4}|{5,6,7,8}");
    for (int n = 4; n <= 9; ++n) CHECK_FALSE(is_convergent(identity_perm(n)));
    std::mt19937_64 rng(11);
    for (int n = 4; n <= 9; ++n)
        for (int trial = 0; trial < 300; ++trial) {
            Perm p = random_perm(n, rng);
            CHECK(is_convergent(p) == brute_convergent(p));
        }
}

TEST_CASE("convergent versus dinner table") {
    for (int n = 4; n <= 8; ++n) {
        Perm p = identity_perm(n);
        do {
            bool c = is_convergent(p);
            bool d = is_dinner_valid(p);
            if (c) CHECK(d);
            if (n <= 7) CHECK(c == d);
        } while (std::next_permutation(p.begin(), p.end()));
    }
}

TEST_CASE("enumeration counts") {
    std::vector<std::size_t> golden{0, 1, 1, 5, 17, 105};
    for (int n = 4; n <= 9; ++n) CHECK(enumerate_convergent(n).size() == golden[n - 4]);
    CHECK(enumerate_convergent(9, {3}) == enumerate_convergent(9));
    // brute force over all permutations at n=8
    std::set<Perm> reps;
    Perm p = identity_perm(8);
    do {
        if (is_convergent(p)) reps.insert(canonical_config(p).rep);
    } while (std::next_permutation(p.begin(), p.end()));
    auto e = enumerate_convergent(8);
    std::set<Perm> er;
    for (auto& c : e) er.insert(c.rep);
    CHECK(er == reps);
    CHECK(std::is_sorted(e.begin(), e.end()));
}

TEST_CASE("duality") {
    CHECK(dual(canonical_config({7, 2, 4, 1, 6, 3, 5})) == canonical_config({7, 2, 5, 1, 4, 6, 3}));
    CHECK(is_self_dual(canonical_config({5, 2, 4, 1, 3})));
    // n=9 value from the orbit brute force below, not the printed table
    std::vector<int> golden{1, 1, 1, 3, 11};
    for (int n = 5; n <= 9; ++n) {
        int sd = 0;
        for (const auto& c : enumerate_convergent(n)) {
            CHECK(dual(dual(c)) == c);
            CHECK(is_convergent(dual(c)));
            sd += is_self_dual(c);
        }
        CHECK(sd == golden[n - 5]);
    }
}

TEST_CASE("self-dual brute force n=9") {
    int n = 9;
    std::set<Perm> classes;
    Perm tail = identity_perm(n - 1);
    do {
        Perm p{n};
        p.insert(p.end(), tail.begin(), tail.end());
        if (brute_convergent(p)) classes.insert(*orbit(p).begin());
    } while (std::next_permutation(tail.begin(), tail.end()));
    CHECK(classes.size() == 105u);
    int sd = 0;
    for (const auto& c : classes) sd += *orbit(inverse(c)).begin() == c;
    CHECK(sd == 11);
}

TEST_CASE("indicator calculus") {
    StablePartition D(4, 0b0011);
    CHECK(indicator_ID(D, 1, 2).str() == "1/2");
    CHECK(indicator_ID(D, 1, 3).doubled == 0);
    CHECK_THROWS(indicator_ID(D, 2, 2));
    for (int n = 4; n <= 8; ++n) {
        auto parts = all_stable_partitions(n);
        Perm p = identity_perm(n);
        std::set<Perm> seen;
        do {
            DihedralStructure s(p);
            if (!seen.insert(s.word()).second) continue;
            auto fd = finite_distance_divisors(s);
            for (const auto& Dp : parts) {
                long long d2 = indicator_sum(Dp, s).doubled;
                CHECK(d2 <= n - 2);
                CHECK((d2 == n - 2) == static_cast<bool>(fd.count(Dp)));
                CHECK(d2 % 2 == n % 2);
            }
        } while (std::next_permutation(p.begin(), p.end()));
    }
    auto d0 = DihedralStructure::standard(8);
    auto fd = finite_distance_divisors(d0);
    for (const auto& Dp : all_stable_partitions(8))
        if (!fd.count(Dp)) CHECK(indicator_sum(Dp, d0).to_double() < 3);
}

TEST_CASE("orders of vanishing") {
    for (int n = 4; n <= 9; ++n) {
        auto d0 = DihedralStructure::standard(n);
        for (const auto& D : finite_distance_divisors(d0)) CHECK(ord_omega(d0, D).doubled == -2);
        for (const auto& D : all_stable_partitions(n)) CHECK(ord_f(d0, d0, D).doubled == 0);
    }
    for (int n = 5; n <= 8; ++n)
        for (const auto& c : enumerate_convergent(n)) {
            auto d = c.delta(), dp = c.deltap();
            for (const auto& D : finite_distance_divisors(d)) {
                auto o = ord_f(d, dp, D);
                CHECK(o.doubled > 0);
                CHECK(o == HalfInt::from_doubled(n - 2) - indicator_sum(D, dp));
            }
        }
}

TEST_CASE("pi_odd and pi_even") {
    CHECK(pi_odd_perm(4) == Perm{8, 2, 7, 3, 6, 4, 1, 5});
    CHECK(pi_odd(4) == canonical_config({8, 2, 5, 1, 6, 4, 7, 3}));
    CHECK(pi_even(3) == canonical_config({7, 2, 5, 1, 4, 6, 3}));
    CHECK(pi_even(2) == canonical_config({5, 2, 4, 1, 3}));
    for (int m = 3; m <= 6; ++m) CHECK(is_convergent(pi_odd(m)));
    for (int m = 2; m <= 6; ++m) CHECK(is_convergent(pi_even(m)));
    CHECK_THROWS_AS(pi_odd(2), PreconditionError);
}

TEST_CASE("catalog membership") {
    for (int n = 5; n <= 9; ++n) {
        auto e = enumerate_convergent(n);
        for (const auto& nc : catalog())
            if (static_cast<int>(nc.rep.size()) == n)
                CHECK(std::binary_search(e.begin(), e.end(), canonical_config(nc.rep)));
    }
    // the 17 n=8 classes are exactly the named ones
    std::set<Perm> named;
    for (const auto& nc : catalog())
        if (nc.rep.size() == 8) named.insert(canonical_config(nc.rep).rep);
    CHECK(named.size() == 17u);
    CHECK(names_of(canonical_config({8, 2, 7, 3, 6, 4, 1, 5})) == std::vector<std::string>{"8pi8"});
    CHECK(*lookup_named("7pi1") == Perm{7, 2, 4, 1, 6, 3, 5});
    CHECK_FALSE(lookup_named("nope"));
}

TEST_CASE("multipliability") {
    // p1..p5 as 1..5
    ConfigPair pr{DihedralStructure({1, 2, 3, 4, 5}), DihedralStructure({2, 4, 1, 3, 5})};
    CHECK(is_multipliable(pr, {3, 4, 5}));
    CHECK(is_multipliable(pr, {5, 4, 3}));
    // 1,2,3 is a run of delta and 1,3 are adjacent in delta'
    CHECK(is_multipliable(pr, {1, 2, 3}));
    int count = 0;
    for (int a = 1; a <= 5; ++a)
        for (int b = 1; b <= 5; ++b)
            for (int c = 1; c <= 5; ++c) {
                if (a == b || b == c || a == c) continue;
                bool brute = pr.delta.adjacent(a, b) && pr.delta.adjacent(b, c) && pr.deltap.adjacent(a, c);
                CHECK(is_multipliable(pr, {a, b, c}) == brute);
                CHECK(is_multipliable(pr, {a, b, c}) == is_multipliable(pr, {c, b, a}));
                count += brute;
            }
    CHECK(count == 10);
    CHECK_THROWS_AS(is_multipliable(pr, {1, 1, 2}), PreconditionError);
}

TEST_CASE("product") {
    ConfigPair p1{DihedralStructure({1, 2, 3, 4, 5}), DihedralStructure({2, 4, 1, 3, 5})};
    ConfigPair p2{DihedralStructure({1, 2, 3, 4, 5, 6}), DihedralStructure({6, 2, 4, 1, 5, 3})};
    CHECK(config_of_pair(p1) == canonical_config({5, 2, 4, 1, 3}));
    CHECK(dual(config_of_pair(p2)) == canonical_config({6, 2, 4, 1, 5, 3}));
    auto pr = product(p1, p2, {3, 4, 5}, {4, 1, 5});
    // labels: q2 -> 6, q3 -> 7, q6 -> 8
    CHECK(pr.delta == DihedralStructure({1, 2, 3, 7, 6, 4, 8, 5}));
    CHECK(pr.deltap == DihedralStructure({3, 1, 4, 2, 5, 7, 8, 6}));
    CHECK(config_of_pair(pr) == canonical_config({8, 2, 4, 1, 5, 7, 3, 6}));
    CHECK_THROWS_WITH_AS(product(p1, p2, {1, 3, 5}, {4, 1, 5}), "first factor is not multipliable along t1", PreconditionError);
    CHECK_THROWS_WITH_AS(product(p1, p2, {3, 4, 5}, {1, 2, 3}), "dual of second factor is not multipliable along t2", PreconditionError);

    ConfigPair tri{DihedralStructure({1, 2, 3}), DihedralStructure({1, 2, 3})};
    auto same = product(p1, tri, {3, 4, 5}, {1, 2, 3});
    CHECK(same.delta == p1.delta);
    CHECK(same.deltap == p1.deltap);

    // every product of convergent n=5,6 factors is a convergent n=8 class
    auto e8 = enumerate_convergent(8);
    std::vector<ConfigPair> f5, f6;
    for (int n : {5, 6})
        for (const auto& c : enumerate_convergent(n)) {
            Perm q = c.rep;
            std::set<Perm> orb;
            // all pairs in the class with delta' varying, delta standard
            Perm g = q;
            for (int r = 0; r < 2; ++r)
                for (int s = 0; s < n; ++s) {
                    Perm h(n);
                    for (int i = 0; i < n; ++i) h[i] = r ? ((n - q[i] + s) % n) + 1 : ((q[i] - 1 + s) % n) + 1;
                    orb.insert(h);
                }
            for (const auto& h : orb) (n == 5 ? f5 : f6).push_back(ConfigPair{DihedralStructure::standard(n), DihedralStructure(h)});
        }
    std::set<Perm> hit;
    int products = 0;
    for (const auto& a : f5)
        for (const auto& b : f6)
            for (int x = 1; x <= 5; ++x)
                for (int y = 1; y <= 6; ++y) {
                    Triple t1{x, x % 5 + 1, (x + 1) % 5 + 1};
                    Triple t2{b.deltap.word()[(b.deltap.position(y) + 0) % 6], b.deltap.next(y), b.deltap.next(b.deltap.next(y))};
                    if (!is_multipliable(a, t1) || !is_multipliable(dual_pair(b), t2)) continue;
                    auto c = config_of_pair(product(a, b, t1, t2));
                    ++products;
                    CHECK(is_convergent(c));
                    CHECK(std::binary_search(e8.begin(), e8.end(), c));
                    hit.insert(c.rep);
                }
    CHECK(products > 0);
    CHECK(hit.count(canonical_config({8, 2, 4, 1, 5, 7, 3, 6}).rep));
}
