#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cellint {

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// exact half-integer, stored doubled
struct HalfInt {
    long long doubled = 0;

    static HalfInt from_doubled(long long d) { return HalfInt{d}; }
    static HalfInt from_int(long long v) { return HalfInt{2 * v}; }
    bool is_integer() const { return doubled % 2 == 0; }
    long long as_integer() const;
    double to_double() const { return doubled / 2.0; }
    std::string str() const;

    friend HalfInt operator+(HalfInt a, HalfInt b) { return {a.doubled + b.doubled}; }
    friend HalfInt operator-(HalfInt a, HalfInt b) { return {a.doubled - b.doubled}; }
    friend HalfInt operator-(HalfInt a) { return {-a.doubled}; }
    friend auto operator<=>(HalfInt, HalfInt) = default;
};

using Perm = std::vector<int>;

void check_perm(const Perm& p);
Perm inverse(const Perm& p);
Perm identity_perm(int n);
std::string perm_str(const Perm& p, const char* sep = ",");
Perm parse_perm(const std::string& s);

class DihedralStructure {
public:
    DihedralStructure() = default;
    explicit DihedralStructure(std::vector<int> cyclic);
    static DihedralStructure standard(int n);

    int n() const { return static_cast<int>(word_.size()); }
    const std::vector<int>& word() const { return word_; }
    bool adjacent(int u, int v) const;
    int position(int v) const { return pos_[v]; }
    // neighbours of v in the cyclic order
    int next(int v) const;
    int prev(int v) const;
    // is the set of labels (bit v-1 for label v) one cyclic run
    bool is_run(std::uint32_t mask) const;

    friend bool operator==(const DihedralStructure& a, const DihedralStructure& b) { return a.word_ == b.word_; }
    friend bool operator<(const DihedralStructure& a, const DihedralStructure& b) { return a.word_ < b.word_; }

private:
    std::vector<int> word_;
    std::vector<int> pos_;  // indexed by label, size n+1
};

class StablePartition {
public:
    StablePartition(int n, std::uint32_t block);

    int n() const { return n_; }
    std::uint32_t block() const { return block_; }
    std::uint32_t complement() const { return full() & ~block_; }
    std::uint32_t full() const { return (n_ == 32 ? ~0u : ((1u << n_) - 1)); }
    bool contains(int v) const { return block_ >> (v - 1) & 1u; }
    bool same_side(int u, int v) const { return contains(u) == contains(v); }
    std::vector<int> elements() const;
    std::string str() const;

    friend auto operator<=>(const StablePartition&, const StablePartition&) = default;

private:
    int n_;
    std::uint32_t block_;
};

bool is_cyclic_run(std::uint32_t mask, int n);
int popcount32(std::uint32_t m);

std::set<StablePartition> finite_distance_divisors(const DihedralStructure& d);
std::vector<StablePartition> all_stable_partitions(int n);
long long infinite_divisor_count(int n);

HalfInt indicator_ID(const StablePartition& D, int i, int j);
HalfInt indicator_sum(const StablePartition& D, const DihedralStructure& d);
HalfInt ord_f(const DihedralStructure& delta, const DihedralStructure& deltap, const StablePartition& D);
HalfInt ord_omega(const DihedralStructure& sigma, const StablePartition& D);

}  // namespace cellint
