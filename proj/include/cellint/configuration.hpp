#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cellint/dihedral.hpp"

namespace cellint {

struct ConfigClass {
    int n = 0;
    Perm rep;

    DihedralStructure delta() const { return DihedralStructure::standard(n); }
    DihedralStructure deltap() const { return DihedralStructure(rep); }
    int ell() const { return n - 3; }

    friend bool operator==(const ConfigClass&, const ConfigClass&) = default;
    friend bool operator<(const ConfigClass& a, const ConfigClass& b) { return a.rep < b.rep; }
};

ConfigClass canonical_config(const Perm& p);
bool is_convergent(const Perm& p);
inline bool is_convergent(const ConfigClass& c) { return is_convergent(c.rep); }
// smallest common finite-distance divisor, normalized to the block containing 1
std::optional<StablePartition> convergence_witness(const Perm& p);
bool is_dinner_valid(const Perm& p);

struct EnumerateOptions {
    int threads = 1;
};
std::vector<ConfigClass> enumerate_convergent(int n, EnumerateOptions opt = {});

ConfigClass dual(const ConfigClass& c);
bool is_self_dual(const ConfigClass& c);

ConfigClass pi_odd(int m);
ConfigClass pi_even(int m);
Perm pi_odd_perm(int m);
Perm pi_even_perm(int m);

struct ConfigPair {
    DihedralStructure delta;
    DihedralStructure deltap;
};

using Triple = std::array<int, 3>;

bool is_multipliable(const ConfigPair& pair, const Triple& t);
ConfigPair dual_pair(const ConfigPair& p);
// labels of the second factor outside t2 become |S1|+1, ... in increasing order
std::vector<int> product_relabel(int n1, const ConfigPair& pair2, const Triple& t1, const Triple& t2);
ConfigPair product(const ConfigPair& pair1, const ConfigPair& pair2, const Triple& t1, const Triple& t2);
ConfigClass config_of_pair(const ConfigPair& p);
ConfigPair pair_of_config(const ConfigClass& c);

// named representatives from the n=5..9 tables
struct NamedConfig {
    std::string name;
    Perm rep;
    // tabulated I(0) as rational coefficients (num, den) over value_basis
    std::vector<std::string> value_basis;
    std::vector<std::pair<long, long>> value;
};
const std::vector<NamedConfig>& catalog();
std::optional<Perm> lookup_named(const std::string& name);
std::vector<std::string> names_of(const ConfigClass& c);

}  // namespace cellint
