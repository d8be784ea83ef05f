#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cellint/configuration.hpp"
#include "cellint/factored.hpp"

namespace cellint {

// f~ for a pair of cyclic words, z frame
FactoredRational f_tilde(const std::vector<int>& delta, const std::vector<int>& deltap);
// omega~ coefficient of a cyclic word, z frame
DifferentialForm omega_tilde(const std::vector<int>& word);

struct BasicIntegrand {
    FactoredRational f;     // simplicial, positive on the open cell
    DifferentialForm omega; // simplicial, positive coefficient
    int f_flip = 1;         // sign removed from f during normalization
    int omega_flip = 1;
};

BasicIntegrand build_basic(const Perm& sigma);
BasicIntegrand build_basic(const ConfigClass& c);

struct ParamSet {
    std::vector<int> delta;    // cyclic word
    std::vector<int> deltap;   // cyclic word
    std::vector<long long> a;  // a[k] on edge (delta[k], delta[k+1])
    std::vector<long long> b;  // b[k] on edge (deltap[k], deltap[k+1])

    int n() const { return static_cast<int>(delta.size()); }
    long long a_edge(int u, int v) const;
    long long b_edge(int u, int v) const;
    // residual of the homogeneity equation at each letter, indexed 1..n
    std::vector<long long> homogeneity_residuals() const;
    bool homogeneous() const;
    std::string str() const;
    nlohmann::json to_json() const;
};

int edge_index(const std::vector<int>& word, int u, int v);

ParamSet basic_params(const std::vector<int>& delta, const std::vector<int>& deltap, long long N);
ParamSet basic_params(const ConfigClass& c, long long N);

// b_fixed is (edge {u,v} of delta', value); for even n without an edge the edge {sigma_n, sigma_1} is used
ParamSet solve_homogeneity(const std::vector<int>& delta, const std::vector<int>& deltap, const std::vector<long long>& a,
                           std::optional<long long> b = std::nullopt, std::pair<int, int> b_edge = {0, 0});
ParamSet solve_homogeneity(const Perm& sigma, const std::vector<long long>& a, std::optional<long long> b = std::nullopt,
                           std::pair<int, int> b_edge = {0, 0});
ParamSet solve_homogeneity(const ConfigClass& c, const std::vector<long long>& a, std::optional<long long> b = std::nullopt,
                           std::pair<int, int> b_edge = {0, 0});

FactoredRational build_general(const ParamSet& p);             // z frame
DifferentialForm general_integrand(const ParamSet& p);          // simplicial, f(a,b) * omega_{delta'}
DifferentialForm general_integrand_cubical(const ParamSet& p);  // cubical, positive

HalfInt ord_along(const ParamSet& p, const StablePartition& D, bool with_omega = true);

struct ConvergenceReport {
    bool convergent = true;
    std::optional<StablePartition> witness;
    HalfInt order;  // valuation along the witness
};
ConvergenceReport is_convergent_params(const ParamSet& p);

// counts of a-terms and b-terms in the valuation of f along D
std::pair<int, int> ofd_term_counts(const ParamSet& p, const StablePartition& D);

bool in_region_C(const std::vector<long long>& x, int n);

struct RegionCheckReport {
    int inside = 0;          // sampled points of C^n on the homogeneity locus
    int inside_ok = 0;       // of those, convergent
    int negative = 0;        // sampled points with one a_(i,i+1) < 0
    int negative_ok = 0;     // of those, divergent with witness D_(i,i+1) for a negative edge
    long long attempts = 0;
    std::vector<std::string> failures;  // first few counterexamples
    bool ok() const { return inside_ok == inside && negative_ok == negative; }
    nlohmann::json to_json() const;
};

// m ranges over [n^2, m_max]
RegionCheckReport region_check(const ConfigClass& c, int points, std::uint64_t seed, long long m_max = 1000000);

struct PullbackReport {
    bool ok = false;
    int sign = 0;
    int points = 0;
    long long degree_bound = 0;
    double log2_failure = 0;  // log2 of the failure probability bound
    ParamSet factor1, factor2;
};

std::pair<ParamSet, ParamSet> extend_factor_params(const ConfigPair& pair1, const ConfigPair& pair2, const Triple& t1,
                                                   const Triple& t2, const ParamSet& params);
PullbackReport pullback_check(const ConfigPair& pair1, const ConfigPair& pair2, const Triple& t1, const Triple& t2,
                              const ParamSet& params, int points = 20, std::uint64_t seed = 1);

// change of variables given by a factor dictionary
struct SourceFactor {
    std::string name;
    SparsePoly poly;         // in the source variables
    FactoredRational image;  // pullback in the target frame
};

struct Substitution {
    int nvars = 0;
    std::vector<std::pair<SparsePoly, SparsePoly>> map;  // source var k = num/den in target vars
    std::vector<SourceFactor> factors;
    FactoredRational jacobian;
};

Substitution identity_substitution(int n);
Substitution rv3_substitution();
bool validate_dictionary(const Substitution& s, int points, std::uint64_t seed);
bool validate_jacobian(const Substitution& s, int points, std::uint64_t seed);
FactoredRational pullback(const Substitution& s, const std::vector<long long>& exps, bool with_jacobian = true);

struct RvParams {
    long long h, k, l, q, r, s;
    long long j() const { return l + s - q; }
};

ParamSet rv_cell_params(const RvParams& rv);
std::vector<long long> rv3_exponents(const RvParams& rv);

struct Rv3Report {
    bool ok = false;
    int sign = 0;
    bool dictionary_ok = false;
    bool jacobian_ok = false;
    FactoredRational cellular;
    FactoredRational pulled_back;
};

Rv3Report rv3_change_of_variables_check(const RvParams& rv);
bool rv3_change_of_variables_check();

}  // namespace cellint
