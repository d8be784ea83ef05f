#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace cellint {

enum class Frame { z, simplicial, cubical };
const char* frame_name(Frame f);

enum class FactorKind { zdiff, simp, cube_x, cube_one_minus };

// zdiff(i,j): z_i - z_j, i<j
// simp(p,q): P_q - P_p with P_0 = 0, P_k = t_k, P_{l+1} = 1
// cube_x(i): x_i;  cube_one_minus(i,j): 1 - x_i...x_j
struct Factor {
    FactorKind kind;
    int i;
    int j;

    static Factor zdiff(int i, int j) { return {FactorKind::zdiff, i, j}; }
    static Factor simp(int p, int q) { return {FactorKind::simp, p, q}; }
    static Factor x(int i) { return {FactorKind::cube_x, i, i}; }
    static Factor one_minus(int i, int j) { return {FactorKind::cube_one_minus, i, j}; }

    std::string str(int ell) const;
    friend auto operator<=>(const Factor&, const Factor&) = default;
};

class SparsePoly {
public:
    using Monomial = std::vector<int>;

    SparsePoly() = default;
    explicit SparsePoly(int nvars) : nvars_(nvars) {}
    static SparsePoly constant(int nvars, const mpq_class& c);
    static SparsePoly var(int nvars, int k);  // k is 0-based
    static SparsePoly monomial(int nvars, const Monomial& e, const mpq_class& c = 1);

    int nvars() const { return nvars_; }
    const std::map<Monomial, mpq_class>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const;

    mpq_class eval(const std::vector<mpq_class>& x) const;
    SparsePoly derivative(int k) const;

    SparsePoly& operator+=(const SparsePoly& o);
    SparsePoly& operator-=(const SparsePoly& o);
    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
    friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

private:
    void add_term(const Monomial& m, const mpq_class& c);
    int nvars_ = 0;
    std::map<Monomial, mpq_class> terms_;
};

class FactoredRational {
public:
    FactoredRational() = default;
    FactoredRational(Frame frame, int n) : frame_(frame), n_(n) {}

    Frame frame() const { return frame_; }
    int n() const { return n_; }
    int ell() const { return n_ - 3; }
    int sign() const { return sign_; }
    void set_sign(int s) { sign_ = s < 0 ? -1 : 1; }
    void negate() { sign_ = -sign_; }
    const std::map<Factor, int>& exponents() const { return exps_; }
    int exponent(const Factor& f) const;
    bool is_constant() const { return exps_.empty(); }

    void mul_factor(const Factor& f, long long e);
    FactoredRational& operator*=(const FactoredRational& o);
    FactoredRational& operator/=(const FactoredRational& o);
    friend FactoredRational operator*(FactoredRational a, const FactoredRational& b) { return a *= b; }
    friend FactoredRational operator/(FactoredRational a, const FactoredRational& b) { return a /= b; }
    FactoredRational pow(long long e) const;
    FactoredRational inverse() const { return pow(-1); }

    bool equal_up_to_sign(const FactoredRational& o) const;
    friend bool operator==(const FactoredRational&, const FactoredRational&) = default;

    // sum of exponents; the degree of homogeneity in the z frame
    long long total_degree() const;
    // sum over factors of |exp| times the factor degree
    long long degree_bound() const;
    // weight of a label in the z frame: sum of exponents of factors containing it
    long long letter_weight(int v) const;

    // coordinates: z_1..z_n, t_1..t_l or x_1..x_l (0-based vector)
    mpq_class eval(const std::vector<mpq_class>& coords) const;
    SparsePoly factor_poly(const Factor& f) const;

    std::string str() const;
    nlohmann::json to_json() const;

private:
    Frame frame_ = Frame::z;
    int n_ = 0;
    int sign_ = 1;
    std::map<Factor, int> exps_;
};

mpq_class eval_factor(const Factor& f, Frame frame, int n, const std::vector<mpq_class>& c);

// top-degree form coefficient * d(coords); in the z frame dz_1 dz_{n-1} dz_n are omitted
struct DifferentialForm {
    FactoredRational coefficient;

    Frame frame() const { return coefficient.frame(); }
    int degree() const { return coefficient.ell(); }
    std::string str() const;
    nlohmann::json to_json() const;
};

FactoredRational to_simplicial(const FactoredRational& zf);
DifferentialForm to_simplicial(const DifferentialForm& w);
FactoredRational to_cubical(const FactoredRational& sf);
DifferentialForm to_cubical(const DifferentialForm& w);
FactoredRational cubical_jacobian(int n);

}  // namespace cellint
