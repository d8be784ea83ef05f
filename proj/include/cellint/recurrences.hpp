#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "cellint/bigfloat.hpp"
#include "json.hpp"

namespace cellint {

// dense polynomial c0 + c1 t + ... with rational coefficients
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<mpq_class> c);
    static Polynomial constant(const mpq_class& c);
    static Polynomial from_ints(std::initializer_list<long> c);
    static Polynomial t();

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    mpq_class coeff(int i) const;
    mpq_class leading() const;

    mpq_class eval(const mpq_class& x) const;
    // p(a + b t)
    Polynomial affine(const mpq_class& a, const mpq_class& b) const;
    std::string str(const std::string& var = "n") const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const mpq_class& s, Polynomial a);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim();
    std::vector<mpq_class> c_;
};

// sum_i p_i(n) u_{n+i} = 0 for n >= n0
struct PolyRecurrence {
    std::vector<Polynomial> p;
    long n0 = 0;

    int order() const { return static_cast<int>(p.size()) - 1; }
    void validate() const;
    std::string str() const;
    nlohmann::json to_json() const;
    static PolyRecurrence from_json(const nlohmann::json& j);
    friend bool operator==(const PolyRecurrence&, const PolyRecurrence&) = default;
};

struct RationalSequence {
    long n0 = 0;
    std::vector<mpq_class> values;

    std::size_t size() const { return values.size(); }
    const mpq_class& at(long n) const { return values.at(static_cast<std::size_t>(n - n0)); }
    nlohmann::json to_json() const;
    friend bool operator==(const RationalSequence&, const RationalSequence&) = default;
};

struct LinearFormSpec {
    std::vector<std::string> constants;
    std::vector<RationalSequence> coefficients;

    void validate() const;
};

RationalSequence extend(const PolyRecurrence& r, const std::vector<mpq_class>& init, long M);

// scaled so that p_k has leading coefficient 1
PolyRecurrence normalized(const PolyRecurrence& r);
// p_i(t) -> p_{k-i}(-k-1-t), times (-1)^i when twisted; result normalized
PolyRecurrence dual(const PolyRecurrence& r, bool twisted = false);

struct SelfDuality {
    mpq_class lambda;
    bool twisted = false;
};
// p_i(t) = lambda * q_{k-i}(-k-1-t), q the plain or twisted dual
std::optional<SelfDuality> is_self_dual(const PolyRecurrence& r);

// minimal (order, degree) annihilator with order <= k, degree <= d
std::optional<PolyRecurrence> discover(const RationalSequence& s, int k, int d);
std::size_t discover_min_terms(int k, int d);

// standard forms with index shifted so the stated initial values apply at n = 0, 1
PolyRecurrence apery_zeta2();
PolyRecurrence apery_zeta3();

struct AperyPair {
    std::string constant;
    int weight;
    PolyRecurrence rec;
    std::vector<mpq_class> a_init, b_init;
    int scale;  // I_N = scale * (a_N constant - b_N)
};
AperyPair apery_pair(const std::string& which);  // "zeta2" or "zeta3"
LinearFormSpec apery_linear_form(const AperyPair& ap, long M);

mpz_class lcm_upto(long n);

struct DiagnosticsReport {
    long N = 0;
    int weight = 0;
    std::vector<bool> integral;           // per coefficient sequence, all terms in Z
    std::vector<bool> integral_scaled;    // d_n^weight * terms in Z
    std::vector<BigFloat> abs_I;          // |I_n| for every n
    BigFloat ratio;                       // |I_N| / |I_{N-1}|
    BigFloat dn_root;                     // d_N^(1/N)
    BigFloat epsilon;                     // supplied limit, or the observed ratio
    BigFloat composite;                   // e^weight * epsilon
    bool composite_below_one = false;
    nlohmann::json to_json(int digits) const;
};

DiagnosticsReport diagnostics(const LinearFormSpec& spec, int weight, int digits,
                              const std::optional<BigFloat>& epsilon = std::nullopt);

}  // namespace cellint
