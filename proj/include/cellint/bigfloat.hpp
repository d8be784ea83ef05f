#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace cellint {

mpfr_prec_t digits_to_bits(int digits);

class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t bits = 64);
    BigFloat(long v, mpfr_prec_t bits);
    BigFloat(double v, mpfr_prec_t bits);
    BigFloat(const mpz_class& v, mpfr_prec_t bits);
    BigFloat(const mpq_class& v, mpfr_prec_t bits);
    BigFloat(const std::string& s, mpfr_prec_t bits);  // throws on malformed input
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_finite() const { return mpfr_number_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    std::string str(int digits) const;
    // round to the nearest integer
    mpz_class round_int() const;

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);
    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    friend BigFloat operator-(BigFloat a);

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

private:
    mpfr_t v_;
};

BigFloat abs(BigFloat x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat pow(const BigFloat& x, long e);
BigFloat pow(const BigFloat& x, const BigFloat& e);
BigFloat log10_abs(const BigFloat& x);
BigFloat pow10(long e, mpfr_prec_t bits);

BigFloat const_pi(int digits);
BigFloat const_zeta(int s, int digits);
BigFloat const_e(int digits);

}  // namespace cellint

namespace cellint {

// names: 1, pi, e, zeta<s> or zeta(s), and products joined by '*' or juxtaposed
// zeta factors ("zeta2zeta3"), with integer powers "zeta2^2"
BigFloat named_constant(const std::string& name, int digits);

}  // namespace cellint
