#include "cellint/bigfloat.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "cellint/dihedral.hpp"

namespace cellint {

mpfr_prec_t digits_to_bits(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil(std::max(digits, 1) * 3.3219280948873623)) + 8;
}

BigFloat::BigFloat(mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(double v, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const mpz_class& v, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& v, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const std::string& s, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    char* end = nullptr;
    mpfr_strtofr(v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (s.empty() || end == s.c_str() || *end != '\0') {
        mpfr_clear(v_);
        throw PreconditionError("malformed number: " + s);
    }
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, o.prec());
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

std::string BigFloat::str(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", std::max(digits, 1), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

mpz_class BigFloat::round_int() const {
    mpz_class z;
    BigFloat r(prec());
    mpfr_round(r.v_, v_);
    mpfr_get_z(z.get_mpz_t(), r.v_, MPFR_RNDN);
    return z;
}

namespace {
// results take the larger operand precision
void widen(mpfr_ptr a, mpfr_srcptr b) {
    if (mpfr_get_prec(b) > mpfr_get_prec(a)) mpfr_prec_round(a, mpfr_get_prec(b), MPFR_RNDN);
}
}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& o) {
    widen(v_, o.v_);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
    widen(v_, o.v_);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
    widen(v_, o.v_);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
    widen(v_, o.v_);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat operator-(BigFloat a) {
    mpfr_neg(a.v_, a.v_, MPFR_RNDN);
    return a;
}

BigFloat abs(BigFloat x) {
    mpfr_abs(x.get(), x.get(), MPFR_RNDN);
    return x;
}

BigFloat sqrt(const BigFloat& x) {
    BigFloat r(x.prec());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat log(const BigFloat& x) {
    BigFloat r(x.prec());
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat exp(const BigFloat& x) {
    BigFloat r(x.prec());
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat pow(const BigFloat& x, long e) {
    BigFloat r(x.prec());
    mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}

BigFloat pow(const BigFloat& x, const BigFloat& e) {
    BigFloat r(std::max(x.prec(), e.prec()));
    mpfr_pow(r.get(), x.get(), e.get(), MPFR_RNDN);
    return r;
}

BigFloat log10_abs(const BigFloat& x) {
    BigFloat r(x.prec());
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    mpfr_log10(r.get(), r.get(), MPFR_RNDN);
    return r;
}

BigFloat pow10(long e, mpfr_prec_t bits) {
    BigFloat r(bits);
    mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(std::labs(e)), MPFR_RNDN);
    if (e < 0) mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
    return r;
}

BigFloat const_pi(int digits) {
    if (digits > 10000) throw PreconditionError("at most 10000 digits supported");
    BigFloat r(digits_to_bits(digits));
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

BigFloat const_zeta(int s, int digits) {
    if (s < 2) throw PreconditionError("zeta(s) needs s >= 2");
    if (digits > 10000) throw PreconditionError("at most 10000 digits supported");
    BigFloat r(digits_to_bits(digits));
    mpfr_zeta_ui(r.get(), static_cast<unsigned long>(s), MPFR_RNDN);
    return r;
}

BigFloat const_e(int digits) {
    BigFloat one(1L, digits_to_bits(digits));
    return exp(one);
}

}  // namespace cellint

namespace cellint {

BigFloat named_constant(const std::string& name, int digits) {
    mpfr_prec_t bits = digits_to_bits(digits);
    BigFloat result(1L, bits);
    std::string s;
    for (char ch : name)
        if (ch != ' ' && ch != '*' && ch != '(' && ch != ')') s += ch;
    if (s.empty()) throw PreconditionError("empty constant name");
    if (s == "1") return result;
    std::size_t i = 0;
    auto read_int = [&](long& out) {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) return false;
        out = std::stol(s.substr(i, j - i));
        i = j;
        return true;
    };
    while (i < s.size()) {
        BigFloat base(bits);
        if (s.compare(i, 4, "zeta") == 0) {
            i += 4;
            long arg = 0;
            if (!read_int(arg)) throw PreconditionError("bad constant name: " + name);
            base = const_zeta(static_cast<int>(arg), digits);
        } else if (s.compare(i, 2, "pi") == 0) {
            i += 2;
            base = const_pi(digits);
        } else if (s[i] == 'e') {
            i += 1;
            base = const_e(digits);
        } else {
            throw PreconditionError("bad constant name: " + name);
        }
        long e = 1;
        if (i < s.size() && s[i] == '^') {
            ++i;
            if (!read_int(e)) throw PreconditionError("bad exponent in constant name: " + name);
        }
        result *= pow(base, e);
    }
    return result;
}

}  // namespace cellint
