#include "cellint/recurrences.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "cellint/dihedral.hpp"

namespace cellint {

Polynomial::Polynomial(std::vector<mpq_class> c) : c_(std::move(c)) {
    for (auto& x : c_) x.canonicalize();
    trim();
}

Polynomial Polynomial::constant(const mpq_class& c) { return Polynomial(std::vector<mpq_class>{c}); }

Polynomial Polynomial::from_ints(std::initializer_list<long> c) {
    std::vector<mpq_class> v;
    for (long x : c) v.emplace_back(x);
    return Polynomial(std::move(v));
}

Polynomial Polynomial::t() { return from_ints({0, 1}); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class Polynomial::coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : mpq_class(0); }

mpq_class Polynomial::leading() const { return c_.empty() ? mpq_class(0) : c_.back(); }

mpq_class Polynomial::eval(const mpq_class& x) const {
    mpq_class r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Polynomial Polynomial::affine(const mpq_class& a, const mpq_class& b) const {
    Polynomial lin(std::vector<mpq_class>{a, b});
    Polynomial r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + constant(*it);
    return r;
}

std::string Polynomial::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpq_class& c = c_[i];
        if (c == 0) continue;
        mpq_class m = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (i == 0 || m != 1) os << m.get_str() << (i > 0 ? "*" : "");
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
}

Polynomial operator*(const mpq_class& s, Polynomial a) {
    for (auto& x : a.c_) x *= s;
    a.trim();
    return a;
}

void PolyRecurrence::validate() const {
    if (p.size() < 2) throw PreconditionError("recurrence needs order >= 1");
    if (p.back().is_zero()) throw PreconditionError("leading coefficient p_k is identically zero");
}

std::string PolyRecurrence::str() const {
    std::ostringstream os;
    for (int i = 0; i <= order(); ++i) {
        if (i) os << " + ";
        os << "(" << p[i].str() << ")*u(n+" << i << ")";
    }
    os << " = 0, n >= " << n0;
    return os.str();
}

nlohmann::json PolyRecurrence::to_json() const {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& q : p) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& c : q.coeffs()) row.push_back(c.get_str());
        coeffs.push_back(row);
    }
    return {{"order", order()}, {"n0", n0}, {"coeffs", coeffs}};
}

PolyRecurrence PolyRecurrence::from_json(const nlohmann::json& j) {
    PolyRecurrence r;
    r.n0 = j.value("n0", 0L);
    for (const auto& row : j.at("coeffs")) {
        std::vector<mpq_class> c;
        for (const auto& x : row) c.emplace_back(x.is_string() ? x.get<std::string>() : std::to_string(x.get<long>()));
        r.p.emplace_back(std::move(c));
    }
    if (j.contains("order") && j["order"].get<int>() != r.order())
        throw PreconditionError("order does not match the number of coefficient rows");
    r.validate();
    return r;
}

nlohmann::json RationalSequence::to_json() const {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& v : values) a.push_back(v.get_str());
    return a;
}

void LinearFormSpec::validate() const {
    if (constants.size() != coefficients.size()) throw PreconditionError("constants and coefficient sequences differ in number");
    for (const auto& s : coefficients)
        if (s.size() != coefficients.front().size() || s.n0 != coefficients.front().n0)
            throw PreconditionError("coefficient sequences have different ranges");
}

RationalSequence extend(const PolyRecurrence& r, const std::vector<mpq_class>& init, long M) {
    r.validate();
    int k = r.order();
    if (static_cast<int>(init.size()) != k)
        throw PreconditionError("need exactly " + std::to_string(k) + " initial values");
    RationalSequence s;
    s.n0 = r.n0;
    s.values = init;
    for (long n = r.n0; static_cast<long>(s.values.size()) < M + 1; ++n) {
        mpq_class lead = r.p[k].eval(n);
        if (lead == 0) throw PreconditionError("leading coefficient vanishes at n = " + std::to_string(n));
        mpq_class acc = 0;
        std::size_t base = static_cast<std::size_t>(n - r.n0);
        for (int i = 0; i < k; ++i) acc += r.p[i].eval(n) * s.values[base + i];
        s.values.push_back(-acc / lead);
    }
    s.values.resize(static_cast<std::size_t>(std::max<long>(M + 1, 0)));
    return s;
}

PolyRecurrence normalized(const PolyRecurrence& r) {
    r.validate();
    PolyRecurrence out = r;
    mpq_class s = 1 / r.p.back().leading();
    for (auto& q : out.p) q = s * q;
    return out;
}

namespace {

PolyRecurrence raw_dual(const PolyRecurrence& r, bool twisted) {
    int k = r.order();
    PolyRecurrence d;
    d.n0 = r.n0;
    for (int i = 0; i <= k; ++i) {
        Polynomial q = r.p[k - i].affine(-k - 1, -1);
        if (twisted && i % 2) q = mpq_class(-1) * q;
        d.p.push_back(q);
    }
    return d;
}

std::optional<mpq_class> proportional(const PolyRecurrence& a, const PolyRecurrence& b) {
    if (a.p.size() != b.p.size()) return std::nullopt;
    std::optional<mpq_class> lambda;
    for (std::size_t i = 0; i < a.p.size(); ++i) {
        if (a.p[i].is_zero() != b.p[i].is_zero()) return std::nullopt;
        if (a.p[i].is_zero()) continue;
        mpq_class l = a.p[i].leading() / b.p[i].leading();
        if (lambda && *lambda != l) return std::nullopt;
        lambda = l;
        if (a.p[i] != l * b.p[i]) return std::nullopt;
    }
    return lambda;
}

}  // namespace

PolyRecurrence dual(const PolyRecurrence& r, bool twisted) {
    r.validate();
    auto d = raw_dual(r, twisted);
    if (d.p.back().is_zero()) throw PreconditionError("dual recurrence has vanishing leading coefficient (p_0 is zero)");
    return normalized(d);
}

std::optional<SelfDuality> is_self_dual(const PolyRecurrence& r) {
    r.validate();
    for (bool tw : {false, true})
        if (auto l = proportional(r, raw_dual(r, tw))) return SelfDuality{*l, tw};
    return std::nullopt;
}

std::size_t discover_min_terms(int k, int d) { return static_cast<std::size_t>((k + 1) * (d + 1) + k + 8); }

namespace {

// basis of the right nullspace via reduced row echelon form
std::vector<std::vector<mpq_class>> nullspace(std::vector<std::vector<mpq_class>> A, int cols) {
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (int c = 0; c < cols && row < A.size(); ++c) {
        std::size_t piv = row;
        while (piv < A.size() && A[piv][c] == 0) ++piv;
        if (piv == A.size()) continue;
        std::swap(A[piv], A[row]);
        mpq_class inv = 1 / A[row][c];
        for (int j = c; j < cols; ++j) A[row][j] *= inv;
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (i == row || A[i][c] == 0) continue;
            mpq_class f = A[i][c];
            for (int j = c; j < cols; ++j)
                if (A[row][j] != 0) A[i][j] -= f * A[row][j];
        }
        pivot_col.push_back(c);
        ++row;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<mpq_class>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<mpq_class> v(cols, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -A[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// scale to coprime integers
std::vector<mpz_class> primitive(const std::vector<mpq_class>& v) {
    mpz_class l = 1, g = 0;
    for (const auto& x : v) l = lcm(l, mpz_class(x.get_den()));
    std::vector<mpz_class> out;
    for (const auto& x : v) {
        mpz_class z = x.get_num() * (l / x.get_den());
        g = gcd(g, z);
        out.push_back(z);
    }
    if (g > 1)
        for (auto& z : out) z /= g;
    return out;
}

mpz_class height(const std::vector<mpz_class>& v) {
    mpz_class h = 0;
    for (const auto& z : v) h = std::max(h, mpz_class(abs(z)));
    return h;
}

}  // namespace

namespace {

constexpr std::uint64_t kPrime = 0xffffffff00000001ull;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a))
        if (e & 1) r = mulmod(r, a);
    return r;
}

std::optional<std::uint64_t> reduce_mod(const mpq_class& q) {
    mpz_class p(std::to_string(kPrime));
    mpz_class num = q.get_num() % p, den = q.get_den() % p;
    if (num < 0) num += p;
    if (den == 0) return std::nullopt;
    std::uint64_t n = std::stoull(num.get_str()), d = std::stoull(den.get_str());
    return mulmod(n, powmod(d, kPrime - 2));
}

// rank over F_p; a full column rank here implies full column rank over Q
int rank_mod(std::vector<std::vector<std::uint64_t>> A, int cols) {
    int rank = 0;
    for (int c = 0; c < cols && rank < static_cast<int>(A.size()); ++c) {
        int piv = rank;
        while (piv < static_cast<int>(A.size()) && A[piv][c] == 0) ++piv;
        if (piv == static_cast<int>(A.size())) continue;
        std::swap(A[piv], A[rank]);
        std::uint64_t inv = powmod(A[rank][c], kPrime - 2);
        for (std::size_t i = rank + 1; i < A.size(); ++i) {
            if (A[i][c] == 0) continue;
            std::uint64_t f = mulmod(A[i][c], inv);
            for (int j = c; j < cols; ++j) {
                std::uint64_t t = mulmod(f, A[rank][j]);
                A[i][j] = A[i][j] >= t ? A[i][j] - t : kPrime - (t - A[i][j]);
            }
        }
        ++rank;
    }
    return rank;
}

std::vector<mpq_class> equation(const RationalSequence& s, long n, int kk, int dd) {
    std::vector<mpq_class> row((kk + 1) * (dd + 1));
    for (int i = 0; i <= kk; ++i) {
        mpq_class pw = 1;
        for (int j = 0; j <= dd; ++j) {
            row[i * (dd + 1) + j] = pw * s.at(n + i);
            pw *= n;
        }
    }
    return row;
}

}  // namespace

std::optional<PolyRecurrence> discover(const RationalSequence& s, int k, int d) {
    if (k < 1 || d < 0) throw PreconditionError("discover needs order >= 1 and degree >= 0");
    if (s.size() < discover_min_terms(k, d))
        throw PreconditionError("need at least " + std::to_string(discover_min_terms(k, d)) + " terms for order " +
                                std::to_string(k) + ", degree " + std::to_string(d));
    std::vector<std::optional<std::uint64_t>> smod;
    bool mod_ok = true;
    for (const auto& v : s.values) {
        smod.push_back(reduce_mod(v));
        if (!smod.back()) mod_ok = false;
    }
    const long last = s.n0 + static_cast<long>(s.size());
    for (int kk = 1; kk <= k; ++kk)
        for (int dd = 0; dd <= d; ++dd) {
            int cols = (kk + 1) * (dd + 1);
            long neq = last - kk - s.n0;
            if (mod_ok) {
                std::vector<std::vector<std::uint64_t>> M;
                for (long n = s.n0; n + kk < last; ++n) {
                    std::vector<std::uint64_t> row(cols);
                    auto nm = *reduce_mod(mpq_class(n));
                    for (int i = 0; i <= kk; ++i) {
                        std::uint64_t pw = 1;
                        for (int j = 0; j <= dd; ++j) {
                            row[i * (dd + 1) + j] = mulmod(pw, *smod[n - s.n0 + i]);
                            pw = mulmod(pw, nm);
                        }
                    }
                    M.push_back(std::move(row));
                }
                if (rank_mod(std::move(M), cols) == cols) continue;
            }
            // solve on a leading block, then confirm on every equation
            for (long used : {std::min<long>(neq, cols + 4), neq}) {
                std::vector<std::vector<mpq_class>> A;
                for (long n = s.n0; n < s.n0 + used; ++n) A.push_back(equation(s, n, kk, dd));
                auto basis = nullspace(std::move(A), cols);
                std::optional<std::vector<mpz_class>> best;
                for (const auto& v : basis) {
                    auto z = primitive(v);
                    bool lead_nonzero = false, tail_nonzero = false;
                    for (int j = 0; j <= dd; ++j) {
                        if (z[kk * (dd + 1) + j] != 0) lead_nonzero = true;
                        if (z[j] != 0) tail_nonzero = true;
                    }
                    if (!lead_nonzero || !tail_nonzero) continue;
                    if (basis.size() > 1 && used < neq) {
                        best.reset();
                        break;
                    }
                    if (!best || height(z) < height(*best)) best = z;
                }
                if (!best) continue;
                bool valid = true;
                for (long n = s.n0; valid && n + kk < last; ++n) {
                    auto row = equation(s, n, kk, dd);
                    mpq_class acc = 0;
                    for (int c = 0; c < cols; ++c) acc += row[c] * (*best)[c];
                    valid = acc == 0;
                }
                if (!valid) continue;
                PolyRecurrence r;
                r.n0 = s.n0;
                for (int i = 0; i <= kk; ++i) {
                    std::vector<mpq_class> c;
                    for (int j = 0; j <= dd; ++j) c.emplace_back((*best)[i * (dd + 1) + j]);
                    r.p.emplace_back(std::move(c));
                }
                if (r.p.back().leading() < 0)
                    for (auto& q : r.p) q = mpq_class(-1) * q;
                return r;
            }
        }
    return std::nullopt;
}

PolyRecurrence apery_zeta2() {
    // n^2 u_n = (11n^2 - 11n + 3) u_{n-1} + (n-1)^2 u_{n-2}, shifted by 2
    PolyRecurrence r;
    r.p = {Polynomial::from_ints({-1, -2, -1}), Polynomial::from_ints({-25, -33, -11}), Polynomial::from_ints({4, 4, 1})};
    return r;
}

PolyRecurrence apery_zeta3() {
    // n^3 u_n = (2n-1)(17n^2 - 17n + 5) u_{n-1} - (n-1)^3 u_{n-2}, shifted by 2
    PolyRecurrence r;
    r.p = {Polynomial::from_ints({1, 3, 3, 1}), mpq_class(-1) * (Polynomial::from_ints({3, 2}) * Polynomial::from_ints({39, 51, 17})),
           Polynomial::from_ints({8, 12, 6, 1})};
    return r;
}

AperyPair apery_pair(const std::string& which) {
    if (which == "zeta2") return {"zeta2", 2, apery_zeta2(), {1, 3}, {0, 5}, 1};
    if (which == "zeta3") return {"zeta3", 3, apery_zeta3(), {1, 5}, {0, 6}, 2};
    throw PreconditionError("unknown recurrence: " + which + " (expected zeta2 or zeta3)");
}

LinearFormSpec apery_linear_form(const AperyPair& ap, long M) {
    auto a = extend(ap.rec, ap.a_init, M);
    auto b = extend(ap.rec, ap.b_init, M);
    for (auto& v : a.values) v *= ap.scale;
    for (auto& v : b.values) v *= -ap.scale;
    return {{"1", ap.constant}, {b, a}};
}

mpz_class lcm_upto(long n) {
    mpz_class l = 1;
    for (long i = 2; i <= n; ++i) l = lcm(l, mpz_class(i));
    return l;
}

DiagnosticsReport diagnostics(const LinearFormSpec& spec, int weight, int digits, const std::optional<BigFloat>& epsilon) {
    spec.validate();
    if (spec.coefficients.empty() || spec.coefficients.front().size() < 2)
        throw PreconditionError("diagnostics need at least two terms");
    // |I_N| is far smaller than its coefficients; carry enough bits to survive the cancellation
    std::size_t coeff_bits = 0;
    for (const auto& seq : spec.coefficients)
        for (const auto& v : seq.values)
            coeff_bits = std::max(coeff_bits, mpz_sizeinbase(v.get_num_mpz_t(), 2) + mpz_sizeinbase(v.get_den_mpz_t(), 2));
    int work = digits + static_cast<int>(coeff_bits * 2 / 3) + 10;
    mpfr_prec_t bits = digits_to_bits(work);
    DiagnosticsReport rep;
    const long n0 = spec.coefficients.front().n0;
    const long len = static_cast<long>(spec.coefficients.front().size());
    rep.N = n0 + len - 1;
    rep.weight = weight;
    std::vector<BigFloat> consts;
    for (const auto& c : spec.constants) consts.push_back(named_constant(c, work));
    for (const auto& seq : spec.coefficients) {
        bool integral = true, scaled = true;
        mpz_class dn = 1;
        for (long n = n0; n < n0 + len; ++n) {
            if (n >= 1) dn = lcm(dn, mpz_class(n));
            const mpq_class& v = seq.at(n);
            if (v.get_den() != 1) integral = false;
            mpz_class w;
            mpz_pow_ui(w.get_mpz_t(), dn.get_mpz_t(), static_cast<unsigned long>(weight));
            if (mpq_class(v * w).get_den() != 1) scaled = false;
        }
        rep.integral.push_back(integral);
        rep.integral_scaled.push_back(scaled);
    }
    for (long n = n0; n < n0 + len; ++n) {
        BigFloat acc(bits);
        for (std::size_t i = 0; i < consts.size(); ++i) acc += BigFloat(spec.coefficients[i].at(n), bits) * consts[i];
        rep.abs_I.push_back(abs(acc));
    }
    rep.ratio = rep.abs_I[len - 1] / rep.abs_I[len - 2];
    BigFloat dn(lcm_upto(rep.N), bits);
    rep.dn_root = rep.N >= 1 ? pow(dn, BigFloat(mpq_class(1, rep.N), bits)) : BigFloat(1L, bits);
    rep.epsilon = epsilon ? *epsilon : rep.ratio;
    rep.composite = pow(const_e(work), weight) * rep.epsilon;
    rep.composite_below_one = rep.composite < BigFloat(1L, bits);
    return rep;
}

nlohmann::json DiagnosticsReport::to_json(int digits) const {
    nlohmann::json absI = nlohmann::json::array();
    for (const auto& v : abs_I) absI.push_back(v.str(digits));
    return {{"N", N},
            {"weight", weight},
            {"integral", integral},
            {"integral_after_dn_power", integral_scaled},
            {"abs_I", absI},
            {"ratio", ratio.str(digits)},
            {"dn_root", dn_root.str(digits)},
            {"epsilon", epsilon.str(digits)},
            {"composite", composite.str(digits)},
            {"composite_below_one", composite_below_one}};
}

}  // namespace cellint
