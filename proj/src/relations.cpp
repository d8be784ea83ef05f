#include "cellint/relations.hpp"

#include <cmath>
#include <sstream>

namespace cellint {

namespace {

mpq_class dot(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

mpz_class round_q(const mpq_class& q) {
    mpq_class h = q + mpq_class(1, 2);
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    return r;
}

struct GramSchmidt {
    std::vector<std::vector<mpq_class>> mu;
    std::vector<mpq_class> B;

    explicit GramSchmidt(const IntMatrix& b) {
        std::size_t n = b.size();
        mu.assign(n, std::vector<mpq_class>(n, 0));
        B.assign(n, 0);
        std::vector<std::vector<mpq_class>> bs(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<mpq_class> bi(b[i].begin(), b[i].end());
            bs[i] = bi;
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = dot(bi, bs[j]) / B[j];
                for (std::size_t c = 0; c < bi.size(); ++c) bs[i][c] -= mu[i][j] * bs[j][c];
            }
            mu[i][i] = 1;
            B[i] = dot(bs[i], bs[i]);
            if (B[i] == 0) throw PreconditionError("lattice basis is rank deficient");
        }
    }
};

}  // namespace

IntMatrix lattice_reduce(const IntMatrix& basis) {
    if (basis.empty()) throw PreconditionError("empty lattice basis");
    for (const auto& row : basis)
        if (row.size() != basis.front().size()) throw PreconditionError("ragged lattice basis");
    IntMatrix b = basis;
    const mpq_class delta(3, 4);
    GramSchmidt gs(b);
    std::size_t k = 1;
    while (k < b.size()) {
        for (std::size_t jj = k; jj-- > 0;) {
            mpz_class q = round_q(gs.mu[k][jj]);
            if (q == 0) continue;
            for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[jj][c];
            for (std::size_t t = 0; t <= jj; ++t) gs.mu[k][t] -= q * gs.mu[jj][t];
        }
        mpq_class m = gs.mu[k][k - 1];
        if (gs.B[k] >= (delta - m * m) * gs.B[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gs = GramSchmidt(b);
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return b;
}

ConstantBasis ConstantBasis::parse(const std::string& csv, int digits) {
    ConstantBasis cb;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw PreconditionError("empty name in constant basis");
        cb.names.push_back(item);
        cb.values.push_back(named_constant(item, digits));
    }
    if (cb.names.empty()) throw PreconditionError("empty constant basis");
    return cb;
}

std::optional<Relation> find_relation(const std::vector<BigFloat>& x, int digits, const mpz_class& max_height) {
    std::size_t n = x.size();
    if (n < 2) throw PreconditionError("need at least two numbers");
    mpfr_prec_t bits = digits_to_bits(digits + 10);
    BigFloat scale = pow10(digits, bits);
    IntMatrix L(n, std::vector<mpz_class>(n + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
        L[i][i] = 1;
        L[i][n] = (x[i] * scale).round_int();
    }
    auto red = lattice_reduce(L);
    BigFloat thresh = pow10(-static_cast<long>(std::ceil(0.6 * digits)), bits);
    for (const auto& row : red) {
        std::vector<mpz_class> m(row.begin(), row.begin() + n);
        mpz_class g = 0, h = 0;
        for (const auto& z : m) {
            g = gcd(g, z);
            h = std::max(h, mpz_class(abs(z)));
        }
        if (g == 0 || h > max_height) continue;
        for (auto& z : m) z /= g;
        h /= g;
        for (const auto& z : m)
            if (z != 0) {
                if (z < 0)
                    for (auto& w : m) w = -w;
                break;
            }
        BigFloat acc(bits);
        for (std::size_t i = 0; i < n; ++i) acc += BigFloat(m[i], bits) * x[i];
        if (!(abs(acc) < thresh)) continue;
        return Relation{m, abs(acc), h};
    }
    return std::nullopt;
}

int min_fit_digits(std::size_t basis_size) { return 20 + 10 * static_cast<int>(basis_size); }

mpz_class fit_height_bound(int digits, std::size_t basis_size) {
    double e = digits / (3.0 * static_cast<double>(basis_size));
    mpz_class b;
    mpz_ui_pow_ui(b.get_mpz_t(), 10, static_cast<unsigned long>(std::floor(e)));
    return b;
}

std::optional<LinearFit> fit_linear_form(const BigFloat& v, const ConstantBasis& basis, int digits) {
    if (basis.size() == 0) throw PreconditionError("empty constant basis");
    if (digits < min_fit_digits(basis.size()))
        throw RefusedFit("fit needs at least " + std::to_string(min_fit_digits(basis.size())) + " digits for a basis of size " +
                         std::to_string(basis.size()) + "; got " + std::to_string(digits));
    mpfr_prec_t bits = digits_to_bits(digits + 10);
    std::vector<BigFloat> x{v};
    for (const auto& b : basis.values) x.push_back(b);
    mpz_class bound = fit_height_bound(digits, basis.size());
    // the coefficient of v must be nonzero; search among the reduced vectors
    std::size_t n = x.size();
    BigFloat scale = pow10(digits, bits);
    IntMatrix L(n, std::vector<mpz_class>(n + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
        L[i][i] = 1;
        L[i][n] = (x[i] * scale).round_int();
    }
    auto red = lattice_reduce(L);
    BigFloat thresh = pow10(-static_cast<long>(std::ceil(0.6 * digits)), bits);
    for (const auto& row : red) {
        if (row[0] == 0) continue;
        mpz_class h = 0;
        for (std::size_t i = 0; i < n; ++i) h = std::max(h, mpz_class(abs(row[i])));
        mpz_class g = 0;
        for (std::size_t i = 0; i < n; ++i) g = gcd(g, row[i]);
        h /= g;
        if (h > bound) continue;
        LinearFit fit;
        fit.height = h;
        BigFloat acc(v);
        for (std::size_t i = 1; i < n; ++i) {
            mpq_class q(-row[i], row[0]);
            q.canonicalize();
            fit.coeffs.push_back(q);
            acc -= BigFloat(q, bits) * x[i];
        }
        fit.residual = abs(acc);
        if (!(fit.residual < thresh)) continue;
        return fit;
    }
    return std::nullopt;
}

nlohmann::json LinearFit::to_json(const ConstantBasis& basis) const {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& q : coeffs) c.push_back(q.get_str());
    return {{"basis", basis.names}, {"coeffs", c}, {"residual", residual.str(3)}, {"height", height.get_str()}};
}

VanishingRow vanishing_row(long long N, const BigFloat& value, const ConstantBasis& basis, int digits) {
    VanishingRow row;
    row.N = N;
    auto fit = fit_linear_form(value, basis, digits);
    if (fit) {
        row.accepted = true;
        row.coeffs = fit->coeffs;
        row.residual = fit->residual;
        for (const auto& q : fit->coeffs) row.nonzero.push_back(q != 0);
    }
    return row;
}

std::vector<VanishingRow> vanishing_report(const ConfigClass& c, long long N_from, long long N_to, const ConstantBasis& basis,
                                           int digits, const QuadOptions& opt) {
    if (digits < min_fit_digits(basis.size()))
        throw RefusedFit("vanishing report needs at least " + std::to_string(min_fit_digits(basis.size())) + " digits");
    std::vector<VanishingRow> rows;
    for (long long N = N_from; N <= N_to; ++N) {
        auto r = eval_basic(c, N, digits, opt);
        rows.push_back(vanishing_row(N, r.value, basis, digits));
    }
    return rows;
}

}  // namespace cellint
