#include "cellint/factored.hpp"

#include <cstdlib>
#include <stdexcept>

#include "cellint/dihedral.hpp"

namespace cellint {

const char* frame_name(Frame f) {
    switch (f) {
        case Frame::z: return "z";
        case Frame::simplicial: return "simplicial";
        case Frame::cubical: return "cubical";
    }
    return "?";
}

std::string Factor::str(int ell) const {
    auto s = [](int k) { return std::to_string(k); };
    switch (kind) {
        case FactorKind::zdiff: return "(z" + s(i) + "-z" + s(j) + ")";
        case FactorKind::simp:
            if (i == 0) return "t" + s(j);
            if (j == ell + 1) return "(1-t" + s(i) + ")";
            return "(t" + s(j) + "-t" + s(i) + ")";
        case FactorKind::cube_x: return "x" + s(i);
        case FactorKind::cube_one_minus: {
            std::string r = "(1-";
            for (int k = i; k <= j; ++k) r += (k > i ? "*x" : "x") + s(k);
            return r + ")";
        }
    }
    return "?";
}

// SparsePoly

SparsePoly SparsePoly::constant(int nvars, const mpq_class& c) {
    SparsePoly p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
}

SparsePoly SparsePoly::var(int nvars, int k) {
    Monomial m(nvars, 0);
    m[k] = 1;
    return monomial(nvars, m);
}

SparsePoly SparsePoly::monomial(int nvars, const Monomial& e, const mpq_class& c) {
    SparsePoly p(nvars);
    p.add_term(e, c);
    return p;
}

void SparsePoly::add_term(const Monomial& m, const mpq_class& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

int SparsePoly::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
        int s = 0;
        for (int e : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

mpq_class SparsePoly::eval(const std::vector<mpq_class>& x) const {
    mpq_class r = 0;
    for (const auto& [m, c] : terms_) {
        mpq_class t = c;
        for (int k = 0; k < nvars_; ++k)
            for (int e = 0; e < m[k]; ++e) t *= x[k];
        r += t;
    }
    return r;
}

SparsePoly SparsePoly::derivative(int k) const {
    SparsePoly d(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[k] == 0) continue;
        Monomial m2 = m;
        m2[k] -= 1;
        d.add_term(m2, c * m[k]);
    }
    return d;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
    if (nvars_ == 0) nvars_ = o.nvars_;
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
    if (nvars_ == 0) nvars_ = o.nvars_;
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r(std::max(a.nvars_, b.nvars_));
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            SparsePoly::Monomial m(r.nvars_, 0);
            for (int k = 0; k < r.nvars_; ++k) m[k] = ma[k] + mb[k];
            r.add_term(m, ca * cb);
        }
    return r;
}

// FactoredRational

int FactoredRational::exponent(const Factor& f) const {
    auto it = exps_.find(f);
    return it == exps_.end() ? 0 : it->second;
}

void FactoredRational::mul_factor(const Factor& f, long long e) {
    if (e == 0) return;
    long long v = exponent(f) + e;
    if (v == 0)
        exps_.erase(f);
    else
        exps_[f] = static_cast<int>(v);
}

FactoredRational& FactoredRational::operator*=(const FactoredRational& o) {
    if (o.frame_ != frame_ || o.n_ != n_) throw std::invalid_argument("frame mismatch in product");
    sign_ *= o.sign_;
    for (const auto& [f, e] : o.exps_) mul_factor(f, e);
    return *this;
}

FactoredRational& FactoredRational::operator/=(const FactoredRational& o) {
    if (o.frame_ != frame_ || o.n_ != n_) throw std::invalid_argument("frame mismatch in quotient");
    sign_ *= o.sign_;
    for (const auto& [f, e] : o.exps_) mul_factor(f, -e);
    return *this;
}

FactoredRational FactoredRational::pow(long long e) const {
    FactoredRational r(frame_, n_);
    r.sign_ = (e % 2 != 0) ? sign_ : 1;
    for (const auto& [f, x] : exps_) r.mul_factor(f, x * e);
    return r;
}

bool FactoredRational::equal_up_to_sign(const FactoredRational& o) const {
    return frame_ == o.frame_ && n_ == o.n_ && exps_ == o.exps_;
}

long long FactoredRational::total_degree() const {
    long long d = 0;
    for (const auto& [f, e] : exps_) d += e;
    return d;
}

long long FactoredRational::degree_bound() const {
    long long d = 0;
    for (const auto& [f, e] : exps_) {
        long long fd = f.kind == FactorKind::cube_one_minus ? f.j - f.i + 1 : 1;
        d += std::llabs(e) * fd;
    }
    return d;
}

long long FactoredRational::letter_weight(int v) const {
    long long w = 0;
    for (const auto& [f, e] : exps_)
        if (f.kind == FactorKind::zdiff && (f.i == v || f.j == v)) w += e;
    return w;
}

mpq_class eval_factor(const Factor& f, Frame frame, int n, const std::vector<mpq_class>& c) {
    int ell = n - 3;
    switch (f.kind) {
        case FactorKind::zdiff: return c[f.i - 1] - c[f.j - 1];
        case FactorKind::simp: {
            auto P = [&](int k) -> mpq_class {
                if (k == 0) return 0;
                if (k == ell + 1) return 1;
                return c[k - 1];
            };
            return P(f.j) - P(f.i);
        }
        case FactorKind::cube_x: return c[f.i - 1];
        case FactorKind::cube_one_minus: {
            mpq_class m = 1;
            for (int k = f.i; k <= f.j; ++k) m *= c[k - 1];
            return 1 - m;
        }
    }
    (void)frame;
    return 0;
}

mpq_class FactoredRational::eval(const std::vector<mpq_class>& coords) const {
    mpq_class num = sign_, den = 1;
    for (const auto& [f, e] : exps_) {
        mpq_class v = eval_factor(f, frame_, n_, coords);
        mpq_class p = 1;
        for (int k = 0; k < std::abs(e); ++k) p *= v;
        if (e > 0)
            num *= p;
        else
            den *= p;
    }
    if (den == 0) throw std::domain_error("evaluation at a pole");
    return num / den;
}

SparsePoly FactoredRational::factor_poly(const Factor& f) const {
    int nv = frame_ == Frame::z ? n_ : ell();
    switch (f.kind) {
        case FactorKind::zdiff: return SparsePoly::var(nv, f.i - 1) - SparsePoly::var(nv, f.j - 1);
        case FactorKind::simp: {
            auto P = [&](int k) {
                if (k == 0) return SparsePoly(nv);
                if (k == ell() + 1) return SparsePoly::constant(nv, 1);
                return SparsePoly::var(nv, k - 1);
            };
            return P(f.j) - P(f.i);
        }
        case FactorKind::cube_x: return SparsePoly::var(nv, f.i - 1);
        case FactorKind::cube_one_minus: {
            SparsePoly::Monomial m(nv, 0);
            for (int k = f.i; k <= f.j; ++k) m[k - 1] = 1;
            return SparsePoly::constant(nv, 1) - SparsePoly::monomial(nv, m);
        }
    }
    return SparsePoly(nv);
}

std::string FactoredRational::str() const {
    std::string s = sign_ < 0 ? "-1" : "+1";
    for (const auto& [f, e] : exps_) s += " * " + f.str(ell()) + "^" + std::to_string(e);
    return s;
}

namespace {
const char* kind_name(FactorKind k) {
    switch (k) {
        case FactorKind::zdiff: return "zdiff";
        case FactorKind::simp: return "simp";
        case FactorKind::cube_x: return "x";
        case FactorKind::cube_one_minus: return "one_minus";
    }
    return "?";
}
}  // namespace

nlohmann::json FactoredRational::to_json() const {
    nlohmann::json fs = nlohmann::json::array();
    for (const auto& [f, e] : exps_)
        fs.push_back({{"kind", kind_name(f.kind)}, {"idx", {f.i, f.j}}, {"exp", e}, {"text", f.str(ell())}});
    return {{"frame", frame_name(frame_)}, {"n", n_}, {"sign", sign_}, {"factors", fs}};
}

std::string DifferentialForm::str() const {
    std::string d;
    const char* v = frame() == Frame::cubical ? "x" : frame() == Frame::simplicial ? "t" : "z";
    if (frame() == Frame::z) {
        for (int k = 2; k <= coefficient.n() - 2; ++k) d += " dz" + std::to_string(k);
    } else {
        for (int k = 1; k <= degree(); ++k) d += std::string(" d") + v + std::to_string(k);
    }
    return coefficient.str() + " *" + d;
}

nlohmann::json DifferentialForm::to_json() const {
    auto j = coefficient.to_json();
    j["degree"] = degree();
    return j;
}

FactoredRational to_simplicial(const FactoredRational& zf) {
    if (zf.frame() != Frame::z) throw PreconditionError("to_simplicial expects the z frame");
    int n = zf.n(), ell = n - 3;
    FactoredRational r(Frame::simplicial, n);
    r.set_sign(zf.sign());
    for (const auto& [f, e] : zf.exponents()) {
        if (f.j == n) continue;
        // z_i - z_j = -(P_{j-1} - P_{i-1})
        if (e % 2 != 0) r.negate();
        int p = f.i - 1, q = f.j - 1;
        if (p == 0 && q == ell + 1) continue;
        r.mul_factor(Factor::simp(p, q), e);
    }
    return r;
}

DifferentialForm to_simplicial(const DifferentialForm& w) { return {to_simplicial(w.coefficient)}; }

FactoredRational to_cubical(const FactoredRational& sf) {
    if (sf.frame() != Frame::simplicial) throw PreconditionError("to_cubical expects the simplicial frame");
    int n = sf.n(), ell = n - 3;
    FactoredRational r(Frame::cubical, n);
    r.set_sign(sf.sign());
    for (const auto& [f, e] : sf.exponents()) {
        int p = f.i, q = f.j;
        if (q <= ell)
            for (int k = q; k <= ell; ++k) r.mul_factor(Factor::x(k), e);
        if (p >= 1) r.mul_factor(Factor::one_minus(p, q - 1), e);
    }
    return r;
}

FactoredRational cubical_jacobian(int n) {
    FactoredRational j(Frame::cubical, n);
    for (int k = 2; k <= n - 3; ++k) j.mul_factor(Factor::x(k), k - 1);
    return j;
}

DifferentialForm to_cubical(const DifferentialForm& w) { return {to_cubical(w.coefficient) * cubical_jacobian(w.coefficient.n())}; }

}  // namespace cellint
