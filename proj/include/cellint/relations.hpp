#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cellint/bigfloat.hpp"
#include "cellint/configuration.hpp"
#include "cellint/evaluator.hpp"
#include "json.hpp"

namespace cellint {

// thrown when the requested precision is too low to trust a fit
struct RefusedFit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using IntMatrix = std::vector<std::vector<mpz_class>>;

// rows are basis vectors; delta = 3/4
IntMatrix lattice_reduce(const IntMatrix& basis);

struct ConstantBasis {
    std::vector<std::string> names;
    std::vector<BigFloat> values;

    static ConstantBasis parse(const std::string& csv, int digits);
    std::size_t size() const { return names.size(); }
};

struct Relation {
    std::vector<mpz_class> coeffs;  // coprime, first nonzero positive
    BigFloat residual;
    mpz_class height;
};

// integer relation sum m_i x_i ~ 0 with |residual| < 10^(-0.6 digits) and height <= max_height
std::optional<Relation> find_relation(const std::vector<BigFloat>& x, int digits, const mpz_class& max_height);

struct LinearFit {
    std::vector<mpq_class> coeffs;  // v = sum coeffs[i] * basis[i]
    BigFloat residual;
    mpz_class height;
    nlohmann::json to_json(const ConstantBasis& basis) const;
};

int min_fit_digits(std::size_t basis_size);
mpz_class fit_height_bound(int digits, std::size_t basis_size);
// throws RefusedFit when digits < 20 + 10 |basis|
std::optional<LinearFit> fit_linear_form(const BigFloat& v, const ConstantBasis& basis, int digits);

struct VanishingRow {
    long long N = 0;
    bool accepted = false;
    std::vector<mpq_class> coeffs;
    std::vector<bool> nonzero;
    BigFloat residual;
};

VanishingRow vanishing_row(long long N, const BigFloat& value, const ConstantBasis& basis, int digits);
std::vector<VanishingRow> vanishing_report(const ConfigClass& c, long long N_from, long long N_to, const ConstantBasis& basis,
                                           int digits, const QuadOptions& opt = {});

}  // namespace cellint
