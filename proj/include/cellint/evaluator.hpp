#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cellint/bigfloat.hpp"
#include "cellint/forms.hpp"
#include "json.hpp"

namespace cellint {

struct EvalResult {
    BigFloat value;
    BigFloat error;
    std::string method;  // "tanh-sinh" or "monte-carlo"
    int levels = 0;
    long long samples = 0;  // integrand evaluations
    bool converged = true;
    std::vector<double> level_diffs;  // log10 |S_L - S_(L-1)| per refinement
    nlohmann::json to_json(int digits) const;
};

struct QuadOptions {
    int threads = 1;
    int max_levels = 8;
    long long max_points = 200000000;  // per level
};

// integrand: cubical frame, Jacobian included; integrated over [0,1]^l, absolute value returned
EvalResult integrate_cubical(const FactoredRational& integrand, int digits, const QuadOptions& opt = {});
EvalResult eval_basic(const ConfigClass& c, long long N, int digits, const QuadOptions& opt = {});
EvalResult eval_general(const ParamSet& p, int digits, const QuadOptions& opt = {});

struct McOptions {
    long long samples = 1000000;
    std::uint64_t seed = 1;
    int replicas = 32;
    int threads = 1;
};

EvalResult montecarlo_cubical(const FactoredRational& integrand, const McOptions& opt);
EvalResult eval_montecarlo(const ConfigClass& c, long long N, const McOptions& opt);
EvalResult eval_montecarlo(const ParamSet& p, const McOptions& opt);

struct MaxResult {
    BigFloat value;
    std::vector<double> argmax;  // cubical coordinates
    bool below_one = false;
};

// supremum of f over the closed cell, f basic and positive
MaxResult max_on_cell(const ConfigClass& c);
// f in cubical coordinates, double precision
double eval_cubical_double(const FactoredRational& f, const std::vector<double>& x);

FactoredRational basic_cubical_integrand(const ConfigClass& c, long long N);

}  // namespace cellint
