#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cellint/bigfloat.hpp"
#include "cellint/configuration.hpp"
#include "cellint/evaluator.hpp"
#include "cellint/forms.hpp"
#include "cellint/recurrences.hpp"
#include "cellint/relations.hpp"
#include "json.hpp"

using namespace cellint;
using nlohmann::json;

namespace {

bool as_json = false;
int threads = 1;

int default_digits() {
    if (const char* s = std::getenv("CELLINT_DIGITS")) {
        try {
            int d = std::stoi(s);
            if (d > 0) return d;
        } catch (const std::exception&) {
        }
        throw PreconditionError(std::string("CELLINT_DIGITS is not a positive integer: ") + s);
    }
    return 30;
}

std::vector<long long> parse_ints(const std::string& s) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw PreconditionError("cannot parse integer '" + tok + "'");
        }
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

// a name from the tables or a comma-separated permutation
Perm config_perm(const std::string& s) {
    if (auto p = lookup_named(s)) return *p;
    return parse_perm(s);
}

std::string names_str(const ConfigClass& c) {
    std::string s;
    for (const auto& nm : names_of(c)) s += (s.empty() ? "" : " ") + nm;
    return s;
}

json class_json(const ConfigClass& c) {
    return {{"n", c.n}, {"rep", c.rep}, {"names", names_of(c)}};
}

// "a1,...,an", "a1,...,an;b" or "a1,...,an;b;u,v" with b on the edge {u,v} of delta'
ParamSet params_for(const Perm& sigma, const std::string& spec) {
    auto parts = split(spec, ';');
    if (parts.empty() || parts.size() > 3) throw PreconditionError("params must look like a1,...,an[;b[;u,v]]");
    auto a = parse_ints(parts[0]);
    if (a.size() != sigma.size()) throw PreconditionError("need one a per edge of delta");
    std::optional<long long> b;
    std::pair<int, int> edge{0, 0};
    if (parts.size() >= 2) {
        auto bv = parse_ints(parts[1]);
        if (bv.size() != 1) throw PreconditionError("give a single b value");
        b = bv[0];
    }
    if (parts.size() == 3) {
        auto e = parse_ints(parts[2]);
        if (e.size() != 2) throw PreconditionError("the b edge needs two labels");
        edge = {static_cast<int>(e[0]), static_cast<int>(e[1])};
    }
    return solve_homogeneity(sigma, a, b, edge);
}

void print_value(const EvalResult& r, int digits, const json& extra) {
    if (as_json) {
        json j = r.to_json(digits);
        j.update(extra);
        std::cout << j.dump() << "\n";
        return;
    }
    std::cout << r.value.str(digits) << "\n";
    std::cerr << "err " << r.error.str(3) << " (" << r.method << (r.converged ? "" : ", not converged") << ")\n";
}

mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw PreconditionError("cannot parse rational '" + s + "'");
    q.canonicalize();
    return q;
}

std::vector<mpq_class> json_rationals(const json& j) {
    std::vector<mpq_class> out;
    for (const auto& v : j) out.push_back(v.is_string() ? parse_rational(v.get<std::string>()) : mpq_class(v.get<long>()));
    return out;
}

void cmd_enumerate(int n) {
    EnumerateOptions opt;
    opt.threads = threads;
    auto classes = enumerate_convergent(n, opt);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        bool sd = is_self_dual(c);
        if (as_json) {
            json j = class_json(c);
            j["index"] = i + 1;
            j["self_dual"] = sd;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << i + 1 << "  " << perm_str(c.rep) << (sd ? "  self-dual" : "");
            auto nm = names_str(c);
            if (!nm.empty()) std::cout << "  " << nm;
            std::cout << "\n";
        }
    }
    if (!as_json) std::cout << classes.size() << " convergent classes for n = " << n << "\n";
}

void cmd_classify(const std::vector<std::string>& perms) {
    for (const auto& s : perms) {
        Perm p = config_perm(s);
        auto c = canonical_config(p);
        bool conv = is_convergent(p);
        bool sd = conv && is_self_dual(c);
        if (as_json) {
            json j = class_json(c);
            j["input"] = p;
            j["convergent"] = conv;
            j["self_dual"] = sd;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << perm_str(p) << " -> " << perm_str(c.rep) << (conv ? " convergent" : " divergent")
                      << (sd ? " self-dual" : "");
            auto nm = names_str(c);
            if (!nm.empty()) std::cout << " " << nm;
            std::cout << "\n";
        }
    }
}

void cmd_dual(const std::vector<std::string>& perms) {
    for (const auto& s : perms) {
        Perm p = config_perm(s);
        auto c = canonical_config(p);
        auto d = dual(c);
        if (as_json) {
            json j = class_json(d);
            j["input"] = p;
            j["self_dual"] = d == c;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << perm_str(p) << " -> " << perm_str(d.rep) << (d == c ? " self-dual" : "");
            auto nm = names_str(d);
            if (!nm.empty()) std::cout << " " << nm;
            std::cout << "\n";
        }
    }
}

void cmd_convergent(const std::vector<std::string>& perms) {
    for (const auto& s : perms) {
        Perm p = config_perm(s);
        auto w = convergence_witness(p);
        if (as_json) {
            json j{{"input", p}, {"convergent", !w}};
            if (w) j["witness"] = w->elements();
            std::cout << j.dump() << "\n";
            continue;
        }
        if (perms.size() > 1) std::cout << perm_str(p) << ": ";
        if (!w) {
            std::cout << "true\n";
            continue;
        }
        std::string block;
        for (int v : w->elements()) block += (block.empty() ? "" : ",") + std::to_string(v);
        std::cout << "false (witness block {" << block << "})\n";
    }
}

void cmd_integrand(int n, const std::string& sigma_s, const std::string& frame, const std::string& params, long long N) {
    Perm sigma = config_perm(sigma_s);
    if (static_cast<int>(sigma.size()) != n) throw PreconditionError("permutation does not have n entries");
    if (frame != "simplicial" && frame != "cubical" && frame != "z") throw PreconditionError("frame must be simplicial, cubical or z");
    FactoredRational f;
    DifferentialForm w;
    if (params.empty()) {
        if (frame == "z") {
            f = f_tilde(identity_perm(n), sigma);
            w = omega_tilde(sigma);
        } else {
            auto b = build_basic(sigma);
            f = b.f;
            w = b.omega;
        }
        if (N != 1) f = f.pow(N);
    } else {
        auto p = params_for(sigma, params);
        f = build_general(p);
        w = omega_tilde(p.deltap);
        if (frame != "z") {
            f = to_simplicial(f);
            w = to_simplicial(w);
        }
    }
    if (frame == "cubical") {
        f = to_cubical(f);
        w = to_cubical(w);
    }
    if (as_json) {
        std::cout << json{{"frame", frame}, {"f", f.to_json()}, {"omega", w.to_json()}}.dump() << "\n";
    } else {
        std::cout << "f = " << f.str() << "\n";
        std::cout << "omega = " << w.str() << "\n";
    }
}

void cmd_region_check(const std::string& config, int points, std::uint64_t seed, long long m_max) {
    auto c = canonical_config(config_perm(config));
    auto rep = region_check(c, points, seed, m_max);
    if (as_json) {
        json j = rep.to_json();
        j["config"] = c.rep;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "config " << perm_str(c.rep) << "\n";
        std::cout << "points of C on the homogeneity locus: " << rep.inside_ok << "/" << rep.inside << " convergent\n";
        std::cout << "points with a negative edge parameter: " << rep.negative_ok << "/" << rep.negative
                  << " divergent along that edge\n";
        for (const auto& f : rep.failures) std::cout << "  " << f << "\n";
    }
    if (!rep.ok()) throw PreconditionError("region check failed");
}

struct RecurrenceInput {
    PolyRecurrence rec;
    std::vector<mpq_class> a_init, b_init;
    std::string constant;
    int weight = 0;
    int scale = 1;
};

RecurrenceInput load_recurrence(const std::string& which) {
    RecurrenceInput in;
    if (which == "zeta2" || which == "zeta3") {
        auto ap = apery_pair(which);
        in.rec = ap.rec;
        in.a_init = ap.a_init;
        in.b_init = ap.b_init;
        in.constant = ap.constant;
        in.weight = ap.weight;
        in.scale = ap.scale;
        return in;
    }
    std::ifstream f(which);
    if (!f) throw PreconditionError("cannot open " + which);
    json j;
    try {
        j = json::parse(f);
        in.rec = PolyRecurrence::from_json(j.at("recurrence"));
        in.a_init = json_rationals(j.at("a_init"));
        if (j.contains("b_init")) in.b_init = json_rationals(j["b_init"]);
        in.constant = j.value("constant", "");
        in.weight = j.value("weight", 0);
        in.scale = j.value("scale", 1);
    } catch (const json::exception& e) {
        throw PreconditionError(std::string("bad recurrence file: ") + e.what());
    }
    return in;
}

void cmd_recur(const std::string& which, long terms, bool diag, int digits) {
    if (terms < 1) throw PreconditionError("--terms must be positive");
    auto in = load_recurrence(which);
    auto a = extend(in.rec, in.a_init, terms);
    std::optional<RationalSequence> b;
    if (!in.b_init.empty()) b = extend(in.rec, in.b_init, terms);
    std::optional<DiagnosticsReport> dr;
    if (diag) {
        if (!b || in.constant.empty() || in.weight <= 0) throw PreconditionError("diagnostics need b_init, constant and weight");
        LinearFormSpec spec{{"1", in.constant}, {*b, a}};
        for (auto& v : spec.coefficients[0].values) v *= -in.scale;
        for (auto& v : spec.coefficients[1].values) v *= in.scale;
        dr = diagnostics(spec, in.weight, digits);
    }
    if (as_json) {
        json j{{"recurrence", in.rec.to_json()}, {"a", a.to_json()}};
        if (b) j["b"] = b->to_json();
        if (!in.constant.empty()) j["constant"] = in.constant;
        if (dr) j["diagnostics"] = dr->to_json(digits);
        std::cout << j.dump() << "\n";
        return;
    }
    std::cout << in.rec.str() << "\n";
    for (long n = a.n0; n <= terms; ++n) {
        std::cout << n << "  a = " << a.at(n).get_str();
        if (b) std::cout << "  b = " << b->at(n).get_str();
        std::cout << "\n";
    }
    if (dr) {
        std::cout << "integral a_n: " << (dr->integral[1] ? "yes" : "no") << "\n";
        std::cout << "integral d_n^" << in.weight << " b_n: " << (dr->integral_scaled[0] ? "yes" : "no") << "\n";
        std::cout << "|I_N| = " << dr->abs_I.back().str(10) << " at N = " << dr->N << "\n";
        std::cout << "ratio |I_N/I_(N-1)| = " << dr->ratio.str(10) << "\n";
        std::cout << "d_N^(1/N) = " << dr->dn_root.str(10) << "\n";
        std::cout << "e^" << in.weight << " * epsilon = " << dr->composite.str(10)
                  << (dr->composite_below_one ? " < 1" : " >= 1") << "\n";
    }
}

RationalSequence read_sequence(const std::string& path) {
    std::ifstream file;
    std::istream* is = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file) throw PreconditionError("cannot open " + path);
        is = &file;
    }
    RationalSequence s;
    std::string line;
    while (std::getline(*is, line)) {
        line.erase(0, line.find_first_not_of(" \t"));
        line.erase(line.find_last_not_of(" \t\r") + 1);
        if (line.empty() || line[0] == '#') continue;
        s.values.push_back(parse_rational(line));
    }
    return s;
}

void cmd_discover(int order, int degree, const std::string& from, const std::string& input, long terms) {
    if (order < 1 || degree < 0) throw PreconditionError("need order >= 1 and degree >= 0");
    long need = static_cast<long>(discover_min_terms(order, degree));
    if (terms <= 0) terms = need;
    RationalSequence s;
    if (!input.empty()) {
        s = read_sequence(input);
    } else if (from == "zeta2" || from == "zeta3") {
        auto ap = apery_pair(from);
        s = extend(ap.rec, ap.a_init, terms - 1);
    } else if (from == "hadamard") {
        auto z2 = apery_pair("zeta2"), z3 = apery_pair("zeta3");
        auto a2 = extend(z2.rec, z2.a_init, terms - 1), a3 = extend(z3.rec, z3.a_init, terms - 1);
        s.values.resize(a2.size());
        for (std::size_t i = 0; i < a2.size(); ++i) s.values[i] = a2.values[i] * a3.values[i];
    } else {
        throw PreconditionError("give --input or --from zeta2|zeta3|hadamard");
    }
    auto r = discover(s, order, degree);
    if (as_json) {
        json j{{"terms", s.size()}, {"found", r.has_value()}};
        if (r) j["recurrence"] = r->to_json();
        std::cout << j.dump() << "\n";
        return;
    }
    if (r)
        std::cout << r->str() << "\n";
    else
        std::cout << "no recurrence of order <= " << order << " and degree <= " << degree << " (" << s.size() << " terms)\n";
}

json config_json(const Perm& p, const std::string& params, long long N) {
    json j{{"config", p}};
    if (params.empty())
        j["N"] = N;
    else
        j["params"] = params;
    return j;
}

void cmd_eval(const std::string& config, long long N, int digits, const std::string& params, int max_levels) {
    Perm p = config_perm(config);
    if (!is_convergent(p)) throw PreconditionError("configuration is not convergent");
    QuadOptions opt;
    opt.threads = threads;
    opt.max_levels = max_levels;
    EvalResult r;
    if (params.empty()) {
        if (N < 0) throw PreconditionError("N must be non-negative");
        r = eval_basic(canonical_config(p), N, digits, opt);
    } else {
        r = eval_general(params_for(p, params), digits, opt);
    }
    print_value(r, digits, config_json(p, params, N));
}

void cmd_mc(const std::string& config, long long N, long long samples, std::uint64_t seed, int replicas, const std::string& params) {
    Perm p = config_perm(config);
    McOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    opt.replicas = replicas;
    opt.threads = threads;
    EvalResult r = params.empty() ? eval_montecarlo(canonical_config(p), N, opt) : eval_montecarlo(params_for(p, params), opt);
    json extra = config_json(p, params, N);
    extra["seed"] = seed;
    print_value(r, 10, extra);
}

void cmd_fit(const std::string& value, const std::string& basis_s, int digits) {
    BigFloat v(value, digits_to_bits(digits + 10));
    auto basis = ConstantBasis::parse(basis_s, digits + 10);
    auto fit = fit_linear_form(v, basis, digits);
    if (as_json) {
        json j = fit ? fit->to_json(basis) : json{{"basis", basis.names}};
        j["accepted"] = fit.has_value();
        std::cout << j.dump() << "\n";
        return;
    }
    if (!fit) {
        std::cout << "no relation within the height bound\n";
        return;
    }
    for (std::size_t i = 0; i < basis.size(); ++i) std::cout << basis.names[i] << "  " << fit->coeffs[i].get_str() << "\n";
    std::cout << "residual " << fit->residual.str(3) << "\n";
}

double table_value(const NamedConfig& e) {
    double v = 0;
    for (std::size_t i = 0; i < e.value.size(); ++i)
        v += named_constant(e.value_basis[i], 20).to_double() * e.value[i].first / e.value[i].second;
    return v;
}

void cmd_report(int n, long long samples, int fit_to, int digits) {
    auto classes = enumerate_convergent(n, EnumerateOptions{threads});
    json rows = json::array();
    std::ostringstream text;
    text << "n = " << n << ": " << classes.size() << " convergent classes\n";
    int self_dual = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        auto d = dual(c);
        std::size_t di = std::find(classes.begin(), classes.end(), d) - classes.begin();
        bool sd = d == c;
        self_dual += sd;
        McOptions mo;
        mo.samples = samples;
        mo.seed = 1;
        mo.threads = threads;
        auto mc = eval_montecarlo(c, 0, mo);
        auto mx = max_on_cell(c);
        json row{{"index", i + 1},          {"rep", c.rep},
                 {"names", names_of(c)},    {"self_dual", sd},
                 {"dual", di + 1},          {"max_f", mx.value.str(8)},
                 {"I0_mc", mc.value.str(8)}, {"I0_mc_err", mc.error.str(3)}};
        text << i + 1 << "  " << perm_str(c.rep) << "  dual " << di + 1 << (sd ? " (self-dual)" : "") << "  max f "
             << mx.value.str(8) << "  I(0) " << mc.value.str(8) << " +- " << mc.error.str(3);
        for (const auto& e : catalog())
            if (static_cast<int>(e.rep.size()) == n && canonical_config(e.rep) == c) {
                text << "  " << e.name;
                if (!e.value.empty()) {
                    std::ostringstream tv;
                    tv.precision(8);
                    tv << table_value(e);
                    text << " table " << tv.str();
                    row["I0_table"] = tv.str();
                }
            }
        text << "\n";
        if (fit_to >= 0 && c.ell() <= 3) {
            std::string basis_s = n == 5 ? "1,zeta2" : "1,zeta2,zeta3";
            auto basis = ConstantBasis::parse(basis_s, digits + 10);
            QuadOptions qo;
            qo.threads = threads;
            json fits = json::array();
            for (const auto& vr : vanishing_report(c, 0, fit_to, basis, digits, qo)) {
                json fj{{"N", vr.N}, {"accepted", vr.accepted}};
                text << "    N = " << vr.N << ":";
                if (vr.accepted) {
                    json cs = json::array();
                    for (std::size_t k = 0; k < basis.size(); ++k) {
                        cs.push_back(vr.coeffs[k].get_str());
                        text << "  " << basis.names[k] << " " << (vr.nonzero[k] ? "*" : "0") << " " << vr.coeffs[k].get_str();
                    }
                    fj["coeffs"] = cs;
                } else {
                    text << "  no fit";
                }
                text << "\n";
                fits.push_back(fj);
            }
            row["fits"] = fits;
        }
        rows.push_back(row);
    }
    text << self_dual << " self-dual\n";
    if (as_json)
        std::cout << json{{"n", n}, {"count", classes.size()}, {"self_dual", self_dual}, {"classes", rows}}.dump() << "\n";
    else
        std::cout << text.str();
}

Triple parse_triple(const std::string& s) {
    auto v = parse_ints(s);
    if (v.size() != 3) throw PreconditionError("a triple needs three labels");
    return {static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2])};
}

void cmd_product(const std::string& first, const std::string& second, const std::string& t1s, const std::string& t2s) {
    Perm p1 = config_perm(first), p2 = config_perm(second);
    ConfigPair a{DihedralStructure::standard(static_cast<int>(p1.size())), DihedralStructure(p1)};
    ConfigPair b{DihedralStructure::standard(static_cast<int>(p2.size())), DihedralStructure(p2)};
    auto pr = product(a, b, parse_triple(t1s), parse_triple(t2s));
    auto c = config_of_pair(pr);
    if (as_json) {
        json j = class_json(c);
        j["delta"] = pr.delta.word();
        j["deltap"] = pr.deltap.word();
        j["convergent"] = is_convergent(c);
        std::cout << j.dump() << "\n";
        return;
    }
    std::cout << "delta  = " << perm_str(pr.delta.word()) << "\n";
    std::cout << "delta' = " << perm_str(pr.deltap.word()) << "\n";
    std::cout << "class  = " << perm_str(c.rep) << (is_convergent(c) ? " convergent" : " divergent");
    auto nm = names_str(c);
    if (!nm.empty()) std::cout << " " << nm;
    std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::cout.setf(std::ios::unitbuf);
    CLI::App app{"cellular integrals: configurations, forms, recurrences, quadrature and relations"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    int digits = 0;
    auto add_digits = [&](CLI::App* s) { s->add_option("--digits", digits, "decimal digits (default CELLINT_DIGITS or 30)"); };

    int n = 0;
    auto* enumerate = app.add_subcommand("enumerate", "list the convergent configuration classes of size n");
    enumerate->add_option("n", n)->required();

    std::vector<std::string> perms;
    auto* classify = app.add_subcommand("classify", "canonical class of permutations");
    classify->add_option("sigma", perms)->required();
    auto* dualc = app.add_subcommand("dual", "dual class");
    dualc->add_option("sigma", perms)->required();
    auto* conv = app.add_subcommand("convergent", "convergence with a witness divisor");
    conv->add_option("sigma", perms)->required();

    std::string sigma, frame = "simplicial", params;
    long long N = 0;
    auto* integrand = app.add_subcommand("integrand", "basic or parametrized integrand");
    integrand->add_option("n", n)->required();
    integrand->add_option("sigma", sigma)->required();
    integrand->add_option("--frame", frame, "simplicial, cubical or z");
    integrand->add_option("--params", params, "a1,...,an[;b[;u,v]]");
    long long power = 1;
    integrand->add_option("--N", power, "power of the basic f");

    std::string config;
    int points = 10000;
    std::uint64_t seed = 1;
    long long m_max = 1000000;
    auto* region = app.add_subcommand("region-check", "sample the region C and check convergence");
    region->add_option("--config", config)->required();
    region->add_option("--points", points)->check(CLI::PositiveNumber);
    region->add_option("--seed", seed);
    region->add_option("--m-max", m_max);

    std::string which;
    long terms = 0;
    bool diag = false;
    auto* recur = app.add_subcommand("recur", "iterate a recurrence");
    recur->add_option("which", which, "zeta2, zeta3 or a JSON file")->required();
    recur->add_option("--terms", terms)->required();
    recur->add_flag("--diagnostics", diag);
    add_digits(recur);

    int order = 0, degree = 0;
    std::string from, input;
    auto* disc = app.add_subcommand("discover", "guess a recurrence from terms");
    disc->add_option("--order", order)->required();
    disc->add_option("--degree", degree)->required();
    disc->add_option("--from", from, "zeta2, zeta3 or hadamard");
    disc->add_option("--input", input, "file with one rational per line, - for stdin");
    disc->add_option("--terms", terms);

    int max_levels = 8;
    auto* eval = app.add_subcommand("eval", "tanh-sinh evaluation");
    eval->add_option("--config", config)->required();
    eval->add_option("--N", N);
    eval->add_option("--params", params);
    eval->add_option("--max-levels", max_levels);
    add_digits(eval);

    long long samples = 1000000;
    int replicas = 32;
    auto* mc = app.add_subcommand("mc", "quasi Monte Carlo estimate");
    mc->add_option("--config", config)->required();
    mc->add_option("--N", N);
    mc->add_option("--params", params);
    mc->add_option("--samples", samples)->check(CLI::PositiveNumber);
    mc->add_option("--seed", seed);
    mc->add_option("--replicas", replicas)->check(CLI::Range(2, 4096));

    std::string value, basis = "1,zeta2";
    auto* fit = app.add_subcommand("fit", "rational linear form in a constant basis");
    fit->add_option("--value", value)->required();
    fit->add_option("--basis", basis);
    add_digits(fit);

    int fit_to = -1;
    auto* report = app.add_subcommand("report-appendix2", "table of classes with numerical data");
    report->add_option("n", n)->required();
    report->add_option("--samples", samples)->check(CLI::PositiveNumber);
    report->add_option("--fit-N", fit_to, "fit linear forms for N = 0.. (n = 5, 6)");
    add_digits(report);

    std::string first = "5pi", second = "6pi", t1 = "3,4,5", t2 = "4,1,5";
    auto* prod = app.add_subcommand("product", "product of two configurations along triples");
    prod->add_option("--first", first);
    prod->add_option("--second", second);
    prod->add_option("--t1", t1);
    prod->add_option("--t2", t2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (digits == 0) digits = default_digits();
        if (digits < 1) throw PreconditionError("--digits must be positive");
        if (*enumerate) cmd_enumerate(n);
        if (*classify) cmd_classify(perms);
        if (*dualc) cmd_dual(perms);
        if (*conv) cmd_convergent(perms);
        if (*integrand) cmd_integrand(n, sigma, frame, params, power);
        if (*region) cmd_region_check(config, points, seed, m_max);
        if (*recur) cmd_recur(which, terms, diag, digits);
        if (*disc) cmd_discover(order, degree, from, input, terms);
        if (*eval) cmd_eval(config, N, digits, params, max_levels);
        if (*mc) cmd_mc(config, N, samples, seed, replicas, params);
        if (*fit) cmd_fit(value, basis, digits);
        if (*report) {
            if (fit_to >= 0 && digits < min_fit_digits(n == 5 ? 2 : 3)) digits = min_fit_digits(n == 5 ? 2 : 3);
            cmd_report(n, samples, fit_to, digits);
        }
        if (*prod) cmd_product(first, second, t1, t2);
    } catch (const RefusedFit& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
