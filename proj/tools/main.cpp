// hermitia: Hermitian tensor algebra and mixed-state separability analysis.
//
// One binary, one subcommand per analysis:
//   check | ptrace | meig | heig | decompose | separability | fixture
// Inputs are tensor or ensemble JSON (see README); --input - reads stdin.
// Reports print as a table by default or as versioned JSON with --output json.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hermitia/decomposition.hpp"
#include "hermitia/fixtures.hpp"
#include "hermitia/heig.hpp"
#include "hermitia/io.hpp"
#include "hermitia/linalg.hpp"
#include "hermitia/partial_trace.hpp"
#include "hermitia/quantum.hpp"
#include "hermitia/tensor.hpp"

namespace {

using hermitia::Complex;
using nlohmann::json;

constexpr const char* kSchemaVersion = "1";

struct CliOptions {
    std::string input_path;
    std::string fixture;
    double tol = 1e-8;
    int starts = 32;
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::string output = "table";
    std::vector<std::size_t> keep;  // 1-based modes for ptrace
    bool normalize_trace = false;
    bool with_basis = false;
};

void apply_seed_env(CliOptions& opt) {
    if (opt.seed_given) return;
    const char* env = std::getenv("HERMITIA_SEED");
    if (env == nullptr || *env == '\0') return;
    try {
        opt.seed = std::stoull(env);
    } catch (const std::exception&) {
        throw hermitia::ParseError("HERMITIA_SEED is not an integer");
    }
}

struct LoadedInput {
    std::string bytes;
    json parsed;
};

LoadedInput load_input(const CliOptions& opt) {
    LoadedInput in;
    if (!opt.fixture.empty()) {
        in.parsed = hermitia::fixture_by_name(opt.fixture);
        in.bytes = in.parsed.dump();
        return in;
    }
    if (opt.input_path.empty()) {
        throw hermitia::ParseError("an --input path or --fixture name is required");
    }
    if (opt.input_path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        in.bytes = ss.str();
    } else {
        std::ifstream f(opt.input_path, std::ios::binary);
        if (!f) throw hermitia::ParseError("cannot open input file: " + opt.input_path);
        std::ostringstream ss;
        ss << f.rdbuf();
        in.bytes = ss.str();
    }
    try {
        in.parsed = json::parse(in.bytes);
    } catch (const json::parse_error& e) {
        throw hermitia::ParseError(std::string("input is not valid JSON: ") + e.what());
    }
    return in;
}

// Any analysis input reduces to a Hermitian tensor: hermitian JSON directly,
// complex JSON through rho(A), ensembles through the density tensor.
hermitia::HermitianTensor input_as_hermitian(const json& parsed) {
    if (hermitia::looks_like_ensemble(parsed)) {
        return hermitia::density_tensor(hermitia::parse_ensemble_json(parsed));
    }
    hermitia::ParsedTensor p = hermitia::parse_tensor_json(parsed);
    if (p.kind == "hermitian") return hermitia::hermitian_from_parsed(p);
    return hermitia::hermitianize(p.tensor);
}

// --- formatting -----------------------------------------------------------------

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string fmt_complex(double re, double im) {
    if (im == 0.0) return fmt6(re);
    return fmt6(re) + (im < 0 ? "-" : "+") + fmt6(std::abs(im)) + "i";
}

bool is_complex_pair(const json& j) {
    return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

std::string inline_value(const json& j);

std::string inline_array(const json& arr) {
    constexpr std::size_t kMaxInline = 24;
    // an array whose elements are all [re, im] pairs prints as complex values
    bool all_pairs = !arr.empty();
    for (const auto& v : arr) all_pairs = all_pairs && is_complex_pair(v);

    std::string out = "[";
    std::size_t shown = std::min<std::size_t>(arr.size(), kMaxInline);
    for (std::size_t i = 0; i < shown; ++i) {
        if (i > 0) out += ", ";
        out += all_pairs ? fmt_complex(arr[i][0].get<double>(), arr[i][1].get<double>())
                         : inline_value(arr[i]);
    }
    if (arr.size() > shown) {
        out += ", ... (" + std::to_string(arr.size()) + " total)";
    }
    return out + "]";
}

std::string inline_value(const json& j) {
    if (j.is_number_float()) return fmt6(j.get<double>());
    if (j.is_number()) return j.dump();
    if (j.is_boolean() || j.is_string() || j.is_null()) return j.dump();
    if (j.is_array()) return inline_array(j);
    return "{...}";
}

void print_table(std::ostream& os, const json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object()) {
                os << pad << key << ":\n";
                print_table(os, value, indent + 1);
            } else if (value.is_array() && !value.empty() && value[0].is_object()) {
                os << pad << key << ":\n";
                for (std::size_t i = 0; i < value.size(); ++i) {
                    os << pad << "  [" << i << "]\n";
                    print_table(os, value[i], indent + 2);
                }
            } else {
                os << pad << key << ": " << inline_value(value) << "\n";
            }
        }
    } else {
        os << pad << inline_value(j) << "\n";
    }
}

void emit_report(const CliOptions& opt, const std::string& command, const LoadedInput& in,
                 json results, json diagnostics) {
    json report;
    report["schema_version"] = kSchemaVersion;
    report["command"] = command;
    report["inputs_digest"] = hermitia::content_digest(in.bytes);
    report["results"] = std::move(results);
    report["diagnostics"] = std::move(diagnostics);
    if (opt.output == "json") {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "command: " << command << "\n";
        std::cout << "inputs_digest: " << report["inputs_digest"].get<std::string>() << "\n";
        print_table(std::cout, report["results"], 0);
        if (!report["diagnostics"].empty()) {
            std::cout << "diagnostics:\n";
            print_table(std::cout, report["diagnostics"], 1);
        }
    }
}

json tuple_to_json(const hermitia::ModeVectorTuple& x) {
    json out = json::array();
    for (const auto& vec : x.vectors) {
        json v = json::array();
        for (const Complex& z : vec) v.push_back(json::array({z.real(), z.imag()}));
        out.push_back(v);
    }
    return out;
}

json eigenpair_to_json(const hermitia::HermitianEigenpair& p) {
    json out;
    out["lambda"] = p.lambda;
    out["residual"] = p.residual;
    out["iterations"] = p.iterations;
    out["converged"] = p.converged;
    out["start_seed"] = p.start_seed;
    out["x"] = tuple_to_json(p.x);
    return out;
}

json certificate_to_json(const hermitia::Certificate& cert) {
    json out;
    out["kind"] = hermitia::certificate_kind(cert);
    if (const auto* c = std::get_if<hermitia::NegativeMatrixEigenvalue>(&cert)) {
        out["lambda_min"] = c->lambda_min;
        out["eigenvector"] = hermitia::complex_tensor_to_json(c->eigenvector);
    } else if (const auto* c = std::get_if<hermitia::NegativeHermitianEigenvalue>(&cert)) {
        out["lambda"] = c->lambda;
        out["witness"] = tuple_to_json(c->witness);
    } else if (const auto* c = std::get_if<hermitia::PositiveHermitianDecompositionCert>(&cert)) {
        json terms = json::array();
        for (const auto& t : c->decomposition.terms) {
            json term;
            term["weight"] = t.weight;
            term["vectors"] = tuple_to_json(t.factors);
            terms.push_back(term);
        }
        out["terms"] = terms;
    } else if (const auto* c = std::get_if<hermitia::SpanObstruction>(&cert)) {
        json cands = json::array();
        for (const auto& t : c->candidates) cands.push_back(hermitia::complex_tensor_to_json(t));
        out["candidates"] = cands;
        out["best_weights"] = c->best_weights;
        out["best_fit_residual"] = c->best_fit_residual;
    } else if (const auto* c = std::get_if<hermitia::Reason>(&cert)) {
        out["text"] = c->text;
    }
    return out;
}

// --- subcommands -----------------------------------------------------------------

int cmd_check(const CliOptions& opt) {
    LoadedInput in = load_input(opt);
    json results;
    if (hermitia::looks_like_ensemble(in.parsed)) {
        hermitia::MixedStateEnsemble e = hermitia::parse_ensemble_json(in.parsed);
        hermitia::HermitianTensor h = hermitia::density_tensor(e);
        results["kind"] = "ensemble";
        results["states"] = e.pure_states.size();
        results["hermitian"] = true;
        results["max_defect"] = 0.0;
        results["matrix_trace"] = hermitia::matrix_trace(h);
        results["frobenius_norm"] = hermitia::frobenius_norm(h);
        bool square = true;
        for (std::size_t d : h.mode_dims()) square = square && d == h.mode_dims()[0];
        if (square) {
            results["symmetric_hermitian"] = hermitia::is_symmetric_hermitian(h, opt.tol);
            results["conjugate_partial_symmetric"] =
                hermitia::is_conjugate_partial_symmetric(h, opt.tol);
        }
    } else {
        hermitia::ParsedTensor p = hermitia::parse_tensor_json(in.parsed);
        results["kind"] = p.kind;
        if (p.kind == "complex") {
            results["frobenius_norm"] = p.tensor.norm();
        } else {
            hermitia::HermiticityReport rep = hermitia::hermiticity_defect(p.tensor);
            bool ok = rep.max_defect <= hermitia::kDefaultHermiticityTol;
            results["hermitian"] = ok;
            results["max_defect"] = rep.max_defect;
            if (!ok) {
                json at;
                json wi = json::array(), wj = json::array();
                for (std::size_t v : rep.worst_i) wi.push_back(v + 1);
                for (std::size_t v : rep.worst_j) wj.push_back(v + 1);
                at["i"] = wi;
                at["j"] = wj;
                results["max_defect_at"] = at;
            }
            double fro = p.tensor.norm();
            results["frobenius_norm"] = fro;
            if (ok) {
                hermitia::HermitianTensor h = hermitia::hermitian_from_parsed(p);
                results["matrix_trace"] = hermitia::matrix_trace(h);
                bool square = true;
                for (std::size_t d : h.mode_dims()) square = square && d == h.mode_dims()[0];
                if (square) {
                    results["symmetric_hermitian"] = hermitia::is_symmetric_hermitian(h, opt.tol);
                    results["conjugate_partial_symmetric"] =
                        hermitia::is_conjugate_partial_symmetric(h, opt.tol);
                }
            }
        }
    }
    emit_report(opt, "check", in, std::move(results), json{{"tol", opt.tol}});
    return 0;
}

int cmd_ptrace(const CliOptions& opt) {
    LoadedInput in = load_input(opt);
    hermitia::HermitianTensor h = input_as_hermitian(in.parsed);
    if (opt.keep.empty()) throw hermitia::EmptyKeepSet("--keep needs at least one mode");
    std::vector<std::size_t> kept;
    for (std::size_t k : opt.keep) {
        if (k == 0 || k > h.modes()) {
            throw hermitia::ShapeMismatch("--keep mode " + std::to_string(k) +
                                          " out of range 1.." + std::to_string(h.modes()));
        }
        kept.push_back(k - 1);
    }
    hermitia::PartialTraceResult r = hermitia::partial_trace(h, kept);
    json results;
    json kept_out = json::array();
    for (std::size_t k : r.kept_modes) kept_out.push_back(k + 1);
    results["kept"] = kept_out;
    results["matrix_trace"] = hermitia::matrix_trace(r.tensor);
    results["tensor"] = hermitia::hermitian_tensor_to_json(r.tensor);
    if (r.kept_modes.size() == 1) {
        results["eigenvalues"] = hermitia::matrix_eigenvalues(r.tensor);
    }
    emit_report(opt, "ptrace", in, std::move(results), json{{"tol", opt.tol}});
    return 0;
}

int cmd_meig(const CliOptions& opt) {
    LoadedInput in = load_input(opt);
    hermitia::HermitianTensor h = input_as_hermitian(in.parsed);
    json results;
    results["flattened_dim"] = h.flat_dim();
    results["eigenvalues"] = hermitia::matrix_eigenvalues(h);
    emit_report(opt, "meig", in, std::move(results), json{{"tol", opt.tol}});
    return 0;
}

int cmd_heig(const CliOptions& opt) {
    LoadedInput in = load_input(opt);
    hermitia::HermitianTensor h = input_as_hermitian(in.parsed);
    auto [up, down] = hermitia::extreme_hermitian_eigenvalues(h, opt.starts, opt.seed);
    json results;
    results["max"] = eigenpair_to_json(up);
    results["min"] = eigenpair_to_json(down);
    emit_report(opt, "heig", in, std::move(results),
                json{{"starts", opt.starts}, {"seed", opt.seed}});
    return 0;
}

int cmd_decompose(const CliOptions& opt) {
    LoadedInput in = load_input(opt);
    hermitia::HermitianTensor h = input_as_hermitian(in.parsed);
    hermitia::EigenMatrixDecomposition d = hermitia::eigen_matrix_decompose(h);
    json results;
    results["s"] = d.s();
    results["lambdas"] = d.lambdas;
    json factors = json::array();
    for (const auto& f : d.factors) factors.push_back(hermitia::complex_tensor_to_json(f));
    results["factors"] = factors;
    results["worst_defect"] = hermitia::verify_decomposition(h, d);
    if (opt.with_basis) {
        hermitia::HermitianDecomposition b = hermitia::hermitian_decompose(h);
        json basis;
        basis["r"] = b.r();
        json weights = json::array();
        for (const auto& t : b.terms) weights.push_back(t.weight);
        basis["weights"] = weights;
        basis["positive"] = b.positive();
        basis["worst_defect"] = hermitia::verify_decomposition(h, b);
        results["rank_one_basis"] = basis;
    }
    emit_report(opt, "decompose", in, std::move(results), json{{"tol", opt.tol}});
    return 0;
}

int cmd_separability(const CliOptions& opt) {
    LoadedInput in = load_input(opt);
    hermitia::AnalyzerConfig config;
    config.tol = opt.tol;
    config.starts = opt.starts;
    config.seed = opt.seed;
    config.normalize_trace = opt.normalize_trace;

    hermitia::SeparabilityVerdict verdict;
    hermitia::HermitianTensor h = input_as_hermitian(in.parsed);
    if (hermitia::looks_like_ensemble(in.parsed)) {
        verdict = hermitia::separability_analyze(hermitia::parse_ensemble_json(in.parsed), config);
    } else {
        verdict = hermitia::separability_analyze(h, config);
    }

    json results;
    results["verdict"] = hermitia::to_string(verdict.verdict);
    results["certificate"] = certificate_to_json(verdict.certificate);
    results["reverified"] = hermitia::verify_certificate(h, verdict);
    emit_report(opt, "separability", in, std::move(results),
                json{{"tol", opt.tol},
                     {"starts", opt.starts},
                     {"seed", opt.seed},
                     {"normalize_trace", opt.normalize_trace}});
    return 0;
}

int cmd_fixture(const std::string& name) {
    std::cout << hermitia::fixture_by_name(name).dump(2) << "\n";
    return 0;
}

void add_common(CLI::App* sub, CliOptions& opt, bool with_search = false) {
    sub->add_option("--input", opt.input_path, "input file path, or - for stdin");
    sub->add_option("--fixture", opt.fixture, "built-in fixture name instead of --input");
    sub->add_option("--tol", opt.tol, "working tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--output", opt.output, "table or json")
        ->check(CLI::IsMember({"table", "json"}));
    if (with_search) {
        sub->add_option("--starts", opt.starts, "random starts for multi-start searches")
            ->check(CLI::PositiveNumber);
        auto* seed = sub->add_option("--seed", opt.seed, "random seed");
        sub->final_callback([&opt, seed]() { opt.seed_given = seed->count() > 0; });
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hermitian tensor algebra and mixed-state separability analysis"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string fixture_name;

    auto* check = app.add_subcommand("check", "hermiticity, symmetry, trace and norm");
    add_common(check, opt);

    auto* ptrace = app.add_subcommand("ptrace", "partial trace over the modes not kept");
    add_common(ptrace, opt);
    ptrace->add_option("--keep", opt.keep, "modes to keep (1-based)")->required();

    auto* meig = app.add_subcommand("meig", "matrix eigenvalues of the flattening");
    add_common(meig, opt);

    auto* heig = app.add_subcommand("heig", "extreme Hermitian eigenvalues over the multi-sphere");
    add_common(heig, opt, true);

    auto* decompose = app.add_subcommand("decompose", "eigen-matrix decomposition");
    add_common(decompose, opt);
    decompose->add_flag("--basis", opt.with_basis,
                        "also decompose over the canonical rank-one product basis");

    auto* separability = app.add_subcommand("separability", "separability analysis with certificate");
    add_common(separability, opt, true);
    separability->add_flag("--normalize-trace", opt.normalize_trace,
                           "scale the input to unit matrix trace first");

    auto* fixture = app.add_subcommand("fixture", "print a built-in fixture as JSON");
    fixture->add_option("name", fixture_name, "fixture name, e.g. example-6.2(0.5,0.5)")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        apply_seed_env(opt);
        if (check->parsed()) return cmd_check(opt);
        if (ptrace->parsed()) return cmd_ptrace(opt);
        if (meig->parsed()) return cmd_meig(opt);
        if (heig->parsed()) return cmd_heig(opt);
        if (decompose->parsed()) return cmd_decompose(opt);
        if (separability->parsed()) return cmd_separability(opt);
        if (fixture->parsed()) return cmd_fixture(fixture_name);
    } catch (const hermitia::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const hermitia::UnknownFixture& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const hermitia::NotHermitian& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const hermitia::NonFiniteEntry& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const hermitia::InconsistentShapes& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const hermitia::ShapeMismatch& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const hermitia::EmptyKeepSet& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const hermitia::OrderMismatch& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const hermitia::Error& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
