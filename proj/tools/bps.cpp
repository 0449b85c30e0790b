#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "bps/errors.hpp"
#include "bps/pencil.hpp"
#include "bps/polymat.hpp"
#include "bps/snfpipe.hpp"

using namespace bps;
using json = nlohmann::json;

namespace {

struct RunConfig {
    std::string out_path;
    int step_budget = 200;
    int degree_budget = 64;
    int pencil_bound = 6;
    bool emit_trace = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::BadInput, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// JSON goes to --out when given, otherwise to stdout.
void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw Error(Errc::BadInput, "cannot write " + cfg.out_path);
    out << text << '\n';
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Equivalent: return 0;
        case Verdict::NotEquivalent: return 1;
        case Verdict::OutsideClass: return 2;
        case Verdict::Incomplete: return 4;
    }
    return 3;
}

void print_trace(const EquivalenceCertificate& cert) {
    for (const auto& step : cert.trace)
        std::cerr << "  [" << step.stage << "] " << step.detail << '\n';
}

int cmd_analyze(const RunConfig& cfg, const std::string& matrix_path) {
    PolyMatrix M = matrix_from_json_text(read_file(matrix_path));
    DecisionReport rep = decide(M);
    emit(cfg, report_to_json_text(rep, M, 2));
    std::cerr << "verdict: " << verdict_name(rep.verdict) << " (rank " << rep.rank << ")\n";
    return verdict_exit(rep.verdict);
}

int cmd_transform(const RunConfig& cfg, const std::string& matrix_path) {
    PolyMatrix M = matrix_from_json_text(read_file(matrix_path));
    PipelineConfig pc{static_cast<unsigned>(cfg.step_budget), cfg.degree_budget};
    TransformResult res = transform(M, pc);
    if (!res.note.empty()) std::cerr << res.note << '\n';
    if (res.certificate) {
        emit(cfg, certificate_to_json_text(*res.certificate, 2));
        if (cfg.emit_trace) print_trace(*res.certificate);
    } else if (res.partial) {
        emit(cfg, certificate_to_json_text(*res.partial, 2));
        if (cfg.emit_trace) print_trace(*res.partial);
    } else {
        emit(cfg, report_to_json_text(res.report, M, 2));
    }
    std::cerr << "verdict: " << verdict_name(res.verdict) << '\n';
    return verdict_exit(res.verdict);
}

// Mirror of the verification predicate, reporting which condition broke.
std::string first_failed_check(const PolyMatrix& M, const EquivalenceCertificate& cert) {
    std::size_t l = M.rows(), m = M.cols();
    if (cert.U.rows() != l || cert.U.cols() != l || cert.V.rows() != m ||
        cert.V.cols() != m || cert.S.rows() != l || cert.S.cols() != m)
        return "certificate shapes do not match the matrix";
    if (!is_unimodular(cert.U)) return "U is not unimodular";
    if (!is_unimodular(cert.V)) return "V is not unimodular";
    if (cert.U * M * cert.V != cert.S) return "U*M*V differs from S";
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j && !cert.S.at(i, j).is_zero()) return "S is not diagonal";
    SmithForm target = smith_target(M);
    for (std::size_t i = 0; i < std::min(l, m); ++i) {
        const Poly& e = cert.S.at(i, i);
        if (i < target.rank) {
            if (e.is_zero() || e.monic() != target.invariant_factors[i])
                return "S(" + std::to_string(i + 1) + "," + std::to_string(i + 1) +
                       ") does not match the invariant factor " +
                       target.invariant_factors[i].to_string();
        } else if (!e.is_zero()) {
            return "S has a nonzero entry beyond the rank";
        }
    }
    return "";
}

int cmd_verify(const std::string& matrix_path, const std::string& cert_path) {
    PolyMatrix M = matrix_from_json_text(read_file(matrix_path));
    EquivalenceCertificate cert = certificate_from_json_text(read_file(cert_path));
    std::string failed = first_failed_check(M, cert);
    if (failed.empty()) {
        std::cout << "certificate ok\n";
        return 0;
    }
    std::cout << "FAIL: " << failed << '\n';
    return 1;
}

int cmd_pencil(const RunConfig& cfg, const std::string& a_path, const std::string& b_path) {
    PencilPair pair;
    pair.A = matrix_from_json_text(read_file(a_path));
    pair.B = matrix_from_json_text(read_file(b_path));
    pair.degree_bound = cfg.pencil_bound;
    SimilarityResult res = pencil_similarity(pair);
    json j;
    j["similar"] = res.similar;
    j["bound"] = res.bound;
    if (res.Q) j["Q"] = json::parse(matrix_to_json_text(*res.Q));
    emit(cfg, j.dump(2));
    if (res.similar)
        std::cerr << "Similar: found Q with constant nonzero determinant\n";
    else
        std::cerr << "NotSimilarUpTo(" << res.bound
                  << "): no transform within the ansatz degree and scan\n";
    return res.similar ? 0 : 1;
}

int demo_pipeline(const RunConfig& cfg) {
    PolyMatrix M = PolyMatrix::from_rows(
        {{parse_poly("x^2*y^2 - x^2*y - x*y^2 + 2*x + y - 1"),
          parse_poly("x^3*y^2 - x^3*y - x^2*y^2 - x^2*y + x^2 + 2*x*y - 1")},
         {parse_poly("x*y^2 - x*y - y^2 + y + 1"), parse_poly("x^2*y^2 - x^2*y - x*y^2 + y")}});
    std::cout << "M =\n" << M.to_string() << '\n';
    std::cout << "det(M) = " << determinant(M).to_string() << '\n';

    DecisionReport rep = decide(M);
    for (const auto& ov : rep.orders)
        std::cout << "order " << ov.order << ": d = " << ov.d.to_string()
                  << (ov.unit ? ", reduced minors generate the unit ideal" : "") << '\n';
    std::cout << "verdict: " << verdict_name(rep.verdict) << '\n';

    PipelineConfig pc{static_cast<unsigned>(cfg.step_budget), cfg.degree_budget};
    TransformResult res = transform(M, pc);
    if (!res.certificate) {
        std::cout << "pipeline stopped: " << res.note << '\n';
        return verdict_exit(res.verdict);
    }
    for (const auto& step : res.certificate->trace)
        std::cout << "  [" << step.stage << "] " << step.detail << '\n';
    std::cout << "U =\n" << res.certificate->U.to_string() << '\n';
    std::cout << "V =\n" << res.certificate->V.to_string() << '\n';
    std::cout << "S =\n" << res.certificate->S.to_string() << '\n';
    if (!verify_certificate(M, *res.certificate)) {
        std::cout << "verification failed\n";
        return 1;
    }
    std::cout << "U·M·V = S verified\n";
    return 0;
}

int demo_counterexample(const RunConfig& cfg, int s) {
    CounterexampleReport rep = counterexample_suite(s, cfg.pencil_bound);
    std::cout << "M =\n" << rep.M.to_string() << '\n';
    std::cout << "det(M) = " << determinant(rep.M).to_string() << '\n';
    std::cout << "reduced minors of all orders unit: " << (rep.minors_unit ? "yes" : "no")
              << '\n';
    std::cout << "verdict: " << verdict_name(rep.verdict) << '\n';
    std::cout << "companion (corner entry 1 instead of y) =\n" << rep.M1.to_string() << '\n';
    std::cout << "companion certificate verifies: " << (rep.certificate_ok ? "yes" : "no")
              << '\n';
    if (rep.similarity.similar)
        std::cout << "pencils similar within bound " << rep.similarity.bound << '\n';
    else
        std::cout << "NotSimilarUpTo(" << rep.similarity.bound
                  << "): the intertwining equations force a non-constant determinant\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smith-form equivalence toolkit for bivariate polynomial matrices"};
    app.require_subcommand(1);
    RunConfig cfg;

    std::string matrix_path, cert_path, a_path, b_path, demo_name;
    int family_s = 4;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", cfg.out_path, "write the JSON result to this path");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "decide equivalence, emit the report");
    analyze->add_option("matrix", matrix_path, "matrix JSON file")->required();
    add_common(analyze);

    CLI::App* transform_cmd =
        app.add_subcommand("transform", "construct a transformation certificate");
    transform_cmd->add_option("matrix", matrix_path, "matrix JSON file")->required();
    add_common(transform_cmd);
    transform_cmd->add_option("--step-budget", cfg.step_budget, "descent step budget")
        ->check(CLI::PositiveNumber);
    transform_cmd->add_option("--degree-budget", cfg.degree_budget, "certificate degree budget")
        ->check(CLI::PositiveNumber);
    transform_cmd->add_flag("--trace", cfg.emit_trace, "print the construction stages");

    CLI::App* verify = app.add_subcommand("verify", "check a certificate against a matrix");
    verify->add_option("matrix", matrix_path, "matrix JSON file")->required();
    verify->add_option("certificate", cert_path, "certificate JSON file")->required();

    CLI::App* pencil = app.add_subcommand("pencil", "bounded-degree similarity of two pencils");
    pencil->add_option("left", a_path, "first pencil, matrix JSON over K[y]")->required();
    pencil->add_option("right", b_path, "second pencil, matrix JSON over K[y]")->required();
    add_common(pencil);
    pencil->add_option("--pencil-bound", cfg.pencil_bound, "ansatz degree bound")
        ->check(CLI::NonNegativeNumber);

    CLI::App* demo = app.add_subcommand("demo", "walk a built-in example");
    demo->add_option("name", demo_name, "\"paper-example\" or \"counterexample\"")->required();
    demo->add_option("--s", family_s, "family parameter, at least 2")
        ->check(CLI::Range(2, 64));
    demo->add_option("--step-budget", cfg.step_budget, "descent step budget")
        ->check(CLI::PositiveNumber);
    demo->add_option("--degree-budget", cfg.degree_budget, "certificate degree budget")
        ->check(CLI::PositiveNumber);
    demo->add_option("--pencil-bound", cfg.pencil_bound, "ansatz degree bound")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 3;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(cfg, matrix_path);
        if (app.got_subcommand(transform_cmd)) return cmd_transform(cfg, matrix_path);
        if (app.got_subcommand(verify)) return cmd_verify(matrix_path, cert_path);
        if (app.got_subcommand(pencil)) return cmd_pencil(cfg, a_path, b_path);
        if (app.got_subcommand(demo)) {
            if (demo_name == "paper-example") return demo_pipeline(cfg);
            if (demo_name == "counterexample") return demo_counterexample(cfg, family_s);
            std::cerr << "unknown demo \"" << demo_name << "\"\n";
            return 3;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 3;
}
