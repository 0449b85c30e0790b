#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <string>
#include <vector>

#include "bps/errors.hpp"
#include "bps/snfpipe.hpp"
#include "bps/unifactor.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "testutil.hpp"

using namespace bps;

namespace {

template <class F>
Errc thrown_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::BadInput;
}

LinearPart demo_linear_part() {
    return LinearPart::of(parse_poly("x"), parse_poly("-x - 1"));
}

bool all_reduced_minors_unit(const PolyMatrix& M) {
    unsigned r = matrix_rank(M);
    for (unsigned i = 1; i <= r; ++i)
        if (!minor_profile(M, i).J_is_unit) return false;
    return true;
}

}  // namespace

TEST_CASE("linear part splits the determinant") {
    LinearPart lp = LinearPart::of(parse_poly("2*x^2 - 2"), parse_poly("2*x - 2"));
    CHECK(lp.h == parse_poly("x - 1"));
    CHECK(lp.p == parse_poly("2*x + 2"));
    CHECK(lp.q == parse_poly("2"));
    CHECK(lp.linear_factor() == parse_poly("(2*x + 2)*y + 2"));
    CHECK(lp.h * lp.linear_factor() ==
          parse_poly("(2*x^2 - 2)*y + 2*x - 2"));

    LinearPart whole = LinearPart::of(parse_poly("3*x"), Poly::zero());
    CHECK(whole.h == parse_poly("x"));
    CHECK(whole.p == parse_poly("3"));
    CHECK(whole.q.is_zero());

    LinearPart coprime = demo_linear_part();
    CHECK(coprime.h == Poly::one());
    CHECK(coprime.linear_factor() == parse_poly("x*y - x - 1"));

    CHECK(thrown_code([] { LinearPart::of(Poly::zero(), parse_poly("x")); }) ==
          Errc::PreconditionViolated);
    CHECK(thrown_code([] { LinearPart::of(parse_poly("y"), Poly::zero()); }) ==
          Errc::PreconditionViolated);
    CHECK(thrown_code([] { LinearPart::of(parse_poly("x"), parse_poly("x*y")); }) ==
          Errc::PreconditionViolated);
}

TEST_CASE("linear y-factor extraction") {
    LinearPart lp = demo_linear_part();

    PolyMatrix F = demo_F();
    LinearExtraction ext = extract_linear_y_factor(F, lp);
    CHECK(ext.V * ext.D * ext.G == F);
    CHECK(ext.D.at(0, 0) == Poly::one());
    CHECK(ext.D.at(1, 1) == parse_poly("x*y - x - 1"));
    CHECK(ext.D.at(0, 1).is_zero());
    CHECK(is_unimodular(ext.V));
    CHECK(is_unimodular(ext.G));

    PolyMatrix Dy = PolyMatrix::diagonal({Poly::one(), Poly::var_y()}, 2, 2);
    LinearPart lpy = LinearPart::of(Poly::one(), Poly::zero());
    LinearExtraction ey = extract_linear_y_factor(Dy, lpy);
    CHECK(ey.V == PolyMatrix::identity(2));
    CHECK(ey.D == Dy);
    CHECK(ey.G == PolyMatrix::identity(2));

    for (int round = 0; round < 10; ++round) {
        std::size_t l = static_cast<std::size_t>(rand_int(2, 3));
        auto [p, q] = rand_coprime_pq(2);
        std::vector<Poly> d(l, Poly::one());
        d[l - 1] = Poly::from_y_coeffs({q, p});
        PolyMatrix M = rand_unimodular(l, 4, 1) * PolyMatrix::diagonal(d, l, l) *
                       rand_unimodular(l, 4, 1);
        LinearExtraction e = extract_linear_y_factor(M, LinearPart::of(p, q));
        CHECK(e.V * e.D * e.G == M);
        CHECK(e.D.at(l - 1, l - 1) == Poly::from_y_coeffs({q, p}));
        CHECK(is_unimodular(e.G));
    }

    CHECK(thrown_code([&] { extract_linear_y_factor(PolyMatrix::identity(2), lpy); }) ==
          Errc::NotDivisible);
    LinearPart bad;
    bad.p = parse_poly("x");
    bad.q = parse_poly("x");
    CHECK(thrown_code([&] { extract_linear_y_factor(demo_F(), bad); }) ==
          Errc::PreconditionViolated);
    CHECK(thrown_code([&] { extract_linear_y_factor(PolyMatrix(2, 3), lpy); }) ==
          Errc::NotSquare);
}

TEST_CASE("irreducible x-factor extraction") {
    PolyMatrix G = PolyMatrix::from_rows(
        {{parse_poly("x"), Poly::zero()}, {Poly::var_y(), Poly::one()}});
    XFactorStep step = extract_x_factor(G, parse_poly("x"));
    PolyMatrix D = PolyMatrix::diagonal({parse_poly("x"), Poly::one()}, 2, 2);
    CHECK(step.U * G == D * step.G1);
    CHECK(determinant(step.U) == Poly::one());
    CHECK(step.G1 == PolyMatrix::from_rows(
                         {{Poly::one(), Poly::zero()}, {Poly::var_y(), Poly::one()}}));

    for (int round = 0; round < 15; ++round) {
        static const char* primes[] = {"x", "x - 1", "x^2 + 2"};
        Poly p = parse_poly(primes[rand_int(0, 2)]);
        std::vector<Poly> d(3, Poly::one());
        d[0] = p;
        PolyMatrix planted = rand_unimodular(3, 4, 1) * PolyMatrix::diagonal(d, 3, 3) *
                             rand_unimodular(3, 4, 1);
        XFactorStep s = extract_x_factor(planted, p);
        CHECK(s.U * planted == PolyMatrix::diagonal(d, 3, 3) * s.G1);
        CHECK(determinant(s.U) == Poly::one());
        CHECK(determinant(s.G1) == determinant(planted).exact_div(p));
    }

    CHECK(thrown_code([] { extract_x_factor(PolyMatrix::identity(2), parse_poly("x")); }) ==
          Errc::KernelEmpty);
}

TEST_CASE("primitive factorization") {
    PolyMatrix M = demo_matrix();
    PrimitiveSplit split = primitive_factorization(M, parse_poly("x - 1"));
    CHECK(split.G * split.F == M);
    CHECK(determinant(split.G) == parse_poly("x - 1"));
    CHECK(determinant(split.F) == parse_poly("x*y - x - 1"));
    CHECK(all_reduced_minors_unit(split.G));
    CHECK(all_reduced_minors_unit(split.F));

    PrimitiveSplit trivial = primitive_factorization(M, Poly::one());
    CHECK(trivial.G == PolyMatrix::identity(2));
    CHECK(trivial.F == M);

    for (int round = 0; round < 8; ++round) {
        Poly h = parse_poly("x*(x - 1)");
        std::vector<Poly> d = {parse_poly("x"), parse_poly("x - 1"), Poly::one()};
        PolyMatrix planted = rand_unimodular(3, 4, 1) * PolyMatrix::diagonal(d, 3, 3) *
                             rand_unimodular(3, 4, 1);
        PrimitiveSplit s = primitive_factorization(planted, h);
        CHECK(s.G * s.F == planted);
        CHECK(determinant(s.G) == h.monic());
        CHECK(all_reduced_minors_unit(s.G));
        CHECK(all_reduced_minors_unit(s.F));
    }

    CHECK(thrown_code([] {
              primitive_factorization(PolyMatrix::identity(2), parse_poly("x"));
          }) == Errc::PreconditionViolated);
    CHECK(thrown_code([&] { primitive_factorization(M, Poly::var_y()); }) ==
          Errc::PreconditionViolated);
    CHECK(thrown_code([&] { primitive_factorization(PolyMatrix(2, 3), Poly::one()); }) ==
          Errc::NotSquare);
    CHECK(thrown_code([] {
              primitive_factorization(PolyMatrix(2, 2), Poly::one());
          }) == Errc::PreconditionViolated);
}

TEST_CASE("univariate determinant reduction") {
    UnivariateReduction easy = reduce_univariate_det(demo_G());
    CHECK(easy.complete);
    CHECK(easy.steps == 0);
    CHECK(easy.C.is_univariate_x());
    CHECK(easy.P * demo_G() * easy.Q == easy.C);

    // no constant entries anywhere, so one genuine descent move is forced
    PolyMatrix hard = PolyMatrix::from_rows(
        {{parse_poly("x"), parse_poly("x*y + 1")},
         {parse_poly("x - 1"), parse_poly("(x - 1)*y")}});
    CHECK(determinant(hard) == parse_poly("-(x - 1)"));
    UnivariateReduction red = reduce_univariate_det(hard);
    CHECK(red.complete);
    CHECK(red.steps == 1);
    CHECK(red.C.is_univariate_x());
    CHECK(red.P * hard * red.Q == red.C);

    PipelineConfig starved;
    starved.step_budget = 0;
    UnivariateReduction stalled = reduce_univariate_det(hard, starved);
    CHECK_FALSE(stalled.complete);
    CHECK(stalled.steps == 0);
    CHECK(stalled.P * hard * stalled.Q == stalled.C);

    for (int round = 0; round < 8; ++round) {
        std::vector<Poly> d = {Poly::one(), parse_poly("x"), parse_poly("x*(x - 1)")};
        PolyMatrix G = rand_unimodular(3, 3, 1) * PolyMatrix::diagonal(d, 3, 3) *
                       rand_unimodular(3, 3, 1);
        UnivariateReduction r = reduce_univariate_det(G);
        CHECK(r.P * G * r.Q == r.C);
        CHECK(is_unimodular(r.P));
        CHECK(is_unimodular(r.Q));
        if (r.complete) CHECK(r.C.is_univariate_x());
    }

    CHECK(thrown_code([] { reduce_univariate_det(PolyMatrix(2, 3)); }) ==
          Errc::NotSquare);
    CHECK(thrown_code([] {
              reduce_univariate_det(PolyMatrix::diagonal({Poly::var_y(), Poly::one()}, 2, 2));
          }) == Errc::PreconditionViolated);
    CHECK(thrown_code([] { reduce_univariate_det(PolyMatrix(2, 2)); }) ==
          Errc::PreconditionViolated);
}

TEST_CASE("pinch to a lower order") {
    LinearPart lp = demo_linear_part();
    PolyMatrix B = demo_B();
    PinchResult pr = pinch_stage(B, lp);
    CHECK(pr.U * B * pr.V ==
          PolyMatrix::block_diag(PolyMatrix::identity(1), pr.M1));
    CHECK(pr.M1.rows() == 1);
    CHECK(pr.M1.at(0, 0).monic() == parse_poly("(x - 1)*(x*y - x - 1)"));
    CHECK(is_unimodular(pr.U));
    CHECK(is_unimodular(pr.V));

    LinearPart lpy = LinearPart::of(Poly::one(), Poly::zero());
    PolyMatrix easy = PolyMatrix::diagonal({Poly::one(), Poly::var_y()}, 2, 2);
    PinchResult tr = pinch_stage(easy, lpy);
    CHECK(tr.U == PolyMatrix::identity(2));
    CHECK(tr.V == PolyMatrix::identity(2));
    CHECK(tr.M1.at(0, 0) == Poly::var_y());

    for (int round = 0; round < 10; ++round) {
        std::size_t l = static_cast<std::size_t>(rand_int(2, 4));
        auto [p, q] = rand_coprime_pq(2);
        Poly lin = Poly::from_y_coeffs({q, p});
        PolyMatrix C = rand_unimodular_x(l, 5, 1);
        PolyMatrix Bp = C * PolyMatrix::diagonal(
                                std::vector<Poly>(l - 1, Poly::one()), l, l);
        for (std::size_t i = 0; i < l; ++i) Bp.at(i, l - 1) = C.at(i, l - 1) * lin;
        PinchResult r = pinch_stage(Bp, LinearPart::of(p, q));
        CHECK(r.U * Bp * r.V ==
              PolyMatrix::block_diag(PolyMatrix::identity(1), r.M1));
        CHECK(determinant(r.M1).monic() == determinant(Bp).monic());
    }

    PolyMatrix bad_left = PolyMatrix::from_rows(
        {{Poly::var_y(), Poly::zero()}, {Poly::zero(), Poly::var_y()}});
    CHECK(thrown_code([&] { pinch_stage(bad_left, lpy); }) ==
          Errc::PreconditionViolated);
    PolyMatrix bad_col = PolyMatrix::from_rows(
        {{Poly::one(), Poly::one()}, {Poly::zero(), Poly::var_y()}});
    CHECK(thrown_code([&] { pinch_stage(bad_col, lpy); }) ==
          Errc::PreconditionViolated);
    PolyMatrix proper = PolyMatrix::diagonal(
        {parse_poly("x"), parse_poly("x") * Poly::var_y()}, 2, 2);
    CHECK(thrown_code([&] { pinch_stage(proper, lpy); }) ==
          Errc::PreconditionViolated);
    PolyMatrix drop = PolyMatrix::diagonal({Poly::zero(), Poly::var_y()}, 2, 2);
    CHECK(thrown_code([&] { pinch_stage(drop, lpy); }) == Errc::PreconditionViolated);
    CHECK(thrown_code([&] { pinch_stage(PolyMatrix::identity(1), lpy); }) ==
          Errc::PreconditionViolated);
    CHECK(thrown_code([&] { pinch_stage(PolyMatrix(2, 3), lpy); }) == Errc::NotSquare);
}

TEST_CASE("decision procedure") {
    DecisionReport demo = decide(demo_matrix());
    CHECK(demo.verdict == Verdict::Equivalent);
    CHECK(demo.in_class);
    CHECK(demo.rank == 2);
    REQUIRE(demo.orders.size() == 2);
    CHECK(demo.orders[0].d == Poly::one());
    CHECK(demo.orders[0].reduced == GroebnerBasis{{Poly::one()}});
    CHECK(demo.orders[0].unit);
    CHECK(demo.orders[1].d == parse_poly("(x - 1)*(x*y - x - 1)"));
    CHECK(demo.orders[1].unit);

    for (int s : {2, 3, 4}) {
        DecisionReport r = decide(family_matrix(s));
        CHECK(r.verdict == Verdict::OutsideClass);
        CHECK_FALSE(r.in_class);
        for (const auto& ov : r.orders) CHECK(ov.unit);
    }

    DecisionReport prop = decide(PolyMatrix::diagonal(
        {parse_poly("x"), Poly::var_y()}, 2, 2));
    CHECK(prop.verdict == Verdict::NotEquivalent);
    CHECK(prop.in_class);
    CHECK_FALSE(prop.orders[0].unit);

    DecisionReport zero = decide(PolyMatrix(2, 2));
    CHECK(zero.verdict == Verdict::Equivalent);
    CHECK(zero.rank == 0);
    CHECK(zero.orders.empty());

    // decide handles non-square input; the row equals its own normal form
    PolyMatrix row(1, 2);
    row.at(0, 0) = parse_poly("x*y + 1");
    DecisionReport wide = decide(row);
    CHECK(wide.verdict == Verdict::Equivalent);
    CHECK(wide.rank == 1);
}

TEST_CASE("certificate verification") {
    PolyMatrix M = demo_matrix();
    EquivalenceCertificate paper{demo_U(), demo_S(), demo_V(), {}};
    CHECK(verify_certificate(M, paper));

    for (int target = 0; target < 3; ++target)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                EquivalenceCertificate mut = paper;
                PolyMatrix& which = target == 0 ? mut.U : target == 1 ? mut.S : mut.V;
                which.at(i, j) += Poly::one();
                CHECK_FALSE(verify_certificate(M, mut));
            }

    for (int s : {2, 3, 4}) {
        PolyMatrix M1 = family_companion(s);
        PolyMatrix S = PolyMatrix::diagonal(
            {Poly::one(), determinant(M1)}, 2, 2);
        EquivalenceCertificate printed{family_companion_U(s), S,
                                       family_companion_V(s), {}};
        CHECK(verify_certificate(M1, printed));
    }

    // diagonal entries are pinned only up to a nonzero constant
    EquivalenceCertificate scaled = paper;
    row_scale(scaled.U, 1, Rational(2));
    row_scale(scaled.S, 1, Rational(2));
    CHECK(verify_certificate(M, scaled));

    PolyMatrix T = PolyMatrix::from_rows(
        {{Poly::one(), parse_poly("x")}, {Poly::zero(), parse_poly("x")}});
    EquivalenceCertificate offdiag{PolyMatrix::identity(2), T,
                                   PolyMatrix::identity(2), {}};
    CHECK_FALSE(verify_certificate(T, offdiag));

    EquivalenceCertificate self{PolyMatrix::identity(2), smith_target_matrix(M),
                                PolyMatrix::identity(2), {}};
    CHECK(verify_certificate(smith_target_matrix(M), self));

    EquivalenceCertificate wrong_shape{PolyMatrix::identity(3), demo_S(), demo_V(), {}};
    CHECK(thrown_code([&] { verify_certificate(M, wrong_shape); }) ==
          Errc::DimensionMismatch);
}

TEST_CASE("full transform pipeline") {
    PolyMatrix M = demo_matrix();
    TransformResult res = transform(M);
    CHECK(res.verdict == Verdict::Equivalent);
    REQUIRE(res.certificate.has_value());
    CHECK(res.certificate->S == demo_S());
    CHECK(verify_certificate(M, *res.certificate));
    CHECK_FALSE(res.certificate->trace.empty());

    PolyMatrix easy = PolyMatrix::diagonal(
        {Poly::one(), parse_poly("x*y + 1")}, 2, 2);
    TransformResult re = transform(easy);
    CHECK(re.verdict == Verdict::Equivalent);
    CHECK(re.certificate->S == smith_target_matrix(easy));

    PolyMatrix content = PolyMatrix::diagonal(
        {parse_poly("x"), parse_poly("x*(x*y + 1)")}, 2, 2);
    TransformResult rc = transform(content);
    CHECK(rc.verdict == Verdict::Equivalent);
    CHECK(rc.certificate->S == smith_target_matrix(content));
    CHECK(verify_certificate(content, *rc.certificate));

    TransformResult out = transform(family_matrix(3));
    CHECK(out.verdict == Verdict::OutsideClass);
    CHECK_FALSE(out.certificate.has_value());

    TransformResult noneq = transform(PolyMatrix::diagonal(
        {parse_poly("x"), Poly::var_y()}, 2, 2));
    CHECK(noneq.verdict == Verdict::NotEquivalent);
    CHECK_FALSE(noneq.certificate.has_value());

    TransformResult zero = transform(PolyMatrix(2, 2));
    CHECK(zero.verdict == Verdict::Equivalent);
    CHECK(zero.certificate->S == PolyMatrix(2, 2));
    CHECK(verify_certificate(PolyMatrix(2, 2), *zero.certificate));

    PolyMatrix flat(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) flat.at(i, j) = parse_poly("x*y + 1");
    TransformResult rd = transform(flat);
    CHECK(rd.verdict == Verdict::Incomplete);
    CHECK(rd.report.verdict == Verdict::Equivalent);
    CHECK_FALSE(rd.certificate.has_value());

    CHECK(thrown_code([] { transform(PolyMatrix(2, 3)); }) == Errc::NotSquare);
}

TEST_CASE("construct-then-recover rounds") {
    for (int round = 0; round < 20; ++round) {
        std::size_t l = static_cast<std::size_t>(rand_int(2, 3));
        PolyMatrix M = make_linear_instance(l, 2, 4, 1);
        TransformResult res = transform(M);
        REQUIRE(res.verdict == Verdict::Equivalent);
        CHECK(verify_certificate(M, *res.certificate));
        CHECK(decide(M).verdict == Verdict::Equivalent);
    }
    for (int round = 0; round < 6; ++round) {
        PolyMatrix M = make_content_instance(2, 3, 1);
        TransformResult res = transform(M);
        if (res.verdict == Verdict::Equivalent) {
            CHECK(verify_certificate(M, *res.certificate));
        } else {
            CHECK(res.verdict == Verdict::Incomplete);
        }
    }
}

TEST_CASE("certificate json round trip") {
    TransformResult res = transform(demo_matrix());
    REQUIRE(res.certificate.has_value());
    std::string text = certificate_to_json_text(*res.certificate, 2);
    EquivalenceCertificate back = certificate_from_json_text(text);
    CHECK(back.U == res.certificate->U);
    CHECK(back.S == res.certificate->S);
    CHECK(back.V == res.certificate->V);
    REQUIRE(back.trace.size() == res.certificate->trace.size());
    for (std::size_t i = 0; i < back.trace.size(); ++i) {
        CHECK(back.trace[i].stage == res.certificate->trace[i].stage);
        CHECK(back.trace[i].detail == res.certificate->trace[i].detail);
    }

    CHECK(thrown_code([] { certificate_from_json_text("["); }) == Errc::BadInput);
    CHECK(thrown_code([] { certificate_from_json_text("[1, 2]"); }) == Errc::BadInput);
    CHECK(thrown_code([&] {
              nlohmann::json j = nlohmann::json::parse(
                  certificate_to_json_text(*res.certificate));
              j.erase("V");
              certificate_from_json_text(j.dump());
          }) == Errc::BadInput);
    CHECK(thrown_code([&] {
              nlohmann::json j = nlohmann::json::parse(
                  certificate_to_json_text(*res.certificate));
              j["trace"] = 7;
              certificate_from_json_text(j.dump());
          }) == Errc::BadInput);
    CHECK(thrown_code([&] {
              nlohmann::json j = nlohmann::json::parse(
                  certificate_to_json_text(*res.certificate));
              j["U"]["entries"][0][0] = "x +";
              certificate_from_json_text(j.dump());
          }) == Errc::SyntaxError);
}

TEST_CASE("decision report json") {
    PolyMatrix M = demo_matrix();
    nlohmann::json j = nlohmann::json::parse(report_to_json_text(decide(M), M, 2));
    CHECK(j["verdict"] == "Equivalent");
    CHECK(j["in_class"] == true);
    CHECK(j["rank"] == 2);
    REQUIRE(j["orders"].size() == 2);
    CHECK(j["orders"][0]["d"] == "1");
    CHECK(j["orders"][0]["unit"] == true);
    CHECK(j["orders"][0]["reduced_basis"][0] == "1");
    CHECK(j["smith_target"].size() == 2);
    CHECK(j["smith_target"][0] == "1");
    CHECK(j["smith_target"][1] ==
          parse_poly("(x - 1)*(x*y - x - 1)").to_string());

    PolyMatrix F = family_matrix(4);
    nlohmann::json jf = nlohmann::json::parse(report_to_json_text(decide(F), F));
    CHECK(jf["verdict"] == "OutsideClass");
    CHECK(jf["in_class"] == false);
}
