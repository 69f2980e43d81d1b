#include "doctest.h"
#include "entkit/channel.hpp"
#include "entkit/measures.hpp"
#include "entkit/statezoo.hpp"

#include <cmath>

using namespace entkit;

namespace {

// T diagonal of an X state with real coherences rho03, rho12
std::array<double, 3> x_state_t(const Mat& m) {
    double r03 = m(0, 3).real(), r12 = m(1, 2).real();
    double tx = 2 * (r03 + r12), ty = 2 * (r12 - r03);
    double tz = (m(0, 0) - m(1, 1) - m(2, 2) + m(3, 3)).real();
    return {tx, ty, tz};
}

double n_oracle(const Mat& m) {
    auto t = x_state_t(m);
    return std::abs(t[0]) + std::abs(t[1]) + std::abs(t[2]);
}

double m_oracle(const Mat& m) {
    auto t = x_state_t(m);
    std::array<double, 3> s{t[0] * t[0], t[1] * t[1], t[2] * t[2]};
    std::sort(s.begin(), s.end());
    return s[1] + s[2];
}

}  // namespace

TEST_CASE("correlation matrix of the singlet") {
    RMat t = correlation_matrix(DensityMatrix(zoo::bell(4)));
    CHECK((t + RMat::Identity(3, 3)).norm() < 1e-14);
    auto ev = correlation_eigenvalues(DensityMatrix(zoo::bell(1)));
    for (double e : ev) CHECK(e == doctest::Approx(1));
}

TEST_CASE("N and M against the X-state oracle for every mixed family") {
    for (int i = 0; i <= 50; ++i) {
        double s = i / 50.0;
        std::vector<std::pair<std::string, ParamMap>> cases = {
            {"werner", {{"F", 0.26 + 0.74 * s}}},
            {"mjwk", {{"C", s}}},
            {"nmems", {{"p", s}}},
            {"werner_derivative", {{"F", 0.51 + 0.49 * s}, {"a", 0.5 + 0.5 * s}}},
            {"wei", {{"x", 0.2 * s}, {"y", 0.1}, {"a", 0.1}, {"b", 0.2 - 0.1 * s}, {"gamma", 0.6 - 0.1 * s}}},
        };
        for (const auto& [fam, p] : cases) {
            auto rho = zoo::make_mixed(fam, p);
            CAPTURE(fam);
            CAPTURE(s);
            CHECK(n_value(rho) == doctest::Approx(n_oracle(rho.matrix())).epsilon(1e-10));
            CHECK(m_value(rho) == doctest::Approx(m_oracle(rho.matrix())).epsilon(1e-10));
            CHECK(closed_form_m(fam, p) == doctest::Approx(m_value(rho)).epsilon(1e-10));
            CHECK(closed_form_fidelity(fam, p) == doctest::Approx(optimal_fidelity(rho, 2)).epsilon(1e-10));
        }
    }
}

TEST_CASE("optimal fidelity and singlet fraction relation") {
    CHECK(fidelity_from_singlet_fraction(1, 2) == doctest::Approx(1));
    CHECK(fidelity_from_singlet_fraction(0.5, 2) == doctest::Approx(2.0 / 3));
    CHECK(fidelity_from_singlet_fraction(1.0 / 3, 3) == doctest::Approx(0.5));
    auto w = zoo::werner(0.9);
    CHECK(optimal_fidelity(w, 2) == doctest::Approx(fidelity_from_singlet_fraction(0.9, 2)));
}

TEST_CASE("CHSH supremum is 2 sqrt M") {
    for (double F : {0.3, 0.6, 0.78, 0.9, 1.0}) {
        auto w = zoo::werner(F);
        CHECK(chsh_supremum(w) == doctest::Approx(2 * std::sqrt(m_value(w))).epsilon(1e-10));
    }
    auto bell = DensityMatrix(zoo::bell(1));
    const double r = 1 / std::sqrt(2.0);
    double v = chsh_value(bell, {0, 0, 1}, {1, 0, 0}, {r, 0, r}, {-r, 0, r});
    CHECK(std::abs(v) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("analyze_channel verdicts") {
    auto r = analyze_channel(zoo::werner(0.7));
    CHECK(r.useful == Verdict::yes);
    CHECK(r.violates_bell == Verdict::no);
    auto b = analyze_channel(zoo::werner(0.5));
    CHECK(b.useful == Verdict::boundary);
    auto m = analyze_channel(zoo::werner(0.9));
    CHECK(m.violates_bell == Verdict::yes);
    CHECK(std::string(verdict_name(Verdict::boundary)) == "boundary");
}

TEST_CASE("werner derivative Bell bound sits on M = 1") {
    for (double F : {0.79, 0.85, 0.95, 1.0}) {
        double a = werner_derivative_bell_bound(F);
        CHECK(m_value(zoo::werner_derivative(F, a)) == doctest::Approx(1).epsilon(1e-10));
    }
    CHECK_THROWS_AS(werner_derivative_bell_bound(0.7), DomainError);
}

TEST_CASE("teleportation through phi+ is perfect") {
    auto in = bloch_input(0.3, cplx(0.2, -0.1));
    {
        auto out = teleport_through(in, DensityMatrix(zoo::bell(1)));
        double total = 0;
        for (const auto& o : out) {
            total += o.probability;
            CHECK(o.probability == doctest::Approx(0.25));
            CHECK((o.output - in.matrix()).norm() < 1e-12);
            CHECK(o.fidelity == doctest::Approx(1));
        }
        CHECK(total == doctest::Approx(1));
    }
}

TEST_CASE("teleportation through mjwk matches the case-by-case output formulas") {
    const double x = 0.3;
    const cplx y(0.2, 0.1);
    for (double C : {0.7, 0.8, 0.95, 1.0}) {
        auto out = teleport_through(bloch_input(x, y), zoo::mjwk(C));
        double N = x * (1 - C / 2) + (1 - x) * C / 2;
        double N1 = x * C / 2 + (1 - x) * (1 - C / 2);
        Mat b1(2, 2), b3(2, 2);
        b1 << x * C / (2 * N), y * C / (2 * N), std::conj(y) * C / (2 * N), (x * (2 - 3 * C) + C) / (2 * N);
        b3 << ((3 * x - 2) * C + 2 * (1 - x)) / (2 * N1), y * C / (2 * N1), std::conj(y) * C / (2 * N1), (1 - x) * C / (2 * N1);
        CAPTURE(C);
        CHECK((out[0].output - b1).norm() < 1e-12);
        CHECK((out[1].output - b1).norm() < 1e-12);
        CHECK((out[2].output - b3).norm() < 1e-12);
        // the fourth outcome coincides with the third; a minus sign would break positivity
        CHECK((out[3].output - b3).norm() < 1e-12);
    }
    for (double C : {0.0, 0.3, 0.5, 0.66}) {
        auto out = teleport_through(bloch_input(x, y), zoo::mjwk(C));
        double N = (1 + x) / 3, N1 = x / 3 + 2 * (1 - x) / 3;
        Mat b1(2, 2), b3(2, 2);
        b1 << x / (3 * N), y * C / (2 * N), std::conj(y) * C / (2 * N), 1 / (3 * N);
        b3 << 1 / (3 * N1), y * C / (2 * N1), std::conj(y) * C / (2 * N1), (1 - x) / (3 * N1);
        CAPTURE(C);
        CHECK((out[0].output - b1).norm() < 1e-12);
        CHECK((out[1].output - b1).norm() < 1e-12);
        CHECK((out[2].output - b3).norm() < 1e-12);
        CHECK((out[3].output - b3).norm() < 1e-12);
    }
}

TEST_CASE("hilbert-schmidt distance and fidelity are complementary") {
    auto out = teleport_through(bloch_input(0.6, cplx(0.1, 0)), zoo::werner(0.8));
    for (const auto& o : out) {
        Mat diff = o.output - bloch_input(0.6, cplx(0.1, 0)).matrix();
        double d = (diff * diff).trace().real();
        CHECK(o.hs_distance == doctest::Approx(d));
        CHECK(o.fidelity == doctest::Approx(1 - d));
    }
}

TEST_CASE("analyze_family orders rows by parameters") {
    std::vector<ParamMap> g = {{{"F", 0.9}}, {{"F", 0.6}}, {{"F", 0.75}}};
    auto rows = analyze_family("werner", g);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].params.at("F") == 0.6);
    CHECK(rows[2].params.at("F") == 0.9);
    CHECK(rows[1].fidelity_closed == doctest::Approx(2.5 / 3));
}

TEST_CASE("nmems fidelity as a function of linear entropy") {
    CHECK(208.0 / 351 == doctest::Approx(16.0 / 27));
    CHECK(2223.0 / 2808 == doctest::Approx(19.0 / 24));
    for (int i = 0; i < 25; ++i) {
        double p = 0.25 * i / 25;
        auto rho = zoo::nmems(p);
        Mat r = rho.matrix();
        double purity = (r * r).trace().real();
        double sl = entropy(r, EntropyKind::linear, 2);
        CHECK(sl == doctest::Approx(4.0 / 3 * (1 - purity)).epsilon(1e-12));
        CHECK(sl == doctest::Approx(2.0 / 27 * (8 + 14 * p - 13 * p * p)).epsilon(1e-12));
        CHECK(sl >= 16.0 / 27 - 1e-12);
        CHECK(sl < 19.0 / 24);
        double f = (7 - 4.0 / 26 * (14 - std::sqrt(612 - 702 * sl))) / 9;
        CHECK(f == doctest::Approx(optimal_fidelity(rho, 2)).epsilon(1e-10));
    }
}
