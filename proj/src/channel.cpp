#include "entkit/channel.hpp"

#include "entkit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entkit {

namespace {

const double kBand = 1e-9;

void require_two_qubits(const DensityMatrix& rho, const char* who) {
    if (rho.dims() != Dims{2, 2}) throw DomainError(std::string(who) + ": expects a two-qubit state");
}

Mat pauli(int k) {
    switch (k) {
        case 0: return gates::X();
        case 1: return gates::Y();
        default: return gates::Z();
    }
}

Verdict compare_to_one(double v) {
    if (v > 1 + kBand) return Verdict::yes;
    if (v < 1 - kBand) return Verdict::no;
    return Verdict::boundary;
}

void check_unit(const Bloch& v) {
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (std::abs(n - 1) > 1e-9) throw DomainError("chsh: measurement direction is not a unit vector");
}

}  // namespace

RMat correlation_matrix(const DensityMatrix& rho) {
    require_two_qubits(rho, "correlation_matrix");
    RMat t(3, 3);
    for (int n = 0; n < 3; ++n)
        for (int m = 0; m < 3; ++m) {
            cplx v = (rho.matrix() * tensor(pauli(n), pauli(m))).trace();
            if (std::abs(v.imag()) > 1e-12) throw DomainError("correlation_matrix: complex correlation entry");
            t(n, m) = v.real();
        }
    return t;
}

std::array<double, 3> correlation_eigenvalues(const DensityMatrix& rho) {
    RMat t = correlation_matrix(rho);
    Eigen::SelfAdjointEigenSolver<RMat> es(t.transpose() * t);
    RVec e = es.eigenvalues();
    return {std::max(0.0, e(2)), std::max(0.0, e(1)), std::max(0.0, e(0))};
}

double n_value(const DensityMatrix& rho) {
    auto u = correlation_eigenvalues(rho);
    return std::sqrt(u[0]) + std::sqrt(u[1]) + std::sqrt(u[2]);
}

double m_value(const DensityMatrix& rho) {
    auto u = correlation_eigenvalues(rho);
    return u[0] + u[1];
}

double fidelity_from_singlet_fraction(double F, int n) { return (n * F + 1) / (n + 1); }

double optimal_fidelity(const DensityMatrix& rho, int n) {
    if (n == 2) {
        require_two_qubits(rho, "optimal_fidelity");
        return 0.5 * (1 + n_value(rho) / 3);
    }
    if (n == 3) {
        if (rho.dims() != Dims{3, 3}) throw DomainError("optimal_fidelity: n = 3 expects a two-qutrit state");
        return fidelity_from_singlet_fraction(singlet_fraction(rho), 3);
    }
    throw DomainError("optimal_fidelity: only n = 2 and n = 3 are supported");
}

double chsh_value(const DensityMatrix& rho, const Bloch& a, const Bloch& a2, const Bloch& b, const Bloch& b2) {
    for (auto* v : {&a, &a2, &b, &b2}) check_unit(*v);
    RMat t = correlation_matrix(rho);
    auto e = [&](const Bloch& x, const Bloch& y) {
        double s = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s += x[i] * t(i, j) * y[j];
        return s;
    };
    return e(a, b) + e(a, b2) + e(a2, b) - e(a2, b2);
}

double chsh_supremum(const DensityMatrix& rho) { return 2 * std::sqrt(m_value(rho)); }

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::boundary: return "boundary";
        default: return "no";
    }
}

ChannelReport analyze_channel(const DensityMatrix& rho) {
    require_two_qubits(rho, "analyze_channel");
    ChannelReport r;
    r.concurrence = concurrence(rho);
    r.n_value = n_value(rho);
    r.m_value = m_value(rho);
    r.singlet_fraction = singlet_fraction(rho);
    r.fidelity_opt = 0.5 * (1 + r.n_value / 3);
    r.useful = compare_to_one(r.n_value);
    r.violates_bell = compare_to_one(r.m_value);
    r.linear_entropy = entropy(rho, EntropyKind::linear, 2);
    return r;
}

DensityMatrix bloch_input(double x, cplx y) {
    if (x < 0 || x > 1) throw DomainError("bloch_input: x must lie in [0, 1]");
    if (std::norm(y) > x * (1 - x) + tol::psd) throw DomainError("bloch_input: |y|^2 must not exceed x(1-x)");
    Mat m(2, 2);
    m << x, y, std::conj(y), 1 - x;
    return DensityMatrix({2}, m);
}

std::vector<TeleportOutcome> teleport_through(const DensityMatrix& input, const DensityMatrix& channel) {
    if (input.dims() != Dims{2}) throw DomainError("teleport_through: input must be a single qubit");
    require_two_qubits(channel, "teleport_through");
    Mat joint = tensor(input.matrix(), channel.matrix());
    const Mat corrections[4] = {gates::I(), gates::Z(), gates::X(), gates::X() * gates::Z()};
    std::vector<TeleportOutcome> out;
    for (int k = 1; k <= 4; ++k) {
        Mat proj = tensor(Mat(zoo::bell_vector(k).adjoint()), gates::I());
        Mat bob = proj * joint * proj.adjoint();
        TeleportOutcome o;
        o.bell_outcome = k;
        o.probability = std::real(bob.trace());
        if (o.probability < 1e-15) {
            o.output = Mat::Zero(2, 2);
            o.hs_distance = o.fidelity = std::numeric_limits<double>::quiet_NaN();
        } else {
            const Mat& u = corrections[k - 1];
            o.output = u.adjoint() * bob * u / o.probability;
            check_density(o.output, {2});
            o.hs_distance = distance(input.matrix(), o.output, Metric::hilbert_schmidt);
            o.fidelity = 1 - o.hs_distance;
        }
        out.push_back(o);
    }
    return out;
}

double closed_form_fidelity(const std::string& f, const ParamMap& p) {
    auto g = [&](const char* k) { return p.at(k); };
    if (f == "werner") return (2 * g("F") + 1) / 3;
    if (f == "mjwk") {
        double C = g("C");
        return C >= 2.0 / 3.0 ? (2 * C + 1) / 3 : (5 + 3 * C) / 9;
    }
    if (f == "wei") {
        double a = g("a"), b = g("b"), gm = g("gamma");
        if (a + b <= 0.5) return 2.0 / 3.0 + (gm - a - b) / 3;
        return 0.5 * (1 + (2 * gm + 2 * (a + b) - 1) / 3);
    }
    if (f == "werner_derivative") {
        double F = g("F"), a = g("a");
        return (9 + (4 * F - 1) * (1 + 4 * std::sqrt(a * (1 - a)))) / 18;
    }
    if (f == "nmems") {
        double q = g("p");
        return q < 0.25 ? (7 - 4 * q) / 9 : 2.0 / 3.0;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double closed_form_m(const std::string& f, const ParamMap& p) {
    auto g = [&](const char* k) { return p.at(k); };
    if (f == "werner") {
        double k = 4 * g("F") - 1;
        return 2 * k * k / 9;
    }
    if (f == "mjwk") {
        double C = g("C"), z = 4 * zoo::mjwk_h(C) - 1;
        return C * C + std::max(C * C, z * z);
    }
    if (f == "wei") {
        double gm = g("gamma"), z = 1 - 2 * g("a") - 2 * g("b");
        return gm * gm + std::max(gm * gm, z * z);
    }
    if (f == "werner_derivative") {
        double k = (4 * g("F") - 1) / 3, a = g("a");
        return k * k * (1 + 4 * a * (1 - a));
    }
    if (f == "nmems") {
        double q = g("p");
        return q < 0.5 ? 8 * (1 - q) * (1 - q) / 9 : (20 * q * q - 16 * q + 5) / 9;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::vector<FamilyRow> analyze_family(const std::string& family, const std::vector<ParamMap>& grid) {
    std::vector<FamilyRow> rows;
    rows.reserve(grid.size());
    for (const auto& p : grid) {
        FamilyRow row{p, analyze_channel(zoo::make_mixed(family, p)), closed_form_fidelity(family, p),
                      closed_form_m(family, p)};
        rows.push_back(row);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const FamilyRow& a, const FamilyRow& b) { return a.params < b.params; });
    return rows;
}

double werner_derivative_bell_bound(double F) {
    const double k = 4 * F - 1;
    const double disc = 2 * k * k - 9;
    if (disc < 0) throw DomainError("werner_derivative_bell_bound: F below (3+sqrt2)/(4 sqrt2), sqrt(2(4F-1)^2-9) undefined");
    return 0.5 * (1 + std::sqrt(disc) / k);
}

}  // namespace entkit
