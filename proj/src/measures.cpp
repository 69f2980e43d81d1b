#include "entkit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace entkit {

namespace {

void require_two_qubits(const Dims& d, const char* who) {
    if (d != Dims{2, 2}) throw DomainError(std::string(who) + ": expects a 2x2 (two-qubit) state");
}

void require_bipartite(const Dims& d, const char* who) {
    if (d.size() != 2) throw DomainError(std::string(who) + ": expects a bipartite state");
}

double log_base(double x, double base) { return std::log(x) / std::log(base); }

Mat random_unitary(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Mat z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<Mat> qr(z);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        cplx d = r(i, i);
        if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
    }
    return q;
}

// (U (x) I)|phi+> written as a vector, row-major in U
Vec lift(const Mat& u) {
    const int n = static_cast<int>(u.rows());
    Vec v(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v(i * n + j) = u(i, j) / std::sqrt(double(n));
    return v;
}

Mat unlift(const Vec& v, int n) {
    Mat u(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) u(i, j) = v(i * n + j);
    return u;
}

// every maximally entangled n x n state is (U (x) I)|phi+>; the overlap is a
// convex quadratic in U, so replacing U by the polar factor of the gradient
// never decreases it
std::pair<double, Vec> polar_ascent(const Mat& rho, Mat u) {
    const int n = static_cast<int>(u.rows());
    Vec v = lift(u);
    double f = std::real(v.dot(rho * v));
    for (int it = 0; it < 5000; ++it) {
        Eigen::JacobiSVD<Mat> svd(unlift(rho * v, n), Eigen::ComputeFullU | Eigen::ComputeFullV);
        Vec nv = lift(svd.matrixU() * svd.matrixV().adjoint());
        double nf = std::real(nv.dot(rho * nv));
        if (nf < f + 1e-15) break;
        bool done = nf - f < 1e-13;
        v = nv;
        f = nf;
        if (done) break;
    }
    return {f, v};
}

}  // namespace

double binary_entropy(double x) {
    if (x <= 0 || x >= 1) return 0.0;
    return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

double concurrence(const DensityMatrix& rho) {
    require_two_qubits(rho.dims(), "concurrence");
    // singular values of sqrt(rho) sqrt(rho~); eigenvalues below 1e-14 are treated as exact zeros
    auto es = hermitian_eigen(rho.matrix());
    RVec w = es.values.unaryExpr([](double x) { return x < 1e-14 ? 0.0 : std::sqrt(x); });
    Mat s = es.vectors * w.cast<cplx>().asDiagonal() * es.vectors.adjoint();
    Mat yy = tensor(gates::Y(), gates::Y());
    Mat prod = s * yy * s.conjugate() * yy;
    RVec l = Eigen::JacobiSVD<Mat>(prod).singularValues();
    double c = l(0);
    for (int i = 1; i < 4; ++i) c -= l(i);
    return std::max(0.0, c);
}

double concurrence_amplitudes(const Vec& v) {
    if (v.size() != 4) throw DomainError("concurrence_amplitudes: expects 4 amplitudes");
    return 2 * std::abs(v(0) * v(3) - v(1) * v(2));
}

Mat assemble_x_form(double a, double b, cplx c, double d, double e) {
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = a;
    m(1, 1) = b;
    m(1, 2) = c;
    m(2, 1) = std::conj(c);
    m(2, 2) = d;
    m(3, 3) = e;
    return m;
}

double concurrence_x_form(double a, double b, cplx c, double d, double e) {
    check_density(assemble_x_form(a, b, c, d, e), {2, 2});
    return 2 * std::max(std::abs(c) - std::sqrt(a * e), 0.0);
}

double tangle(const DensityMatrix& rho) {
    double c = concurrence(rho);
    return c * c;
}

double negativity(const DensityMatrix& rho) {
    require_bipartite(rho.dims(), "negativity");
    RVec ev = hermitian_eigen(partial_transpose(rho, 1)).values;
    if (rho.dims() == Dims{2, 2}) {
        double neg = 0;
        for (int i = 0; i < ev.size(); ++i) neg += std::min(0.0, ev(i));
        return std::min(1.0, 2 * std::max(0.0, -neg));
    }
    double trace_norm = ev.cwiseAbs().sum();
    int n = std::min(rho.dims()[0], rho.dims()[1]);
    return std::max(0.0, (trace_norm - 1) / (n - 1));
}

double entanglement_of_formation(const DensityMatrix& rho) {
    double c = concurrence(rho);
    return binary_entropy((1 + std::sqrt(std::max(0.0, 1 - c * c))) / 2);
}

double entropy(const Mat& rho, EntropyKind kind, double base) {
    if (kind == EntropyKind::linear) {
        const double n = static_cast<double>(rho.rows());
        double purity = std::real((rho * rho).trace());
        return std::max(0.0, n / (n - 1) * (1 - purity));
    }
    if (!(base > 1)) throw DomainError("entropy: base must be > 1");
    RVec ev = hermitian_eigen(rho).values;
    double s = 0;
    for (int i = 0; i < ev.size(); ++i)
        if (ev(i) > 1e-15) s -= ev(i) * log_base(ev(i), base);
    return std::max(0.0, s);
}

double entropy(const DensityMatrix& rho, EntropyKind kind, double base) { return entropy(rho.matrix(), kind, base); }

double von_neumann_bits(const Mat& rho) { return entropy(rho, EntropyKind::von_neumann, 2.0); }

double entropy_of_entanglement(const PureState& psi) {
    require_bipartite(psi.dims(), "entropy_of_entanglement");
    DensityMatrix rho(psi);
    double sa = von_neumann_bits(partial_trace(rho, {0}).matrix());
    double sb = von_neumann_bits(partial_trace(rho, {1}).matrix());
    if (std::abs(sa - sb) > 1e-10) throw DomainError("entropy_of_entanglement: marginal entropies disagree");
    return sa;
}

Vec karimipour_state(int x, int y) {
    const cplx xi = std::polar(1.0, 2 * M_PI / 3);
    Vec v = Vec::Zero(9);
    for (int j = 0; j < 3; ++j) v(j * 3 + (j + x) % 3) = std::pow(xi, j * y) / std::sqrt(3.0);
    return v;
}

SingletFractionResult singlet_fraction_full(const DensityMatrix& rho, std::uint64_t seed, int restarts) {
    require_bipartite(rho.dims(), "singlet_fraction");
    const int n = rho.dims()[0];
    if (rho.dims()[1] != n) throw DomainError("singlet_fraction: subsystems must have equal dimension");
    const Mat& r = rho.matrix();

    std::vector<Vec> starts;
    if (n == 2) {
        Vec b[4] = {Vec::Zero(4), Vec::Zero(4), Vec::Zero(4), Vec::Zero(4)};
        const double h = 1 / std::sqrt(2.0);
        b[0] << h, 0, 0, h;
        b[1] << h, 0, 0, -h;
        b[2] << 0, h, h, 0;
        b[3] << 0, h, -h, 0;
        for (auto& v : b) starts.push_back(v);
    } else if (n == 3) {
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) starts.push_back(karimipour_state(x, y));
    } else {
        starts.push_back(lift(Mat::Identity(n, n)));
    }

    SingletFractionResult out;
    out.basis_value = -1;
    for (auto& v : starts) {
        double f = std::real(v.dot(r * v));
        if (f > out.basis_value) {
            out.basis_value = f;
            out.best_state = v;
        }
    }
    out.value = out.basis_value;

    auto consider = [&](const Mat& u) {
        auto [f, v] = polar_ascent(r, u);
        if (f > out.value + 1e-14) {
            out.value = f;
            out.best_state = v;
        }
    };
    for (auto& v : starts) consider(unlift(v, n) * std::sqrt(double(n)));
    std::mt19937_64 rng(seed);
    for (int k = 0; k < restarts; ++k) consider(random_unitary(n, rng));
    out.value = std::min(1.0, out.value);
    return out;
}

double singlet_fraction(const DensityMatrix& rho, std::uint64_t seed) { return singlet_fraction_full(rho, seed).value; }

double distance(const Mat& a, const Mat& b, Metric metric) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("distance: dimension mismatch");
    switch (metric) {
        case Metric::trace:
            return 0.5 * hermitian_eigen(a - b).values.cwiseAbs().sum();
        case Metric::hilbert_schmidt:
            return std::max(0.0, std::real(((a - b) * (a - b)).trace()));
        case Metric::fidelity:
        case Metric::bures: {
            Mat s = psd_sqrt(a);
            Mat inner = s * b * s;
            inner = 0.5 * (inner + inner.adjoint());
            RVec ev = hermitian_eigen(inner).values;
            double f = 0;
            for (int i = 0; i < ev.size(); ++i) f += std::sqrt(std::max(0.0, ev(i)));
            f = std::min(1.0, f);
            if (metric == Metric::fidelity) return f;
            return std::sqrt(2.0) * std::sqrt(std::max(0.0, 1 - f));
        }
    }
    return 0;
}

double distance(const DensityMatrix& rho, const DensityMatrix& sigma, Metric metric) {
    if (rho.dims() != sigma.dims()) throw DomainError("distance: dims mismatch");
    return distance(rho.matrix(), sigma.matrix(), metric);
}

PeresHorodecki peres_horodecki(const DensityMatrix& rho) {
    require_two_qubits(rho.dims(), "peres_horodecki");
    Mat pt = partial_transpose(rho, 1);
    PeresHorodecki out{};
    out.w2 = std::real(pt.topLeftCorner(2, 2).determinant());
    out.w3 = std::real(pt.topLeftCorner(3, 3).determinant());
    out.w4 = std::real(pt.determinant());
    const double eps = 1e-14;
    out.entangled = out.w4 < -eps || (out.w2 >= -eps && out.w3 < -eps);
    return out;
}

double witness_expectation(const Mat& w, const DensityMatrix& rho) {
    if (w.rows() != rho.size() || w.cols() != rho.size()) throw DomainError("witness_expectation: dims mismatch");
    if (!is_hermitian(w)) throw DomainError("witness_expectation: witness not Hermitian");
    return std::real((w * rho.matrix()).trace());
}

}  // namespace entkit
