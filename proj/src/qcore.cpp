#include "entkit/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace entkit {

int dim_product(const Dims& dims) {
    int n = 1;
    for (int d : dims) n *= d;
    return n;
}

static void check_dims(const Dims& dims) {
    if (dims.empty()) throw DomainError("empty dimension signature");
    for (int d : dims)
        if (d < 2) throw DomainError("subsystem dimension must be >= 2");
}

PureState::PureState(Dims dims, Vec amplitudes) : dims_(std::move(dims)), amp_(std::move(amplitudes)) {
    check_dims(dims_);
    if (amp_.size() != dim_product(dims_)) throw DomainError("amplitude count does not match dims");
    double n2 = amp_.squaredNorm();
    if (std::abs(n2 - 1.0) > tol::norm) {
        std::ostringstream os;
        os << "state not normalized: <psi|psi> = " << n2;
        throw DomainError(os.str());
    }
}

bool is_hermitian(const Mat& m, double t) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= t;
}

double unitarity_error(const Mat& u) {
    Mat e = u.adjoint() * u - Mat::Identity(u.cols(), u.cols());
    return e.cwiseAbs().maxCoeff();
}

void check_density(const Mat& m, const Dims& dims) {
    check_dims(dims);
    if (m.rows() != m.cols() || m.rows() != dim_product(dims))
        throw DomainError("density matrix side does not match dims");
    if (!is_hermitian(m, tol::herm)) throw DomainError("density matrix not Hermitian");
    cplx tr = m.trace();
    if (std::abs(tr.real() - 1.0) > tol::norm || std::abs(tr.imag()) > tol::norm) {
        std::ostringstream os;
        os << "density matrix trace " << tr.real() << " != 1";
        throw DomainError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::psd) {
        std::ostringstream os;
        os << "density matrix not PSD: min eigenvalue " << es.eigenvalues().minCoeff();
        throw DomainError(os.str());
    }
}

DensityMatrix::DensityMatrix(Dims dims, Mat matrix) : dims_(std::move(dims)), m_(std::move(matrix)) {
    check_density(m_, dims_);
}

DensityMatrix::DensityMatrix(const PureState& psi) : dims_(psi.dims()), m_(psi.projector()) {}

Mat tensor(const Mat& a, const Mat& b) {
    Mat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

Vec tensor(const Vec& a, const Vec& b) {
    Vec r(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) r.segment(i * b.size(), b.size()) = a(i) * b;
    return r;
}

Vec basis_ket(int dim, int index) {
    Vec v = Vec::Zero(dim);
    v(index) = 1.0;
    return v;
}

Vec ket(const Dims& dims, const std::vector<int>& digits) {
    int idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
    return basis_ket(dim_product(dims), idx);
}

// mixed-radix helpers, most significant factor first
static std::vector<int> digits_of(int idx, const Dims& dims) {
    std::vector<int> d(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        d[k] = idx % dims[k];
        idx /= dims[k];
    }
    return d;
}

static int index_of(const std::vector<int>& digits, const Dims& dims) {
    int idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
    return idx;
}

Mat partial_trace(const Mat& m, const Dims& dims, const std::vector<int>& keep) {
    const int n = static_cast<int>(dims.size());
    std::set<int> ks(keep.begin(), keep.end());
    if (ks.empty() || static_cast<int>(ks.size()) >= n) throw DomainError("keep must be a non-empty proper subset");
    for (int k : ks)
        if (k < 0 || k >= n) throw DomainError("invalid subsystem index " + std::to_string(k));
    Dims kd, td;
    std::vector<int> kidx, tidx;
    for (int k = 0; k < n; ++k) {
        if (ks.count(k)) { kd.push_back(dims[k]); kidx.push_back(k); }
        else { td.push_back(dims[k]); tidx.push_back(k); }
    }
    const int nk = dim_product(kd), nt = dim_product(td);
    Mat r = Mat::Zero(nk, nk);
    std::vector<int> full(n);
    for (int a = 0; a < nk; ++a) {
        auto da = digits_of(a, kd);
        for (int b = 0; b < nk; ++b) {
            auto db = digits_of(b, kd);
            cplx s = 0;
            for (int t = 0; t < nt; ++t) {
                auto dt = digits_of(t, td);
                for (std::size_t q = 0; q < tidx.size(); ++q) full[tidx[q]] = dt[q];
                for (std::size_t q = 0; q < kidx.size(); ++q) full[kidx[q]] = da[q];
                int i = index_of(full, dims);
                for (std::size_t q = 0; q < kidx.size(); ++q) full[kidx[q]] = db[q];
                int j = index_of(full, dims);
                s += m(i, j);
            }
            r(a, b) = s;
        }
    }
    return r;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    Mat r = partial_trace(rho.matrix(), rho.dims(), keep);
    std::vector<int> ks(keep);
    std::sort(ks.begin(), ks.end());
    Dims kd;
    for (int k : ks) kd.push_back(rho.dims()[k]);
    return DensityMatrix(kd, r);
}

Mat partial_transpose(const Mat& m, const Dims& dims, int subsystem) {
    if (subsystem < 0 || subsystem >= static_cast<int>(dims.size()))
        throw DomainError("invalid subsystem index " + std::to_string(subsystem));
    const int n = static_cast<int>(m.rows());
    Mat r(n, n);
    for (int i = 0; i < n; ++i) {
        auto di = digits_of(i, dims);
        for (int j = 0; j < n; ++j) {
            auto dj = digits_of(j, dims);
            std::swap(di[subsystem], dj[subsystem]);
            r(i, j) = m(index_of(di, dims), index_of(dj, dims));
            std::swap(di[subsystem], dj[subsystem]);
        }
    }
    return r;
}

Mat partial_transpose(const DensityMatrix& rho, int subsystem) {
    return partial_transpose(rho.matrix(), rho.dims(), subsystem);
}

Vec permute_subsystems(const Vec& v, const Dims& dims, const std::vector<int>& perm) {
    Dims nd(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) nd[k] = dims[perm[k]];
    Vec r(v.size());
    std::vector<int> nd_digits(perm.size());
    for (int i = 0; i < v.size(); ++i) {
        auto d = digits_of(i, dims);
        for (std::size_t k = 0; k < perm.size(); ++k) nd_digits[k] = d[perm[k]];
        r(index_of(nd_digits, nd)) = v(i);
    }
    return r;
}

Vec phase_normalize(const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double a = std::abs(v(i));
        if (a > 1e-12) return v * (std::conj(v(i)) / a);
    }
    return v;
}

EigenSystem hermitian_eigen(const Mat& m) {
    if (!is_hermitian(m, tol::herm)) throw DomainError("hermitian_eigen: input not Hermitian");
    Mat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    const int n = static_cast<int>(h.rows());
    EigenSystem out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        out.values(k) = es.eigenvalues()(n - 1 - k);
        out.vectors.col(k) = phase_normalize(es.eigenvectors().col(n - 1 - k));
    }
    return out;
}

Mat psd_sqrt(const Mat& m) {
    auto es = hermitian_eigen(m);
    if (es.values.size() && es.values.minCoeff() < -tol::psd) throw DomainError("psd_sqrt: matrix has a negative eigenvalue");
    RVec s = es.values.cwiseMax(0.0).cwiseSqrt();
    return es.vectors * s.cast<cplx>().asDiagonal() * es.vectors.adjoint();
}

Vec SchmidtDecomposition::reconstruct() const {
    Vec out = Vec::Zero(left_basis.rows() * right_basis.rows());
    for (std::size_t k = 0; k < coefficients.size(); ++k)
        out += coefficients[k] * tensor(Vec(left_basis.col(k)), Vec(right_basis.col(k)));
    return out;
}

SchmidtDecomposition schmidt_decompose(const PureState& psi) {
    if (psi.dims().size() != 2) throw DomainError("schmidt_decompose needs exactly two subsystems");
    const int da = psi.dims()[0], db = psi.dims()[1];
    Mat c(da, db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) c(i, j) = psi.amplitudes()(i * db + j);
    Eigen::JacobiSVD<Mat> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SchmidtDecomposition s;
    const int k = static_cast<int>(std::min(da, db));
    s.left_basis = svd.matrixU().leftCols(k);
    s.right_basis = svd.matrixV().leftCols(k).conjugate();
    for (int i = 0; i < k; ++i) {
        double l = svd.singularValues()(i);
        s.coefficients.push_back(l);
        if (l > 1e-12) ++s.rank;
    }
    return s;
}

PureState purify(const DensityMatrix& rho) {
    auto es = hermitian_eigen(rho.matrix());
    const int n = rho.size();
    Vec out = Vec::Zero(n * n);
    for (int k = 0; k < n; ++k) {
        double l = std::max(0.0, es.values(k));
        if (l == 0.0) continue;
        out += std::sqrt(l) * tensor(Vec(es.vectors.col(k)), basis_ket(n, k));
    }
    out /= out.norm();
    Dims d = rho.dims();
    d.push_back(n);
    return PureState(d, out);
}

namespace gates {

Mat I() { return Mat::Identity(2, 2); }

Mat X() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Mat Y() {
    Mat m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

Mat Z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Mat H() {
    Mat m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

static Mat swap_rows_identity(int n, int a, int b) {
    Mat m = Mat::Identity(n, n);
    m.row(a).swap(m.row(b));
    return m;
}

Mat CNOT() { return swap_rows_identity(4, 2, 3); }

// |110> <-> |111>
Mat Toffoli() { return swap_rows_identity(8, 6, 7); }

// controlled swap of the first two qubits, control on the last one: |011> <-> |101>
Mat Fredkin() { return swap_rows_identity(8, 3, 5); }

}  // namespace gates

}  // namespace entkit
