#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace entkit {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Dims = std::vector<int>;

namespace tol {
inline constexpr double norm = 1e-10;
inline constexpr double herm = 1e-10;
inline constexpr double psd = 1e-9;
inline constexpr double recon = 1e-9;
}  // namespace tol

// raised for any out-of-domain input; the CLI maps it to exit code 3
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

int dim_product(const Dims& dims);

class PureState {
public:
    PureState(Dims dims, Vec amplitudes);

    const Dims& dims() const { return dims_; }
    const Vec& amplitudes() const { return amp_; }
    int size() const { return static_cast<int>(amp_.size()); }
    Mat projector() const { return amp_ * amp_.adjoint(); }

private:
    Dims dims_;
    Vec amp_;
};

class DensityMatrix {
public:
    // validates hermiticity, unit trace and positivity
    DensityMatrix(Dims dims, Mat matrix);
    explicit DensityMatrix(const PureState& psi);

    const Dims& dims() const { return dims_; }
    const Mat& matrix() const { return m_; }
    int size() const { return static_cast<int>(m_.rows()); }
    int parties() const { return static_cast<int>(dims_.size()); }

private:
    Dims dims_;
    Mat m_;
};

// throws DomainError naming the failed check
void check_density(const Mat& m, const Dims& dims);
bool is_hermitian(const Mat& m, double tol = tol::herm);
double unitarity_error(const Mat& u);

Mat tensor(const Mat& a, const Mat& b);
Vec tensor(const Vec& a, const Vec& b);
Vec basis_ket(int dim, int index);
Vec ket(const Dims& dims, const std::vector<int>& digits);

Mat partial_trace(const Mat& m, const Dims& dims, const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
Mat partial_transpose(const Mat& m, const Dims& dims, int subsystem);
Mat partial_transpose(const DensityMatrix& rho, int subsystem);
// reorders tensor factors: new factor k is old factor perm[k]
Vec permute_subsystems(const Vec& v, const Dims& dims, const std::vector<int>& perm);

struct EigenSystem {
    RVec values;   // descending
    Mat vectors;   // orthonormal columns
};
EigenSystem hermitian_eigen(const Mat& m);
Mat psd_sqrt(const Mat& m);
Vec phase_normalize(const Vec& v);

struct SchmidtDecomposition {
    std::vector<double> coefficients;
    Mat left_basis;
    Mat right_basis;
    int rank = 0;
    Vec reconstruct() const;
};
SchmidtDecomposition schmidt_decompose(const PureState& psi);
PureState purify(const DensityMatrix& rho);

namespace gates {
Mat I();
Mat X();
Mat Y();
Mat Z();
Mat H();
Mat CNOT();
Mat Toffoli();
Mat Fredkin();
}  // namespace gates

}  // namespace entkit
