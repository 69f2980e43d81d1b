#include "entkit/cloning.hpp"

#include "entkit/measures.hpp"
#include "entkit/statezoo.hpp"

#include <cmath>
#include <string>

namespace entkit {

CloningParams uqcm_params(int n, std::optional<double> d) {
    if (n < 2) throw DomainError("uqcm_params: n must be >= 2");
    CloningParams p;
    p.n = n;
    if (!d) {
        p.d = std::sqrt(1.0 / (2.0 * (n + 1)));
        p.c = std::sqrt(2.0 / (n + 1));
    } else {
        const double dmax = std::sqrt(1.0 / (2.0 * (n - 1)));
        if (*d < 0 || *d > dmax + 1e-15)
            throw DomainError("uqcm_params: d must lie in [0, " + std::to_string(dmax) + "] so that c^2 = 1 - 2(n-1)d^2 >= 0");
        p.d = std::min(*d, dmax);
        p.c = std::sqrt(std::max(0.0, 1 - 2.0 * (n - 1) * p.d * p.d));
    }
    p.s = p.c * p.c + (n - 2) * p.d * p.d;
    return p;
}

bool is_optimal_form(const CloningParams& p, double tol) { return std::abs(p.c - 2 * p.d) <= tol; }

Mat bh_isometry(const CloningParams& p) {
    const int n = p.n;
    Mat v = Mat::Zero(n * n * n, n);
    auto idx = [n](int a, int b, int x) { return (a * n + b) * n + x; };
    for (int i = 0; i < n; ++i) {
        v(idx(i, i, i), i) += p.c;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            v(idx(i, j, j), i) += p.d;
            v(idx(j, i, j), i) += p.d;
        }
    }
    return v;
}

CloneResult clone_pure(const PureState& psi, const CloningParams& p) {
    if (psi.dims() != Dims{p.n}) throw DomainError("clone_pure: input must be a single system of dimension n");
    Vec out = bh_isometry(p) * psi.amplitudes();
    PureState full({p.n, p.n, p.n}, out);
    Mat marginal = partial_trace(full.projector(), full.dims(), {0});
    return {full, marginal};
}

ClonePairOutput qutrit_cloned_pair(double d) {
    if (!(d > 0 && d <= 0.5)) throw DomainError("qutrit_cloned_pair: d must lie in (0, 1/2]");
    CloningParams p = uqcm_params(3, d);
    Vec in = Vec::Constant(3, 1 / std::sqrt(3.0));
    auto res = clone_pure(PureState({3}, in), p);
    DensityMatrix joint = partial_trace(DensityMatrix(res.full), {0, 1});
    return {joint, p, std::abs(d * d - 0.125) < 1e-12};
}

ReductionCheck reduction_check(const DensityMatrix& rho) {
    if (rho.dims().size() != 2) throw DomainError("reduction_check: expects a bipartite state");
    const int na = rho.dims()[0], nb = rho.dims()[1];
    Mat ra = partial_trace(rho.matrix(), rho.dims(), {0});
    Mat rb = partial_trace(rho.matrix(), rho.dims(), {1});
    Mat ops[2] = {tensor(ra, Mat::Identity(nb, nb)) - rho.matrix(), tensor(Mat::Identity(na, na), rb) - rho.matrix()};
    ReductionCheck out;
    out.eigenvalue = 1e300;
    for (int side = 0; side < 2; ++side) {
        auto es = hermitian_eigen(ops[side]);
        const int last = static_cast<int>(es.values.size()) - 1;
        if (es.values(last) < out.eigenvalue - 1e-12) {
            out.eigenvalue = es.values(last);
            out.eigenvector = es.vectors.col(last);
            out.side = side;
            out.multiplicity = 0;
            for (int k = 0; k <= last; ++k)
                if (std::abs(es.values(k) - out.eigenvalue) < 1e-9) ++out.multiplicity;
        }
    }
    out.violated = out.eigenvalue < -1e-10;
    return out;
}

Mat filter_from_eigenvector(const Vec& v, int n) {
    if (v.size() != n * n) throw DomainError("filter_from_eigenvector: vector length must be n^2");
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = std::sqrt(double(n)) * v(i * n + j);
    return a;
}

DensityMatrix distill(const DensityMatrix& rho, const Mat& a) {
    if (rho.dims().size() != 2 || a.rows() != rho.dims()[0] || a.cols() != rho.dims()[0])
        throw DomainError("distill: filter does not act on the first party");
    const int nb = rho.dims()[1];
    Mat ai = tensor(a, Mat::Identity(nb, nb));
    Mat num = ai.adjoint() * rho.matrix() * ai;
    double den = std::real((rho.matrix() * tensor(Mat(a * a.adjoint()), Mat(Mat::Identity(nb, nb)))).trace());
    if (std::abs(den) < 1e-12) throw DomainError("distill: filter annihilates state");
    Mat out = num / std::real(num.trace());
    out = 0.5 * (out + out.adjoint());
    return DensityMatrix(rho.dims(), out);
}

namespace {

Vec side_a_negative_eigenvector(const DensityMatrix& rho) {
    Mat ra = partial_trace(rho.matrix(), rho.dims(), {0});
    auto es = hermitian_eigen(tensor(ra, Mat::Identity(3, 3)) - rho.matrix());
    const int last = static_cast<int>(es.values.size()) - 1;
    if (es.values(last) >= -1e-10) throw DomainError("filter: reduction criterion is not violated");
    return es.vectors.col(last);
}

}  // namespace

Mat optimal_qutrit_filter() {
    auto pair = qutrit_cloned_pair(std::sqrt(0.125));
    return filter_from_eigenvector(side_a_negative_eigenvector(pair.joint), 3);
}

double nonoptimal_filter_domain_low() { return (6 + std::sqrt(2.0)) / 17; }

static void check_nonopt_domain(double d) {
    if (!(d > nonoptimal_filter_domain_low() && d <= 0.5))
        throw DomainError("non-optimal filter: d must lie in ((6+sqrt2)/17, 1/2]");
}

static double reduction_radical(double d) {
    const double q = std::sqrt(1 - 4 * d * d);
    return std::sqrt(1 - 18 * d * d + 4 * q * d + 113 * std::pow(d, 4) - 44 * std::pow(d, 3) * q);
}

double nonoptimal_filter_r(double d) {
    check_nonopt_domain(d);
    const double q = std::sqrt(1 - 4 * d * d);
    return (11 * d * d - 1 - 2 * q * d + reduction_radical(d)) / (4 * d * d);
}

Mat nonoptimal_qutrit_filter(double d) {
    check_nonopt_domain(d);
    return filter_from_eigenvector(side_a_negative_eigenvector(qutrit_cloned_pair(d).joint), 3);
}

DensityMatrix distilled_nonoptimal(double d) {
    return distill(qutrit_cloned_pair(d).joint, nonoptimal_qutrit_filter(d));
}

DensityMatrix distilled_optimal() { return distill(qutrit_cloned_pair(std::sqrt(0.125)).joint, optimal_qutrit_filter()); }

double qutrit_pt_e1(double d) {
    const double q = std::sqrt(1 - 4 * d * d), d2 = d * d;
    return (1 + 4 * d2) / 6 - std::sqrt(1 + 24 * d2 - 104 * d2 * d2 + 32 * q * d2 * d) / 6;
}

double qutrit_pt_e2(double d) {
    const double q = std::sqrt(1 - 4 * d * d), d2 = d * d;
    return (1 - 5 * d2) / 6 - std::sqrt(1 - 6 * d2 + 25 * d2 * d2 - 16 * q * d2 * d) / 6;
}

double qutrit_reduction_e(double d) {
    const double q = std::sqrt(1 - 4 * d * d);
    return (1 - 3 * d * d) / 6 + q * d / 3 - reduction_radical(d) / 6;
}

double entropy_difference(const DensityMatrix& rho, int keep) {
    if (rho.dims().size() != 2) throw DomainError("entropy_difference: expects a bipartite state");
    Mat marginal = partial_trace(rho.matrix(), rho.dims(), {keep});
    return von_neumann_bits(marginal) - von_neumann_bits(rho.matrix());
}

double dense_coding_capacity(const DensityMatrix& rho) {
    if (rho.dims().size() != 2) throw DomainError("dense_coding_capacity: expects a bipartite state");
    return std::log2(double(rho.dims()[0])) + entropy_difference(rho, 1);
}

Mat teleportation_witness_matrix() {
    Vec phi = zoo::generalized_max_entangled(3).amplitudes();
    return Mat::Identity(9, 9) / 3.0 - phi * phi.adjoint();
}

double teleportation_witness_qutrit(const DensityMatrix& rho) {
    if (rho.dims() != Dims{3, 3}) throw DomainError("teleportation_witness_qutrit: expects a 3x3 state");
    return witness_expectation(teleportation_witness_matrix(), rho);
}

void cloning_pqrs(double c2, double& P, double& Q, double& R, double& S) {
    const double d2 = (1 - c2) / 2;
    P = (c2 + d2) * (c2 + d2);
    Q = 4 * c2 * d2;
    R = d2 * (c2 + d2);
    S = d2 * d2;
}

BipartiteClone clone_bipartite(double lambda1, const CloningParams& p) {
    if (p.n != 2) throw DomainError("clone_bipartite: only the qubit machine (n = 2) is supported");
    if (!(lambda1 >= 0 && lambda1 <= 1)) throw DomainError("clone_bipartite: lambda1 must lie in [0, 1]");
    Vec in = Vec::Zero(4);
    in(0) = std::sqrt(lambda1);
    in(3) = std::sqrt(1 - lambda1);
    Mat v = bh_isometry(p);
    // factors after the two isometries: 1, 3, X, 2, 4, Y
    Vec out = tensor(v, v) * in;
    const Dims six(6, 2);
    Vec ordered = permute_subsystems(out, six, {0, 3, 1, 4, 2, 5});   // 1, 2, 3, 4, X, Y
    DensityMatrix full(six, ordered * ordered.adjoint());
    BipartiteClone b{partial_trace(full, {0, 2}), partial_trace(full, {0, 3}), partial_trace(full, {1, 2}), 0, 0, 0, 0};
    cloning_pqrs(p.c * p.c, b.P, b.Q, b.R, b.S);
    return b;
}

Mat witness_w1() {
    Mat w = Mat::Zero(4, 4);
    w(0, 3) = w(3, 0) = -1;
    w(1, 1) = w(2, 2) = 1;
    return w / std::sqrt(3.0);
}

Mat witness_w2() {
    using namespace gates;
    Mat iota = tensor(X(), X()) - tensor(Y(), Y()) + tensor(Z(), Z());
    return 0.5 * (Mat::Identity(4, 4) - iota);
}

double critical_concurrence(double c2) {
    if (!(c2 > 1.0 / 3.0 && c2 <= 1)) throw DomainError("critical_concurrence: c must lie in (1/sqrt3, 1]");
    return (1 + c2) / (4 * c2);
}

}  // namespace entkit
