#pragma once

#include "entkit/qcore.hpp"

#include <optional>

namespace entkit {

struct CloningParams {
    int n = 2;
    double c = 0;
    double d = 0;
    double s = 0;   // c^2 + (n-2) d^2
};

// optimal machine when d is omitted
CloningParams uqcm_params(int n, std::optional<double> d = std::nullopt);
bool is_optimal_form(const CloningParams& p, double tol = 1e-12);   // c = 2d

// isometry C^n -> C^n (x) C^n (x) C^n, factor order (copy a, copy b, machine)
Mat bh_isometry(const CloningParams& p);

struct CloneResult {
    PureState full;        // dims (n, n, n)
    Mat marginal;          // state of copy a
};
CloneResult clone_pure(const PureState& psi, const CloningParams& p);

struct ClonePairOutput {
    DensityMatrix joint;   // copy a (x) copy b, machine traced out
    CloningParams machine;
    bool optimal = false;
};
// clones (|0>+|1>+|2>)/sqrt3 with c = sqrt(1 - 4 d^2)
ClonePairOutput qutrit_cloned_pair(double d);

struct ReductionCheck {
    bool violated = false;
    int side = 0;            // 0: rho_a (x) I - rho, 1: I (x) rho_b - rho
    double eigenvalue = 0;   // most negative over both operators
    Vec eigenvector;
    int multiplicity = 1;    // how many eigenvalues sit within 1e-9 of it
};
ReductionCheck reduction_check(const DensityMatrix& rho);

// A_ij = sqrt(n) a_ij for |v> = sum a_ij |i>|j>
Mat filter_from_eigenvector(const Vec& v, int n);
// (A^dag (x) I) rho (A (x) I) / Tr(rho A A^dag (x) I)
DensityMatrix distill(const DensityMatrix& rho, const Mat& a);

// filter for the optimal qutrit output, from the reduction eigenvector
Mat optimal_qutrit_filter();
// the symmetric filter sqrt3 [[1,-r,-r],[-r,1,-r],[-r,-r,1]] on d in ((6+sqrt2)/17, 1/2]
Mat nonoptimal_qutrit_filter(double d);
double nonoptimal_filter_r(double d);
DensityMatrix distilled_nonoptimal(double d);
DensityMatrix distilled_optimal();

// closed forms for the qutrit pair
double qutrit_pt_e1(double d);
double qutrit_pt_e2(double d);
double qutrit_reduction_e(double d);
double nonoptimal_filter_domain_low();   // (6+sqrt2)/17

// S(rho_keep) - S(rho), base 2; keep = 1 is the second party
double entropy_difference(const DensityMatrix& rho, int keep = 1);
// log2 n + S(rho_b) - S(rho_ab)
double dense_coding_capacity(const DensityMatrix& rho);
// Tr(W rho) with W = I/3 - |phi+><phi+|
double teleportation_witness_qutrit(const DensityMatrix& rho);
Mat teleportation_witness_matrix();

struct BipartiteClone {
    DensityMatrix local;      // copies (1,3)
    DensityMatrix nonlocal;   // copies (1,4)
    DensityMatrix nonlocal_23;
    double P, Q, R, S;
};
// clones both halves of sqrt(l1)|00> + sqrt(1-l1)|11> with the same qubit machine
BipartiteClone clone_bipartite(double lambda1, const CloningParams& p);
void cloning_pqrs(double c2, double& P, double& Q, double& R, double& S);

Mat witness_w1();
Mat witness_w2();
double critical_concurrence(double c2);

}  // namespace entkit
