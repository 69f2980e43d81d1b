#pragma once

#include "entkit/qcore.hpp"

#include <cstdint>

namespace entkit {

enum class EntropyKind { von_neumann, linear };
enum class Metric { trace, fidelity, hilbert_schmidt, bures };

// binary Shannon entropy, h(0) = h(1) = 0
double binary_entropy(double x);

double concurrence(const DensityMatrix& rho);
// 2|ad - bc| of an (unnormalized) two-qubit vector a|00>+b|01>+c|10>+d|11>
double concurrence_amplitudes(const Vec& v);
// closed form for the X matrix [[a,0,0,0],[0,b,c,0],[0,c*,d,0],[0,0,0,e]]
double concurrence_x_form(double a, double b, cplx c, double d, double e);
Mat assemble_x_form(double a, double b, cplx c, double d, double e);

double tangle(const DensityMatrix& rho);
double negativity(const DensityMatrix& rho);
double entanglement_of_formation(const DensityMatrix& rho);

double entropy(const DensityMatrix& rho, EntropyKind kind, double base);
double entropy(const Mat& rho, EntropyKind kind, double base);
double von_neumann_bits(const Mat& rho);

// marginal entropy in bits; both marginals must agree
double entropy_of_entanglement(const PureState& psi);

// the nine maximally entangled two-qutrit states, index 3x + y
Vec karimipour_state(int x, int y);

struct SingletFractionResult {
    double value = 0;
    double basis_value = 0;   // best overlap among the fixed starting states
    Vec best_state;           // the maximally entangled state attaining value
};
SingletFractionResult singlet_fraction_full(const DensityMatrix& rho, std::uint64_t seed = 0, int restarts = 32);
double singlet_fraction(const DensityMatrix& rho, std::uint64_t seed = 0);

double distance(const DensityMatrix& rho, const DensityMatrix& sigma, Metric metric);
double distance(const Mat& rho, const Mat& sigma, Metric metric);

struct PeresHorodecki {
    double w2, w3, w4;
    bool entangled;
};
PeresHorodecki peres_horodecki(const DensityMatrix& rho);

double witness_expectation(const Mat& w, const DensityMatrix& rho);

}  // namespace entkit
