#pragma once

#include "entkit/qcore.hpp"
#include "entkit/statezoo.hpp"

#include <array>
#include <string>
#include <vector>

namespace entkit {

// t(n,m) = Tr(rho sigma_n (x) sigma_m), Pauli order x, y, z
RMat correlation_matrix(const DensityMatrix& rho);
// eigenvalues of T^T T, descending
std::array<double, 3> correlation_eigenvalues(const DensityMatrix& rho);
double n_value(const DensityMatrix& rho);
double m_value(const DensityMatrix& rho);

// n = 2 goes through N(rho), n = 3 through the singlet fraction
double optimal_fidelity(const DensityMatrix& rho, int n);
double fidelity_from_singlet_fraction(double F, int n);

using Bloch = std::array<double, 3>;
double chsh_value(const DensityMatrix& rho, const Bloch& a, const Bloch& a2, const Bloch& b, const Bloch& b2);
double chsh_supremum(const DensityMatrix& rho);

enum class Verdict { no, boundary, yes };
const char* verdict_name(Verdict v);

struct ChannelReport {
    double concurrence = 0;
    double n_value = 0;
    double m_value = 0;
    double singlet_fraction = 0;
    double fidelity_opt = 0;
    Verdict useful = Verdict::no;
    Verdict violates_bell = Verdict::no;
    double linear_entropy = 0;
};
ChannelReport analyze_channel(const DensityMatrix& rho);

struct TeleportOutcome {
    int bell_outcome = 0;     // 1..4 in the statezoo Bell order
    double probability = 0;
    Mat output;               // corrected, normalized Bob state
    double hs_distance = 0;
    double fidelity = 0;      // 1 - hs_distance
};
// input state [[x, y], [conj(y), 1 - x]]
DensityMatrix bloch_input(double x, cplx y);
std::vector<TeleportOutcome> teleport_through(const DensityMatrix& input, const DensityMatrix& channel);

// family closed forms for the optimal fidelity and the CHSH functional
struct FamilyRow {
    ParamMap params;
    ChannelReport report;
    double fidelity_closed = 0;
    double m_closed = 0;
};
double closed_form_fidelity(const std::string& family, const ParamMap& p);
double closed_form_m(const std::string& family, const ParamMap& p);
std::vector<FamilyRow> analyze_family(const std::string& family, const std::vector<ParamMap>& grid);

// werner-derivative upper bound on a for Bell violation at fixed F
double werner_derivative_bell_bound(double F);

}  // namespace entkit
