#pragma once

#include "entkit/cloning.hpp"
#include "entkit/qcore.hpp"
#include "entkit/statezoo.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace entkit {

// {cos t |0> + sin t |1>, sin t |0> - cos t |1>}
std::array<Vec, 2> qubit_controller_basis(double theta);
// {sin t |0> + cos t |2>, |1>, cos t |0> - sin t |2>}
std::array<Vec, 3> qutrit_controller_basis(double theta);

struct CollectiveUnitary {
    std::string tag;     // U1, U2, V1, V2, hao
    double theta = 0;
    double epsilon = 0;
    Mat matrix;          // acts on (A, aux); index A + 2 aux for qubits, 3 A + aux for qutrits
};
CollectiveUnitary collective_unitary(const std::string& tag, double theta, double epsilon = 0);
// U1 layout with tan replaced by an arbitrary ratio r in [-1, 1]
Mat attenuation_unitary(double r);
Mat attenuation_unitary_u2(double r);

struct CdcRequest {
    std::string family;                  // ghz, hao, ghz_class, pati, ghz4, w3, w4, liqiu_w
    ParamMap params;                     // i, l, n as needed
    std::optional<double> theta;
    std::optional<double> epsilon;
    std::vector<int> outcomes;           // controller outcomes, 0 = '+', 1 = '-'; empty means all '+'
};

struct CdcReport {
    std::string family;
    double theta = 0;
    std::optional<double> epsilon;
    std::string controller_outcome;
    double controller_probability = 0;
    Vec controlled_state;                // normalized A-B state after the controller(s)
    double controlled_concurrence = 0;
    std::string unitary;                 // what Alice applied
    double attenuation = 1;              // branch ratio realised by the unitary
    int attenuated_branch = -1;          // value of A that was attenuated, -1 if none
    double unitary_error = 0;            // max |U^dag U - I|
    double aux_probability = 1;          // probability of aux outcome 0
    Dims shared_dims;
    Vec shared_state;                    // normalized, after aux outcome 0
    double concurrence = 0;
    double raw_concurrence = 0;        // 2|ad - bc| with the family normalisation dropped
    double entanglement = 0;             // entropy of entanglement, bits
    double success_probability = 0;      // 2 x smallest Schmidt weight of the shared state
    double bits_transmitted_avg = 1;     // 1 + aux_probability x entanglement
    bool maximally_entangled = false;
    std::vector<double> aux_branch_probabilities;   // conditional on the controller outcome
    std::vector<Vec> encoded_states;                // Alice's local encodings, filled when maximally entangled
};

CdcReport cdc_run(const CdcRequest& req);
// outcomes on the qutrit controller: 0 = up, 1 = diagonal (|1>), 2 = down
CdcReport qutrit_cdc_run(double theta, int outcome);

struct CdcClosedForm {
    double success_probability;
    double bits;
    double concurrence;          // closed form in the family's own convention
};
CdcClosedForm cdc_closed_form(const std::string& family, const ParamMap& params, double theta, double epsilon = 0);
double cdc_success_probability(const std::string& family, const ParamMap& params, double theta = 0);

// qubit-concurrence analogue for pure two-qutrit states, sqrt(2 (1 - Tr rho_A^2))
double pure_state_concurrence(const Vec& v, const Dims& dims);
bool is_maximally_entangled(const Vec& v, const Dims& dims);

struct PovmProbe {
    bool hermitian[3];
    bool positive[3];
};

struct SecretShareReport {
    double c2 = 0;
    double Q = 0;
    int charlie_bit = 0;
    int alice_outcome = 0;               // 0 = '+', 1 = '-'
    Mat channel;                         // rho+ (bit 0) or rho- (bit 1)
    Mat bob_state;
    std::array<double, 3> povm{};        // Tr(E_i rho_bob)
    double success_probability = 0;
    PovmProbe probe{};
};
std::array<Mat, 3> secret_share_povm(double Q);
Mat secret_share_channel(double c2, int charlie_bit);
SecretShareReport secret_share_run(double c2, int charlie_bit, int alice_outcome);

struct WitnessChecks {
    double w1 = 0;
    double w2 = 0;
    double w1_closed = 0;
    double critical_concurrence = 0;
    double input_concurrence = 0;
    double nonlocal_concurrence = 0;
    bool entangled = false;
};
WitnessChecks secret_share_witness_checks(double c2, double lambda1);

// Monte Carlo replay with Born-rule sampling; fixed number of chains seeded
// seed + chain, so the result does not depend on the thread count
struct MonteCarloSummary {
    std::uint64_t trials = 0;
    std::vector<std::pair<std::string, std::uint64_t>> counts;   // sorted by label
    double mean_bits = 0;
    double exact_bits = 0;
    double success_rate = 0;
    double exact_success = 0;
};
inline constexpr int kMonteCarloChains = 8;
MonteCarloSummary cdc_montecarlo(const CdcRequest& req, std::uint64_t trials, std::uint64_t seed, int threads);
MonteCarloSummary secret_share_montecarlo(double c2, std::uint64_t trials, std::uint64_t seed, int threads);

}  // namespace entkit
