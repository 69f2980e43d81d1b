#include "entkit/protocols.hpp"

#include "entkit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

namespace entkit {

namespace {

constexpr double kSeam = 1e-12;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// sqrt(1 - r^2) with a little slack at the seam |r| = 1
double radical(double r, const std::string& who, const std::string& expr) {
    double v = 1 - r * r;
    if (v < -kSeam) throw DomainError(who + ": " + expr + " is negative, the radical sqrt(" + expr + ") is undefined");
    return std::sqrt(std::max(0.0, v));
}

Mat swap_a(const Mat& u) {
    // X on A in the (A + 2 aux) layout
    Mat x = tensor(gates::I(), gates::X());
    return x * u * x;
}

// contract `party` of v with <bra|; returns the reduced vector over the remaining parties
Vec contract(const Vec& v, const Dims& dims, int party, const Vec& bra, Dims& out_dims) {
    const int n = static_cast<int>(dims.size());
    int inner = 1;
    for (int k = party + 1; k < n; ++k) inner *= dims[k];
    const int d = dims[party];
    const int outer = static_cast<int>(v.size()) / (inner * d);
    Vec out = Vec::Zero(outer * inner);
    for (int o = 0; o < outer; ++o)
        for (int j = 0; j < d; ++j) {
            const cplx c = std::conj(bra(j));
            if (c == cplx(0)) continue;
            for (int i = 0; i < inner; ++i) out(o * inner + i) += c * v((o * d + j) * inner + i);
        }
    out_dims = dims;
    out_dims.erase(out_dims.begin() + party);
    return out;
}

struct SchmidtWeights {
    std::vector<double> w;   // nonzero, descending
};

SchmidtWeights weights(const Vec& v, const Dims& dims) {
    auto s = schmidt_decompose(PureState(dims, v));
    SchmidtWeights out;
    for (double l : s.coefficients)
        if (l > 1e-9) out.w.push_back(l * l);
    return out;
}

double success_from_weights(const SchmidtWeights& s) {
    if (s.w.size() < 2) return 0;
    return s.w.size() * s.w.back();
}

bool max_ent_from_weights(const SchmidtWeights& s) {
    if (s.w.size() < 2) return false;
    return std::abs(s.w.front() - s.w.back()) <= 1e-9;
}

struct FamilySpec {
    PureState state;
    double scale;                 // unnormalized = scale * normalized
    int a, b;
    std::vector<int> controllers; // party indices, in measurement order
    std::vector<double> angles;
    enum { structural, equalize, none } filter;
    int a_plus;
    std::string base_unitary;
};

FamilySpec family_spec(const CdcRequest& req, double& theta) {
    const std::string& f = req.family;
    auto need_theta = [&]() {
        if (!req.theta) throw std::invalid_argument("cdc: family '" + f + "' needs --theta");
        return *req.theta;
    };
    auto need_eps = [&]() {
        if (!req.epsilon) throw std::invalid_argument("cdc: family '" + f + "' needs --epsilon");
        return *req.epsilon;
    };
    auto param = [&](const char* k) {
        auto it = req.params.find(k);
        if (it == req.params.end()) throw std::invalid_argument("cdc: family '" + f + "' needs parameter " + k);
        return it->second;
    };
    if (f == "ghz" || f == "ghz3" || f == "hao") {
        // past pi/4 Alice uses the mirrored X U1(pi/2 - theta) X, which stays inside the U1 domain
        theta = need_theta();
        return {zoo::ghz3(), std::sqrt(2.0), 0, 1, {2}, {theta}, FamilySpec::structural, 0, "U1"};
    }
    if (f == "ghz_class") {
        theta = need_theta();
        const double iv = param("i");
        const int i = static_cast<int>(iv);
        if (iv != i || i < 1 || i > 7) throw DomainError("cdc ghz_class: i must be an integer in 1..7");
        const bool sin_group = (i == 1 || i == 4 || i == 6);
        const double s = std::abs(std::sin(theta)), c = std::abs(std::cos(theta));
        if (sin_group && s > c + kSeam)
            throw DomainError("cdc ghz_class G" + std::to_string(i) + ": need |sin theta| <= |cos theta|");
        if (!sin_group && c > s + kSeam)
            throw DomainError("cdc ghz_class G" + std::to_string(i) + ": need |cos theta| <= |sin theta|");
        const int a_plus = (i >= 3 && i <= 6) ? 1 : 0;
        return {zoo::ghz_class(i), std::sqrt(2.0), 0, 1, {2}, {theta}, FamilySpec::structural, a_plus, "U1"};
    }
    if (f == "pati") {
        const double l = param("l");
        if (!(l > 0)) throw DomainError("cdc pati: l must be > 0");
        const double linked = std::atan(1 / l);
        if (req.theta && std::abs(*req.theta - linked) > 1e-9)
            throw DomainError("cdc pati: theta must equal arctan(1/l) = " + fmt(linked));
        theta = linked;
        return {zoo::pati(l), std::sqrt(1 + l * l), 0, 1, {2}, {theta}, FamilySpec::structural, 0, "U1"};
    }
    if (f == "ghz4") {
        theta = need_theta();
        const double eps = need_eps();
        return {zoo::ghz4(), std::sqrt(2.0), 1, 2, {3, 0}, {theta, eps}, FamilySpec::equalize, 0, "U2"};
    }
    if (f == "w3" || f == "w3_prototype") {
        theta = need_theta();
        return {zoo::w3_prototype(), std::sqrt(3.0), 0, 1, {2}, {theta}, FamilySpec::structural, 0, "U1"};
    }
    if (f == "w4" || f == "w4_prototype") {
        theta = need_theta();
        const double eps = need_eps();
        return {zoo::w4_prototype(), 2.0, 1, 2, {3, 0}, {theta, eps}, FamilySpec::structural, 0, "U1"};
    }
    if (f == "liqiu_w") {
        const double nv = param("n");
        if (nv != std::floor(nv) || nv < 1) throw DomainError("cdc liqiu_w: n must be a positive integer");
        theta = req.theta.value_or(0.0);
        return {zoo::liqiu_w(static_cast<int>(nv)), 1.0, 0, 1, {2}, {theta}, FamilySpec::none, 0, "none"};
    }
    throw std::invalid_argument("cdc: unknown family '" + f + "'");
}

std::string outcome_label(const std::vector<int>& o) {
    std::string s;
    for (int b : o) s += b ? '-' : '+';
    return s;
}

void fill_shared(CdcReport& r, const Vec& shared, const Dims& dims) {
    r.shared_dims = dims;
    r.shared_state = shared;
    PureState ps(dims, shared);
    r.entanglement = entropy_of_entanglement(ps);
    r.concurrence = dims == Dims{2, 2} ? concurrence_amplitudes(shared) : pure_state_concurrence(shared, dims);
    auto w = weights(shared, dims);
    r.success_probability = success_from_weights(w);
    r.maximally_entangled = max_ent_from_weights(w);
}

Vec apply_on_a(const Mat& op, const Vec& v, int db) {
    const int da = static_cast<int>(op.rows());
    Vec out = Vec::Zero(v.size());
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            for (int b = 0; b < db; ++b) out(i * db + b) += op(i, j) * v(j * db + b);
    return out;
}

}  // namespace

std::array<Vec, 2> qubit_controller_basis(double t) {
    Vec p(2), m(2);
    p << std::cos(t), std::sin(t);
    m << std::sin(t), -std::cos(t);
    return {p, m};
}

std::array<Vec, 3> qutrit_controller_basis(double t) {
    Vec up = Vec::Zero(3), mid = Vec::Zero(3), down = Vec::Zero(3);
    up(0) = std::sin(t);
    up(2) = std::cos(t);
    mid(1) = 1;
    down(0) = std::cos(t);
    down(2) = -std::sin(t);
    return {up, mid, down};
}

Mat attenuation_unitary(double r) {
    const double s = radical(r, "attenuation_unitary", "1 - r^2");
    Mat u = Mat::Zero(4, 4);
    u(0, 0) = r;
    u(0, 2) = s;
    u(1, 1) = 1;
    u(2, 3) = -1;
    u(3, 0) = s;
    u(3, 2) = -r;
    return u;
}

Mat attenuation_unitary_u2(double r) {
    const double s = radical(r, "attenuation_unitary_u2", "1 - r^2");
    Mat u = Mat::Zero(4, 4);
    u(0, 0) = r;
    u(0, 2) = s;
    u(1, 1) = 1;
    u(2, 0) = -s;
    u(2, 2) = r;
    u(3, 3) = -1;
    return u;
}

CollectiveUnitary collective_unitary(const std::string& tag, double theta, double epsilon) {
    CollectiveUnitary cu{tag, theta, epsilon, Mat()};
    const double s = std::sin(theta), c = std::cos(theta);
    if (tag == "U1" || tag == "hao") {
        if (std::abs(s) > std::abs(c) + kSeam || c == 0)
            throw DomainError(tag + ": 1 - sin^2(theta)/cos^2(theta) is negative, the radical sqrt(1 - sin^2(theta)/cos^2(theta)) is undefined");
        cu.matrix = attenuation_unitary(std::clamp(s / c, -1.0, 1.0));
        return cu;
    }
    if (tag == "U2") {
        const double se = std::sin(epsilon), ce = std::cos(epsilon);
        if (std::abs(s * se) > std::abs(c * ce) + kSeam || c * ce == 0)
            throw DomainError("U2: the radical sqrt(1 - sin^2(theta)sin^2(epsilon)/(cos^2(theta)cos^2(epsilon))) is undefined");
        cu.matrix = attenuation_unitary_u2(std::clamp(s * se / (c * ce), -1.0, 1.0));
        return cu;
    }
    if (tag == "V1" || tag == "V2") {
        if (s == 0 || std::abs(c) > std::abs(s) + kSeam)
            throw DomainError(tag + ": the radical sqrt(1 - cos^2(theta)/sin^2(theta)) is undefined");
        if (c == 0 || std::abs(s) > std::abs(c) + kSeam)
            throw DomainError(tag + ": the radical sqrt(1 - sin^2(theta)/cos^2(theta)) is undefined");
        const double cot = std::clamp(c / s, -1.0, 1.0), tan = std::clamp(s / c, -1.0, 1.0);
        const double outer = tag == "V1" ? cot : tan;   // block on indices {0, 8}
        const double inner = tag == "V1" ? tan : cot;   // block on indices {2, 6}
        Mat v = Mat::Identity(9, 9);
        v(0, 0) = outer;
        v(0, 8) = v(8, 0) = std::sqrt(std::max(0.0, 1 - outer * outer));
        v(8, 8) = -outer;
        v(2, 2) = inner;
        v(2, 6) = v(6, 2) = std::sqrt(std::max(0.0, 1 - inner * inner));
        v(6, 6) = -inner;
        cu.matrix = v;
        return cu;
    }
    throw std::invalid_argument("collective_unitary: unknown tag '" + tag + "'");
}

double pure_state_concurrence(const Vec& v, const Dims& dims) {
    PureState ps(dims, v);
    Mat ra = partial_trace(ps.projector(), dims, {0});
    double purity = std::real((ra * ra).trace());
    return std::sqrt(std::max(0.0, 2 * (1 - purity)));
}

bool is_maximally_entangled(const Vec& v, const Dims& dims) { return max_ent_from_weights(weights(v, dims)); }

CdcReport cdc_run(const CdcRequest& req) {
    if (req.family == "qutrit_ghz" || req.family == "qutrit_ghz3") {
        if (!req.theta) throw std::invalid_argument("cdc: family 'qutrit_ghz' needs --theta");
        if (req.outcomes.size() > 1) throw std::invalid_argument("cdc qutrit_ghz: one controller outcome expected");
        return qutrit_cdc_run(*req.theta, req.outcomes.empty() ? 0 : req.outcomes[0]);
    }
    double theta = 0;
    FamilySpec spec = family_spec(req, theta);
    std::vector<int> outcomes = req.outcomes;
    if (outcomes.empty()) outcomes.assign(spec.controllers.size(), 0);
    if (outcomes.size() != spec.controllers.size())
        throw std::invalid_argument("cdc: family '" + req.family + "' expects " + std::to_string(spec.controllers.size()) +
                                    " controller outcome(s)");
    for (int o : outcomes)
        if (o != 0 && o != 1) throw std::invalid_argument("cdc: controller outcomes are '+' or '-'");

    CdcReport r;
    r.family = req.family;
    r.theta = theta;
    if (spec.angles.size() > 1) r.epsilon = spec.angles[1];
    r.controller_outcome = outcome_label(outcomes);

    // measure the controllers, highest party index first so earlier indices stay valid
    Vec v = spec.state.amplitudes();
    Dims dims = spec.state.dims();
    std::vector<int> order(spec.controllers.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return spec.controllers[x] > spec.controllers[y]; });
    for (int k : order) {
        Dims nd;
        v = contract(v, dims, spec.controllers[k], qubit_controller_basis(spec.angles[k])[outcomes[k]], nd);
        dims = nd;
    }
    // remaining parties are (a, b) in increasing index order
    if (spec.a > spec.b) throw std::logic_error("cdc: family layout expects a before b");
    r.controller_probability = v.squaredNorm();
    if (r.controller_probability < 1e-15) throw DomainError("cdc: controller outcome " + r.controller_outcome + " has zero probability");
    const Vec branch = v / std::sqrt(r.controller_probability);   // normalized A-B state
    r.controlled_state = branch;
    r.controlled_concurrence = concurrence_amplitudes(branch);

    if (spec.filter == FamilySpec::none) {
        r.unitary = "none";
        r.aux_probability = 1;
        r.aux_branch_probabilities = {1.0, 0.0};
        fill_shared(r, branch, {2, 2});
        r.raw_concurrence = concurrence_amplitudes(v * spec.scale);
        r.bits_transmitted_avg = 1 + r.entanglement;
    } else {
        double ratio = 0;
        int k = 0;
        bool mirrored = false;
        if (spec.filter == FamilySpec::structural) {
            const double s = std::sin(spec.angles[0]), c = std::cos(spec.angles[0]);
            mirrored = std::abs(s) > std::abs(c) + kSeam;
            ratio = mirrored ? c / s : s / c;
            k = spec.a_plus ^ outcomes[0] ^ (mirrored ? 1 : 0);
        } else {
            const double n0 = branch.segment(0, 2).norm(), n1 = branch.segment(2, 2).norm();
            k = n1 > n0 + kSeam ? 1 : 0;
            ratio = k ? n0 / n1 : n1 / n0;
            mirrored = k != spec.a_plus;
        }
        ratio = std::clamp(ratio, -1.0, 1.0);
        Mat u = spec.base_unitary == "U2" ? attenuation_unitary_u2(ratio) : attenuation_unitary(ratio);
        if (k == 1) u = swap_a(u);
        r.unitary = (k == 1 ? "X." + spec.base_unitary + ".X" : spec.base_unitary);
        r.attenuation = ratio;
        r.attenuated_branch = k;
        r.unitary_error = unitarity_error(u);

        auto branch_out = [&](const Vec& in, int m) {
            Vec out = Vec::Zero(4);
            for (int a2 = 0; a2 < 2; ++a2)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) out(a2 * 2 + b) += u(a2 + 2 * m, a) * in(a * 2 + b);
            return out;
        };
        Vec aux0 = branch_out(branch, 0), aux1 = branch_out(branch, 1);
        r.aux_probability = aux0.squaredNorm();
        r.aux_branch_probabilities = {r.aux_probability, aux1.squaredNorm()};
        if (r.aux_probability > 1e-15) {
            fill_shared(r, aux0 / std::sqrt(r.aux_probability), {2, 2});
        } else {
            fill_shared(r, aux1 / aux1.norm(), {2, 2});
            r.aux_probability = 0;
        }
        r.raw_concurrence = concurrence_amplitudes(branch_out(v * spec.scale, 0));
        r.bits_transmitted_avg = 1 + r.aux_probability * r.entanglement;
    }
    if (r.maximally_entangled) {
        const Mat ops[4] = {gates::I(), gates::X(), gates::X() * gates::Z(), gates::Z()};
        for (const auto& op : ops) r.encoded_states.push_back(apply_on_a(op, r.shared_state, 2));
    }
    return r;
}

CdcReport qutrit_cdc_run(double theta, int outcome) {
    if (outcome < 0 || outcome > 2) throw std::invalid_argument("qutrit cdc: outcome must be 0 (up), 1 (diagonal) or 2 (down)");
    static const char* names[] = {"up", "diagonal", "down"};
    CdcReport r;
    r.family = "qutrit_ghz";
    r.theta = theta;
    r.controller_outcome = names[outcome];
    Dims dims;
    Vec v = contract(zoo::qutrit_ghz3().amplitudes(), {3, 3, 3}, 2, qutrit_controller_basis(theta)[outcome], dims);
    r.controller_probability = v.squaredNorm();
    if (r.controller_probability < 1e-15) throw DomainError("qutrit cdc: controller outcome has zero probability");
    Vec branch = v / std::sqrt(r.controller_probability);
    r.controlled_state = branch;
    r.controlled_concurrence = pure_state_concurrence(branch, {3, 3});
    if (outcome == 1) {
        r.unitary = "none";
        r.aux_branch_probabilities = {1.0, 0.0, 0.0};
        fill_shared(r, branch, {3, 3});
        r.raw_concurrence = r.concurrence;
        r.bits_transmitted_avg = 1;
        return r;
    }
    auto cu = collective_unitary(outcome == 0 ? "V1" : "V2", theta);
    r.unitary = cu.tag;
    r.unitary_error = unitarity_error(cu.matrix);
    std::vector<Vec> aux(3, Vec::Zero(9));
    for (int m = 0; m < 3; ++m)
        for (int a2 = 0; a2 < 3; ++a2)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) aux[m](a2 * 3 + b) += cu.matrix(3 * a2 + m, 3 * a) * branch(a * 3 + b);
    for (auto& x : aux) r.aux_branch_probabilities.push_back(x.squaredNorm());
    r.aux_probability = r.aux_branch_probabilities[0];
    if (r.aux_probability < 1e-15) throw DomainError("qutrit cdc: auxiliary outcome 0 has zero probability");
    fill_shared(r, aux[0] / std::sqrt(r.aux_probability), {3, 3});
    r.raw_concurrence = r.concurrence;
    r.bits_transmitted_avg = 1 + r.aux_probability * r.entanglement;
    if (r.maximally_entangled) {
        Mat p02 = Mat::Zero(3, 3), swap = Mat::Zero(3, 3), iy = Mat::Zero(3, 3), z02 = Mat::Zero(3, 3);
        p02(0, 0) = p02(2, 2) = 1;
        swap(0, 2) = swap(2, 0) = 1;
        iy(0, 2) = 1;
        iy(2, 0) = -1;
        z02(0, 0) = 1;
        z02(2, 2) = -1;
        for (const Mat& op : {p02, swap, iy, z02}) r.encoded_states.push_back(apply_on_a(op, r.shared_state, 3));
    }
    return r;
}

CdcClosedForm cdc_closed_form(const std::string& f, const ParamMap& p, double theta, double epsilon) {
    const double s = std::sin(theta), c = std::cos(theta);
    if (f == "ghz" || f == "ghz3" || f == "hao") return {1, 1 + 2 * std::min(s * s, c * c), std::abs(std::sin(2 * theta))};
    if (f == "ghz_class") {
        const int i = static_cast<int>(p.at("i"));
        if (i < 1 || i > 7) throw DomainError("ghz_class index must be in 1..7");
        const bool sin_group = (i == 1 || i == 4 || i == 6);
        return {1, sin_group ? 1 + 2 * s * s : 1 + 2 * c * c, std::abs(std::sin(2 * theta))};
    }
    if (f == "pati") {
        const double l = p.at("l");
        if (l < 0) throw DomainError("pati: l must be >= 0");
        const double th = l > 0 ? std::atan(1 / l) : M_PI / 2;
        return {2 * std::min(1.0, l * l) / (1 + l * l), kNaN, std::abs(std::sin(2 * th))};
    }
    if (f == "ghz4") {
        const double se = std::sin(epsilon);
        return {1, kNaN, 2 * s * s * se * se};
    }
    if (f == "w3" || f == "w3_prototype") return {kNaN, kNaN, std::sqrt(2.0) * std::abs(c * s)};
    if (f == "w4" || f == "w4_prototype") {
        const double ce = std::cos(epsilon);
        return {kNaN, kNaN, std::abs(std::sin(2 * theta)) * ce * ce};
    }
    if (f == "liqiu_w") {
        const double n = p.at("n");
        return {2 * std::min(1.0, n) / (1 + n), kNaN, 2 * std::sqrt(n) / (n + 1)};
    }
    throw std::invalid_argument("cdc_closed_form: unknown family '" + f + "'");
}

double cdc_success_probability(const std::string& f, const ParamMap& p, double theta) {
    return cdc_closed_form(f, p, theta).success_probability;
}

std::array<Mat, 3> secret_share_povm(double Q) {
    Mat e1(2, 2), e2(2, 2);
    e1 << Q / 2, 1, 0, Q / 2;
    e2 << Q / 2, -1, 0, Q / 2;
    Mat e3 = Mat::Identity(2, 2) - e1 - e2;
    return {e1, e2, e3};
}

static void check_c2(double c2) {
    if (!(c2 > 1.0 / 3.0 && c2 <= 1)) throw DomainError("secret sharing: c^2 must lie in (1/3, 1]");
}

Mat secret_share_channel(double c2, int charlie_bit) {
    check_c2(c2);
    if (charlie_bit != 0 && charlie_bit != 1) throw DomainError("secret sharing: Charlie's bit must be 0 or 1");
    CloningParams cp{2, std::sqrt(c2), std::sqrt((1 - c2) / 2), c2};
    // cloning both halves of Psi+ (bit 0) or Psi- (bit 1); keep copies 1 and 4
    Vec in = zoo::bell_vector(charlie_bit == 0 ? 1 : 2);
    Mat v = bh_isometry(cp);
    Vec out = tensor(v, v) * in;
    const Dims six(6, 2);
    Vec ordered = permute_subsystems(out, six, {0, 3, 1, 4, 2, 5});
    return partial_trace(Mat(ordered * ordered.adjoint()), six, {0, 3});
}

SecretShareReport secret_share_run(double c2, int charlie_bit, int alice_outcome) {
    check_c2(c2);
    if (alice_outcome != 0 && alice_outcome != 1) throw DomainError("secret sharing: Alice's outcome must be + or -");
    SecretShareReport r;
    r.c2 = c2;
    r.charlie_bit = charlie_bit;
    r.alice_outcome = alice_outcome;
    double P, Q, R, S;
    cloning_pqrs(c2, P, Q, R, S);
    r.Q = Q;
    r.channel = secret_share_channel(c2, charlie_bit);
    Vec h(2);
    h << 1, alice_outcome == 0 ? 1 : -1;
    h /= std::sqrt(2.0);
    Mat proj = tensor(Mat(h.adjoint()), gates::I());
    Mat bob = proj * r.channel * proj.adjoint();
    bob /= std::real(bob.trace());
    r.bob_state = bob;
    auto e = secret_share_povm(Q);
    for (int i = 0; i < 3; ++i) {
        r.povm[i] = std::real((e[i] * bob).trace());
        r.probe.hermitian[i] = is_hermitian(e[i]);
        r.probe.positive[i] = r.probe.hermitian[i] && hermitian_eigen(e[i]).values.minCoeff() >= -tol::psd;
    }
    // Bob holds rho_B^{+0} or rho_B^{-0} with equal weight once Alice announces
    auto plus = secret_share_channel(c2, 0);
    auto bob_for = [&](int outcome) {
        Vec hh(2);
        hh << 1, outcome == 0 ? 1 : -1;
        hh /= std::sqrt(2.0);
        Mat pr = tensor(Mat(hh.adjoint()), gates::I());
        Mat b = pr * plus * pr.adjoint();
        return Mat(b / std::real(b.trace()));
    };
    r.success_probability = 0.5 * std::real((e[0] * bob_for(0)).trace()) + 0.5 * std::real((e[1] * bob_for(1)).trace());
    return r;
}

WitnessChecks secret_share_witness_checks(double c2, double lambda1) {
    check_c2(c2);
    if (!(lambda1 >= 0 && lambda1 <= 1)) throw DomainError("secret sharing: lambda1 must lie in [0, 1]");
    CloningParams cp{2, std::sqrt(c2), std::sqrt((1 - c2) / 2), c2};
    auto b = clone_bipartite(lambda1, cp);
    WitnessChecks w;
    w.w1 = witness_expectation(witness_w1(), b.nonlocal);
    w.w2 = witness_expectation(witness_w2(), b.nonlocal);
    const double root = std::sqrt(lambda1 * (1 - lambda1));
    w.w1_closed = -2 / std::sqrt(3.0) * (b.Q * root - b.R);
    w.critical_concurrence = critical_concurrence(c2);
    w.input_concurrence = 2 * root;
    w.nonlocal_concurrence = concurrence(b.nonlocal);
    w.entangled = w.input_concurrence > w.critical_concurrence;
    return w;
}

namespace {

struct Leaf {
    std::string label;
    double p;
    double bits;
    bool success;
};

MonteCarloSummary run_chains(const std::vector<Leaf>& leaves, std::uint64_t trials, std::uint64_t seed, int threads) {
    if (trials == 0) throw std::invalid_argument("montecarlo: trial count must be positive");
    std::vector<double> cdf;
    double acc = 0;
    for (const auto& l : leaves) cdf.push_back(acc += l.p);
    struct Chain {
        std::vector<std::uint64_t> counts;
        double bits = 0;
        std::uint64_t ok = 0;
    };
    std::vector<Chain> chains(kMonteCarloChains);
    auto work = [&](int c) {
        std::uint64_t n = trials / kMonteCarloChains + (std::uint64_t(c) < trials % kMonteCarloChains ? 1 : 0);
        std::mt19937_64 rng(seed + c);
        std::uniform_real_distribution<double> u(0.0, acc);
        Chain& ch = chains[c];
        ch.counts.assign(leaves.size(), 0);
        for (std::uint64_t t = 0; t < n; ++t) {
            size_t k = std::upper_bound(cdf.begin(), cdf.end(), u(rng)) - cdf.begin();
            k = std::min(k, leaves.size() - 1);
            ++ch.counts[k];
            ch.bits += leaves[k].bits;
            ch.ok += leaves[k].success;
        }
    };
    threads = std::clamp(threads, 1, kMonteCarloChains);
    for (int start = 0; start < kMonteCarloChains; start += threads) {
        std::vector<std::thread> pool;
        for (int c = start; c < std::min(kMonteCarloChains, start + threads); ++c) pool.emplace_back(work, c);
        for (auto& t : pool) t.join();
    }
    MonteCarloSummary m;
    m.trials = trials;
    std::vector<std::uint64_t> total(leaves.size(), 0);
    double bits = 0;
    std::uint64_t ok = 0;
    for (const auto& ch : chains) {
        for (size_t k = 0; k < leaves.size(); ++k) total[k] += ch.counts[k];
        bits += ch.bits;
        ok += ch.ok;
    }
    for (size_t k = 0; k < leaves.size(); ++k) {
        m.counts.emplace_back(leaves[k].label, total[k]);
        m.exact_bits += leaves[k].p * leaves[k].bits;
        m.exact_success += leaves[k].success ? leaves[k].p : 0;
    }
    std::sort(m.counts.begin(), m.counts.end());
    m.mean_bits = bits / double(trials);
    m.success_rate = double(ok) / double(trials);
    return m;
}

}  // namespace

MonteCarloSummary cdc_montecarlo(const CdcRequest& req, std::uint64_t trials, std::uint64_t seed, int threads) {
    std::vector<Leaf> leaves;
    const bool qutrit = req.family == "qutrit_ghz" || req.family == "qutrit_ghz3";
    std::vector<std::vector<int>> combos;
    if (qutrit) {
        combos = {{0}, {1}, {2}};
    } else {
        double th = 0;
        const size_t n = family_spec(req, th).controllers.size();
        for (int m = 0; m < (1 << n); ++m) {
            std::vector<int> o(n);
            for (size_t k = 0; k < n; ++k) o[k] = (m >> (n - 1 - k)) & 1;
            combos.push_back(o);
        }
    }
    for (const auto& o : combos) {
        CdcRequest q = req;
        q.outcomes = o;
        CdcReport r;
        try {
            r = cdc_run(q);
        } catch (const DomainError&) {
            continue;   // zero-probability controller branch
        }
        const double pc = r.controller_probability;
        if (r.aux_probability > 0)
            leaves.push_back({"ctrl=" + r.controller_outcome + ",aux=0", pc * r.aux_probability, 1 + r.entanglement, true});
        if (r.aux_probability < 1)
            leaves.push_back({"ctrl=" + r.controller_outcome + ",aux=1", pc * (1 - r.aux_probability), 1.0, false});
    }
    if (leaves.empty()) throw DomainError("montecarlo: no controller branch has positive probability");
    return run_chains(leaves, trials, seed, threads);
}

MonteCarloSummary secret_share_montecarlo(double c2, std::uint64_t trials, std::uint64_t seed, int threads) {
    std::vector<Leaf> leaves;
    static const char* bob[] = {"E1", "E2", "E3"};
    for (int bit = 0; bit < 2; ++bit)
        for (int a = 0; a < 2; ++a) {
            auto r = secret_share_run(c2, bit, a);
            for (int i = 0; i < 3; ++i) {
                // outcome probabilities are Tr(E_i rho), clipped for the formal elements
                const double p = 0.25 * std::max(0.0, r.povm[i]);
                std::string label = "bit=" + std::to_string(bit) + ",alice=" + (a ? "-" : "+") + ",bob=" + bob[i];
                leaves.push_back({label, p, 0.0, i < 2});
            }
        }
    auto m = run_chains(leaves, trials, seed, threads);
    return m;
}

}  // namespace entkit
