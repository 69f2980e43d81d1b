#include "entkit/statezoo.hpp"

#include <cmath>
#include <sstream>

namespace entkit::zoo {

namespace {

const double s2 = std::sqrt(2.0);

void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainError(msg);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

Vec qubits(std::initializer_list<std::pair<const char*, double>> terms) {
    int n = static_cast<int>(std::string(terms.begin()->first).size());
    Vec v = Vec::Zero(1 << n);
    for (auto& [bits, amp] : terms) v(std::stoi(bits, nullptr, 2)) += amp;
    return v;
}

DensityMatrix two_qubit(const Mat& m) { return DensityMatrix({2, 2}, m); }

double get(const ParamMap& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw std::invalid_argument("missing parameter '" + key + "'");
    return it->second;
}

double get_or(const ParamMap& p, const std::string& key, double dflt) {
    auto it = p.find(key);
    return it == p.end() ? dflt : it->second;
}

int get_int(const ParamMap& p, const std::string& key) {
    double v = get(p, key);
    if (v != std::floor(v)) throw std::invalid_argument("parameter '" + key + "' must be an integer");
    return static_cast<int>(v);
}

}  // namespace

Vec bell_vector(int k) {
    switch (k) {
        case 1: return qubits({{"00", 1 / s2}, {"11", 1 / s2}});
        case 2: return qubits({{"00", 1 / s2}, {"11", -1 / s2}});
        case 3: return qubits({{"01", 1 / s2}, {"10", 1 / s2}});
        case 4: return qubits({{"01", 1 / s2}, {"10", -1 / s2}});
    }
    throw DomainError("bell index must be in 1..4, got " + std::to_string(k));
}

PureState bell(int k) { return PureState({2, 2}, bell_vector(k)); }

PureState ghz3() { return PureState({2, 2, 2}, qubits({{"000", 1 / s2}, {"111", 1 / s2}})); }

PureState ghz4() { return PureState({2, 2, 2, 2}, qubits({{"0000", 1 / s2}, {"1111", 1 / s2}})); }

PureState ghz_class(int i) {
    const double h = 1 / s2;
    Vec v;
    switch (i) {
        case 1: v = qubits({{"010", h}, {"101", h}}); break;
        case 2: v = qubits({{"010", h}, {"101", -h}}); break;
        case 3: v = qubits({{"001", h}, {"110", -h}}); break;
        case 4: v = qubits({{"001", h}, {"110", h}}); break;
        case 5: v = qubits({{"100", h}, {"011", -h}}); break;
        case 6: v = qubits({{"100", h}, {"011", h}}); break;
        case 7: v = qubits({{"000", h}, {"111", -h}}); break;
        default: throw DomainError("ghz_class index must be in 1..7, got " + std::to_string(i));
    }
    return PureState({2, 2, 2}, v);
}

PureState w3_prototype() {
    const double t = 1 / std::sqrt(3.0);
    return PureState({2, 2, 2}, qubits({{"100", t}, {"010", t}, {"001", t}}));
}

PureState w3_nonprototype() {
    return PureState({2, 2, 2}, qubits({{"100", 0.5}, {"010", 0.5}, {"001", s2 / 2}}));
}

PureState w4_prototype() {
    return PureState({2, 2, 2, 2}, qubits({{"1000", 0.5}, {"0100", 0.5}, {"0010", 0.5}, {"0001", 0.5}}));
}

PureState pati(double l) {
    require(l > 0, "pati: l must be > 0, got " + fmt(l));
    const double L = 1 / std::sqrt(1 + l * l);
    return PureState({2, 2, 2}, qubits({{"000", L}, {"111", L * l}}));
}

PureState liqiu_w(int n) {
    require(n >= 1, "liqiu_w: n must be >= 1, got " + std::to_string(n));
    // (|phi>|0> + |00>|1>)/sqrt2 with |phi> = (|10> + sqrt(n)|01>)/sqrt(n+1)
    const double a = 1 / std::sqrt(2.0 * (n + 1));
    return PureState({2, 2, 2}, qubits({{"100", a}, {"010", a * std::sqrt(double(n))}, {"001", 1 / s2}}));
}

PureState qutrit_ghz3() {
    Vec v = Vec::Zero(27);
    for (int j = 0; j < 3; ++j) v(j * 9 + j * 3 + j) = 1 / std::sqrt(3.0);
    return PureState({3, 3, 3}, v);
}

PureState generalized_max_entangled(int n) {
    require(n >= 2, "generalized_max_entangled: n must be >= 2");
    Vec v = Vec::Zero(n * n);
    for (int j = 0; j < n; ++j) v(j * n + j) = 1 / std::sqrt(double(n));
    return PureState({n, n}, v);
}

DensityMatrix werner(double F) {
    require(F > 0.25 && F <= 1.0, "werner: F must lie in (1/4, 1], got " + fmt(F));
    Vec phi = bell_vector(4);
    Mat m = (1 - F) / 3 * Mat::Identity(4, 4) + (4 * F - 1) / 3 * phi * phi.adjoint();
    return two_qubit(m);
}

double mjwk_h(double C) { return C >= 2.0 / 3.0 ? C / 2 : 1.0 / 3.0; }

DensityMatrix mjwk(double C) {
    require(C >= 0 && C <= 1, "mjwk: C must lie in [0, 1], got " + fmt(C));
    const double h = mjwk_h(C);
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = h;
    m(0, 3) = m(3, 0) = C / 2;
    m(1, 1) = 1 - 2 * h;
    m(3, 3) = h;
    return two_qubit(m);
}

DensityMatrix wei(double x, double y, double a, double b, double g) {
    require(x >= 0 && y >= 0 && a >= 0 && b >= 0 && g >= 0, "wei: parameters must be non-negative");
    require(std::abs(x + y + a + b + g - 1) <= tol::norm, "wei: x+y+gamma+a+b must equal 1");
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = x + g / 2;
    m(0, 3) = m(3, 0) = g / 2;
    m(1, 1) = a;
    m(2, 2) = b;
    m(3, 3) = y + g / 2;
    return two_qubit(m);
}

DensityMatrix werner_derivative(double F, double a) {
    require(F > 0.5 && F <= 1, "werner_derivative: F must lie in (1/2, 1], got " + fmt(F));
    require(a >= 0.5 && a <= 1, "werner_derivative: a must lie in [1/2, 1], got " + fmt(a));
    Vec psi = qubits({{"00", std::sqrt(a)}, {"11", std::sqrt(1 - a)}});
    Mat m = (1 - F) / 3 * Mat::Identity(4, 4) + (4 * F - 1) / 3 * psi * psi.adjoint();
    return two_qubit(m);
}

DensityMatrix nmems(double p) {
    require(p >= 0 && p <= 1, "nmems: p must lie in [0, 1], got " + fmt(p));
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = (p + 2) / 6;
    m(1, 1) = m(1, 2) = m(2, 1) = m(2, 2) = (1 - p) / 3;
    m(3, 3) = p / 2;
    return two_qubit(m);
}

DensityMatrix ih_mems(double p1, double p2, double p3, double p4) {
    require(p1 >= p2 && p2 >= p3 && p3 >= p4 && p4 >= 0, "ih_mems: need p1 >= p2 >= p3 >= p4 >= 0");
    require(std::abs(p1 + p2 + p3 + p4 - 1) <= tol::norm, "ih_mems: p1+p2+p3+p4 must equal 1");
    Vec fm = bell_vector(4), fp = bell_vector(3);
    Mat m = p1 * fm * fm.adjoint() + p3 * fp * fp.adjoint();
    m(0, 0) += p2;
    m(3, 3) += p4;
    return two_qubit(m);
}

DensityMatrix cloned_mems(double c2, double l1) {
    require(c2 >= 0 && c2 <= 1, "cloned_mems: c^2 must lie in [0, 1], got " + fmt(c2));
    require(l1 >= 0 && l1 <= 1, "cloned_mems: lambda1 must lie in [0, 1], got " + fmt(l1));
    const double d2 = (1 - c2) / 2, l2 = 1 - l1;
    const double P = (c2 + d2) * (c2 + d2), Q = 4 * c2 * d2, R = d2 * (c2 + d2), S = d2 * d2;
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = P * l1 + S * l2;
    m(3, 3) = P * l2 + S * l1;
    m(0, 3) = m(3, 0) = Q * std::sqrt(l1 * l2);
    m(1, 1) = m(2, 2) = R;
    return two_qubit(m);
}

DensityMatrix nmems_from_reductions(double p) {
    require(p >= 0 && p <= 1, "nmems: p must lie in [0, 1], got " + fmt(p));
    Mat g = partial_trace(DensityMatrix(ghz3()), {0, 1}).matrix();
    Mat w = partial_trace(DensityMatrix(w3_prototype()), {0, 1}).matrix();
    return two_qubit(p * g + (1 - p) * w);
}

DensityMatrix make_mixed(const std::string& f, const ParamMap& p) {
    if (f == "werner") return werner(get(p, "F"));
    if (f == "mjwk") return mjwk(get(p, "C"));
    if (f == "wei") return wei(get(p, "x"), get(p, "y"), get(p, "a"), get(p, "b"), get(p, "gamma"));
    if (f == "werner_derivative") return werner_derivative(get(p, "F"), get(p, "a"));
    if (f == "nmems") return nmems(get(p, "p"));
    if (f == "ih_mems") return ih_mems(get(p, "p1"), get(p, "p2"), get(p, "p3"), get(p, "p4"));
    if (f == "cloned_mems") return cloned_mems(get(p, "c2"), get_or(p, "lambda1", 0.5));
    throw std::invalid_argument("unknown mixed family '" + f + "'");
}

PureState make_pure(const std::string& f, const ParamMap& p) {
    if (f == "bell") return bell(get_int(p, "k"));
    if (f == "ghz3" || f == "ghz") return ghz3();
    if (f == "ghz4") return ghz4();
    if (f == "ghz_class") return ghz_class(get_int(p, "i"));
    if (f == "w3_prototype" || f == "w3") return w3_prototype();
    if (f == "w3_nonprototype") return w3_nonprototype();
    if (f == "w4_prototype" || f == "w4") return w4_prototype();
    if (f == "pati") return pati(get(p, "l"));
    if (f == "liqiu_w") return liqiu_w(get_int(p, "n"));
    if (f == "qutrit_ghz3" || f == "qutrit_ghz") return qutrit_ghz3();
    if (f == "generalized_max_entangled") return generalized_max_entangled(get_int(p, "n"));
    throw std::invalid_argument("unknown pure family '" + f + "'");
}

bool is_pure_family(const std::string& f) {
    static const char* names[] = {"bell", "ghz", "ghz3", "ghz4", "ghz_class", "w3", "w3_prototype", "w3_nonprototype",
                                  "w4", "w4_prototype", "pati", "liqiu_w", "qutrit_ghz", "qutrit_ghz3",
                                  "generalized_max_entangled"};
    for (auto* n : names)
        if (f == n) return true;
    return false;
}

bool is_mixed_family(const std::string& f) {
    static const char* names[] = {"werner", "mjwk", "wei", "werner_derivative", "nmems", "ih_mems", "cloned_mems"};
    for (auto* n : names)
        if (f == n) return true;
    return false;
}

}  // namespace entkit::zoo
