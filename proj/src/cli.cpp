#include "entkit/cli.hpp"

#include "entkit/channel.hpp"
#include "entkit/cloning.hpp"
#include "entkit/measures.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <iostream>
#include <sstream>
#include <thread>

namespace entkit::cli {

using ojson = nlohmann::ordered_json;

namespace {

const double kPi = 3.14159265358979323846;

double round12(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_number(x).c_str(), nullptr);
}

ojson num(double x) {
    if (!std::isfinite(x)) return nullptr;
    return round12(x);
}

// evaluates rows in parallel into fixed slots, so the order never depends on scheduling
std::vector<std::vector<double>> parallel_rows(int n, int threads, const std::function<std::vector<double>(int)>& fn) {
    std::vector<std::vector<double>> rows(n);
    threads = std::clamp(threads, 1, std::max(1, n));
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex m;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += threads) {
                try {
                    rows[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(m);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

double lin(double a, double b, int i, int n) { return n == 1 ? a : a + (b - a) * i / (n - 1); }

double parse_double(const std::string& s, const std::string& what) {
    std::string t = s;
    t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
    if (t.empty()) throw UsageError(what + ": empty value");
    // allow pi, pi/4, 3pi/8, 0.25pi
    auto p = t.find("pi");
    if (p != std::string::npos) {
        std::string pre = t.substr(0, p), post = t.substr(p + 2);
        double factor = 1;
        if (!pre.empty() && pre != "-") {
            if (pre.back() == '*') pre.pop_back();
            factor = parse_double(pre, what);
        } else if (pre == "-") {
            factor = -1;
        }
        double div = 1;
        if (!post.empty()) {
            if (post[0] != '/') throw UsageError(what + ": cannot parse '" + s + "'");
            div = parse_double(post.substr(1), what);
        }
        return factor * kPi / div;
    }
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0') throw UsageError(what + ": cannot parse '" + s + "' as a number");
    return v;
}

ParamMap parse_pairs(const std::vector<std::string>& items, const std::string& what) {
    ParamMap m;
    for (const auto& it : items) {
        auto eq = it.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError(what + ": expected key=value, got '" + it + "'");
        m[it.substr(0, eq)] = parse_double(it.substr(eq + 1), what);
    }
    return m;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

const char* default_key(const std::string& family) {
    if (family == "bell") return "k";
    if (family == "ghz_class") return "i";
    if (family == "pati") return "l";
    if (family == "liqiu_w" || family == "generalized_max_entangled") return "n";
    if (family == "werner") return "F";
    if (family == "mjwk") return "C";
    if (family == "nmems") return "p";
    if (family == "cloned_mems") return "c2";
    return nullptr;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    f << text;
}

ojson vec_json(const Vec& v) {
    ojson a = ojson::array();
    for (int i = 0; i < v.size(); ++i) a.push_back({round12(v(i).real()), round12(v(i).imag())});
    return a;
}

ojson mat_json(const Mat& m) {
    ojson a = ojson::array();
    for (int i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back({round12(m(i, j).real()), round12(m(i, j).imag())});
        a.push_back(row);
    }
    return a;
}

std::vector<int> parse_outcomes(const std::string& s, const std::string& family) {
    std::vector<int> o;
    if (s.empty()) return o;
    if (family == "qutrit_ghz" || family == "qutrit_ghz3") {
        if (s == "up") return {0};
        if (s == "diagonal" || s == "diag") return {1};
        if (s == "down") return {2};
        throw UsageError("qutrit outcome must be up, diagonal or down");
    }
    for (char c : s) {
        if (c == '+') o.push_back(0);
        else if (c == '-') o.push_back(1);
        else throw UsageError("controller outcomes are a string of '+' and '-'");
    }
    return o;
}

// ---- figures ----

Table fig_3_1(int n, int th) {
    Table t{{"p", "concurrence", "N", "M"}, {}};
    t.rows = parallel_rows(n, th, [&](int i) {
        double p = lin(0, 1, i, n);
        auto rho = zoo::nmems(p);
        return std::vector<double>{p, concurrence(rho), n_value(rho), m_value(rho)};
    });
    return t;
}

Table fig_werner_mjwk(int n, int th, const std::string& what) {
    Table t;
    if (what == "f") t.header = {"C", "f_werner", "f_mjwk"};
    if (what == "M") t.header = {"C", "M_werner", "f_werner", "M_mjwk", "f_mjwk"};
    if (what == "SL") t.header = {"C", "SL_werner", "f_werner", "SL_mjwk", "f_mjwk"};
    t.rows = parallel_rows(n, th, [&](int i) {
        double C = lin(0, 1, i, n);
        auto w = zoo::werner((1 + C) / 2);
        auto m = zoo::mjwk(C);
        double fw = optimal_fidelity(w, 2), fm = optimal_fidelity(m, 2);
        if (what == "f") return std::vector<double>{C, fw, fm};
        if (what == "M") return std::vector<double>{C, m_value(w), fw, m_value(m), fm};
        return std::vector<double>{C, entropy(w, EntropyKind::linear, 2), fw, entropy(m, EntropyKind::linear, 2), fm};
    });
    return t;
}

Table fig_3_4(int n, int th) {
    Table t{{"t", "F_werner", "M_werner", "f_werner", "gamma_wei", "M_wei", "f_wei"}, {}};
    t.rows = parallel_rows(n, th, [&](int i) {
        double s = lin(0, 1, i, n);
        double F = 0.3 + 0.7 * s, g = 0.8 * s, xy = (0.8 - g) / 2;
        auto w = zoo::werner(F);
        auto e = zoo::wei(xy, xy, 0.1, 0.1, g);
        return std::vector<double>{s, F, m_value(w), optimal_fidelity(w, 2), g, m_value(e), optimal_fidelity(e, 2)};
    });
    return t;
}

Table fig_4_1(int n, int th) {
    Table t{{"d", "entropy_difference"}, {}};
    t.rows = parallel_rows(n, th, [&](int i) {
        double d = 0.5 * (i + 1) / n;
        return std::vector<double>{d, entropy_difference(qutrit_cloned_pair(d).joint)};
    });
    return t;
}

Table fig_4_2(int n, int th) {
    Table t{{"d", "singlet_fraction_distilled", "filter_r"}, {}};
    const double lo = nonoptimal_filter_domain_low();
    t.rows = parallel_rows(n, th, [&](int i) {
        double d = lo + (0.5 - lo) * (i + 1) / n;
        return std::vector<double>{d, singlet_fraction(distilled_nonoptimal(d)), nonoptimal_filter_r(d)};
    });
    return t;
}

Table fig_4_3(int n, int th) {
    Table t{{"d", "chi_undistilled", "chi_distilled"}, {}};
    const double lo = nonoptimal_filter_domain_low();
    t.rows = parallel_rows(n, th, [&](int i) {
        double d = lo + (0.5 - lo) * (i + 1) / n;
        return std::vector<double>{d, dense_coding_capacity(qutrit_cloned_pair(d).joint),
                                   dense_coding_capacity(distilled_nonoptimal(d))};
    });
    return t;
}

CdcReport run_family(const std::string& family, ParamMap params, std::optional<double> theta,
                     std::optional<double> eps = std::nullopt) {
    CdcRequest q;
    q.family = family;
    q.params = std::move(params);
    q.theta = theta;
    q.epsilon = eps;
    return cdc_run(q);
}

Table fig_5_1(int n, int th) {
    Table t{{"theta", "bits_sin_closed", "bits_cos_closed", "bits_simulated"}, {}};
    t.rows = parallel_rows(n, th, [&](int i) {
        double a = lin(0, kPi / 2, i, n);
        bool low = a <= kPi / 4;
        auto r = run_family("ghz_class", {{"i", low ? 1.0 : 2.0}}, a);
        return std::vector<double>{a, 1 + 2 * std::pow(std::sin(a), 2), 1 + 2 * std::pow(std::cos(a), 2),
                                   r.bits_transmitted_avg};
    });
    return t;
}

Table fig_5_23(int n, int th, bool concurrence_cols) {
    Table t;
    t.header = concurrence_cols ? std::vector<std::string>{"theta", "l", "C_closed", "C_simulated"}
                                : std::vector<std::string>{"theta", "l", "success_closed", "success_simulated"};
    t.rows = parallel_rows(n, th, [&](int i) {
        double a = kPi / 4 + (kPi / 4) * i / n;
        double l = 1 / std::tan(a);
        auto r = run_family("pati", {{"l", l}}, std::nullopt);
        auto cf = cdc_closed_form("pati", {{"l", l}}, a);
        if (concurrence_cols) return std::vector<double>{a, l, cf.concurrence, r.concurrence};
        return std::vector<double>{a, l, cf.success_probability, r.success_probability};
    });
    return t;
}

Table fig_5_4(int n, int th) {
    Table t{{"theta", "epsilon", "C1_closed", "C1_simulated", "concurrence_normalized"}, {}};
    t.rows = parallel_rows(n * n, th, [&](int k) {
        int i = k / n, j = k % n;
        double a = lin(0, kPi / 4, i, n), e = (kPi / 2) * j / n;
        auto r = run_family("ghz4", {}, a, e);
        return std::vector<double>{a, e, cdc_closed_form("ghz4", {}, a, e).concurrence, r.raw_concurrence, r.concurrence};
    });
    return t;
}

Table fig_5_5(int n, int th) {
    Table t{{"theta", "C2_closed", "C2_simulated", "concurrence_normalized"}, {}};
    t.rows = parallel_rows(n, th, [&](int i) {
        double a = lin(kPi / 4, kPi / 2, i, n);
        auto r = run_family("w3", {}, a);
        return std::vector<double>{a, cdc_closed_form("w3", {}, a).concurrence, r.raw_concurrence, r.concurrence};
    });
    return t;
}

Table fig_5_6(int n, int th) {
    Table t{{"theta", "epsilon", "C3_closed", "C3_simulated", "concurrence_normalized"}, {}};
    t.rows = parallel_rows(n * n, th, [&](int k) {
        int i = k / n, j = k % n;
        double a = kPi / 4 + (kPi / 4) * i / n, e = kPi / 4 + (kPi / 4) * j / n;
        auto r = run_family("w4", {}, a, e);
        return std::vector<double>{a, e, cdc_closed_form("w4", {}, a, e).concurrence, r.raw_concurrence, r.concurrence};
    });
    return t;
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    std::string s = buf;
    if (s == "-0") s = "0";
    return s;
}

std::string to_csv(const Table& t) {
    std::string s;
    for (size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + t.header[i];
    s += "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_number(row[i]);
        s += "\n";
    }
    return s;
}

Table parse_csv(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw UsageError("csv: empty input");
    t.header = split(line, ',');
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        for (const auto& cell : split(line, ',')) row.push_back(cell == "nan" ? std::nan("") : parse_double(cell, "csv"));
        if (row.size() != t.header.size()) throw UsageError("csv: row width does not match header");
        t.rows.push_back(row);
    }
    return t;
}

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"3.1", "3.2", "3.3", "3.4", "3.5", "4.1", "4.2",
                                                 "4.3", "5.1", "5.2", "5.3", "5.4", "5.5", "5.6"};
    return ids;
}

Table figure_table(const std::string& id, int steps, int threads) {
    if (steps != 0 && steps < 2) throw UsageError("figure: --steps must be at least 2");
    const bool surface = id == "5.4" || id == "5.6";
    const int n = steps > 0 ? steps : (surface ? 21 : 101);
    if (id == "3.1") return fig_3_1(n, threads);
    if (id == "3.2") return fig_werner_mjwk(n, threads, "f");
    if (id == "3.3") return fig_werner_mjwk(n, threads, "M");
    if (id == "3.4") return fig_3_4(n, threads);
    if (id == "3.5") return fig_werner_mjwk(n, threads, "SL");
    if (id == "4.1") return fig_4_1(n, threads);
    if (id == "4.2") return fig_4_2(n, threads);
    if (id == "4.3") return fig_4_3(n, threads);
    if (id == "5.1") return fig_5_1(n, threads);
    if (id == "5.2") return fig_5_23(n, threads, false);
    if (id == "5.3") return fig_5_23(n, threads, true);
    if (id == "5.4") return fig_5_4(n, threads);
    if (id == "5.5") return fig_5_5(n, threads);
    if (id == "5.6") return fig_5_6(n, threads);
    throw UsageError("unknown figure id '" + id + "'");
}

StateSpec parse_state_spec(const std::string& spec) {
    StateSpec s;
    auto colon = spec.find(':');
    s.family = spec.substr(0, colon);
    if (s.family.empty()) throw UsageError("state spec: missing family name");
    if (!zoo::is_pure_family(s.family) && !zoo::is_mixed_family(s.family))
        throw UsageError("state spec: unknown family '" + s.family + "'");
    if (colon == std::string::npos) return s;
    for (const auto& item : split(spec.substr(colon + 1), ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            const char* key = default_key(s.family);
            if (!key) throw UsageError("state spec: family '" + s.family + "' needs key=value parameters");
            if (s.params.count(key)) throw UsageError("state spec: parameter '" + std::string(key) + "' given twice");
            s.params[key] = parse_double(item, "state spec");
        } else {
            s.params[item.substr(0, eq)] = parse_double(item.substr(eq + 1), "state spec");
        }
    }
    return s;
}

DensityMatrix load_state(const StateSpec& spec) {
    try {
        if (zoo::is_mixed_family(spec.family)) return zoo::make_mixed(spec.family, spec.params);
        return DensityMatrix(zoo::make_pure(spec.family, spec.params));
    } catch (const DomainError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

DensityMatrix load_matrix_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("matrix file: ") + e.what());
    }
    Dims dims;
    nlohmann::json rows = j;
    if (j.is_object()) {
        if (!j.contains("matrix")) throw UsageError("matrix file: missing 'matrix'");
        rows = j["matrix"];
        if (j.contains("dims")) dims = j["dims"].get<Dims>();
    }
    if (!rows.is_array() || rows.empty()) throw UsageError("matrix file: matrix must be a non-empty array of rows");
    const int n = static_cast<int>(rows.size());
    Mat m(n, n);
    for (int i = 0; i < n; ++i) {
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) throw UsageError("matrix file: matrix must be square");
        for (int k = 0; k < n; ++k) {
            const auto& c = rows[i][k];
            if (c.is_number()) m(i, k) = c.get<double>();
            else if (c.is_array() && c.size() == 2) m(i, k) = cplx(c[0].get<double>(), c[1].get<double>());
            else throw UsageError("matrix file: entries are numbers or [re, im] pairs");
        }
    }
    if (dims.empty()) {
        if (n == 4) dims = {2, 2};
        else if (n == 9) dims = {3, 3};
        else dims = {n};
    }
    if (dim_product(dims) != n) throw UsageError("matrix file: dims do not multiply to the matrix size");
    return DensityMatrix(dims, m);
}

const std::vector<std::string>& measure_kinds() {
    static const std::vector<std::string> k = {"concurrence", "negativity", "tangle", "eof", "entropy", "linear_entropy",
                                               "purity", "singlet_fraction", "n", "m", "fidelity_opt", "chsh_max",
                                               "entanglement_entropy", "dense_coding_capacity", "peres_horodecki"};
    return k;
}

double measure(const DensityMatrix& rho, const std::string& kind, double base) {
    if (kind == "concurrence") return concurrence(rho);
    if (kind == "negativity") return negativity(rho);
    if (kind == "tangle") return tangle(rho);
    if (kind == "eof") return entanglement_of_formation(rho);
    if (kind == "entropy") return entropy(rho, EntropyKind::von_neumann, base);
    if (kind == "linear_entropy") return entropy(rho, EntropyKind::linear, base);
    if (kind == "purity") return std::real((rho.matrix() * rho.matrix()).trace());
    if (kind == "singlet_fraction") return singlet_fraction(rho);
    if (kind == "n") return n_value(rho);
    if (kind == "m") return m_value(rho);
    if (kind == "fidelity_opt") return optimal_fidelity(rho, rho.dims()[0]);
    if (kind == "chsh_max") return chsh_supremum(rho);
    if (kind == "entanglement_entropy") {
        if (rho.parties() != 2) throw DomainError("entanglement_entropy: expects a bipartite state");
        if (std::abs(std::real((rho.matrix() * rho.matrix()).trace()) - 1) > tol::norm)
            throw DomainError("entanglement_entropy: state is not pure");
        return von_neumann_bits(partial_trace(rho.matrix(), rho.dims(), {0}));
    }
    if (kind == "dense_coding_capacity") return dense_coding_capacity(rho);
    if (kind == "peres_horodecki") return peres_horodecki(rho).entangled ? 1 : 0;
    throw UsageError("unknown measure kind '" + kind + "'");
}

Table sweep_table(const std::string& family, const std::string& key, double from, double to, int steps,
                  const ParamMap& fixed, int threads) {
    if (!zoo::is_mixed_family(family)) throw UsageError("sweep: '" + family + "' is not a mixed two-qubit family");
    if (steps < 2) throw UsageError("sweep: --steps must be at least 2");
    std::vector<ParamMap> grid;
    for (int i = 0; i < steps; ++i) {
        ParamMap p = fixed;
        p[key] = lin(from, to, i, steps);
        grid.push_back(p);
    }
    // analyze_family sorts by parameters; evaluate in parallel through it per point
    auto rows = parallel_rows(steps, threads, [&](int i) {
        auto fr = analyze_family(family, {grid[i]});
        const auto& r = fr[0].report;
        return std::vector<double>{grid[i].at(key), r.concurrence, r.n_value, r.m_value, r.singlet_fraction,
                                   r.fidelity_opt, fr[0].fidelity_closed, fr[0].m_closed, r.linear_entropy};
    });
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
    return {{key, "concurrence", "N", "M", "singlet_fraction", "fidelity_opt", "fidelity_closed", "M_closed", "linear_entropy"},
            rows};
}

std::string cdc_transcript(const CdcReport& r, const CdcRequest& req) {
    ojson j;
    j["protocol"] = "cdc";
    j["family"] = r.family;
    for (const auto& [k, v] : req.params) j["param_" + k] = num(v);
    j["theta"] = num(r.theta);
    j["epsilon"] = r.epsilon ? num(*r.epsilon) : ojson(nullptr);
    j["controller_outcome"] = r.controller_outcome;
    j["controller_probability"] = num(r.controller_probability);
    j["unitary"] = r.unitary;
    j["attenuation"] = num(r.attenuation);
    j["unitary_error"] = num(r.unitary_error);
    j["aux_outcome"] = 0;
    j["aux_probability"] = num(r.aux_probability);
    j["controlled_concurrence"] = num(r.controlled_concurrence);
    j["concurrence"] = num(r.concurrence);
    j["raw_concurrence"] = num(r.raw_concurrence);
    j["entanglement_bits"] = num(r.entanglement);
    j["success_probability"] = num(r.success_probability);
    j["bits_transmitted_avg"] = num(r.bits_transmitted_avg);
    j["maximally_entangled"] = r.maximally_entangled;
    if (r.family != "qutrit_ghz") {
        try {
            auto cf = cdc_closed_form(r.family, req.params, r.theta, r.epsilon.value_or(0));
            j["closed_form_concurrence"] = num(cf.concurrence);
            j["closed_form_success"] = num(cf.success_probability);
            j["closed_form_bits"] = num(cf.bits);
        } catch (const std::exception&) {
        }
    }
    j["shared_dims"] = r.shared_dims;
    j["shared_state"] = vec_json(r.shared_state);
    return j.dump(2) + "\n";
}

std::string secret_share_transcript(const SecretShareReport& r, const WitnessChecks* w) {
    ojson j;
    j["protocol"] = "secret-share";
    j["c2"] = num(r.c2);
    j["Q"] = num(r.Q);
    j["charlie_bit"] = r.charlie_bit;
    j["alice_outcome"] = r.alice_outcome ? "-" : "+";
    j["tr_E1_rho"] = num(r.povm[0]);
    j["tr_E2_rho"] = num(r.povm[1]);
    j["tr_E3_rho"] = num(r.povm[2]);
    j["success_probability"] = num(r.success_probability);
    for (int i = 0; i < 3; ++i) {
        j["E" + std::to_string(i + 1) + "_hermitian"] = r.probe.hermitian[i];
        j["E" + std::to_string(i + 1) + "_positive"] = r.probe.positive[i];
    }
    if (w) {
        j["lambda1_input_concurrence"] = num(w->input_concurrence);
        j["critical_concurrence"] = num(w->critical_concurrence);
        j["witness_w1"] = num(w->w1);
        j["witness_w2"] = num(w->w2);
        j["nonlocal_concurrence"] = num(w->nonlocal_concurrence);
        j["nonlocal_entangled"] = w->entangled;
    }
    j["bob_state"] = mat_json(r.bob_state);
    j["channel"] = mat_json(r.channel);
    return j.dump(2) + "\n";
}

std::string montecarlo_json(const MonteCarloSummary& m, std::uint64_t seed) {
    ojson j;
    j["trials"] = m.trials;
    j["seed"] = seed;
    j["chains"] = kMonteCarloChains;
    ojson counts = ojson::object(), freq = ojson::object();
    for (const auto& [label, c] : m.counts) {
        counts[label] = c;
        freq[label] = num(double(c) / double(m.trials));
    }
    j["counts"] = counts;
    j["frequencies"] = freq;
    j["mean_bits"] = num(m.mean_bits);
    j["exact_bits"] = num(m.exact_bits);
    j["success_rate"] = num(m.success_rate);
    j["exact_success"] = num(m.exact_success);
    return j.dump(2) + "\n";
}

int threads_from_env() {
    if (const char* s = std::getenv("ENTKIT_THREADS")) {
        int v = std::atoi(s);
        if (v >= 1) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"entanglement toolkit"};
    app.require_subcommand(1);

    std::string state, matrix_path, kind, out_path;
    std::string base_s = "2";
    auto* measure_cmd = app.add_subcommand("measure", "evaluate an entanglement measure");
    auto* state_opt = measure_cmd->add_option("--state", state, "family:key=value,...");
    auto* matrix_opt = measure_cmd->add_option("--matrix", matrix_path, "JSON file with a density matrix");
    state_opt->excludes(matrix_opt);
    measure_cmd->add_option("--kind", kind)->required();
    measure_cmd->add_option("--base", base_s, "logarithm base for entropies");

    std::string fig_id, steps_s = "0";
    auto* figure_cmd = app.add_subcommand("figure", "write a figure's data as CSV");
    figure_cmd->add_option("id", fig_id)->required();
    figure_cmd->add_option("--out", out_path);
    figure_cmd->add_option("--steps", steps_s);

    std::string sw_family, sw_key, sw_from, sw_to;
    std::vector<std::string> sw_fixed;
    auto* sweep_cmd = app.add_subcommand("sweep", "analyze a mixed family over one parameter");
    sweep_cmd->add_option("--family", sw_family)->required();
    sweep_cmd->add_option("--param", sw_key)->required();
    sweep_cmd->add_option("--from", sw_from)->required();
    sweep_cmd->add_option("--to", sw_to)->required();
    sweep_cmd->add_option("--steps", steps_s);
    sweep_cmd->add_option("--fixed", sw_fixed, "other parameters, key=value");
    sweep_cmd->add_option("--out", out_path);

    auto* protocol_cmd = app.add_subcommand("protocol", "run a protocol simulation");
    protocol_cmd->require_subcommand(1);
    std::string family, theta_s, eps_s, outcome_s, mc_s, seed_s = "1";
    std::vector<std::string> fparams;
    auto* cdc_cmd = protocol_cmd->add_subcommand("cdc", "controlled dense coding");
    cdc_cmd->add_option("--family", family)->required();
    cdc_cmd->add_option("--param", fparams, "family parameters, key=value");
    cdc_cmd->add_option("--theta", theta_s);
    cdc_cmd->add_option("--epsilon", eps_s);
    cdc_cmd->add_option("--outcome", outcome_s, "controller outcomes, e.g. + or +- or up");
    cdc_cmd->add_option("--montecarlo", mc_s);
    cdc_cmd->add_option("--seed", seed_s);
    cdc_cmd->add_option("--out", out_path);

    std::string c2_s, bit_s = "0", alice_s = "+", lambda_s;
    auto* ss_cmd = protocol_cmd->add_subcommand("secret-share", "cloning-based secret sharing");
    ss_cmd->add_option("--c2", c2_s)->required();
    ss_cmd->add_option("--bit", bit_s);
    ss_cmd->add_option("--alice", alice_s);
    ss_cmd->add_option("--lambda1", lambda_s);
    ss_cmd->add_option("--montecarlo", mc_s);
    ss_cmd->add_option("--seed", seed_s);
    ss_cmd->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    auto parse_count = [](const std::string& s, const char* what) -> std::uint64_t {
        double v = parse_double(s, what);
        if (v < 0 || v != std::floor(v)) throw UsageError(std::string(what) + " must be a non-negative integer");
        return static_cast<std::uint64_t>(v);
    };

    try {
        const int threads = threads_from_env();
        if (measure_cmd->parsed()) {
            if (state.empty() == matrix_path.empty()) throw UsageError("measure: give exactly one of --state or --matrix");
            std::optional<DensityMatrix> rho;
            if (!state.empty()) {
                rho.emplace(load_state(parse_state_spec(state)));
            } else {
                std::ifstream f(matrix_path);
                if (!f) throw UsageError("cannot read '" + matrix_path + "'");
                std::stringstream ss;
                ss << f.rdbuf();
                rho.emplace(load_matrix_json(ss.str()));
            }
            if (std::find(measure_kinds().begin(), measure_kinds().end(), kind) == measure_kinds().end())
                throw UsageError("unknown measure kind '" + kind + "'");
            out << format_number(measure(*rho, kind, parse_double(base_s, "--base"))) << "\n";
            return 0;
        }
        if (figure_cmd->parsed()) {
            int steps = static_cast<int>(parse_count(steps_s, "--steps"));
            write_output(to_csv(figure_table(fig_id, steps, threads)), out_path, out);
            return 0;
        }
        if (sweep_cmd->parsed()) {
            int steps = static_cast<int>(parse_count(steps_s, "--steps"));
            if (steps == 0) steps = 101;
            auto t = sweep_table(sw_family, sw_key, parse_double(sw_from, "--from"), parse_double(sw_to, "--to"), steps,
                                 parse_pairs(sw_fixed, "--fixed"), threads);
            write_output(to_csv(t), out_path, out);
            return 0;
        }
        if (cdc_cmd->parsed()) {
            CdcRequest req;
            req.family = family;
            req.params = parse_pairs(fparams, "--param");
            if (!theta_s.empty()) req.theta = parse_double(theta_s, "--theta");
            if (!eps_s.empty()) req.epsilon = parse_double(eps_s, "--epsilon");
            req.outcomes = parse_outcomes(outcome_s, family);
            std::string text;
            try {
                auto r = cdc_run(req);
                text = cdc_transcript(r, req);
                if (!mc_s.empty()) {
                    auto seed = parse_count(seed_s, "--seed");
                    auto m = cdc_montecarlo(req, parse_count(mc_s, "--montecarlo"), seed, threads);
                    auto j = ojson::parse(text);
                    j["montecarlo"] = ojson::parse(montecarlo_json(m, seed));
                    text = j.dump(2) + "\n";
                }
            } catch (const DomainError&) {
                throw;
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            write_output(text, out_path, out);
            return 0;
        }
        if (ss_cmd->parsed()) {
            const double c2 = parse_double(c2_s, "--c2");
            int bit = static_cast<int>(parse_count(bit_s, "--bit"));
            if (bit > 1) throw UsageError("--bit must be 0 or 1");
            if (alice_s != "+" && alice_s != "-") throw UsageError("--alice must be + or -");
            auto r = secret_share_run(c2, bit, alice_s == "+" ? 0 : 1);
            std::optional<WitnessChecks> w;
            if (!lambda_s.empty()) w = secret_share_witness_checks(c2, parse_double(lambda_s, "--lambda1"));
            std::string text = secret_share_transcript(r, w ? &*w : nullptr);
            if (!mc_s.empty()) {
                auto seed = parse_count(seed_s, "--seed");
                auto m = secret_share_montecarlo(c2, parse_count(mc_s, "--montecarlo"), seed, threads);
                auto j = ojson::parse(text);
                j["montecarlo"] = ojson::parse(montecarlo_json(m, seed));
                text = j.dump(2) + "\n";
            }
            write_output(text, out_path, out);
            return 0;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace entkit::cli
