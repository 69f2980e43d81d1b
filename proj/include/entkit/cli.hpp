#pragma once

#include "entkit/protocols.hpp"
#include "entkit/qcore.hpp"
#include "entkit/statezoo.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace entkit::cli {

// bad flags, unknown names, malformed specs; exit code 2
struct UsageError : std::invalid_argument {
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

std::string format_number(double x);   // 12 significant digits
std::string to_csv(const Table& t);
Table parse_csv(const std::string& text);

const std::vector<std::string>& figure_ids();
// steps <= 0 picks the figure's default grid
Table figure_table(const std::string& id, int steps = 0, int threads = 1);

struct StateSpec {
    std::string family;
    ParamMap params;
};
// "family:key=value,..." with a bare value allowed for one-parameter families
StateSpec parse_state_spec(const std::string& spec);
DensityMatrix load_state(const StateSpec& spec);
// JSON: [[[re, im], ...], ...] or {"dims": [...], "matrix": [[[re, im], ...], ...]}
DensityMatrix load_matrix_json(const std::string& text);

const std::vector<std::string>& measure_kinds();
double measure(const DensityMatrix& rho, const std::string& kind, double base = 2);

// parameter sweep over one key of a mixed family
Table sweep_table(const std::string& family, const std::string& key, double from, double to, int steps,
                  const ParamMap& fixed, int threads = 1);

std::string cdc_transcript(const CdcReport& r, const CdcRequest& req);
std::string secret_share_transcript(const SecretShareReport& r, const WitnessChecks* w);
std::string montecarlo_json(const MonteCarloSummary& m, std::uint64_t seed);

int threads_from_env();
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace entkit::cli
