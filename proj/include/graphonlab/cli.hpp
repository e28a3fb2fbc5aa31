#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace graphonlab::cli {

// Exit codes shared by every subcommand.
enum Exit : int {
    ok = 0,
    failure = 1,        // certification failed or an unexpected error
    parse_error = 2,    // bad arguments, malformed input, invalid experiment spec
    guard = 3,          // resolution guard
    violation = 4,      // upper regularity falsified; certificate written
    dominant = 5,       // a vertex outweighs eta * alpha_G
};

struct Globals {
    std::uint64_t seed = 0;
    unsigned threads = 1;
    double tolerance = 0.0;  // twin-merge tolerance for cut computations
    std::size_t max_classes = 4096;
};

struct ExperimentSpec {
    std::string kind;
    nlohmann::json params = nlohmann::json::object();
    std::vector<std::uint64_t> seeds;
    std::string output_path;

    static ExperimentSpec from_json(const nlohmann::json& j);
    // Throws Error(parse) on unknown kinds or missing keys.
    void validate() const;
};

// Aggregate rows carry "all" in the n or seed column.
struct CsvRow {
    std::string kind;
    std::string n;
    std::string seed;
    std::string metric;
    double value = 0.0;
    bool certified = false;
};

std::vector<CsvRow> run_experiment(const ExperimentSpec& spec, const Globals& g);
// Sorted rows under the header kind,n,seed,metric,value,certified.
std::string to_csv(std::vector<CsvRow> rows);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace graphonlab::cli
