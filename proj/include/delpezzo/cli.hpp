#pragma once

#include <string>
#include <vector>

#include "delpezzo/constants.hpp"
#include "delpezzo/error.hpp"
#include "delpezzo/report.hpp"
#include "delpezzo/types.hpp"

namespace delpezzo::cli {

enum class Command { count, verify, constants, densities, zeta, decompose };
enum class Method { naive, oracle, torsor };

struct RunConfig {
    Command command = Command::count;
    u64 bmax = 0;
    Method method = Method::torsor;
    std::vector<u64> grid;
    std::vector<u64> primes;
    unsigned rmax = 3;
    constants::DensityMode mode = constants::DensityMode::lifting;
    u64 prime_cutoff = 1000000;
    double quad_tol = 1e-10;
    unsigned threads = 0;  // 0: available parallelism
    report::Format format = report::Format::csv;
    std::string out;
    bool timestamp = true;
    std::string suite = "all";
    double s = 2.0;
    u64 beta_cutoff = 100;
};

enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailed = 2, kResourceCap = 3 };

class UsageError : public Error {
public:
    using Error::Error;
};

// Thrown for --help; what() holds the usage text.
class HelpRequested : public Error {
public:
    using Error::Error;
};

// Strict parse. threads_env is the value of DELPEZZO_THREADS, if set.
RunConfig parse_args(const std::vector<std::string>& args, const char* threads_env = nullptr);

// Cap on bmax for the method, as enforced by the counters.
u64 method_cap(Method m);

int run(const RunConfig& cfg);

// Parse and run with exit-code mapping; messages go to stderr.
int main_entry(int argc, char** argv);

}  // namespace delpezzo::cli
