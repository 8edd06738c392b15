#pragma once

// The reproduction suite: every acceptance check, keyed by the fact it
// re-establishes, shared by the CLI front end and the test driver.

#include <cstdint>
#include <string>
#include <vector>

namespace entromat {

struct ReproduceOptions {
    std::uint64_t budget = 1'000'000'000;
    int threads = 1;
    unsigned seed = 0;
};

struct CheckResult {
    int criterion = 0;  // 1..11
    std::string key;    // short lemma-style identifier
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

std::vector<CheckResult> run_reproduction(const ReproduceOptions& opts = {});

}  // namespace entromat
