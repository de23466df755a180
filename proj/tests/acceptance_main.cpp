// Acceptance suite: every release criterion as one pass/fail line, combining
// the oracle-vs-closed-form property checks with byte-exact CLI golden files.
//
// usage: acceptance_tests <path-to-hodokit-cli> <golden-dir>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hodokit/util.hpp"
#include "hodokit/verify.hpp"

namespace {

std::string run_capture(const std::string& command) {
    std::array<char, 4096> buf;
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        throw std::runtime_error("popen failed for: " + command);
    }
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        out.append(buf.data(), n);
    }
    if (pclose(pipe) != 0) {
        throw std::runtime_error("command failed: " + command);
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct GoldenCase {
    std::string name;
    std::string args;
    std::string golden_file;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: acceptance_tests <hodokit-cli> <golden-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::filesystem::path golden_dir = argv[2];

    using hodokit::format_double;

    int failures = 0;
    auto report = [&](const std::string& name, bool pass, const std::string& detail) {
        std::cout << (pass ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
        failures += pass ? 0 : 1;
    };

    // criteria 1-9: the property suite at its spec tolerances
    const std::vector<hodokit::CheckResult> checks = hodokit::run_verification({});
    const std::array<std::pair<const char*, double>, 9> criteria{{
        {"criterion-01-hodograph-theorem-oracle", 30.0},
        {"criterion-02-claim-closed-form", 1.0},
        {"criterion-03-claim-numeric", 60.0},
        {"criterion-04-canonical-pinned", 300.0},
        {"criterion-05-energy-circle-exclusion", 300.0},
        {"criterion-06-coverage-vs-arc", 300.0},
        {"criterion-07-conservation-monotonicity", 300.0},
        {"criterion-08-orbit-equation", 300.0},
        {"criterion-09-convention-reconciliation", 300.0},
    }};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const hodokit::CheckResult& r = checks.at(i);
        const auto [name, budget] = criteria[i];
        const bool in_budget = r.seconds <= budget;
        std::ostringstream detail;
        detail << "[" << r.name << "] err/tol " << format_double(r.worst) << ", "
               << format_double(r.seconds) << " s (budget " << format_double(budget) << " s); "
               << r.detail;
        report(name, r.pass && in_budget, detail.str());
    }

    // criterion 10: CLI outputs byte-match the checked-in goldens
    const std::vector<GoldenCase> goldens{
        {"analyze", " analyze --m 1 --k 1 --x 1,0,0 --v 0,2,0", "analyze_canonical.json"},
        {"scatter", " scatter --m 1 --k 1 --h 1 --j 2", "scatter_canonical.json"},
        {"batch", " batch-scatter --h-grid 0.5:1:2 --j-grid 1:2:2", "batch_canonical.csv"},
    };
    bool golden_ok = true;
    std::ostringstream golden_detail;
    for (const GoldenCase& g : goldens) {
        const std::string got = run_capture(cli + g.args);
        const std::string want = read_file(golden_dir / g.golden_file);
        if (got != want) {
            golden_ok = false;
            golden_detail << g.name << " output differs from " << g.golden_file << "; ";
        }
    }
    report("criterion-10-cli-goldens", golden_ok,
           golden_ok ? "analyze/scatter/batch byte-match the goldens" : golden_detail.str());

    if (failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << failures << " criteria FAILED\n";
    return 1;
}
