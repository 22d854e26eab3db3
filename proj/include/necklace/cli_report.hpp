#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "necklace/bundle_search.hpp"

namespace necklace::report {

using bundle::BundleCertificate;

enum class Format { Json, Csv };

// Parsed command line.  check/trace/verify need (k, m, n); search needs
// n_max.  samples = 0 means the per-triple default of 16n.
struct CommandConfig {
    std::string subcommand;  // check | search | trace | verify
    std::optional<long> k, m, n;
    std::optional<long> n_max;
    long precision_bits = 128;
    long samples = 0;
    Format output_format = Format::Json;
    std::optional<std::string> output_path;
    int workers = 1;
    bool with_oracle = false;
    std::optional<std::string> ratio_filter;  // "p/q", search only
};

// One certificate as a JSON object string with the fixed key order
// k, m, n, feasible, certified, x1, x2, inequalities, ppt_ok, eP,
// chi_orbifold, eM, chi_manifold, genus, ratio, oracle_euler.  x1 and x2 are
// {"decimal", "+/-"} objects; inequalities is an array of
// {"i", "lower_bound", "verdict"}; absent integers are null.
std::string certificate_json(const BundleCertificate& cert, long bits);

// CSV with one row per certificate, columns in the JSON key order; the
// inequalities cell packs "id=verdict" pairs separated by spaces.
std::string csv_header();
std::string certificate_csv_row(const BundleCertificate& cert, long bits);

std::string serialize_certificates(const std::vector<BundleCertificate>& certs, Format format,
                                   long bits);

// The full cross-check battery for one triple, one line per identity written
// to log: parameter validity, the solved system, region membership, unit
// normals, r^n = 1, closed Gram form vs the matrix form, right angles with
// the squared composed reflections equal to one (materialized matrices, no
// shortcut), the twisted-rotation action on p_0 and p_1, projective fixed
// point, trace decomposition, the rotation cosine landing on c_k, the Euler
// count against m - k, the double-precision angle tracker, and the string
// closure residual at the solution.
struct VerifyOutcome {
    bool ok = true;
    long checks_run = 0;
    long checks_failed = 0;
};
VerifyOutcome verify_triple(long k, long m, long n, std::ostream& log);

// Entry point behind main: returns the process exit status (0 success or
// infeasible, 2 usage/domain error, 3 uncertified).
int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

} // namespace necklace::report
