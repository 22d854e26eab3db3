#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "necklace/necklace.hpp"

namespace necklace::bundle {

using geom::NecklaceConfig;
using scalar_field::CertifiedScalar;
using scalar_field::SignCertificate;

// Everything the pipeline can prove about one parameter triple.  Topological
// quantities that depend on (k, m, n) alone are always filled; eP and the
// manifold Euler number are meaningful only when feasible is true.
struct BundleCertificate {
    long k = 0, m = 0, n = 0;
    CertifiedScalar x1, x2;  // the unique solved parameters for this triple
    bool feasible = false;
    bool uncertified = false;  // some verdict hit the precision cap
    std::string first_failure;  // label of the first failed or undecided check
    std::vector<geom::RegionCheck> inequality_report;
    bool ppt_ok = false;
    std::optional<long> eP;          // orbifold disc-bundle Euler number
    std::optional<long> oracle_euler;  // double-precision angle tracking, on request
    mpq_class chi_orbifold;  // -(n - 4) / 4
    long eM_manifold = 0;    // 4 eP, after the smooth four-fold cover
    long chi_manifold = 0;   // -(n - 4)
    long genus = 0;          // (n - 2) / 2
    mpq_class ratio;         // |eM / chi| = 4 (m - k) / (n - 4), lowest terms
};

// Solves the two-condition linear system for (x1, x2): the adjacent Gram
// coefficient equals one (right angles across the whole necklace) and the
// rotation cosine equals the k-th grid cosine.  The determinant is certified
// strictly negative for every triple in the family, so the solution is unique;
// both back-substitution residuals cancel exactly by construction.
std::pair<CertifiedScalar, CertifiedScalar> solve_system(long k, long m, long n);

// Full pipeline for one triple: solve, certify region membership, certify the
// right-angle battery, identify the fibre rotation, and count the Euler
// number.  with_oracle additionally runs the double-precision angle tracker
// and records its count.  Throws DomainError for parameters outside the
// family and UncertifiedError only for internal inconsistencies; ordinary
// infeasibility and precision-cap outcomes are reported in the certificate.
BundleCertificate certify_bundle(long k, long m, long n, bool with_oracle = false);

// All triples with even n from 8 to n_max, 1 < k < m < n/2, in (n, m, k)
// lexicographic order.  ratio_filter keeps only feasible certificates with
// that exact ratio.  The worker count changes scheduling, never output order
// or content.
std::vector<BundleCertificate> enumerate_bundles(long n_max,
                                                 std::optional<mpq_class> ratio_filter,
                                                 int workers = 1,
                                                 bool with_oracle = false);

} // namespace necklace::bundle
