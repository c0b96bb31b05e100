#pragma once
#include <string>
#include <vector>

#include "sdgreen/diagnostics.hpp"

namespace sdgreen {

/// %.17g formatting used for every number written to CSV/TSV outputs, so
/// files round-trip doubles exactly and runs are byte-comparable.
std::string fmt_g17(double v);

/// Everything measured for one (N, eps, x*) point: norms, restrictions,
/// influence-subdomain cover, and the inequality checks.
struct NormReport {
    // provenance
    std::string version;
    std::uint64_t seed = 0;
    ProblemConfig cfg;
    std::string xstar_selector;
    int star_i = 0, star_j = 0;
    Point x_star{};
    std::string xstar_region;

    std::string status = "ok";  // or "error: ..."

    double sd_norm_g = 0.0;
    WeightedNormParts weighted;
    double wnorm_region[4] = {0.0, 0.0, 0.0, 0.0};  // S, X, Y, XY restrictions

    double omega0_measure = 0.0;
    double omega0_ratio = 0.0;  // measure / (sigma_eta ln N)

    double solve_residual = 0.0;

    CheckReport identity;
    CheckReport coercivity;
    CheckReport lemma1;
    CheckReport lemma2;
    CheckReport lemma3;
    KSearchResult ksearch;

    bool theorem_hard_pass = false;  // |||G||| <= sqrt(8) |||G|||_w + 1e-10
    double r_n = 0.0;                // |||G|||_w / sqrt(N ln N)

    // weight-scale hypothesis bookkeeping: the values in use and the
    // alternative lower bounds appearing in the coercivity-side lemma
    double sigma_beta = 0.0, sigma_eta = 0.0;
    double sigma_beta_alt_min = 0.0;  // k / N
    double sigma_eta_alt_min = 0.0;   // k sqrt(eps)

    std::string to_json() const;
    static std::string csv_header();
    std::string csv_row() const;
};

std::string check_report_to_json(const CheckReport& r);
std::string check_reports_to_json(const std::vector<CheckReport>& reports);
std::string check_report_csv_header();
std::string check_report_csv_row(const CheckReport& r);

}  // namespace sdgreen
