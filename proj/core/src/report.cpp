#include "sdgreen/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace sdgreen {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

nlohmann::json check_json(const CheckReport& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["n"] = r.n;
    j["epsilon"] = r.epsilon;
    j["x_star"] = {r.x_star.x, r.x_star.y};
    j["k"] = r.k;
    j["c_star"] = r.c_star;
    j["left"] = r.left;
    j["right"] = r.right;
    j["ratio"] = r.ratio;
    if (r.has_pass) j["passed"] = r.passed;
    if (!r.note.empty()) j["note"] = r.note;
    for (const auto& [key, val] : r.extra) j[key] = val;
    return j;
}

nlohmann::json ksearch_json(const KSearchResult& ks) {
    nlohmann::json j;
    j["min_k_lemma1"] = ks.lemma1_found ? nlohmann::json(ks.min_k_lemma1) : nlohmann::json();
    j["min_k_lemma3"] = ks.lemma3_found ? nlohmann::json(ks.min_k_lemma3) : nlohmann::json();
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : ks.rows) {
        rows.push_back({{"k", row.k},
                        {"lemma1_pass", row.lemma1_pass},
                        {"lemma1_left", row.lemma1_left},
                        {"lemma1_right", row.lemma1_right},
                        {"lemma3_pass", row.lemma3_pass},
                        {"lemma3_left", row.lemma3_left},
                        {"lemma3_right", row.lemma3_right}});
    }
    j["rows"] = std::move(rows);
    return j;
}

}  // namespace

std::string NormReport::to_json() const {
    nlohmann::json j;
    j["version"] = version;
    j["seed"] = seed;
    j["params"] = {{"n", cfg.n},           {"epsilon", cfg.epsilon},
                   {"b1", cfg.b1},         {"b2", cfg.b2},
                   {"c", cfg.c},           {"c_star", cfg.effective_c_star()},
                   {"rho", cfg.rho},       {"k", cfg.k},
                   {"big_k", cfg.big_k}};
    j["x_star"] = {{"selector", xstar_selector},
                   {"i", star_i},
                   {"j", star_j},
                   {"x", x_star.x},
                   {"y", x_star.y},
                   {"region", xstar_region}};
    j["status"] = status;
    j["sd_norm"] = sd_norm_g;
    j["weighted_norm"] = {{"norm", weighted.norm},
                          {"eps_beta", weighted.eps_beta},
                          {"eps_eta", weighted.eps_eta},
                          {"convection", weighted.convection},
                          {"reaction", weighted.reaction},
                          {"stabilization", weighted.stabilization}};
    j["weighted_norm_regions"] = {{"S", wnorm_region[0]},
                                  {"X", wnorm_region[1]},
                                  {"Y", wnorm_region[2]},
                                  {"XY", wnorm_region[3]}};
    j["omega0"] = {{"measure", omega0_measure}, {"ratio", omega0_ratio}};
    j["solve_residual"] = solve_residual;
    j["checks"] = {check_json(identity), check_json(coercivity), check_json(lemma1),
                   check_json(lemma2), check_json(lemma3)};
    j["ksearch"] = ksearch_json(ksearch);
    j["theorem"] = {{"hard_pass", theorem_hard_pass}, {"r_n", r_n}};
    j["sigma"] = {{"beta", sigma_beta},
                  {"eta", sigma_eta},
                  {"beta_alt_min", sigma_beta_alt_min},
                  {"eta_alt_min", sigma_eta_alt_min}};
    return j.dump(2);
}

std::string NormReport::csv_header() {
    return "version,seed,N,eps,b1,b2,c,cstar,rho,k,big_k,xstar,xstar_i,xstar_j,xstar_x,xstar_y,"
           "xstar_region,status,sd_norm,wnorm,wnorm_S,wnorm_X,wnorm_Y,wnorm_XY,omega0_measure,"
           "omega0_ratio,identity_err,identity_tol,coercivity_min_ratio,residual,"
           "lemma1_left,lemma1_right,lemma1_pass,lemma1_min_k,lemma2_branch,lemma2_value,"
           "lemma2_bound_term,lemma2_C,lemma3_left,lemma3_right,lemma3_pass,lemma3_min_k,"
           "theorem_hard_pass,r_N";
}

std::string NormReport::csv_row() const {
    std::ostringstream os;
    // lemma2 branch: S uses N^2 sigma_beta, X/Y use N ln N, XY is excluded
    const char* lemma2_branch = xstar_region == "S"    ? "S"
                                : xstar_region == "XY" ? "skipped"
                                                       : "XuY";
    os << version << ',' << seed << ',' << cfg.n << ',' << fmt_g17(cfg.epsilon) << ','
       << fmt_g17(cfg.b1) << ',' << fmt_g17(cfg.b2) << ',' << fmt_g17(cfg.c) << ','
       << fmt_g17(cfg.effective_c_star()) << ',' << fmt_g17(cfg.rho) << ',' << fmt_g17(cfg.k)
       << ',' << fmt_g17(cfg.big_k) << ',' << xstar_selector << ',' << star_i << ',' << star_j
       << ',' << fmt_g17(x_star.x) << ',' << fmt_g17(x_star.y) << ',' << xstar_region << ','
       << status << ',' << fmt_g17(sd_norm_g) << ',' << fmt_g17(weighted.norm) << ','
       << fmt_g17(wnorm_region[0]) << ',' << fmt_g17(wnorm_region[1]) << ','
       << fmt_g17(wnorm_region[2]) << ',' << fmt_g17(wnorm_region[3]) << ','
       << fmt_g17(omega0_measure) << ',' << fmt_g17(omega0_ratio) << ','
       << fmt_g17(identity.left) << ',' << fmt_g17(identity.right) << ','
       << fmt_g17(coercivity.ratio) << ',' << fmt_g17(solve_residual) << ','
       << fmt_g17(lemma1.left) << ',' << fmt_g17(lemma1.right) << ','
       << (lemma1.passed ? 1 : 0) << ','
       << (ksearch.lemma1_found ? fmt_g17(ksearch.min_k_lemma1) : "none") << ','
       << lemma2_branch << ',' << fmt_g17(lemma2.left) << ',' << fmt_g17(lemma2.right) << ','
       << fmt_g17(lemma2.ratio) << ',' << fmt_g17(lemma3.left) << ',' << fmt_g17(lemma3.right)
       << ',' << (lemma3.passed ? 1 : 0) << ','
       << (ksearch.lemma3_found ? fmt_g17(ksearch.min_k_lemma3) : "none") << ','
       << (theorem_hard_pass ? 1 : 0) << ',' << fmt_g17(r_n);
    return os.str();
}

std::string check_report_to_json(const CheckReport& r) { return check_json(r).dump(2); }

std::string check_reports_to_json(const std::vector<CheckReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckReport& r : reports) arr.push_back(check_json(r));
    return arr.dump(2);
}

std::string check_report_csv_header() {
    return "name,N,eps,xstar_x,xstar_y,k,cstar,left,right,ratio,passed,note";
}

std::string check_report_csv_row(const CheckReport& r) {
    std::ostringstream os;
    os << r.name << ',' << r.n << ',' << fmt_g17(r.epsilon) << ',' << fmt_g17(r.x_star.x) << ','
       << fmt_g17(r.x_star.y) << ',' << fmt_g17(r.k) << ',' << fmt_g17(r.c_star) << ','
       << fmt_g17(r.left) << ',' << fmt_g17(r.right) << ',' << fmt_g17(r.ratio) << ','
       << (r.has_pass ? (r.passed ? "1" : "0") : "n/a") << ",\"" << r.note << '"';
    return os.str();
}

}  // namespace sdgreen
