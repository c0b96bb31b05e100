#include "sdgreen/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace sdgreen {

const char* to_string(Region r) {
    switch (r) {
        case Region::S: return "S";
        case Region::X: return "X";
        case Region::Y: return "Y";
        case Region::XY: return "XY";
    }
    return "?";
}

std::pair<double, double> transition_parameters(const ProblemConfig& cfg) {
    cfg.validate();
    const double ln_n = std::log(static_cast<double>(cfg.n));
    const double lx = std::min(0.5, cfg.rho * cfg.epsilon * ln_n / cfg.b1);
    const double ly = std::min(0.5, cfg.rho * cfg.epsilon * ln_n / cfg.b2);
    return {lx, ly};
}

ShishkinMesh build_mesh(const ProblemConfig& cfg) {
    cfg.validate();
    const int n = cfg.n;
    ShishkinMesh m;
    m.n = n;
    std::tie(m.lambda_x, m.lambda_y) = transition_parameters(cfg);
    m.Hx = (1.0 - m.lambda_x) / (n / 2);
    m.hx = m.lambda_x / (n / 2);
    m.Hy = (1.0 - m.lambda_y) / (n / 2);
    m.hy = m.lambda_y / (n / 2);

    m.x.resize(n + 1);
    m.y.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        m.x[i] = i <= n / 2 ? 2.0 * i * (1.0 - m.lambda_x) / n
                            : 1.0 - 2.0 * (n - i) * m.lambda_x / n;
        m.y[i] = i <= n / 2 ? 2.0 * i * (1.0 - m.lambda_y) / n
                            : 1.0 - 2.0 * (n - i) * m.lambda_y / n;
    }
    m.x[0] = 0.0;
    m.x[n] = 1.0;
    m.y[0] = 0.0;
    m.y[n] = 1.0;

    m.triangles.reserve(2 * n * n);
    for (int cj = 0; cj < n; ++cj) {
        for (int ci = 0; ci < n; ++ci) {
            const Region reg = ci < n / 2 ? (cj < n / 2 ? Region::S : Region::Y)
                                          : (cj < n / 2 ? Region::X : Region::XY);
            const int ll = m.node_id(ci, cj);
            const int lr = m.node_id(ci + 1, cj);
            const int ul = m.node_id(ci, cj + 1);
            const int ur = m.node_id(ci + 1, cj + 1);
            m.triangles.push_back({{ll, lr, ul}, TriType::K1, ci, cj, reg});
            m.triangles.push_back({{ul, lr, ur}, TriType::K2, ci, cj, reg});
        }
    }
    return m;
}

Region ShishkinMesh::classify_point(Point p) const {
    if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0)
        throw std::domain_error("point outside the closed unit square");
    const bool fine_x = p.x > 1.0 - lambda_x;
    const bool fine_y = p.y > 1.0 - lambda_y;
    return fine_x ? (fine_y ? Region::XY : Region::X) : (fine_y ? Region::Y : Region::S);
}

namespace {

// Cell index along one axis for a coordinate in [0,1].
int cell_index(double v, double transition, double coarse, double fine, int n) {
    int c;
    if (v <= transition) {
        c = static_cast<int>(v / coarse);
        c = std::clamp(c, 0, n / 2 - 1);
    } else {
        c = n / 2 + static_cast<int>((v - transition) / fine);
        c = std::clamp(c, n / 2, n - 1);
    }
    return c;
}

}  // namespace

ShishkinMesh::Location ShishkinMesh::locate(Point p) const {
    if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0)
        throw std::domain_error("point outside the closed unit square");
    const int ci = cell_index(p.x, 1.0 - lambda_x, Hx, hx, n);
    const int cj = cell_index(p.y, 1.0 - lambda_y, Hy, hy, n);
    const double xi = std::clamp((p.x - x[ci]) / (x[ci + 1] - x[ci]), 0.0, 1.0);
    const double eta = std::clamp((p.y - y[cj]) / (y[cj + 1] - y[cj]), 0.0, 1.0);
    Location loc;
    if (xi + eta <= 1.0) {
        loc.tri = 2 * (cj * n + ci);
        loc.bary = {1.0 - xi - eta, xi, eta};  // vertices LL, LR, UL
    } else {
        loc.tri = 2 * (cj * n + ci) + 1;
        loc.bary = {1.0 - xi, 1.0 - eta, xi + eta - 1.0};  // vertices UL, LR, UR
    }
    return loc;
}

std::array<int, 4> ShishkinMesh::region_cell_counts() const {
    std::array<int, 4> counts{0, 0, 0, 0};
    for (const Triangle& t : triangles)
        if (t.type == TriType::K1) ++counts[static_cast<int>(t.region)];
    return counts;
}

void ShishkinMesh::dump(std::ostream& os) const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d %.17g %.17g\n", n, lambda_x, lambda_y);
    os << buf;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            std::snprintf(buf, sizeof buf, "%d %.17g %.17g\n", node_id(i, j), x[i], y[j]);
            os << buf;
        }
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        const Triangle& tr = triangles[t];
        std::snprintf(buf, sizeof buf, "%zu %d %d %d %s %s\n", t, tr.v[0], tr.v[1], tr.v[2],
                      tr.type == TriType::K1 ? "K1" : "K2", to_string(tr.region));
        os << buf;
    }
}

}  // namespace sdgreen
