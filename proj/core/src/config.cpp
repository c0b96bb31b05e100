#include "sdgreen/config.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sdgreen {

void ProblemConfig::validate() const {
    std::ostringstream err;
    if (!(epsilon > 0.0)) err << "epsilon must be positive (got " << epsilon << "); ";
    if (!(b1 > 0.0)) err << "b1 must be positive (got " << b1 << "); ";
    if (!(b2 > 0.0)) err << "b2 must be positive (got " << b2 << "); ";
    if (!(c > 0.0)) err << "c must be positive (got " << c << "); ";
    if (n < 4) err << "N must be >= 4 (got " << n << "); ";
    if (n % 2 != 0) err << "N must be even (got " << n << "); ";
    if (!(rho > 0.0)) err << "rho must be positive (got " << rho << "); ";
    if (c_star && !(*c_star >= 0.0)) err << "C* must be nonnegative (got " << *c_star << "); ";
    if (!(k > 0.0)) err << "k must be positive (got " << k << "); ";
    if (!(big_k > 0.0)) err << "K must be positive (got " << big_k << "); ";
    const std::string msg = err.str();
    if (!msg.empty()) throw std::invalid_argument("invalid configuration: " + msg);
}

std::vector<std::string> ProblemConfig::warnings() const {
    std::vector<std::string> w;
    if (epsilon > 1.0 / n) {
        std::ostringstream os;
        os << "epsilon = " << epsilon << " exceeds 1/N = " << 1.0 / n
           << "; transition parameters clamp at 1/2 and the mesh degenerates to uniform";
        w.push_back(os.str());
    }
    return w;
}

}  // namespace sdgreen
