#include "coefid/tridiagonal.hpp"

#include <cmath>
#include <sstream>

#include "coefid/errors.hpp"

namespace coefid {

std::vector<double> solve_tridiagonal(const std::vector<double>& sub, const std::vector<double>& diag,
                                      const std::vector<double>& sup, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    require(n >= 1 && sub.size() == n && sup.size() == n && rhs.size() == n, ErrorKind::InvalidArgument,
            "tridiagonal bands must have equal length");
    std::vector<double> c(n, 0.0);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(diag[i]));
    const double tiny = 1e-14 * (scale > 0.0 ? scale : 1.0);

    double pivot = diag[0];
    for (std::size_t i = 0;; ++i) {
        if (!(std::abs(pivot) > tiny)) {
            std::ostringstream os;
            os << "vanishing pivot " << pivot << " in row " << i;
            throw Error(ErrorKind::SingularSystem, os.str());
        }
        c[i] = (i + 1 < n) ? sup[i] / pivot : 0.0;
        rhs[i] /= pivot;
        if (i + 1 == n) break;
        pivot = diag[i + 1] - sub[i + 1] * c[i];
        rhs[i + 1] -= sub[i + 1] * rhs[i];
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
    return rhs;
}

}  // namespace coefid
