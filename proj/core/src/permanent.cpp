#include <array>
#include <bit>
#include <cstdint>

#include "biphoton/error.hpp"
#include "biphoton/focksim.hpp"
#include "permanent_impl.hpp"

namespace biphoton {

namespace detail {

std::complex<double> ryser(const std::complex<double>* a, int n) {
    using cd = std::complex<double>;
    if (n == 0) return 1.0;
    if (n == 1) return a[0];
    if (n == 2) return a[0] * a[3] + a[1] * a[2];
    std::array<cd, kMaxPermanentSize> row{};
    cd total = 0.0;
    std::uint32_t gray = 0;
    const std::uint32_t subsets = 1u << n;
    for (std::uint32_t k = 1; k < subsets; ++k) {
        const int j = std::countr_zero(k);
        const std::uint32_t bit = 1u << j;
        gray ^= bit;
        const cd* col = a + static_cast<std::ptrdiff_t>(j) * n;
        if (gray & bit)
            for (int i = 0; i < n; ++i) row[i] += col[i];
        else
            for (int i = 0; i < n; ++i) row[i] -= col[i];
        cd prod = row[0];
        for (int i = 1; i < n; ++i) prod *= row[i];
        if (std::popcount(gray) % 2 == 0)
            total += prod;
        else
            total -= prod;
    }
    return (n % 2 == 0) ? total : -total;
}

}  // namespace detail

std::complex<double> permanent(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) throw ValidationError("permanent needs a square matrix");
    if (m.rows() > kMaxPermanentSize)
        throw ValidationError("permanent limited to " + std::to_string(kMaxPermanentSize) + " x " +
                              std::to_string(kMaxPermanentSize));
    return detail::ryser(m.data(), static_cast<int>(m.rows()));
}

}  // namespace biphoton
