#include "twodof/diophantine.hpp"

#include <algorithm>
#include <stdexcept>

#include "twodof/qmatrix.hpp"

namespace twodof {

std::optional<std::vector<PolyMat>> solve_left_combination(const std::vector<PolyMat>& factors, const PolyMat& rhs,
                                                           int degree_bound) {
    if (degree_bound < 0) throw std::invalid_argument("solve_left_combination: negative degree bound");
    const std::size_t c = rhs.cols();
    int factor_degree = -1;
    std::size_t unknown_rows = 0;
    for (const auto& f : factors) {
        if (f.cols() != c) throw std::invalid_argument("solve_left_combination: column count mismatch");
        factor_degree = std::max(factor_degree, max_degree(f));
        unknown_rows += f.rows();
    }
    const std::size_t width = static_cast<std::size_t>(degree_bound) + 1;
    const int top = std::max(degree_bound + std::max(factor_degree, 0), max_degree(rhs));
    const std::size_t powers = static_cast<std::size_t>(top) + 1;

    // Unknown layout for one output row: factor k, entry l, coefficient t.
    QMatrix system(c * powers, unknown_rows * width);
    std::size_t offset = 0;
    for (const auto& f : factors) {
        for (std::size_t l = 0; l < f.rows(); ++l)
            for (std::size_t j = 0; j < c; ++j) {
                const Poly& entry = f(l, j);
                if (entry.is_zero()) continue;
                for (std::size_t t = 0; t < width; ++t)
                    for (int e = 0; e <= entry.degree(); ++e)
                        system(j * powers + t + static_cast<std::size_t>(e), (offset + l) * width + t) = entry.coeff(e);
            }
        offset += f.rows();
    }

    std::vector<PolyMat> result;
    for (const auto& f : factors) result.emplace_back(rhs.rows(), f.rows());
    for (std::size_t i = 0; i < rhs.rows(); ++i) {
        std::vector<Rational> b(c * powers);
        for (std::size_t j = 0; j < c; ++j)
            for (std::size_t e = 0; e < powers; ++e) b[j * powers + e] = rhs(i, j).coeff(static_cast<int>(e));
        auto x = solve(system, b);
        if (!x) return std::nullopt;
        std::size_t col = 0;
        for (std::size_t k = 0; k < factors.size(); ++k)
            for (std::size_t l = 0; l < factors[k].rows(); ++l, ++col) {
                std::vector<Rational> coeffs(x->begin() + static_cast<long>(col * width),
                                             x->begin() + static_cast<long>((col + 1) * width));
                result[k](i, l) = Poly(std::move(coeffs));
            }
    }
    return result;
}

std::optional<std::pair<Poly, Poly>> solve_scalar_combination(const Poly& f, int bound_a, const Poly& g, int bound_b,
                                                             const Poly& rhs) {
    if (bound_a < -1 || bound_b < -1) throw std::invalid_argument("solve_scalar_combination: bad degree bound");
    const std::size_t na = static_cast<std::size_t>(bound_a + 1), nb = static_cast<std::size_t>(bound_b + 1);
    const int df = f.is_zero() ? 0 : f.degree(), dg = g.is_zero() ? 0 : g.degree();
    const int top = std::max({bound_a + df, bound_b + dg, rhs.is_zero() ? 0 : rhs.degree(), 0});
    const std::size_t powers = static_cast<std::size_t>(top) + 1;
    QMatrix system(powers, na + nb);
    for (std::size_t t = 0; t < na; ++t)
        for (int e = 0; e <= df; ++e) system(t + static_cast<std::size_t>(e), t) = f.coeff(e);
    for (std::size_t t = 0; t < nb; ++t)
        for (int e = 0; e <= dg; ++e) system(t + static_cast<std::size_t>(e), na + t) = g.coeff(e);
    std::vector<Rational> b(powers);
    for (std::size_t e = 0; e < powers; ++e) b[e] = rhs.coeff(static_cast<int>(e));
    auto x = solve(system, b);
    if (!x) return std::nullopt;
    Poly a(std::vector<Rational>(x->begin(), x->begin() + static_cast<long>(na)));
    Poly bb(std::vector<Rational>(x->begin() + static_cast<long>(na), x->end()));
    return std::make_pair(std::move(a), std::move(bb));
}

}  // namespace twodof
