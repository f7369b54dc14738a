#include <cmath>

#include "delpezzo/arith.hpp"
#include "delpezzo/constants.hpp"
#include "delpezzo/error.hpp"
#include "delpezzo/surface.hpp"
#include "delpezzo/torsor.hpp"
#include "delpezzo/zeta.hpp"

namespace delpezzo::zeta {

std::vector<DecompositionRow> sum_all_decomposition(const std::vector<u64>& grid, double c,
                                                    double beta, unsigned threads) {
    std::vector<DecompositionRow> rows;
    u64 prev = 0;
    for (u64 B : grid) {
        if (B <= prev) throw DomainError("sum_all_decomposition: grid must be strictly ascending");
        prev = B;
        DecompositionRow r;
        r.B = B;
        const u64 n_pos = torsor::count_torsor(B, threads);
        const u64 z = surface::count_degenerate(B).vectors;
        r.n_uh = 4 * n_pos + z / 2;
        const double Bd = static_cast<double>(B);
        r.main_delta = 4.0 * c * std::pow(Bd, 0.75) * arith::delta_partial_sum(B);
        r.main_linear = (constants::conic_constant() + 4.0 * beta) * Bd;
        r.residual = static_cast<double>(r.n_uh) - r.main_delta - r.main_linear;
        r.residual_scaled = r.residual / std::pow(Bd, 0.9);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace delpezzo::zeta
