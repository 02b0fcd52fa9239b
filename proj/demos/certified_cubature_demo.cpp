// Integrates exp(x+y) over the unit square with the corrected-trapezoid rule
// and prints how the a-priori certificate shrinks as the partition is refined.

#include "hadamard/hadamard.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

int main() {
    using namespace hadamard;

    const Expression f = parse("exp(x+y)");
    const Rectangle unit = Rectangle::unit();
    const double exact = (std::numbers::e - 1.0) * (std::numbers::e - 1.0);

    std::printf("%6s %22s %14s %14s\n", "tiles", "estimate", "|error|", "certificate");
    for (const ConvergenceRow& row : convergence_table(f, unit, 5, {}, exact)) {
        std::printf("%3zux%-2zu %22.16f %14.6e %14.6e\n", row.m, row.n, row.estimate, *row.true_error,
                    row.error_bound);
    }

    const ChainReport c = chain(f, unit);
    std::printf("\nchain: %.10f <= %.10f <= %.10f <= %.10f <= %.10f (%s)\n", c.center, c.midline_mean,
                c.integral_mean, c.edge_mean, c.corner_mean, c.all_hold() ? "holds" : "broken");
    return 0;
}
