#include "kernels_impl.hpp"

namespace structlabel::detail {

void axpby_scalar(double a, const double* x, double b, const double* y, double* out,
                  std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

double sum_sq_diff_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - y[i];
        acc += d * d;
    }
    return acc;
}

}  // namespace structlabel::detail
