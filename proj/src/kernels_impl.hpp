#pragma once

#include <cstddef>

namespace structlabel::detail {

void axpby_scalar(double a, const double* x, double b, const double* y, double* out,
                  std::size_t n);
double sum_sq_diff_scalar(const double* x, const double* y, std::size_t n);

#if defined(__x86_64__)
void axpby_avx2(double a, const double* x, double b, const double* y, double* out, std::size_t n);
double sum_sq_diff_avx2(const double* x, const double* y, std::size_t n);
#endif

}  // namespace structlabel::detail
