#pragma once

#include "ergm/kernels.hpp"

namespace ergm::kernels::detail {

double dot_scalar(const double* a, const double* b, std::size_t n);
double weighted_dot_scalar(const double* w, const double* a, const double* b, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);

#if defined(ERGM_HAVE_AVX2)
double dot_avx2(const double* a, const double* b, std::size_t n);
double weighted_dot_avx2(const double* w, const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
#endif

}  // namespace ergm::kernels::detail
