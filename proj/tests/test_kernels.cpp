#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "ergm/design.hpp"
#include "ergm/estimator.hpp"
#include "ergm/kernels.hpp"
#include "support.hpp"

using namespace ergm;
namespace k = ergm::kernels;

namespace {

std::vector<double> randoms(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

// Error bound for a length-n floating sum of products.
double bound(const double* a, const double* b, const double* w, std::size_t n) {
  long double mag = 0;
  for (std::size_t i = 0; i < n; ++i) mag += std::abs((long double)a[i] * b[i] * (w ? w[i] : 1.0));
  return 4.0 * (n + 4) * 1.2e-16 * static_cast<double>(mag) + 1e-300;
}

long double exact_dot(const double* a, const double* b, const double* w, std::size_t n) {
  long double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += (long double)a[i] * b[i] * (w ? w[i] : 1.0);
  return s;
}

}  // namespace

TEST_CASE("scalar kernels against extended-precision sums") {
  std::mt19937_64 rng(1);
  const auto& s = k::scalar_table();
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 16u, 17u, 33u, 100u, 1001u}) {
    auto a = randoms(n, rng), b = randoms(n, rng), w = randoms(n, rng);
    CHECK(std::abs(s.dot(a.data(), b.data(), n) - (double)exact_dot(a.data(), b.data(), nullptr, n)) <=
          bound(a.data(), b.data(), nullptr, n));
    CHECK(std::abs(s.weighted_dot(w.data(), a.data(), b.data(), n) -
                   (double)exact_dot(a.data(), b.data(), w.data(), n)) <= bound(a.data(), b.data(), w.data(), n));
    auto y = b;
    s.axpy(0.75, a.data(), y.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y[i] == 0.75 * a[i] + b[i]);
  }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const auto* v = k::avx2_table();
  if (v == nullptr || !k::cpu_has_avx2()) {
    MESSAGE("AVX2 variant unavailable on this build or CPU; equivalence not exercised");
    return;
  }
  const auto& s = k::scalar_table();
  std::mt19937_64 rng(2);
  for (std::size_t n = 0; n < 70; ++n) {
    for (std::size_t offset = 0; offset < 3; ++offset) {  // unaligned starts
      auto a = randoms(n + offset, rng), b = randoms(n + offset, rng), w = randoms(n + offset, rng);
      const double* pa = a.data() + offset;
      const double* pb = b.data() + offset;
      const double* pw = w.data() + offset;
      CHECK(std::abs(v->dot(pa, pb, n) - s.dot(pa, pb, n)) <= bound(pa, pb, nullptr, n));
      CHECK(std::abs(v->weighted_dot(pw, pa, pb, n) - s.weighted_dot(pw, pa, pb, n)) <= bound(pa, pb, pw, n));
      std::vector<double> y1(b.begin() + offset, b.end()), y2 = y1;
      s.axpy(-1.3, pa, y1.data(), n);
      v->axpy(-1.3, pa, y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-15));
    }
  }
  const std::size_t big = 131406;
  auto a = randoms(big, rng), b = randoms(big, rng), w = randoms(big, rng);
  CHECK(std::abs(v->dot(a.data(), b.data(), big) - s.dot(a.data(), b.data(), big)) <=
        bound(a.data(), b.data(), nullptr, big));
  CHECK(std::abs(v->weighted_dot(w.data(), a.data(), b.data(), big) -
                 s.weighted_dot(w.data(), a.data(), b.data(), big)) <= bound(a.data(), b.data(), w.data(), big));
}

TEST_CASE("fits agree across kernel backends") {
  if (k::avx2_table() == nullptr || !k::cpu_has_avx2()) return;
  std::mt19937_64 rng(3);
  const std::size_t n = 40;
  const auto g = testsupport::random_graph(n, 0.08, rng);
  const auto attrs = testsupport::random_attributes(n, rng);
  const ModelSpec spec({TermSpec::edges(), TermSpec::mutual(), TermSpec::gwesp(0.5), TermSpec::nodematch("color")});
  const auto design = build_design(g, attrs, spec);
  k::select(k::Backend::scalar);
  const auto a = fit_logistic(design);
  k::select(k::Backend::avx2);
  const auto b = fit_logistic(design);
  CHECK(k::active().backend == k::Backend::avx2);
  for (std::size_t r = 0; r < spec.size(); ++r) {
    CHECK(a.coefficients[r] == doctest::Approx(b.coefficients[r]).epsilon(1e-10));
    CHECK(a.standard_errors[r] == doctest::Approx(b.standard_errors[r]).epsilon(1e-10));
  }
  CHECK(a.residual_deviance == doctest::Approx(b.residual_deviance).epsilon(1e-12));
}

TEST_CASE("backend names") {
  CHECK(k::backend_name(k::Backend::scalar) == "scalar");
  CHECK(k::backend_name(k::Backend::avx2) == "avx2");
}
