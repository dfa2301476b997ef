#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "szilard/kernels.hpp"
#include "szilard/sparse.hpp"

using namespace szilard;
namespace k = szilard::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

CsrMatrix random_sparse(std::size_t dim, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<CsrMatrix::Triplet> t;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      if (u(rng) * 0.5 + 0.5 < density) {
        const double v = u(rng);
        t.push_back({int(i), int(j), v});
        if (i != j) t.push_back({int(j), int(i), v});
      }
    }
  }
  return CsrMatrix(dim, std::move(t));
}

}  // namespace

TEST_CASE("dispatch reports a supported variant") {
  CHECK(k::isa_supported(k::Isa::kScalar));
  CHECK(k::isa_supported(k::detected_isa()));
  const auto saved = k::active_isa();
  k::set_active_isa(k::Isa::kScalar);
  CHECK(k::active_isa() == k::Isa::kScalar);
  k::set_active_isa(saved);
  CHECK(std::string(k::isa_name(k::Isa::kScalar)) == "scalar");
  if (!k::isa_supported(k::Isa::kAvx2)) {
    CHECK_THROWS_AS(k::set_active_isa(k::Isa::kAvx2), std::invalid_argument);
  }
}

#ifdef SZILARD_HAVE_AVX2_KERNELS
TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (!k::isa_supported(k::Isa::kAvx2)) return;
  std::mt19937_64 rng(7);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 63u, 1000u, 1001u}) {
    CAPTURE(n);
    const auto x = random_vec(n, rng);
    const auto y = random_vec(n, rng);
    const double ds = k::scalar::dot(x, y);
    const double dv = k::avx2::dot(x, y);
    CHECK(std::abs(ds - dv) <= 1e-13 * std::max(1.0, double(n)));

    auto ys = y, yv = y;
    k::scalar::axpy(0.37, x, ys);
    k::avx2::axpy(0.37, x, yv);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ys[i] - yv[i]) <= 1e-15);

    auto xs = x, xv = x;
    k::scalar::scale(-1.9, xs);
    k::avx2::scale(-1.9, xv);
    for (std::size_t i = 0; i < n; ++i) CHECK(xs[i] == xv[i]);
  }
}

TEST_CASE("AVX2 sparse matvec agrees with the scalar reference") {
  if (!k::isa_supported(k::Isa::kAvx2)) return;
  std::mt19937_64 rng(11);
  for (std::size_t dim : {1u, 2u, 5u, 17u, 120u, 333u}) {
    for (double density : {0.02, 0.3, 1.0}) {
      CAPTURE(dim);
      CAPTURE(density);
      const CsrMatrix a = random_sparse(dim, density, rng);
      const auto x = random_vec(dim, rng);
      const auto d = random_vec(dim, rng);
      std::vector<double> ys(dim), yv(dim);
      k::scalar::diag_plus_csr_matvec(d, 0.8, a.view(), x, ys);
      k::avx2::diag_plus_csr_matvec(d, 0.8, a.view(), x, yv);
      for (std::size_t i = 0; i < dim; ++i) CHECK(std::abs(ys[i] - yv[i]) <= 1e-13);
      k::scalar::diag_plus_csr_matvec({}, 1.0, a.view(), x, ys);
      k::avx2::diag_plus_csr_matvec({}, 1.0, a.view(), x, yv);
      for (std::size_t i = 0; i < dim; ++i) CHECK(std::abs(ys[i] - yv[i]) <= 1e-13);
    }
  }
}
#endif

TEST_CASE("dispatched kernels match a naive loop") {
  std::mt19937_64 rng(3);
  const auto x = random_vec(37, rng);
  const auto y = random_vec(37, rng);
  double naive = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) naive += x[i] * y[i];
  CHECK(k::dot(x, y) == doctest::Approx(naive).epsilon(1e-13));

  const CsrMatrix a = random_sparse(37, 0.2, rng);
  std::vector<double> out(37);
  k::csr_matvec(a.view(), x, out);
  for (std::size_t r = 0; r < 37; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < 37; ++c) s += a.at(r, c) * x[c];
    CHECK(out[r] == doctest::Approx(s).epsilon(1e-13));
  }
}

TEST_CASE("sparse matrix assembly sums duplicates and drops zeros") {
  CsrMatrix m(3, {{0, 0, 1.0}, {0, 0, 2.0}, {1, 2, 5.0}, {2, 1, 5.0}, {1, 1, 0.0}});
  CHECK(m.dim() == 3);
  CHECK(m.at(0, 0) == 3.0);
  CHECK(m.at(1, 1) == 0.0);
  CHECK(m.at(1, 2) == 5.0);
  CHECK(m.nonzeros() == 3);
  CHECK(m.asymmetry() == 0.0);
  CHECK_FALSE(m.is_diagonal());
  CHECK(m.diagonal() == std::vector<double>{3.0, 0.0, 0.0});
}
