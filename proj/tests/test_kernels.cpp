#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "dkb/kernels.hpp"
#include "dkb/rng.hpp"

using dkb::kern::Backend;
using dkb::kern::KernelTable;

namespace {

// Lengths straddling the vector widths and their tails.
const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 11, 16, 17, 31, 64, 67};

std::vector<double> random_vec(dkb::SplitMix64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v)
    x = rng.next_in(-1.0, 1.0) * std::pow(10.0, rng.next_in(-3.0, 3.0));
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         (a.empty() || std::memcmp(a.data(), b.data(), a.size() * 8) == 0);
}

}  // namespace

TEST_CASE("simd kernels match the scalar reference bit for bit") {
  const KernelTable* scalar = dkb::kern::table_for(Backend::scalar);
  REQUIRE(scalar != nullptr);

  for (Backend b : dkb::kern::supported_backends()) {
    const KernelTable* t = dkb::kern::table_for(b);
    REQUIRE(t != nullptr);
    CAPTURE(t->name);
    dkb::SplitMix64 rng(2024);

    for (std::size_t n : kLengths) {
      auto x0 = random_vec(rng, n);
      auto y0 = random_vec(rng, n);
      const auto u = random_vec(rng, n);
      const auto v = random_vec(rng, n);
      const double c = rng.next_in(-1.0, 1.0);
      const double s = rng.next_in(-1.0, 1.0);

      {
        auto xs = x0, ys = y0, xt = x0, yt = y0;
        scalar->rot2(xs.data(), ys.data(), n, c, s);
        t->rot2(xt.data(), yt.data(), n, c, s);
        CHECK(bit_equal(xs, xt));
        CHECK(bit_equal(ys, yt));
      }
      {
        auto ys = y0, yt = y0;
        scalar->axpy(ys.data(), u.data(), n, c);
        t->axpy(yt.data(), u.data(), n, c);
        CHECK(bit_equal(ys, yt));
      }
      {
        auto ys = y0, yt = y0;
        scalar->rank2_sub(ys.data(), u.data(), v.data(), n, c, s);
        t->rank2_sub(yt.data(), u.data(), v.data(), n, c, s);
        CHECK(bit_equal(ys, yt));
      }
      {
        std::vector<double> os(n), ot(n);
        scalar->scale_sub(os.data(), u.data(), v.data(), n, c);
        t->scale_sub(ot.data(), u.data(), v.data(), n, c);
        CHECK(bit_equal(os, ot));
      }
      CHECK(scalar->dot(u.data(), v.data(), n) == t->dot(u.data(), v.data(), n));
      CHECK(scalar->sumsq(u.data(), n) == t->sumsq(u.data(), n));
    }
  }
}

TEST_CASE("backend selection") {
  const auto backends = dkb::kern::supported_backends();
  REQUIRE(!backends.empty());
  CHECK(backends.front() == Backend::scalar);

  const Backend before = dkb::kern::active_backend();
  for (Backend b : backends) {
    CHECK(dkb::kern::set_backend(b));
    CHECK(dkb::kern::active_backend() == b);
    CHECK(dkb::kern::active().name == doctest::String(dkb::kern::backend_name(b)));
  }
  CHECK(dkb::kern::set_backend(before));

#if !defined(__aarch64__)
  CHECK_FALSE(dkb::kern::set_backend(Backend::neon));
  CHECK(dkb::kern::table_for(Backend::neon) == nullptr);
#endif
}
