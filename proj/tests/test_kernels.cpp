#include "doctest.h"

#include <cmath>
#include <vector>

#include "bpdd/kernels.hpp"
#include "bpdd/rng.hpp"

namespace k = bpdd::kernels;

namespace {

std::vector<double> random_vec(std::size_t len, std::uint64_t stream) {
  bpdd::rng::GaussianStream gs(0xBEEF, stream);
  return gs.take(0, len);
}

struct BackendGuard {
  k::Backend saved;
  BackendGuard() : saved(k::active_backend()) {}
  ~BackendGuard() { k::set_backend(saved); }
};

}  // namespace

TEST_CASE("kernel backends agree with the scalar reference") {
  BackendGuard guard;
  const std::vector<std::size_t> lengths = {1, 2, 3, 7, 8, 15, 16, 17,
                                            31, 64, 100, 257, 1000};
  for (k::Backend b : k::available_backends()) {
    CAPTURE(k::backend_name(b));
    for (std::size_t len : lengths) {
      auto x = random_vec(len, 11 + len);
      auto y = random_vec(len, 77 + len);

      k::set_backend(k::Backend::scalar);
      const double ref_dot = k::dot(x.data(), y.data(), len);
      auto ref_axpy = y;
      k::axpy(0.7, x.data(), ref_axpy.data(), len);

      k::set_backend(b);
      const double got_dot = k::dot(x.data(), y.data(), len);
      auto got_axpy = y;
      k::axpy(0.7, x.data(), got_axpy.data(), len);

      const double scale = 1.0 + std::abs(ref_dot) + std::sqrt(double(len));
      CHECK(std::abs(got_dot - ref_dot) <= 1e-13 * scale);
      for (std::size_t i = 0; i < len; ++i)
        CHECK(got_axpy[i] == doctest::Approx(ref_axpy[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("panel_dots and gram_block match per-column dots on every backend") {
  BackendGuard guard;
  const int rows = 53, na = 7, nb = 9, ld = 60;
  auto A = random_vec(static_cast<std::size_t>(ld) * na, 5);
  auto B = random_vec(static_cast<std::size_t>(ld) * nb, 6);
  auto y = random_vec(rows, 7);

  k::set_backend(k::Backend::scalar);
  std::vector<double> ref_pd(na), ref_gram(static_cast<std::size_t>(na) * nb);
  k::panel_dots(A.data(), ld, rows, na, y.data(), ref_pd.data());
  k::gram_block(A.data(), ld, na, B.data(), ld, nb, rows, ref_gram.data());
  // independent reference: plain per-entry dots
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      double s = 0.0;
      for (int r = 0; r < rows; ++r) s += A[i * ld + r] * B[j * ld + r];
      CHECK(ref_gram[i + static_cast<std::size_t>(j) * na] ==
            doctest::Approx(s).epsilon(1e-12));
    }

  for (k::Backend b : k::available_backends()) {
    CAPTURE(k::backend_name(b));
    k::set_backend(b);
    std::vector<double> pd(na), gram(static_cast<std::size_t>(na) * nb);
    k::panel_dots(A.data(), ld, rows, na, y.data(), pd.data());
    k::gram_block(A.data(), ld, na, B.data(), ld, nb, rows, gram.data());
    for (int i = 0; i < na; ++i)
      CHECK(pd[i] == doctest::Approx(ref_pd[i]).epsilon(1e-12));
    for (std::size_t i = 0; i < gram.size(); ++i)
      CHECK(gram[i] == doctest::Approx(ref_gram[i]).epsilon(1e-12));
  }
}

TEST_CASE("gram_block handles ragged shapes") {
  BackendGuard guard;
  for (k::Backend b : k::available_backends()) {
    k::set_backend(b);
    for (int rows : {1, 2, 5, 8, 9}) {
      for (int na : {1, 2, 3, 4, 5}) {
        for (int nb : {1, 3, 4, 5}) {
          auto A = random_vec(static_cast<std::size_t>(rows) * na, rows + na);
          auto B =
              random_vec(static_cast<std::size_t>(rows) * nb, rows + nb + 50);
          std::vector<double> C(static_cast<std::size_t>(na) * nb);
          k::gram_block(A.data(), rows, na, B.data(), rows, nb, rows, C.data());
          for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j) {
              double s = 0.0;
              for (int r = 0; r < rows; ++r)
                s += A[i * rows + r] * B[j * rows + r];
              CHECK(C[i + static_cast<std::size_t>(j) * na] ==
                    doctest::Approx(s).epsilon(1e-12));
            }
        }
      }
    }
  }
}
