// Compares the OpenMP product kernels against the serial references on
// random exact matrices, and times one law-check style workload (composing
// structure maps of a function algebra).  Build once, run:
//   hopfhom_bench [--smoke]
#include <chrono>
#include <cstring>
#include <iostream>
#include <random>

#include "hopfhom/builders.hpp"
#include "hopfhom/module.hpp"

#include <omp.h>

using namespace hopfhom;

namespace {

std::mt19937 rng(1234321);

template <typename K>
Matrix<K> rand_matrix(std::size_t r, std::size_t c, int density_percent) {
  std::uniform_int_distribution<int> pick(0, 99);
  std::uniform_int_distribution<long> val(-9, 9);
  Matrix<K> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (pick(rng) < density_percent) m(i, j) = K::from_int(val(rng));
  return m;
}

template <typename F>
double time_ms(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void bench_products(std::size_t n, int density) {
  auto a = rand_matrix<Rational>(n, n, density);
  auto b = rand_matrix<Rational>(n, n, density);
  Matrix<Rational> r_serial, r_omp;
  double ts = time_ms([&] { r_serial = kernels::mul_serial(a, b); });
  double tp = time_ms([&] { r_omp = kernels::mul_omp(a, b); });
  const char* ok = (r_serial == r_omp) ? "ok" : "MISMATCH";
  std::printf("mul  n=%4zu density=%3d%%  serial %9.2f ms   omp %9.2f ms   speedup %5.2fx  [%s]\n",
              n, density, ts, tp, ts / tp, ok);
}

void bench_kron(std::size_t n) {
  auto a = rand_matrix<Rational>(n, n, 30);
  auto b = rand_matrix<Rational>(n, n, 30);
  Matrix<Rational> r_serial, r_omp;
  double ts = time_ms([&] { r_serial = kernels::kron_serial(a, b); });
  double tp = time_ms([&] { r_omp = kernels::kron_omp(a, b); });
  const char* ok = (r_serial == r_omp) ? "ok" : "MISMATCH";
  std::printf("kron n=%4zu                 serial %9.2f ms   omp %9.2f ms   speedup %5.2fx  [%s]\n",
              n, ts, tp, ts / tp, ok);
}

// Assembles the C1 compatibility identity for the regular module of a cyclic
// function algebra: the shape of work the verification suites are made of.
void bench_law(std::size_t group_order) {
  auto h = build_function_algebra<Rational>(GroupTable::cyclic(group_order));
  const std::size_t n = h.dim;
  const Matrix<Rational> M = h.mult_matrix();
  const Matrix<Rational> D = h.comult_matrix();
  Matrix<Rational> lhs, rhs;
  double t = time_ms([&] {
    lhs = D * M;
    rhs = kron(M, M) * permute_row_legs(kron(D, D), {n, n, n, n}, {0, 2, 1, 3});
  });
  std::printf("law  |G|=%3zu (dim %3zu)     assemble both sides %9.2f ms   [%s]\n", group_order, n, t,
              lhs == rhs ? "identity holds" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const bool smoke = argc > 1 && std::strcmp(argv[1], "--smoke") == 0;
  std::printf("threads: %d\n", omp_get_max_threads());
  if (smoke) {
    bench_products(48, 40);
    bench_kron(16);
    bench_law(6);
    return 0;
  }
  for (std::size_t n : {64, 128, 192}) bench_products(n, 40);
  for (std::size_t n : {24, 40, 56}) bench_kron(n);
  for (std::size_t g : {8, 10, 12}) bench_law(g);
  return 0;
}
