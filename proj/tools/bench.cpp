// Timing comparison between the serial reference and the OpenMP kernels:
// decomposed verification over all rectangle candidates, and the
// per-column bad-column scan. Not part of the test suite.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <vector>

#include "kolmo/extractor.hpp"
#include "kolmo/oracle.hpp"
#include "kolmo/table.hpp"

using namespace kolmo;

namespace {

template <typename F>
double time_ms(F&& fn, int reps) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count() /
         static_cast<double>(reps);
}

void bench_verify(int n, int m, std::uint64_t S, int d, int reps) {
  const ColorTable t = random_table(n, m, 12345);
  VerifyReport serial_rep, parallel_rep;
  const double serial_ms = time_ms(
      [&] {
        serial_rep = verify_rainbow(t, S, mpq_class(d), VerifyMode::decomposed,
                                    Execution::serial);
      },
      reps);
  const double parallel_ms = time_ms(
      [&] {
        parallel_rep = verify_rainbow(t, S, mpq_class(d), VerifyMode::decomposed,
                                      Execution::parallel);
      },
      reps);
  const bool agree = serial_rep.balanced == parallel_rep.balanced &&
                     serial_rep.worst_count == parallel_rep.worst_count &&
                     serial_rep.worst_b1 == parallel_rep.worst_b1 &&
                     serial_rep.worst_b2 == parallel_rep.worst_b2;
  std::printf("verify   n=%d m=%d S=%llu D=%d   serial %9.2f ms   omp %9.2f ms   x%.2f   %s\n",
              n, m, static_cast<unsigned long long>(S), d, serial_ms, parallel_ms,
              serial_ms / parallel_ms, agree ? "reports agree" : "REPORTS DIFFER");
}

void bench_badcols(int n, int m, int reps) {
  const ColorTable t = random_table(n, m, 999);
  // One zero-length conditional program per column keeps every A_v a
  // singleton; the first half of the strings get short unconditional
  // programs so the profile set at t1 = n-1 is large.
  std::vector<SystemEntry> entries;
  for (const BitString& v : all_strings(n)) {
    SystemEntry e;
    e.condition = v;
    e.output = BitString::from_index(v.index() % t.M(), m);
    entries.push_back(e);
  }
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  for (const BitString& u : all_strings(n)) {
    SystemEntry e;
    const std::uint64_t i = u.index();
    e.program = i < half ? BitString::from_index(i, n - 1) : BitString::from_index(i, n);
    e.output = u;
    entries.push_back(e);
  }
  const DescriptionSystem sys = DescriptionSystem::from_entries(std::move(entries));
  std::vector<std::uint64_t> serial_out, parallel_out;
  const double serial_ms = time_ms(
      [&] { serial_out = bad_columns(t, sys, n - 1, 2, Execution::serial); }, reps);
  const double parallel_ms = time_ms(
      [&] { parallel_out = bad_columns(t, sys, n - 1, 2, Execution::parallel); }, reps);
  std::printf("badcols  n=%d m=%d           serial %9.2f ms   omp %9.2f ms   x%.2f   %s\n",
              n, m, serial_ms, parallel_ms, serial_ms / parallel_ms,
              serial_out == parallel_out ? "reports agree" : "REPORTS DIFFER");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  bench_verify(6, 2, 2, 16, 5);
  bench_verify(7, 2, 2, 16, 3);
  bench_verify(8, 2, 2, 16, 2);
  bench_verify(6, 3, 4, 48, 2);
  bench_badcols(8, 3, 5);
  bench_badcols(8, 4, 5);
  return 0;
}
