// Serial vs OpenMP timings for the curve search and the catalog table.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "lipeq/analyzer.hpp"

using namespace lipeq;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// A cell with no witness in the stream: the search runs to its budget.
void bench_search(std::size_t budget) {
  const NormalForm nf = NormalForm::catalog(1, 4, 2);
  const MatrixGerm theta = theta_from_coefficients(nf, {{"a3", 1}});
  const Unfolding U = build_unfolding(nf.matrix(), theta);
  const DoubledIdeal IF = unfolding_ideal(U);
  const DoubledIdeal It = direction_ideal(U);
  CurveSearchConfig cfg;
  cfg.max_exponent = nf.default_max_exponent();

  ClosureResult serial, parallel;
  const double ts = seconds([&] { serial = closure_test(It.ideal.generators(), IF.ideal, cfg, budget, Execution::Serial); });
  const double tp = seconds([&] { parallel = closure_test(It.ideal.generators(), IF.ideal, cfg, budget, Execution::Parallel); });
  const bool same = serial.report.curves_tried == parallel.report.curves_tried &&
                    serial.witness.has_value() == parallel.witness.has_value();
  std::printf("closure_test  %8zu curves  serial %8.3f s  parallel %8.3f s  speedup %5.2f  %s\n",
              serial.report.curves_tried, ts, tp, ts / tp, same ? "agree" : "DISAGREE");
}

void bench_table(int max_k) {
  TableConfig cfg;
  cfg.max_k = max_k;
  cfg.max_l = max_k;
  TableReport serial, parallel;
  const double ts = seconds([&] { serial = reproduce_paper_table(cfg, Execution::Serial); });
  const double tp = seconds([&] { parallel = reproduce_paper_table(cfg, Execution::Parallel); });
  bool same = serial.cells.size() == parallel.cells.size();
  for (std::size_t i = 0; same && i < serial.cells.size(); ++i)
    same = serial.cells[i].verdict.outcome == parallel.cells[i].verdict.outcome &&
           serial.cells[i].verdict.route == parallel.cells[i].verdict.route;
  std::printf("table k,l<=%d %8zu cells   serial %8.3f s  parallel %8.3f s  speedup %5.2f  %s\n", max_k,
              serial.cells.size(), ts, tp, ts / tp, same ? "agree" : "DISAGREE");
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t budget = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1'000'000;
  const int max_k = argc > 2 ? std::atoi(argv[2]) : 4;
  std::printf("threads: %d\n", omp_get_max_threads());
  bench_search(budget);
  bench_table(max_k);
}
