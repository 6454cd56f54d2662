// Wall-time comparison of the serial reference kernels against the
// OpenMP-parallel ones, verifying on every case that both produce the same
// polynomial (arithmetic is exact, so results are independent of the thread
// count by construction; this tool demonstrates it and measures the payoff).
//
// Usage: bench_engines [--threads N] [--heavy]
//   --threads N   thread count for the parallel kernels (0 = all cores)
//   --heavy       add the rank-9/18-element case (tens of seconds)

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "chowcalc/building.hpp"
#include "chowcalc/chow.hpp"

using namespace chowcalc;

namespace {

double seconds_of(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct Case {
  std::string name;
  std::unique_ptr<FlatLattice> L;
  std::unique_ptr<ChowContext> C;
};

Case make_case(std::string name, Polymatroid M) {
  Case c;
  c.name = std::move(name);
  c.L = std::make_unique<FlatLattice>(std::move(M));
  c.C = std::make_unique<ChowContext>(minimal_building_set(*c.L));
  return c;
}

Case make_flag_case(std::string name, Polymatroid M, int flags_from,
                    int flags_to) {
  Case c;
  c.name = std::move(name);
  c.L = std::make_unique<FlatLattice>(std::move(M));
  std::vector<int> ms;
  for (int i = 0; i < c.L->polymatroid().n(); ++i)
    ms.push_back(c.L->id_of(bit(i)));
  for (int k = flags_from; k <= flags_to; ++k)
    ms.push_back(c.L->id_of((Mask(1) << k) - 1));
  ms.push_back(c.L->top());
  BuildingSet B = building_set(*c.L, std::move(ms));
  validate_building_set(B);
  c.C = std::make_unique<ChowContext>(std::move(B));
  return c;
}

void bench(const Case& c, const char* kernel, const EngineOptions& opts) {
  IntPoly serial, parallel;
  bool spanning = std::strcmp(kernel, "spanning") == 0;
  // one untimed run so both timed passes see warm characteristic memos
  if (spanning)
    c.C->hilbert_spanning_serial();
  else
    c.C->hilbert_fy_serial();
  double ts = seconds_of([&] {
    serial = spanning ? c.C->hilbert_spanning_serial()
                      : c.C->hilbert_fy_serial();
  });
  double tp = seconds_of([&] {
    parallel =
        spanning ? c.C->hilbert_spanning(opts) : c.C->hilbert_fy(opts);
  });
  const char* same = serial == parallel ? "equal" : "DIFFER";
  std::printf("%-28s %-9s %10.3fs %10.3fs %8.2fx   %s\n", c.name.c_str(),
              kernel, ts, tp, tp > 0 ? ts / tp : 0.0, same);
  std::fflush(stdout);
  if (serial != parallel) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
  EngineOptions opts;
  bool heavy = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
      opts.threads = std::atoi(argv[++i]);
    else if (std::strcmp(argv[i], "--heavy") == 0)
      heavy = true;
    else {
      std::fprintf(stderr, "usage: bench_engines [--threads N] [--heavy]\n");
      return 2;
    }
  }

  std::printf("%-28s %-9s %11s %11s %9s   %s\n", "case", "kernel", "serial",
              "parallel", "speedup", "results");

  std::vector<Case> cases;
  cases.push_back(make_case("K(5) minimal", Polymatroid::complete_graph(5)));
  cases.push_back(make_case("K(6) minimal", Polymatroid::complete_graph(6)));
  cases.push_back(make_case("U(5,8) minimal", Polymatroid::uniform(5, 8)));
  cases.push_back(make_flag_case("B(10) partial flag",
                                 Polymatroid::boolean(10), 4, 9));
  if (heavy)
    cases.push_back(make_flag_case("U(9,18) flag",
                                   Polymatroid::uniform(9, 18), 2, 8));

  for (const Case& c : cases) {
    bench(c, "fy", opts);
    bench(c, "spanning", opts);
  }
  return 0;
}
