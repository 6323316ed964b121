// Acceptance gate: one PASS/FAIL line per criterion.
//   acceptance        run all criteria
//   acceptance N      run criterion N only
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "ncst/verify.hpp"

namespace {

struct Criterion {
  int id;
  const char* title;
  std::vector<std::string> suites;
};

const std::vector<Criterion> kCriteria{
    {1, "minimal-variance limit of the log form", {"minvar"}},
    {2, "momentum vs position log form", {"fourier"}},
    {3, "causal bound, sharp limits, antisymmetry", {"causal"}},
    {4, "classical limit and closed-form quantum part", {"classical"}},
    {5, "alpha limit and psi independence", {"alpha-limit"}},
    {6, "state positivity (Gram N, M and omega(a*a))", {"gram"}},
    {7, "algebraic exactness", {"weyl"}},
    {8, "reduced quadrature vs 8D Monte Carlo", {"oracle"}},
};

bool run(const Criterion& c) {
  ncst::verify::Options opt;
  bool ok = true;
  double seconds = 0.0;
  std::vector<ncst::verify::Check> failed;
  for (const auto& s : c.suites) {
    const auto rep = ncst::verify::run_suite(s, opt);
    ok = ok && rep.passed();
    seconds += rep.seconds;
    for (const auto& chk : rep.checks)
      if (!chk.passed) failed.push_back(chk);
  }
  std::printf("CRITERION %d %s: %s (%.2f s)\n", c.id, ok ? "PASS" : "FAIL", c.title, seconds);
  for (const auto& chk : failed)
    std::printf("    failed %s: expected %.10g, computed %.10g, tolerance %.3g\n", chk.name.c_str(), chk.expected,
                chk.computed, chk.tolerance);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "usage: acceptance [1-%zu]\n", kCriteria.size());
      return 2;
    }
  }
  bool all = true;
  for (const auto& c : kCriteria)
    if (only == 0 || c.id == only) all = run(c) && all;
  std::fflush(stdout);
  return all ? 0 : 1;
}
