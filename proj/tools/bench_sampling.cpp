// Wall-clock comparison of the serial reference sampler against the
// OpenMP row kernel, with an exact agreement check between the two runs.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "wedgelab/models.hpp"
#include "wedgelab/quadric.hpp"
#include "wedgelab/wedge.hpp"

using namespace wl;

namespace {

template <typename F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

bool same_vec(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index j = 0; j < a.size(); ++j)
    if (a[j] != b[j]) return false;
  return true;
}

bool same_rows(const std::vector<MembershipRow>& a,
               const std::vector<MembershipRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].verdict != b[i].verdict) return false;
    if (a[i].member != b[i].member) return false;
    if (a[i].margins != b[i].margins) return false;
    if (!same_vec(a[i].x, b[i].x)) return false;
  }
  return true;
}

bool same_rows(const std::vector<WedgeSampleRow>& a,
               const std::vector<WedgeSampleRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].index != b[i].index || a[i].source != b[i].source) return false;
    if (a[i].tests.margin != b[i].tests.margin) return false;
    if (a[i].tests.member != b[i].tests.member) return false;
    if (a[i].tests.verdict != b[i].tests.verdict) return false;
    if (!same_vec(a[i].point, b[i].point)) return false;
  }
  return true;
}

int report_pair(const char* name, double ts, double tp, bool agree) {
  std::printf("%-22s serial %7.3fs  parallel %7.3fs  speedup %.2fx  %s\n",
              name, ts, tp, ts / tp, agree ? "identical" : "MISMATCH");
  return agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  int n = 20000;
  if (argc > 1) n = std::atoi(argv[1]);
  if (n <= 0) {
    std::fprintf(stderr, "usage: bench_sampling [n]\n");
    return 2;
  }

  int bad = 0;

  {
    EqualityReport serial, parallel;
    double ts = timed([&] { serial = desitter_wedge_equalities(3, n, 7, false); });
    double tp = timed([&] { parallel = desitter_wedge_equalities(3, n, 7, true); });
    bool agree = serial.interior == parallel.interior &&
                 serial.boundary == parallel.boundary &&
                 serial.disagreements == parallel.disagreements &&
                 same_rows(serial.rows, parallel.rows);
    bad += report_pair("desitter five-way", ts, tp, agree);
  }

  {
    CausalSymmetricSpec spec = make_wedge_spec("ds3");
    WedgeReport serial, parallel;
    double ts = timed([&] { serial = verify_wedge_equalities(spec, n, 7, false); });
    double tp = timed([&] { parallel = verify_wedge_equalities(spec, n, 7, true); });
    bool agree = serial.interior == parallel.interior &&
                 serial.exterior == parallel.exterior &&
                 serial.disagreements == parallel.disagreements &&
                 serial.witnesses == parallel.witnesses &&
                 same_rows(serial.rows, parallel.rows);
    bad += report_pair("wedge three-way ds3", ts, tp, agree);
  }

  {
    CausalSymmetricSpec spec = make_wedge_spec("sl2xsl2");
    WedgeReport serial, parallel;
    double ts = timed([&] { serial = verify_wedge_equalities(spec, n, 7, false); });
    double tp = timed([&] { parallel = verify_wedge_equalities(spec, n, 7, true); });
    bool agree = serial.interior == parallel.interior &&
                 serial.exterior == parallel.exterior &&
                 serial.disagreements == parallel.disagreements &&
                 serial.witnesses == parallel.witnesses &&
                 same_rows(serial.rows, parallel.rows);
    bad += report_pair("wedge three-way sl2^2", ts, tp, agree);
  }

  if (bad) {
    std::fprintf(stderr, "serial and parallel runs disagree\n");
    return 1;
  }
  return 0;
}
