// Kernel benchmark: serial reference vs OpenMP implementations on the
// scans that dominate sweeps (centralizer scan, axiom sampling, order
// histogram, candidate search).

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pcg/capability.hpp"
#include "pcg/families.hpp"
#include "pcg/kernels.hpp"

using namespace pcg;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double time_ms(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return ms_since(t0);
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-34s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

} // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  set_order_cap(kHardOrderCap);

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled at build time; both columns run serially\n");
#endif
  std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    PcPresentation e = build_extraspecial(2, quick ? 4u : 6u, quick ? "DDDD" : "DDDDDD");
    std::vector<std::uint64_t> a, b;
    double s = time_ms([&] { a = kernels::serial::central_element_indices(e); });
    double pms = time_ms([&] { b = kernels::central_element_indices(e); });
    if (a != b) std::printf("MISMATCH in centralizer scan!\n");
    row(("centralizer scan, order " + std::to_string(e.order())).c_str(), s, pms);
  }
  {
    PcPresentation g = build_family({FamilyVariant::T1i, 2, 4, 3, 3, 0}); // order 1024
    std::uint64_t samples = quick ? 2'000 : 20'000;
    kernels::AxiomReport ra, rb;
    double s = time_ms([&] { ra = kernels::serial::check_axioms(g, samples, 99); });
    double pms = time_ms([&] { rb = kernels::check_axioms(g, samples, 99); });
    if (ra.ok() != rb.ok()) std::printf("MISMATCH in axiom scan!\n");
    row(("axiom sampling x" + std::to_string(samples) + ", order 1024").c_str(), s, pms);
  }
  {
    PcPresentation g = build_family({FamilyVariant::T2i, 3, 2, 2, 2, 0}); // order 729
    std::map<std::uint64_t, std::uint64_t> ha, hb;
    double s = time_ms([&] { ha = kernels::serial::element_order_histogram(g); });
    double pms = time_ms([&] { hb = kernels::element_order_histogram(g); });
    if (ha != hb) std::printf("MISMATCH in histogram!\n");
    row("order histogram, order 729", s, pms);
  }
  {
    // candidate-scan shape: expensive predicate, no early hit
    PcPresentation q8 = build_extraspecial(2, 1, "Q");
    auto pred = [&](std::uint64_t idx) {
      auto rep = kernels::serial::check_axioms(q8, 200, idx);
      return !rep.ok(); // never true on a consistent group
    };
    std::uint64_t count = quick ? 200 : 1'000;
    std::uint64_t fa = 0, fb = 0;
    double s = time_ms([&] { fa = kernels::serial::find_first(count, pred); });
    double pms = time_ms([&] { fb = kernels::find_first(count, pred); });
    if (fa != fb) std::printf("MISMATCH in candidate scan!\n");
    row(("candidate scan x" + std::to_string(count)).c_str(), s, pms);
  }
  {
    // end-to-end: exhaustive witness search on a non-capable group
    PcPresentation q8 = build_extraspecial(2, 1, "Q");
    double pms = time_ms([&] { witness_search(q8, quick ? 2u : 3u); });
    std::printf("%-34s %13s %10.1f ms\n", "witness exhaustion (Q8)", "-", pms);
  }
  return 0;
}
