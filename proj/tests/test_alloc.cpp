// Steady-state allocation audit: once a monitor is warmed up, feeding it
// events must not touch the heap, or long-running sessions would slowly
// fragment. Counts every operator new during a million updates.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <new>

#include "fairmon/bse/spec.hpp"
#include "fairmon/experiments/lending.hpp"
#include "fairmon/monitor/monitor.hpp"
#include "fairmon/pomc/diagnostics.hpp"
#include "fairmon/pomc/models.hpp"
#include "fairmon/pomc/sampler.hpp"

namespace {
std::atomic<unsigned long long> g_news{0};
}

void* operator new(std::size_t size) {
  g_news.fetch_add(1, std::memory_order_relaxed);
  if (void* p = std::malloc(size)) return p;
  throw std::bad_alloc();
}

void* operator new[](std::size_t size) { return ::operator new(size); }

void operator delete(void* p) noexcept { std::free(p); }
void operator delete[](void* p) noexcept { std::free(p); }
void operator delete(void* p, std::size_t) noexcept { std::free(p); }
void operator delete[](void* p, std::size_t) noexcept { std::free(p); }

int main() {
  using namespace fairmon;

  const auto doc = bse::parse_spec(experiments::kPhiDpSpecText);
  monitor::Monitor mon(doc);

  const auto model = pomc::lending_model();
  const auto diag = pomc::validate(model);
  const auto aligned = pomc::relabel_to(model, doc.alphabet);
  pomc::PathSampler sampler(aligned, diag.stationary, 77);

  for (int i = 0; i < 10000; ++i) mon.next(sampler.next_symbol());

  const unsigned long long before = g_news.load();
  double checksum = 0.0;
  const int events = 1000000;
  for (int i = 0; i < events; ++i) {
    const auto out = mon.next(sampler.next_symbol());
    checksum += out.point;
  }
  const unsigned long long after = g_news.load();

  std::printf("allocations across %d steady-state events: %llu (checksum %f)\n",
              events, after - before, checksum);
  if (after != before) {
    std::printf("FAIL: monitor updates allocate\n");
    return 1;
  }
  std::printf("OK\n");
  return 0;
}
