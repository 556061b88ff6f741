#include "qg/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace qg::kernels {
namespace {

std::atomic<const Ops*> g_active{nullptr};

const Ops* pick_default() {
  if (const char* env = std::getenv("QGRAPH_KERNELS")) {
    std::string_view want(env);
    if (want == "scalar") return detail::scalar_table();
    if (want == "avx2" && detail::avx2_table()) return detail::avx2_table();
    if (want == "neon" && detail::neon_table()) return detail::neon_table();
    // Unknown or unsupported request: fall through to auto selection.
  }
  if (const Ops* t = detail::avx2_table()) return t;
  if (const Ops* t = detail::neon_table()) return t;
  return detail::scalar_table();
}

}  // namespace

const Ops& active() {
  const Ops* t = g_active.load(std::memory_order_acquire);
  if (!t) {
    t = pick_default();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

bool select(std::string_view name) {
  const Ops* t = nullptr;
  if (name == "scalar") t = detail::scalar_table();
  else if (name == "avx2") t = detail::avx2_table();
  else if (name == "neon") t = detail::neon_table();
  else if (name == "auto") { g_active.store(nullptr); (void)active(); return true; }
  if (!t) return false;
  g_active.store(t, std::memory_order_release);
  return true;
}

std::vector<const Ops*> available() {
  std::vector<const Ops*> out{detail::scalar_table()};
  if (const Ops* t = detail::avx2_table()) out.push_back(t);
  if (const Ops* t = detail::neon_table()) out.push_back(t);
  return out;
}

}  // namespace qg::kernels
