#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace chtw::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Table* initial_table() {
  const Table* best = avx2() ? avx2() : &scalar();
  if (const char* env = std::getenv("CHTW_ISA")) {
    const std::string_view want(env);
    if (want == "scalar") return &scalar();
    if (want == "avx2" && avx2()) return avx2();
  }
  return best;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{initial_table()};
  return table;
}

}  // namespace

const Table* avx2() {
  static const Table* table = cpu_has_avx2() ? detail::avx2_table() : nullptr;
  return table;
}

const Table& active() { return *current().load(std::memory_order_acquire); }

bool select(Isa isa) {
  const Table* table = isa == Isa::Scalar ? &scalar() : avx2();
  if (!table) return false;
  current().store(table, std::memory_order_release);
  return true;
}

}  // namespace chtw::kernels
