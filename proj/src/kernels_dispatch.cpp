#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "entscope/kernels.hpp"

namespace entscope::kernels {

#if !defined(ENTSCOPE_HAVE_AVX2_TU)
const KernelTable* avx2_table() { return nullptr; }
#endif
#if !defined(ENTSCOPE_HAVE_NEON_TU)
const KernelTable* neon_table() { return nullptr; }
#endif

namespace {

const KernelTable& select() {
  const KernelTable* best = &scalar_table();
  if (const KernelTable* t = neon_table()) best = t;
  if (const KernelTable* t = avx2_table()) best = t;
  if (const char* req = std::getenv("ENTSCOPE_KERNEL")) {
    const KernelTable* forced = nullptr;
    if (std::strcmp(req, "scalar") == 0) forced = &scalar_table();
    if (std::strcmp(req, "avx2") == 0) forced = avx2_table();
    if (std::strcmp(req, "neon") == 0) forced = neon_table();
    if (forced != nullptr) return *forced;
    std::fprintf(stderr,
                 "entscope: ENTSCOPE_KERNEL=%s unavailable, using %s\n", req,
                 best->name);
  }
  return *best;
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out{&scalar_table()};
  if (const KernelTable* t = avx2_table()) out.push_back(t);
  if (const KernelTable* t = neon_table()) out.push_back(t);
  return out;
}

}  // namespace entscope::kernels
