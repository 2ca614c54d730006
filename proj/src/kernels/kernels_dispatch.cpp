#include "tempest/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace tempest::kernels {

namespace {

const Ops* resolve() {
    if (const char* env = std::getenv("TEMPEST_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
        if (std::strcmp(env, "avx2") == 0) {
            if (const Ops* v = avx2_ops()) return v;
        }
        return &scalar_ops();
    }
    if (const Ops* v = avx2_ops()) return v;
    return &scalar_ops();
}

std::atomic<const Ops*> g_active{nullptr};

} // namespace

const Ops& active() {
    const Ops* ops = g_active.load(std::memory_order_acquire);
    if (!ops) {
        ops = resolve();
        g_active.store(ops, std::memory_order_release);
    }
    return *ops;
}

bool force_variant(const char* name) {
    if (std::strcmp(name, "scalar") == 0) {
        g_active.store(&scalar_ops(), std::memory_order_release);
        return true;
    }
    if (std::strcmp(name, "avx2") == 0) {
        if (const Ops* v = avx2_ops()) {
            g_active.store(v, std::memory_order_release);
            return true;
        }
        return false;
    }
    return false;
}

} // namespace tempest::kernels
