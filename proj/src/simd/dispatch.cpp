#include <cstdlib>

#include "growup/error.hpp"
#include "growup/simd/kernels.hpp"

namespace growup::simd {

std::string to_string(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "scalar";
}

Backend backend_from_string(const std::string& name) {
    if (name == "scalar") return Backend::Scalar;
    if (name == "avx2") return Backend::Avx2;
    if (name == "neon") return Backend::Neon;
    throw InvalidInput("unknown SIMD backend '" + name + "'");
}

bool backend_available(Backend b) {
    switch (b) {
        case Backend::Scalar: return true;
        case Backend::Avx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
            return avx2_kernels() != nullptr && __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Backend::Neon: return neon_kernels() != nullptr;
    }
    return false;
}

const Kernels& kernels_for(Backend b) {
    if (!backend_available(b)) {
        throw InvalidInput("SIMD backend '" + to_string(b) + "' is not available on this machine");
    }
    switch (b) {
        case Backend::Avx2: return *avx2_kernels();
        case Backend::Neon: return *neon_kernels();
        case Backend::Scalar: break;
    }
    return scalar_kernels();
}

namespace {

const Kernels& resolve() {
    const char* env = std::getenv("GROWUP_SIMD");
    const std::string choice = env ? env : "auto";
    if (choice != "auto" && !choice.empty()) {
        return kernels_for(backend_from_string(choice));
    }
    for (Backend b : {Backend::Avx2, Backend::Neon}) {
        if (backend_available(b)) {
            return kernels_for(b);
        }
    }
    return scalar_kernels();
}

}  // namespace

const Kernels& active_kernels() {
    static const Kernels& k = resolve();
    return k;
}

}  // namespace growup::simd
