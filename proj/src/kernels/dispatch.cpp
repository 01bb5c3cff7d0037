#include "kernels_impl.hpp"

#include <atomic>

namespace precursor::kernels {

namespace {

bool cpu_has_avx2()
{
#if defined(PRECURSOR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelSet* best()
{
#if defined(PRECURSOR_HAVE_AVX2)
    if (cpu_has_avx2()) return &detail::kAvx2;
#endif
    return &detail::kScalar;
}

std::atomic<const KernelSet*>& current()
{
    static std::atomic<const KernelSet*> selected{best()};
    return selected;
}

}  // namespace

const KernelSet& scalar() { return detail::kScalar; }

const KernelSet* avx2()
{
#if defined(PRECURSOR_HAVE_AVX2)
    static const bool ok = cpu_has_avx2();
    return ok ? &detail::kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelSet& active() { return *current().load(std::memory_order_acquire); }

bool select(Backend b)
{
    const KernelSet* k = b == Backend::Scalar ? &scalar() : avx2();
    if (k == nullptr) return false;
    current().store(k, std::memory_order_release);
    return true;
}

}  // namespace precursor::kernels
