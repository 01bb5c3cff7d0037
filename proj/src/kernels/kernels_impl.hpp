#pragma once

#include "precursor/kernels.hpp"

namespace precursor::kernels::detail {

extern const KernelSet kScalar;
#if defined(PRECURSOR_HAVE_AVX2)
extern const KernelSet kAvx2;
#endif

}  // namespace precursor::kernels::detail
