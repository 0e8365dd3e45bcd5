#pragma once

#include "chtw/kernels.hpp"

namespace chtw::kernels::detail {

// Defined in avx2.cpp when the compiler can target AVX2; the table is only
// handed out after a CPU check.
const Table* avx2_table();

}  // namespace chtw::kernels::detail
