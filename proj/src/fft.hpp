#pragma once

#include <vector>

#include "tracelab/common.hpp"

namespace tracelab::detail {

// out[j] = sum_k in[k] exp(sign * 2 pi i j k / n); sign is +1 or -1.
void dft(std::vector<cplx>& in, std::vector<cplx>& out, int sign);

}  // namespace tracelab::detail
