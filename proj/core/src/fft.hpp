#pragma once

#include <vector>

#include "fbmc/types.hpp"

namespace fbmc {

// Internal FFTW bridge (unnormalized transforms, any size).
void fft_forward(std::vector<cplx>& in, std::vector<cplx>& out);
void fft_backward(std::vector<cplx>& in, std::vector<cplx>& out);

}  // namespace fbmc
