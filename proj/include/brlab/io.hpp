#pragma once

#include <string>

#include "brlab/grid.hpp"
#include "brlab/kernels.hpp"
#include "brlab/rates.hpp"

// On-disk formats. Grid functions use a little-endian binary container:
//   bytes 0-3   magic "BRGF"
//   u32         format version (1)
//   i32         dim
//   i32         points per axis
//   f64         half width L
//   u8          space (0 = physical, 1 = frequency)
//   then N^dim complex values as (re, im) f64 pairs, row-major with the last
//   axis contiguous (the in-memory layout).
// Round trips are bit exact. Curves and profiles are written as plain CSV
// with a one-line header.

namespace brlab {

void save_grid_function(const std::string& path, const GridFunction& f);
GridFunction load_grid_function(const std::string& path);

void write_profile_csv(const std::string& path, const RadialProfile& profile);
void write_curve_csv(const std::string& path, const RateCurve& curve);
void write_weak_type_csv(const std::string& path, const WeakTypeProfile& profile);

}  // namespace brlab
