#pragma once

#include <string>
#include <vector>

#include "lightfield.hpp"

namespace lfsr {

// PSNR in dB with peak 1.0 after removing `crop` pixels on every side.
// Returns +inf for identical inputs.
double psnr(std::span<const double> a, std::span<const double> b, int rows, int cols, int crop);
double psnr(const Image& a, const Image& b, int crop);

struct ViewPsnr {
  int s = 1;
  int t = 1;
  double psnr = 0.0;
};

struct PsnrReport {
  int crop = 0;
  std::vector<ViewPsnr> views;  // ordered by linear index
  double mean = 0.0;
  double variance = 0.0;  // population variance over views

  // `s,t,psnr` rows followed by a `mean,variance` row pair.
  std::string to_csv() const;
};

// Per-view luma PSNR. Throws DomainError on mismatched shapes or a crop that
// leaves no pixels.
PsnrReport evaluate_psnr(const LightField& recon, const LightField& truth, int crop);

}  // namespace lfsr
