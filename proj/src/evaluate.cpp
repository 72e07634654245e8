#include "evaluate.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "errors.hpp"

namespace lfsr {

double psnr(std::span<const double> a, std::span<const double> b, int rows, int cols, int crop) {
  if (a.size() != b.size() || a.size() != static_cast<std::size_t>(rows) * cols)
    throw DomainError("PSNR inputs differ in size");
  if (crop < 0 || 2 * crop >= rows || 2 * crop >= cols)
    throw DomainError("crop of " + std::to_string(crop) + " px leaves no pixels in a " +
                      std::to_string(rows) + "x" + std::to_string(cols) + " view");
  double sum = 0.0;
  for (int y = crop; y < cols - crop; ++y) {
    for (int x = crop; x < rows - crop; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * rows + x;
      const double d = a[i] - b[i];
      sum += d * d;
    }
  }
  const double mse = sum / (static_cast<double>(rows - 2 * crop) * (cols - 2 * crop));
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return -10.0 * std::log10(mse);
}

double psnr(const Image& a, const Image& b, int crop) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("PSNR inputs differ in size");
  return psnr(a.data(), b.data(), a.rows(), a.cols(), crop);
}

PsnrReport evaluate_psnr(const LightField& recon, const LightField& truth, int crop) {
  if (!(recon.shape() == truth.shape()))
    throw DomainError("reconstruction is " + std::to_string(recon.rows()) + "x" +
                      std::to_string(recon.cols()) + "x" + std::to_string(recon.M()) + "^2 but ground truth is " +
                      std::to_string(truth.rows()) + "x" + std::to_string(truth.cols()) + "x" +
                      std::to_string(truth.M()) + "^2");
  PsnrReport rep;
  rep.crop = crop;
  const int M = recon.M();
  for (int k = 1; k <= M * M; ++k) {
    const auto c = view_coord(k, M);
    rep.views.push_back({c.s, c.t,
                         psnr(recon.view_data(k - 1), truth.view_data(k - 1), recon.rows(),
                              recon.cols(), crop)});
  }
  const double n = static_cast<double>(rep.views.size());
  std::size_t infinite = 0;
  double sum = 0.0;
  for (const auto& v : rep.views) {
    if (std::isinf(v.psnr)) ++infinite;
    sum += v.psnr;
  }
  rep.mean = sum / n;
  if (infinite == rep.views.size()) {
    rep.variance = 0.0;
  } else if (infinite > 0) {
    rep.variance = std::numeric_limits<double>::quiet_NaN();
  } else {
    double sq = 0.0;
    for (const auto& v : rep.views) sq += (v.psnr - rep.mean) * (v.psnr - rep.mean);
    rep.variance = sq / n;
  }
  return rep;
}

namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string PsnrReport::to_csv() const {
  std::string out = "# luma PSNR in dB, peak 1.0, border crop " + std::to_string(crop) +
                    " px; variance is the population variance over views\n";
  out += "s,t,psnr\n";
  for (const auto& v : views)
    out += std::to_string(v.s) + "," + std::to_string(v.t) + "," + fmt(v.psnr) + "\n";
  out += "mean,variance\n";
  out += fmt(mean) + "," + fmt(variance) + "\n";
  return out;
}

}  // namespace lfsr
