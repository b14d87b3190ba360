#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "choice_dyn/model.hpp"
#include "choice_dyn/point_cloud.hpp"
#include "choice_dyn/restricted.hpp"

namespace choice_dyn {

/// Shortest round-trip decimal ("%.17g").
std::string format_real(double x);

/// Header "x0,x1,...", one point per row.
void write_csv(std::ostream& out, const PointCloud& cloud);
void write_csv(const std::filesystem::path& path, const PointCloud& cloud);
/// Parses a cloud written by write_csv and snaps it at `delta`.
PointCloud read_csv(std::istream& in, double delta);
PointCloud read_csv(const std::filesystem::path& path, double delta);

struct SvgLayer {
  const PointCloud* cloud;
  std::string color = "#1f4e9c";
  double radius = 1.5;
};

/// Scatter plot, one <circle> per cloud point, axes framed by `frame`.
/// One-dimensional clouds are drawn along the horizontal axis.
void write_svg(std::ostream& out, std::span<const SvgLayer> layers, const Box& frame, std::size_t dim,
               const std::string& title);
void write_svg(const std::filesystem::path& path, const PointCloud& cloud, const Box& frame,
               const std::string& title);

/// slice_k.csv per slice, k_lambda.csv, a_j.csv per symbol and
/// manifest.json mapping representative strings to slice indices.
void write_slice_report(const std::filesystem::path& dir, const SliceReport& report, const std::string& model,
                        const std::string& subshift, const DecompositionCheck& check);

}  // namespace choice_dyn
