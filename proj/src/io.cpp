#include "choice_dyn/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace choice_dyn {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const PointCloud& cloud) {
  for (std::size_t k = 0; k < cloud.dim(); ++k) out << (k ? "," : "") << 'x' << k;
  out << '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point p = cloud.point(i);
    for (std::size_t k = 0; k < cloud.dim(); ++k) out << (k ? "," : "") << format_real(p[k]);
    out << '\n';
  }
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_csv(const std::filesystem::path& path, const PointCloud& cloud) {
  auto out = open_out(path);
  write_csv(out, cloud);
}

PointCloud read_csv(std::istream& in, double delta) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: missing header");
  const std::size_t dim = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  if (line.rfind("x0", 0) != 0 || dim > kMaxDim) throw std::runtime_error("read_csv: expected header x0,x1,...");
  std::vector<Point> points;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    Point p{};
    std::string field;
    std::size_t k = 0;
    while (std::getline(row, field, ',')) {
      if (k >= dim) throw std::runtime_error("read_csv: too many fields on line " + std::to_string(lineno));
      try {
        p[k++] = std::stod(field);
      } catch (const std::exception&) {
        throw std::runtime_error("read_csv: bad number on line " + std::to_string(lineno));
      }
    }
    if (k != dim) throw std::runtime_error("read_csv: too few fields on line " + std::to_string(lineno));
    points.push_back(p);
  }
  return PointCloud::from_points(dim, delta, points);
}

PointCloud read_csv(const std::filesystem::path& path, double delta) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_csv(in, delta);
}

namespace {

std::string fixed3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_svg(std::ostream& out, std::span<const SvgLayer> layers, const Box& frame, std::size_t dim,
               const std::string& title) {
  constexpr double size = 600, margin = 50;
  const double span_x = frame.hi[0] > frame.lo[0] ? frame.hi[0] - frame.lo[0] : 1.0;
  const double span_y = dim > 1 && frame.hi[1] > frame.lo[1] ? frame.hi[1] - frame.lo[1] : 1.0;
  auto px = [&](double x) { return margin + (x - frame.lo[0]) / span_x * size; };
  auto py = [&](double y) { return dim > 1 ? margin + size - (y - frame.lo[1]) / span_y * size : margin + size / 2; };

  const double total = size + 2 * margin;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total << "\" height=\"" << total
      << "\" viewBox=\"0 0 " << total << ' ' << total << "\">\n";
  out << "<title>" << xml_escape(title) << "</title>\n";
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size << "\" height=\"" << size
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  // Corner tick labels.
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<text x=\"" << margin << "\" y=\"" << margin + size + 18 << "\">" << fixed3(frame.lo[0]) << "</text>\n";
  out << "<text x=\"" << margin + size << "\" y=\"" << margin + size + 18 << "\" text-anchor=\"end\">"
      << fixed3(frame.hi[0]) << "</text>\n";
  if (dim > 1) {
    out << "<text x=\"" << margin - 6 << "\" y=\"" << margin + size << "\" text-anchor=\"end\">"
        << fixed3(frame.lo[1]) << "</text>\n";
    out << "<text x=\"" << margin - 6 << "\" y=\"" << margin + 10 << "\" text-anchor=\"end\">"
        << fixed3(frame.hi[1]) << "</text>\n";
  }
  out << "<text x=\"" << total / 2 << "\" y=\"" << margin - 16 << "\" text-anchor=\"middle\">" << xml_escape(title)
      << "</text>\n</g>\n";
  for (const SvgLayer& layer : layers) {
    out << "<g fill=\"" << layer.color << "\">\n";
    for (std::size_t i = 0; i < layer.cloud->size(); ++i) {
      const Point p = layer.cloud->point(i);
      out << "<circle cx=\"" << fixed3(px(p[0])) << "\" cy=\"" << fixed3(py(p[1])) << "\" r=\"" << layer.radius
          << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
}

void write_svg(const std::filesystem::path& path, const PointCloud& cloud, const Box& frame,
               const std::string& title) {
  auto out = open_out(path);
  const SvgLayer layer{&cloud};
  write_svg(out, std::span<const SvgLayer>(&layer, 1), frame, cloud.dim(), title);
}

void write_slice_report(const std::filesystem::path& dir, const SliceReport& report, const std::string& model,
                        const std::string& subshift, const DecompositionCheck& check) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json manifest;
  manifest["model"] = model;
  manifest["subshift"] = subshift;
  manifest["delta"] = report.k_lambda.delta();
  manifest["slice_count"] = report.slices.size();
  manifest["start_set_count"] = report.start_set_count;
  nlohmann::ordered_json slices = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < report.slices.size(); ++k) {
    const std::string file = "slice_" + std::to_string(k) + ".csv";
    write_csv(dir / file, report.slices[k]);
    slices.push_back({{"index", k}, {"file", file}, {"points", report.slices[k].size()}});
  }
  manifest["slices"] = slices;
  write_csv(dir / "k_lambda.csv", report.k_lambda);
  manifest["k_lambda"] = {{"file", "k_lambda.csv"}, {"points", report.k_lambda.size()}};
  nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < report.pieces.size(); ++j) {
    const std::string file = "a_" + std::to_string(j) + ".csv";
    write_csv(dir / file, report.pieces[j]);
    pieces.push_back({{"symbol", j}, {"file", file}, {"points", report.pieces[j].size()}});
  }
  manifest["pieces"] = pieces;
  manifest["representatives"] = report.representatives;
  manifest["decomposition"] = {{"cover_residual", check.cover_residual},
                               {"image_residual", check.image_residual},
                               {"passed", check.passed}};
  auto out = open_out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

}  // namespace choice_dyn
