#include "torusbound_cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "torusbound/bounds.hpp"
#include "torusbound/io.hpp"

namespace torusbound::cli {

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 70, kRight = 20, kTop = 30, kBottom = 50;
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// Fixed two-decimal coordinates keep the file byte-stable and small.
std::string fmt(double x) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << x;
  return s.str();
}

struct Frame {
  double b_lo, b_hi, y_lo, y_hi;
  double px(double b) const { return kLeft + (b - b_lo) / (b_hi - b_lo) * (kWidth - kLeft - kRight); }
  double py(double y) const {
    return kHeight - kBottom - (y - y_lo) / (y_hi - y_lo) * (kHeight - kTop - kBottom);
  }
};

void polyline(std::ostream& out, const Frame& f, const std::vector<double>& b,
              const std::vector<double>& v, const char* cls, const char* colour, const char* dash) {
  out << "    <polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << colour
      << "\" stroke-width=\"1.5\"";
  if (*dash) out << " stroke-dasharray=\"" << dash << "\"";
  out << " points=\"";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out << ' ';
    out << fmt(f.px(b[i])) << ',' << fmt(f.py(v[i]));
  }
  out << "\"/>\n";
}

}  // namespace

BoundSlice sample_slice(double a, double step, double b_max) {
  if (!(step > 0.0)) throw std::invalid_argument("plot: step must be > 0");
  BoundSlice s;
  s.a = a;
  const double b0 = std::sqrt(1.0 - a * a);
  if (!(b_max > b0)) throw std::invalid_argument("plot: bmax must exceed the arc");
  const long n = static_cast<long>(std::ceil((b_max - b0) / step - 1e-9));
  for (long i = 0; i <= n; ++i) {
    const double b = std::min(b0 + step * static_cast<double>(i), b_max);
    s.b.push_back(b);
    s.corollary.push_back(corollary_value(a, b));
    s.esir.push_back(esir_bound(a, b));
    s.theorem_class.push_back(theorem_class_bound(a, b));
  }
  return s;
}

std::string render_bound_plot(const std::vector<BoundSlice>& slices, double reference) {
  Frame f{INFINITY, -INFINITY, 0.0, reference};
  for (const auto& s : slices) {
    for (double b : s.b) f.b_lo = std::min(f.b_lo, b), f.b_hi = std::max(f.b_hi, b);
    for (const auto* v : {&s.corollary, &s.esir, &s.theorem_class}) {
      for (double y : *v) f.y_hi = std::max(f.y_hi, y);
    }
  }
  if (!(f.b_hi > f.b_lo)) throw std::invalid_argument("plot: empty b range");
  const int ticks = static_cast<int>(std::ceil(f.y_hi / kPi2));
  f.y_hi = ticks * kPi2;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n"
      << "  <rect width=\"800\" height=\"600\" fill=\"white\"/>\n"
      << "  <g class=\"axes\" stroke=\"black\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "    <line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kHeight - kBottom) << "\" x2=\""
      << fmt(kWidth - kRight) << "\" y2=\"" << fmt(kHeight - kBottom) << "\"/>\n"
      << "    <line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(kLeft)
      << "\" y2=\"" << fmt(kHeight - kBottom) << "\"/>\n";
  for (int k = 0; k <= ticks; ++k) {
    const double y = f.py(k * kPi2);
    out << "    <text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\" stroke=\"none\">" << k << "π²</text>\n";
  }
  for (int b = static_cast<int>(std::ceil(f.b_lo)); b <= static_cast<int>(std::floor(f.b_hi)); ++b) {
    out << "    <text x=\"" << fmt(f.px(b)) << "\" y=\"" << fmt(kHeight - kBottom + 18)
        << "\" text-anchor=\"middle\" stroke=\"none\">" << b << "</text>\n";
  }
  out << "    <text x=\"" << fmt(kWidth / 2) << "\" y=\"" << fmt(kHeight - 10)
      << "\" text-anchor=\"middle\" stroke=\"none\">b</text>\n  </g>\n";

  static constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c"};
  for (std::size_t i = 0; i < slices.size(); ++i) {
    const auto& s = slices[i];
    const char* colour = kColours[i % 3];
    out << "  <g class=\"slice\" data-a=\"" << format_double(s.a) << "\">\n";
    polyline(out, f, s.b, s.corollary, "corollary", colour, "");
    polyline(out, f, s.b, s.esir, "esir", colour, "6,4");
    polyline(out, f, s.b, s.theorem_class, "theorem-class", colour, "2,3");
    out << "  </g>\n";
  }
  out << "  <line class=\"reference\" x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(f.py(reference))
      << "\" x2=\"" << fmt(kWidth - kRight) << "\" y2=\"" << fmt(f.py(reference))
      << "\" stroke=\"gray\" stroke-dasharray=\"1,2\"/>\n"
      << "</svg>\n";
  return out.str();
}

}  // namespace torusbound::cli
