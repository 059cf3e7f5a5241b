#include "torusbound/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace torusbound {

namespace {

using nlohmann::ordered_json;

double parse_double(std::string_view text, const char* what) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw FormatError(std::string("cannot parse ") + what + " from '" + std::string(text) + "'");
  }
  return value;
}

// Doubles go through format_double so JSON output is byte-stable.
ordered_json number(double x) {
  if (!std::isfinite(x)) return format_double(x);
  return ordered_json::parse(format_double(x));
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumEntry>& entries) {
  out << "index,eigenvalue,multiplicity,modes\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    out << i << ',' << format_double(e.eigenvalue) << ',' << e.multiplicity << ',';
    for (std::size_t k = 0; k < e.modes.size(); ++k) {
      if (k) out << ';';
      out << e.modes[k].p << ':' << e.modes[k].q;
    }
    out << '\n';
  }
}

ConformalGrid read_conformal_grid(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("conformal grid: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  ConformalGrid grid;
  {
    std::istringstream header(line);
    std::string hash, word;
    header >> hash >> word;
    if (hash != "#" || word != "torus") {
      throw FormatError("conformal grid: header must start with '# torus'");
    }
    bool have_a = false, have_b = false, have_n = false;
    std::string field;
    while (header >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw FormatError("conformal grid: bad header field '" + field + "'");
      const std::string key = field.substr(0, eq);
      const std::string_view val = std::string_view(field).substr(eq + 1);
      if (key == "a") {
        grid.torus.a = parse_double(val, "a");
        have_a = true;
      } else if (key == "b") {
        grid.torus.b = parse_double(val, "b");
        have_b = true;
      } else if (key == "n") {
        const double n = parse_double(val, "n");
        if (n != std::floor(n) || n < 1 || n > 1 << 14) throw FormatError("conformal grid: bad n");
        grid.n = static_cast<int>(n);
        have_n = true;
      } else {
        throw FormatError("conformal grid: unknown header key '" + key + "'");
      }
    }
    if (!have_a || !have_b || !have_n) throw FormatError("conformal grid: header needs a, b and n");
  }
  try {
    grid.torus.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("conformal grid: ") + e.what());
  }

  grid.samples.reserve(static_cast<std::size_t>(grid.n) * grid.n);
  for (int row = 0; row < grid.n; ++row) {
    if (!std::getline(in, line)) {
      throw FormatError("conformal grid: expected " + std::to_string(grid.n) + " rows, got " +
                        std::to_string(row));
    }
    std::string_view rest(line);
    int cols = 0;
    while (true) {
      const auto comma = rest.find(',');
      grid.samples.push_back(parse_double(rest.substr(0, comma), "sample"));
      ++cols;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cols != grid.n) {
      throw FormatError("conformal grid: row " + std::to_string(row) + " has " +
                        std::to_string(cols) + " columns, expected " + std::to_string(grid.n));
    }
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw FormatError("conformal grid: trailing data after the last row");
    }
  }
  return grid;
}

void write_conformal_grid(std::ostream& out, const ConformalGrid& grid) {
  out << "# torus a=" << format_double(grid.torus.a) << " b=" << format_double(grid.torus.b)
      << " n=" << grid.n << '\n';
  for (int i = 0; i < grid.n; ++i) {
    for (int j = 0; j < grid.n; ++j) {
      if (j) out << ',';
      out << format_double(grid.samples[static_cast<std::size_t>(i) * grid.n + j]);
    }
    out << '\n';
  }
}

std::string immersion_to_json(const Immersion& imm) {
  ordered_json j;
  j["n"] = imm.sphere_dim();
  j["components"] = ordered_json::array();
  for (const auto& c : imm.components()) {
    j["components"].push_back({{"A", number(c.amplitude)}, {"p", c.mode.p}, {"q", c.mode.q}});
  }
  j["torus"] = {{"a", number(imm.torus().a)}, {"b", number(imm.torus().b)}};
  j["shear"] = imm.shear();
  return j.dump(2) + "\n";
}

Immersion immersion_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
    const auto& comps = j.at("components");
    if (!comps.is_array() || comps.empty()) throw FormatError("immersion: components must be a non-empty array");
    std::vector<ImmersionComponent> components;
    for (const auto& c : comps) {
      components.push_back({c.at("A").get<double>(), {c.at("p").get<int>(), c.at("q").get<int>()}});
    }
    const TorusParams torus{j.at("torus").at("a").get<double>(), j.at("torus").at("b").get<double>()};
    const bool shear = j.contains("shear") ? j.at("shear").get<bool>() : true;
    if (j.contains("n") && j.at("n").get<int>() != 2 * static_cast<int>(components.size()) - 1) {
      throw FormatError("immersion: n does not match 2 * components - 1");
    }
    return Immersion(torus, std::move(components), shear);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("immersion: ") + e.what());
  }
}

std::string reports_to_json(const std::vector<CheckReport>& reports) {
  ordered_json root;
  root["schema"] = 1;
  root["pass"] = all_passed(reports);
  root["reports"] = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = number(v);
    ordered_json argmin = ordered_json::array();
    for (double x : r.argmin) argmin.push_back(number(x));
    root["reports"].push_back({{"schema", 1},
                               {"check", r.check},
                               {"params", params},
                               {"pass", r.pass},
                               {"witness", r.witness},
                               {"min_value", number(r.min_value)},
                               {"argmin", argmin}});
  }
  return root.dump(2) + "\n";
}

void write_sweep_csv(std::ostream& out, const std::vector<BoundReport>& rows) {
  out << "a,b,corollary,esir,theorem_class,b0_opt,L\n";
  for (const auto& r : rows) {
    out << format_double(r.params.a) << ',' << format_double(r.params.b) << ','
        << format_double(r.corollary) << ',' << format_double(r.esir) << ','
        << format_double(r.theorem_class) << ',' << format_double(r.b0_opt) << ','
        << format_double(r.L) << '\n';
  }
}

}  // namespace torusbound
