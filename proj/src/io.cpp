#include "secantforge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace secantforge::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("rename failed: " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

void append_joined(std::string& out, const Vec& v, bool leading_comma) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (leading_comma || i > 0) out += ',';
    out += format_double(v[i]);
  }
}

std::vector<double> parse_doubles(const std::string& line, std::size_t lineno) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) comma = line.size();
    const std::string tok = line.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      while (used < tok.size() &&
             (tok[used] == ' ' || tok[used] == '\r' || tok[used] == '\t')) {
        ++used;
      }
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": cannot parse number '" + tok + "'");
    }
    pos = comma + 1;
    if (comma == line.size()) break;
  }
  return out;
}

}  // namespace

std::string family_to_csv(const interpolation::InterpFamily& family) {
  std::string out = "# xstar: ";
  append_joined(out, family.xstar, false);
  out += '\n';
  for (const interpolation::InterpPoint& p : family.points) {
    append_joined(out, p.x, false);
    append_joined(out, p.g, true);
    if (p.f.has_value()) {
      out += ',';
      out += format_double(*p.f);
    }
    out += '\n';
  }
  return out;
}

interpolation::InterpFamily family_from_csv(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  std::size_t lineno = 0;
  interpolation::InterpFamily family;
  bool have_xstar = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "# xstar:";
      if (line.rfind(tag, 0) == 0) {
        family.xstar = parse_doubles(line.substr(tag.size()), lineno);
        have_xstar = true;
      }
      continue;
    }
    if (!have_xstar) {
      throw std::runtime_error("family file must start with a '# xstar: ...' row");
    }
    const std::vector<double> vals = parse_doubles(line, lineno);
    const std::size_t d = family.xstar.size();
    if (vals.size() != 2 * d && vals.size() != 2 * d + 1) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                               std::to_string(2 * d) + " or " +
                               std::to_string(2 * d + 1) + " values, got " +
                               std::to_string(vals.size()));
    }
    interpolation::InterpPoint p;
    p.x.assign(vals.begin(), vals.begin() + d);
    p.g.assign(vals.begin() + d, vals.begin() + 2 * d);
    if (vals.size() == 2 * d + 1) p.f = vals.back();
    family.points.push_back(std::move(p));
  }
  if (!have_xstar) {
    throw std::runtime_error("family file must contain a '# xstar: ...' row");
  }
  if (family.points.empty()) {
    throw std::runtime_error("family file has no data rows");
  }
  return family;
}

void write_family_csv(const std::string& path, const interpolation::InterpFamily& family) {
  write_file_atomic(path, family_to_csv(family));
}

interpolation::InterpFamily read_family_csv(const std::string& path) {
  return family_from_csv(read_file(path));
}

std::string run_to_csv(const harness::RunRecord& record) {
  std::string out = "step,dist_sq,radius_sq,f,grad_norm\n";
  const double nan = std::nan("");
  for (std::size_t i = 0; i < record.dist_sq.size(); ++i) {
    const bool answered = i < record.transcript.size();
    out += std::to_string(i);
    out += ',';
    out += format_double(record.dist_sq[i]);
    out += ',';
    out += format_double(record.radius_sq[i]);
    out += ',';
    out += format_double(answered ? record.transcript[i].f : nan);
    out += ',';
    out += format_double(answered ? vec::nrm2(record.transcript[i].g) : nan);
    out += '\n';
  }
  return out;
}

std::string transcript_to_csv(const harness::RunRecord& record) {
  std::string out = "step,f,grad_norm,dist_to_center,radius";
  const std::size_t d = record.dim;
  for (std::size_t k = 0; k < d; ++k) out += ",x" + std::to_string(k);
  for (std::size_t k = 0; k < d; ++k) out += ",g" + std::to_string(k);
  out += '\n';
  for (std::size_t i = 0; i < record.transcript.size(); ++i) {
    const core::OraclePoint& p = record.transcript[i];
    const double radius_sq = i < record.radius_sq.size() ? record.radius_sq[i] : 0.0;
    const double dist_sq = i < record.dist_sq.size() ? record.dist_sq[i] : 0.0;
    const double dtc = std::sqrt(std::max(0.0, dist_sq - radius_sq));
    out += std::to_string(i);
    out += ',';
    out += format_double(p.f);
    out += ',';
    out += format_double(vec::nrm2(p.g));
    out += ',';
    out += format_double(dtc);
    out += ',';
    out += format_double(std::sqrt(std::max(0.0, radius_sq)));
    append_joined(out, p.x, true);
    append_joined(out, p.g, true);
    out += '\n';
  }
  return out;
}

std::string sweep_to_csv(const std::vector<harness::SweepCell>& cells) {
  std::string out = "alpha,beta,rho_hat,diverged\n";
  for (const harness::SweepCell& c : cells) {
    out += format_double(c.alpha);
    out += ',';
    out += format_double(c.beta);
    out += ',';
    out += c.diverged ? "inf" : format_double(c.rho_hat);
    out += ',';
    out += c.diverged ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string trace_report_to_csv(const harness::TraceReport& report) {
  std::string out = "step,rsi,eb,skipped\n";
  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    const harness::TraceStep& s = report.steps[i];
    out += std::to_string(i);
    out += ',';
    out += format_double(s.rsi);
    out += ',';
    out += format_double(s.eb);
    out += ',';
    out += s.skipped ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::vector<std::pair<Vec, Vec>> family_points(const interpolation::InterpFamily& family) {
  std::vector<std::pair<Vec, Vec>> out;
  out.reserve(family.points.size());
  for (const interpolation::InterpPoint& p : family.points) {
    out.emplace_back(p.x, p.g);
  }
  return out;
}

}  // namespace secantforge::io
